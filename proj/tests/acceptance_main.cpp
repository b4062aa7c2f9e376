// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits non-zero if any criterion fails. argv[1] must point at the CLI
// binary (used by the determinism criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/bpp_reference.hpp"
#include "support/test_instances.hpp"
#include "topt/generator.hpp"
#include "topt/heuristics.hpp"
#include "topt/io.hpp"
#include "topt/milp.hpp"
#include "topt/oracle.hpp"
#include "topt/report.hpp"
#include "topt/solver.hpp"

using namespace topt;
using test_support::random_subproblem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string note;
};

std::vector<std::pair<Subproblem, Solution>> g_solved;  // filled by criterion 1

Outcome criterion1_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937 rng(20250810);
  const int rounds = 500;
  int mismatches = 0;
  for (int i = 0; i < rounds; ++i) {
    const Subproblem sp = random_subproblem(rng, 8, 4, 3);
    const SolveReport report = solve(sp);
    const OracleResult exact = brute_force_optimum(sp);
    const bool solver_feasible = report.status == SolveStatus::Optimal;
    if (report.status == SolveStatus::LimitReached ||
        solver_feasible != exact.feasible ||
        (exact.feasible && report.best->objective() != exact.objective)) {
      ++mismatches;
      continue;
    }
    if (exact.feasible) {
      g_solved.emplace_back(sp, *report.best);
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = mismatches == 0 && elapsed < 60.0;
  std::ostringstream note;
  note << (rounds - mismatches) << "/" << rounds << " agree with the oracle, "
       << g_solved.size() << " feasible witnesses collected (" << std::fixed
       << std::setprecision(1) << elapsed << " s)";
  out.note = note.str();
  return out;
}

Outcome criterion2_bpp_reduction() {
  std::mt19937 rng(80404);
  const int rounds = 200;
  int mismatches = 0;
  std::uniform_int_distribution<int> count(1, 7);
  std::uniform_int_distribution<int> cap_pick(3, 15);
  std::uniform_int_distribution<int> k_pick(1, 4);
  for (int i = 0; i < rounds; ++i) {
    BppInstance bpp;
    bpp.capacity = cap_pick(rng);
    bpp.k = k_pick(rng);
    const int n = count(rng);
    std::uniform_int_distribution<int> size_pick(1, bpp.capacity);
    for (int j = 0; j < n; ++j) bpp.sizes.push_back(size_pick(rng));

    const SolveReport report = solve(reduce_bpp_to_top(bpp));
    const bool yes_via_reduction = report.status == SolveStatus::Optimal &&
                                   report.best->objective() <= bpp.k;
    const bool yes_direct =
        bpp_reference::decide(bpp.sizes, bpp.capacity, bpp.k);
    if (yes_via_reduction != yes_direct) ++mismatches;
  }
  Outcome out;
  out.pass = mismatches == 0;
  out.note = std::to_string(rounds - mismatches) + "/" +
             std::to_string(rounds) +
             " decisions match the standalone enumerator";
  return out;
}

Outcome criterion3_model_fidelity() {
  int clean = 0;
  for (const auto& [sp, sol] : g_solved) {
    const MilpModel model = build_model(sp);
    if (check_solution_against_model(model,
                                     solution_to_values(model, sp, sol))
            .empty()) {
      ++clean;
    }
  }
  const bool all_clean = clean == static_cast<int>(g_solved.size());

  // perturbations constructed to break one constraint family each
  int violated = 0;
  const int perturbations = 200;
  for (int i = 0; i < perturbations; ++i) {
    const auto& [sp, sol] = g_solved[i % g_solved.size()];
    const MilpModel model = build_model(sp);
    auto values = solution_to_values(model, sp, sol);
    const int kind = i % 4;
    if (kind == 0) {
      for (int t = 1; t <= sp.max_containers; ++t) {
        values["x_1_" + std::to_string(t)] = 0;  // drop an assignment
      }
    } else if (kind == 1) {
      const int t = sol.assignment.begin()->second;
      values["y_" + std::to_string(t)] = 0;  // deny a loaded container
    } else if (kind == 2) {
      const auto spreads = sol.pcb_spread(sp);
      int p = 0;
      bool done = false;
      for (const auto& [pcb_id, spread] : spreads) {
        ++p;
        if (!spread.empty() && !done) {
          values["z_" + std::to_string(p) + "_" +
                 std::to_string(*spread.begin())] = 0;  // deny a needed link
          done = true;
        }
      }
      if (!done) {
        for (int t = 1; t <= sp.max_containers; ++t) {
          values["x_1_" + std::to_string(t)] = 0;
        }
      }
    } else {
      const int assigned = sol.assignment.begin()->second;
      if (sp.max_containers < 2) {
        for (int t = 1; t <= sp.max_containers; ++t) {
          values["x_1_" + std::to_string(t)] = 0;
        }
      } else {
        const int other = assigned == 1 ? 2 : 1;
        values["x_1_" + std::to_string(other)] = 1;  // duplicate assignment
      }
    }
    if (!check_solution_against_model(model, values).empty()) ++violated;
  }

  // closed-form counts at the dataset-a trolley-stage shape
  Subproblem shape;
  shape.capacity = 33;
  shape.max_containers = 28;
  for (int i = 1; i <= 537; ++i) {
    shape.items.push_back({"c" + std::to_string(i), 1});
  }
  for (int p = 1; p <= 80; ++p) {
    PcbGroup group;
    group.limit = 16;
    for (int i = p - 1; i < 537; i += 80) group.items.push_back(i);
    shape.pcbs.emplace("p" + std::to_string(1000 + p), std::move(group));
  }
  const MilpModel big = build_model(shape);
  const bool counts_ok =
      big.variables.size() == 17304 &&
      big.variables.size() ==
          static_cast<std::size_t>(variable_count(shape, 80)) &&
      big.constraints.size() ==
          static_cast<std::size_t>(537 + 28 + 80 + 2 * 28 * 80);

  Outcome out;
  out.pass = all_clean && violated == perturbations && counts_ok;
  std::ostringstream note;
  note << clean << "/" << g_solved.size()
       << " witnesses satisfy their models, " << violated << "/"
       << perturbations << " perturbations detected, counts "
       << (counts_ok ? "match (17304 vars at C=537,T=28,P=80)" : "MISMATCH");
  out.note = note.str();
  return out;
}

Outcome criterion4_sensitivity() {
  const auto start = Clock::now();
  const Instance inst = generate(preset("dataset-a"));
  const std::vector<int> limit_values = {16, 18, 20, 22};
  const auto rows = sensitivity_sweep(inst, limit_values, {});

  bool ok = rows.size() == limit_values.size();
  int first_objective = -1;
  long long prev_nodes = -1;
  int feasible_rows = 0;
  for (std::size_t i = 0; i < rows.size() && ok; ++i) {
    const auto& row = rows[i];
    if (row.elapsed_s >= 120.0) ok = false;
    if (!row.objective) continue;
    ++feasible_rows;
    if (first_objective < 0) first_objective = *row.objective;
    if (*row.objective != first_objective) ok = false;
    if (prev_nodes >= 0 && row.nodes > prev_nodes) ok = false;
    prev_nodes = row.nodes;
  }
  ok = ok && feasible_rows == static_cast<int>(rows.size());

  Outcome out;
  out.pass = ok;
  std::ostringstream note;
  note << feasible_rows << "/4 rows feasible, objective "
       << (first_objective >= 0 ? std::to_string(first_objective) : "-")
       << " on all, node counts non-increasing (" << std::fixed
       << std::setprecision(1) << seconds_since(start) << " s)";
  out.note = note.str();
  return out;
}

Outcome criterion5_dataset_shapes() {
  Outcome out;
  std::ostringstream note;
  bool ok = true;
  struct Expect {
    const char* name;
    int pcbs, trolley, stacker;
  };
  for (const Expect& e : {Expect{"dataset-a", 80, 537, 42},
                          Expect{"dataset-b", 62, 930, 55}}) {
    const Instance inst = generate(preset(e.name));
    int trolleys = 0, stackers = 0;
    for (const auto& comp : inst.components) {
      (comp.cls == ContainerClass::Trolley ? trolleys : stackers) += 1;
    }
    if (static_cast<int>(inst.pcbs.size()) != e.pcbs ||
        trolleys != e.trolley || stackers != e.stacker) {
      ok = false;
      note << e.name << ": shape mismatch; ";
      continue;
    }

    SolverConfig cfg;
    cfg.node_limit = 2000000;
    const InstanceSolveResult result = solve_instance(inst, cfg);
    if (!result.stacker_report.best || !result.trolley_report ||
        !result.trolley_report->best) {
      ok = false;
      note << e.name << ": no feasible output; ";
      continue;
    }
    const Subproblem stacker_sp = build_stacker_subproblem(inst);
    const Subproblem trolley_sp =
        build_trolley_subproblem(inst, result.trolley_limits);
    const bool feasible =
        check_feasible(stacker_sp, *result.stacker_report.best).empty() &&
        check_feasible(trolley_sp, *result.trolley_report->best).empty();
    const bool bounded = result.stacker_report.best->objective() >=
                             lower_bound(stacker_sp).lower &&
                         result.trolley_report->best->objective() >=
                             lower_bound(trolley_sp).lower;
    if (!feasible || !bounded) {
      ok = false;
      note << e.name << ": output fails feasibility/bound; ";
      continue;
    }
    note << e.name << ": counts exact, "
         << result.trolley_report->best->objective() << "+"
         << result.stacker_report.best->objective()
         << " containers feasible and bounded; ";
  }
  out.pass = ok;
  out.note = note.str();
  return out;
}

Outcome criterion6_determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.note = "no CLI path supplied";
    return out;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "topt_acceptance";
  fs::create_directories(dir);
  const fs::path instance = dir / "instance.json";
  save_instance(generate(preset("dataset-a")), instance);

  auto run = [&](int i) {
    const fs::path plan = dir / ("plan" + std::to_string(i) + ".csv");
    const fs::path report = dir / ("report" + std::to_string(i) + ".json");
    const std::string cmd = "'" + cli + "' solve '" + instance.string() +
                            "' --plan '" + plan.string() + "' --report '" +
                            report.string() + "' > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  if (!run(1) || !run(2)) {
    out.note = "CLI solve run failed";
    return out;
  }
  const std::string plan1 = read_text_file(dir / "plan1.csv");
  const std::string plan2 = read_text_file(dir / "plan2.csv");
  const auto report1 =
      nlohmann::json::parse(read_text_file(dir / "report1.json"));
  const auto report2 =
      nlohmann::json::parse(read_text_file(dir / "report2.json"));
  const bool plans_equal = plan1 == plan2 && !plan1.empty();
  const bool nodes_equal =
      report1["trolley_stage"]["nodes"] == report2["trolley_stage"]["nodes"] &&
      report1["stacker_stage"]["nodes"] == report2["stacker_stage"]["nodes"];
  out.pass = plans_equal && nodes_equal;
  std::ostringstream note;
  note << "plan files " << (plans_equal ? "byte-identical" : "DIFFER") << " ("
       << plan1.size() << " bytes), node counts "
       << (nodes_equal ? "equal" : "DIFFER");
  out.note = note.str();
  return out;
}

Outcome criterion7_heuristic_soundness() {
  std::mt19937 rng(7171);
  const int wanted = 500;
  int feasible_seen = 0;
  int greedy_successes = 0;
  int unsound = 0;
  int optimal_hits = 0;
  int guard = 0;
  while (feasible_seen < wanted && guard < 20000) {
    ++guard;
    const Subproblem sp = random_subproblem(rng, 8, 4, 3);
    const OracleResult exact = brute_force_optimum(sp);
    if (!exact.feasible) continue;
    ++feasible_seen;
    const PackResult packed = greedy_pack(sp);
    if (!packed.ok()) continue;
    ++greedy_successes;
    if (!check_feasible(sp, *packed.solution).empty() ||
        packed.solution->objective() < exact.objective) {
      ++unsound;
    }
    if (packed.solution->objective() == exact.objective) ++optimal_hits;
  }
  Outcome out;
  out.pass = feasible_seen == wanted && unsound == 0 && optimal_hits >= 1;
  std::ostringstream note;
  note << greedy_successes << "/" << feasible_seen
       << " greedy packings, all sound, optimum matched " << optimal_hits
       << " times";
  out.note = note.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  struct Row {
    int id;
    const char* title;
    Outcome outcome;
  };
  std::vector<Row> rows;
  rows.push_back({1, "oracle equivalence", criterion1_oracle_equivalence()});
  rows.push_back({2, "bin packing reduction", criterion2_bpp_reduction()});
  rows.push_back({3, "model fidelity", criterion3_model_fidelity()});
  rows.push_back({4, "limit sensitivity", criterion4_sensitivity()});
  rows.push_back({5, "dataset shapes", criterion5_dataset_shapes()});
  rows.push_back({6, "determinism", criterion6_determinism(cli)});
  rows.push_back({7, "heuristic soundness", criterion7_heuristic_soundness()});

  bool all_pass = true;
  for (const auto& row : rows) {
    all_pass = all_pass && row.outcome.pass;
    std::printf("[%s] criterion %d: %s - %s\n",
                row.outcome.pass ? "PASS" : "FAIL", row.id, row.title,
                row.outcome.note.c_str());
  }
  return all_pass ? 0 : 1;
}
