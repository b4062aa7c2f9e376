#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topt/generator.hpp"
#include "topt/heuristics.hpp"
#include "topt/io.hpp"
#include "topt/milp.hpp"
#include "topt/oracle.hpp"
#include "topt/report.hpp"
#include "topt/solver.hpp"

namespace {

using json = nlohmann::ordered_json;

// Exit codes: 0 success, 2 validation failure, 3 infeasible, 4 limit
// reached, 5 I/O or parse error.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitLimit = 4;
constexpr int kExitIo = 5;

int fail(const std::string& code, const std::string& detail, int exit_code) {
  std::cerr << code << ": " << detail << "\n";
  return exit_code;
}

topt::TrolleyLimitRule parse_rule(const std::string& name) {
  if (name == "per-pcb") return topt::TrolleyLimitRule::PerPcbStackerCount;
  if (name == "uniform") return topt::TrolleyLimitRule::UniformStackerReserve;
  throw topt::InputError("unknown limit rule '" + name +
                         "' (expected per-pcb|uniform)");
}

struct SolveFlags {
  std::optional<double> time_limit;
  std::optional<long long> node_limit;
  bool no_incumbent = false;
  bool no_symmetry = false;
  long long log_every = 0;

  topt::SolverConfig config(bool stream_progress) const {
    topt::SolverConfig cfg;
    cfg.time_limit_s = time_limit;
    cfg.node_limit = node_limit;
    cfg.use_incumbent = !no_incumbent;
    cfg.symmetry_breaking = !no_symmetry;
    cfg.log_every = log_every;
    if (stream_progress && log_every > 0) {
      cfg.on_progress = [](const topt::SolverProgress& p) {
        std::fprintf(stderr, "progress nodes=%lld incumbent=%s bound=%d elapsed=%.3f\n",
                     p.nodes,
                     p.incumbent ? std::to_string(*p.incumbent).c_str() : "-",
                     p.bound, p.elapsed_s);
      };
    }
    return cfg;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--time-limit", flags.time_limit, "wall-clock limit per stage, seconds");
  cmd->add_option("--node-limit", flags.node_limit, "search node limit per stage");
  cmd->add_flag("--no-incumbent", flags.no_incumbent, "do not seed from the greedy heuristic");
  cmd->add_flag("--no-symmetry", flags.no_symmetry, "disable container symmetry breaking");
  cmd->add_option("--log-every", flags.log_every, "emit a progress line every N nodes");
}

json report_to_json(const topt::SolveReport& report) {
  json node;
  node["status"] = topt::to_string(report.status);
  if (report.best) {
    node["objective"] = report.best->objective();
    node["solver"] = report.best->solver;
  }
  node["bound"] = report.bound;
  node["nodes"] = report.nodes;
  node["elapsed_s"] = report.elapsed_s;
  return node;
}

int run_validate(const std::string& instance_path) {
  const topt::Instance inst =
      topt::instance_from_json(topt::read_text_file(instance_path));
  const auto violations = topt::validate_instance(inst);
  if (violations.empty()) {
    std::cout << "valid\n";
    return kExitOk;
  }
  for (const auto& v : violations) {
    std::cout << v.kind << " [" << v.subject << "] " << v.detail << "\n";
  }
  return fail("E_VALIDATION",
              std::to_string(violations.size()) + " violation(s) found",
              kExitValidation);
}

int run_generate(const std::string& preset_name, const std::string& spec_path,
                 std::optional<std::uint64_t> seed, const std::string& out_path) {
  topt::GeneratorSpec spec;
  if (!preset_name.empty()) {
    spec = topt::preset(preset_name);
  } else if (!spec_path.empty()) {
    spec = topt::generator_spec_from_json(topt::read_text_file(spec_path));
  } else {
    return fail("E_USAGE", "generate needs --preset or --spec", kExitValidation);
  }
  if (seed) spec.seed = *seed;
  const topt::Instance inst = topt::generate(spec);
  topt::save_instance(inst, out_path);
  std::cout << "wrote " << out_path << " (" << inst.components.size()
            << " components, " << inst.pcbs.size() << " pcbs, T="
            << inst.line.max_trolleys << ")\n";
  return kExitOk;
}

int run_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& rule_name, const std::string& plan_path,
              const std::string& report_path, const std::string& format) {
  const topt::Instance inst = topt::load_instance(instance_path);
  const topt::InstanceSolveResult result =
      topt::solve_instance(inst, flags.config(true), parse_rule(rule_name));

  json doc;
  doc["status"] = topt::to_string(result.status);
  if (!result.infeasible_reason.empty()) {
    doc["reason"] = result.infeasible_reason;
  }
  doc["stacker_stage"] = report_to_json(result.stacker_report);
  if (result.trolley_report) {
    doc["trolley_stage"] = report_to_json(*result.trolley_report);
  }
  doc["limit_rule"] = to_string(parse_rule(rule_name));
  if (result.plan) {
    doc["trolleys"] = result.plan->trolley_count;
    doc["stackers"] = result.plan->stacker_count;
  }
  if (!report_path.empty()) {
    topt::write_text_file(report_path, doc.dump(2) + "\n");
  }

  if (result.plan) {
    const std::string rendered = format == "text"
                                     ? topt::render_plan_text(*result.plan)
                                     : topt::render_plan_csv(*result.plan);
    if (plan_path.empty()) {
      std::cout << rendered;
    } else {
      topt::write_text_file(plan_path, rendered);
      std::cout << "plan: " << result.plan->trolley_count << " trolleys, "
                << result.plan->stacker_count << " stackers ("
                << topt::to_string(result.status) << ")\n";
    }
  }

  if (result.status == topt::SolveStatus::Infeasible) {
    return fail("E_INFEASIBLE", result.infeasible_reason, kExitInfeasible);
  }
  if (result.status == topt::SolveStatus::LimitReached) {
    std::cerr << "E_LIMIT: stopped at a solver limit"
              << (result.plan ? " (best feasible plan written)" : "") << "\n";
    return kExitLimit;
  }
  return kExitOk;
}

int run_export_lp(const std::string& instance_path, const std::string& stage,
                  const std::string& rule_name, bool global_big_m,
                  bool no_down_links, const SolveFlags& flags,
                  const std::string& out_path) {
  const topt::Instance inst = topt::load_instance(instance_path);
  topt::ModelOptions opts;
  opts.tight_big_m = !global_big_m;
  opts.emit_down_links = !no_down_links;

  topt::Subproblem sp;
  if (stage == "stacker") {
    sp = topt::build_stacker_subproblem(inst);
  } else if (stage == "trolley") {
    const topt::SolveReport stacker_report =
        topt::solve(topt::build_stacker_subproblem(inst), flags.config(false));
    if (!stacker_report.best) {
      return fail("E_INFEASIBLE", "stacker stage has no feasible assignment",
                  kExitInfeasible);
    }
    const auto limits = topt::derive_trolley_limits(
        inst, *stacker_report.best, parse_rule(rule_name));
    sp = topt::build_trolley_subproblem(inst, limits);
  } else {
    return fail("E_USAGE", "stage must be trolley|stacker", kExitValidation);
  }

  const topt::MilpModel model = topt::build_model(sp, opts);
  const std::string text = topt::emit_lp_text(model);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    topt::write_text_file(out_path, text);
    std::cout << "wrote " << out_path << " (" << model.variables.size()
              << " variables, " << model.constraints.size()
              << " constraints)\n";
  }
  return kExitOk;
}

int run_sweep(const std::string& instance_path, const std::vector<int>& limits,
              const SolveFlags& flags, const std::string& out_path) {
  const topt::Instance inst = topt::load_instance(instance_path);
  const auto rows = topt::sensitivity_sweep(inst, limits, flags.config(false));

  std::ostringstream out;
  out << "limit,status,objective,nodes,elapsed_s\n";
  for (const auto& row : rows) {
    out << row.limit << ',' << topt::to_string(row.status) << ',';
    if (row.objective) out << *row.objective;
    char elapsed[32];
    std::snprintf(elapsed, sizeof(elapsed), "%.3f", row.elapsed_s);
    out << ',' << row.nodes << ',' << elapsed << '\n';
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    topt::write_text_file(out_path, out.str());
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
  }
  return kExitOk;
}

int run_report(const std::string& plan_path, const std::string& format) {
  const topt::LoadingPlan plan =
      topt::parse_plan_csv(topt::read_text_file(plan_path));
  std::cout << (format == "csv" ? topt::render_plan_csv(plan)
                                : topt::render_plan_text(plan));
  return kExitOk;
}

int run_import_components(const std::string& csv_path,
                          const std::string& base_path,
                          const std::string& out_path) {
  const auto components =
      topt::components_from_csv(topt::read_text_file(csv_path));
  topt::Instance inst =
      topt::instance_from_json(topt::read_text_file(base_path));
  inst.components = components;
  const auto violations = topt::validate_instance(inst);
  if (!violations.empty()) {
    throw topt::ValidationError(violations);
  }
  topt::save_instance(inst, out_path);
  std::cout << "wrote " << out_path << " (" << components.size()
            << " components imported)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trolley and stacker loading optimiser"};
  app.require_subcommand(1);

  std::string instance_path, out_path, plan_path, report_path;
  std::string preset_name, spec_path, stage = "trolley";
  std::string rule_name = "per-pcb", format = "csv";
  std::optional<std::uint64_t> seed;
  std::vector<int> limits;
  bool global_big_m = false, no_down_links = false;
  SolveFlags flags;

  auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
  validate_cmd->add_option("instance", instance_path)->required();

  auto* generate_cmd =
      app.add_subcommand("generate", "write a statistics-matched instance");
  generate_cmd->add_option("--preset", preset_name, "dataset-a or dataset-b");
  generate_cmd->add_option("--spec", spec_path, "generator spec json file");
  generate_cmd->add_option("--seed", seed, "override the random seed");
  generate_cmd->add_option("-o,--out", out_path)->required();

  flags.log_every = 500000;  // solve streams progress on long runs by default
  auto* solve_cmd = app.add_subcommand("solve", "solve both stages and write the plan");
  solve_cmd->add_option("instance", instance_path)->required();
  solve_cmd->add_option("--plan", plan_path, "plan output file (stdout if omitted)");
  solve_cmd->add_option("--report", report_path, "stage report json file");
  solve_cmd->add_option("--rule", rule_name, "trolley limit rule: per-pcb|uniform");
  solve_cmd->add_option("--format", format, "plan format: csv|text");
  add_solve_flags(solve_cmd, flags);

  auto* export_cmd = app.add_subcommand("export-lp", "write the stage model in LP text form");
  export_cmd->add_option("instance", instance_path)->required();
  export_cmd->add_option("--stage", stage, "trolley|stacker");
  export_cmd->add_option("--rule", rule_name, "trolley limit rule: per-pcb|uniform");
  export_cmd->add_flag("--global-big-m", global_big_m, "one large linking constant instead of per-pcb");
  export_cmd->add_flag("--no-down-links", no_down_links, "drop the z <= sum(x) family");
  export_cmd->add_option("-o,--out", out_path, "output file (stdout if omitted)");
  add_solve_flags(export_cmd, flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "re-solve under uniform container limits");
  sweep_cmd->add_option("instance", instance_path)->required();
  sweep_cmd->add_option("--limits", limits, "limit values")->required()->delimiter(',');
  sweep_cmd->add_option("-o,--out", out_path, "table output file (stdout if omitted)");
  add_solve_flags(sweep_cmd, flags);

  std::string report_format = "text";
  auto* report_cmd = app.add_subcommand("report", "render a saved plan");
  report_cmd->add_option("plan", plan_path)->required();
  report_cmd->add_option("--format", report_format, "text|csv");

  std::string csv_path, base_path;
  auto* import_cmd = app.add_subcommand(
      "import-components", "replace an instance's components from a flat csv");
  import_cmd->add_option("csv", csv_path)->required();
  import_cmd->add_option("--into", base_path, "instance document supplying line and pcbs")
      ->required();
  import_cmd->add_option("-o,--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(instance_path);
    if (generate_cmd->parsed())
      return run_generate(preset_name, spec_path, seed, out_path);
    if (solve_cmd->parsed())
      return run_solve(instance_path, flags, rule_name, plan_path, report_path,
                       format);
    if (export_cmd->parsed())
      return run_export_lp(instance_path, stage, rule_name, global_big_m,
                           no_down_links, flags, out_path);
    if (sweep_cmd->parsed()) return run_sweep(instance_path, limits, flags, out_path);
    if (report_cmd->parsed()) return run_report(plan_path, report_format);
    if (import_cmd->parsed())
      return run_import_components(csv_path, base_path, out_path);
  } catch (const topt::ValidationError& e) {
    for (const auto& v : e.violations()) {
      std::cout << v.kind << " [" << v.subject << "] " << v.detail << "\n";
    }
    return fail("E_VALIDATION", e.what(), kExitValidation);
  } catch (const topt::InfeasibleError& e) {
    return fail("E_INFEASIBLE", e.what(), kExitInfeasible);
  } catch (const topt::ParseError& e) {
    return fail("E_PARSE", e.what(), kExitIo);
  } catch (const topt::IoError& e) {
    return fail("E_IO", e.what(), kExitIo);
  } catch (const topt::LookupError& e) {
    return fail("E_USAGE", e.what(), kExitValidation);
  } catch (const topt::GenerationError& e) {
    return fail("E_GENERATE", e.what(), kExitValidation);
  } catch (const topt::InputError& e) {
    return fail("E_USAGE", e.what(), kExitValidation);
  } catch (const std::exception& e) {
    return fail("E_INTERNAL", e.what(), kExitIo);
  }
  return kExitOk;
}
