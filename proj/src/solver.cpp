#include "topt/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "topt/heuristics.hpp"

namespace topt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PcbData {
  std::vector<std::string> ids;
  std::vector<int> limits;                // clamped to the container budget
  std::vector<std::vector<int>> member;   // item -> pcb indices
};

PcbData pcb_data(const Subproblem& sp) {
  PcbData data;
  data.member.resize(sp.items.size());
  int p = 0;
  for (const auto& [pcb_id, group] : sp.pcbs) {
    data.ids.push_back(pcb_id);
    data.limits.push_back(std::min(group.limit, sp.max_containers));
    for (int idx : group.items) {
      data.member[idx].push_back(p);
    }
    ++p;
  }
  return data;
}

// Structural reasons no assignment can exist, reported before any search.
std::optional<std::string> provably_infeasible(const Subproblem& sp,
                                               const PcbData& pcbs,
                                               int root_bound) {
  for (const auto& item : sp.items) {
    if (item.size > sp.capacity) {
      return "item '" + item.id + "' of size " + std::to_string(item.size) +
             " exceeds container capacity " + std::to_string(sp.capacity);
    }
  }
  int p = 0;
  for (const auto& [pcb_id, group] : sp.pcbs) {
    long long demand = 0;
    for (int idx : group.items) demand += sp.items[idx].size;
    if (demand > 0) {
      if (pcbs.limits[p] < 1) {
        return "pcb '" + pcb_id + "' has container limit " +
               std::to_string(group.limit);
      }
      if (ceil_div(demand, sp.capacity) > pcbs.limits[p]) {
        return "pcb '" + pcb_id + "' needs " +
               std::to_string(ceil_div(demand, sp.capacity)) +
               " containers but may span " + std::to_string(pcbs.limits[p]);
      }
    }
    ++p;
  }
  if (root_bound > sp.max_containers) {
    return "items need at least " + std::to_string(root_bound) +
           " containers, budget is " + std::to_string(sp.max_containers);
  }
  return std::nullopt;
}

Solution to_solution(const Subproblem& sp, const std::vector<int>& assign,
                     const std::string& solver, SolveStatus status) {
  Solution sol;
  sol.solver = solver;
  sol.status = status;
  for (std::size_t i = 0; i < sp.items.size(); ++i) {
    sol.assignment.emplace(sp.items[i].id, assign[i]);
  }
  return sol;
}

}  // namespace

SolveReport solve(const Subproblem& sp, const SolverConfig& cfg) {
  const auto start = Clock::now();
  SolveReport report;

  if ((cfg.time_limit_s && *cfg.time_limit_s <= 0) ||
      (cfg.node_limit && *cfg.node_limit <= 0)) {
    throw InputError("solver limits must be positive when present");
  }

  const int n = static_cast<int>(sp.items.size());
  const int T = sp.max_containers;
  const Bound root = lower_bound(sp);
  report.bound = root.lower;

  if (n == 0) {
    report.status = SolveStatus::Optimal;
    report.bound = 0;
    report.best = Solution{{}, "branch_and_bound", SolveStatus::Optimal};
    report.elapsed_s = seconds_since(start);
    return report;
  }
  if (sp.capacity < 1 || T < 1) {
    report.status = SolveStatus::Infeasible;
    report.elapsed_s = seconds_since(start);
    return report;
  }

  const PcbData pcbs = pcb_data(sp);
  const int P = static_cast<int>(pcbs.ids.size());

  if (auto reason = provably_infeasible(sp, pcbs, root.lower)) {
    report.status = SolveStatus::Infeasible;
    report.elapsed_s = seconds_since(start);
    return report;
  }

  // Incumbent from the greedy heuristic; optimal immediately if it matches
  // the root bound.
  std::vector<int> best_assign;
  int best_obj = std::numeric_limits<int>::max();
  std::string best_solver = "branch_and_bound";
  if (cfg.use_incumbent) {
    PackResult seeded = greedy_best_of(sp, all_order_policies());
    if (seeded.ok()) {
      best_obj = seeded.solution->objective();
      best_solver = seeded.solution->solver;
      best_assign.resize(n);
      for (int i = 0; i < n; ++i) {
        best_assign[i] = seeded.solution->assignment.at(sp.items[i].id);
      }
      if (best_obj == root.lower) {
        report.status = SolveStatus::Optimal;
        report.bound = best_obj;
        report.best =
            to_solution(sp, best_assign, best_solver, SolveStatus::Optimal);
        report.elapsed_s = seconds_since(start);
        return report;
      }
    }
  }

  const std::vector<int> perm = item_order(sp);
  std::vector<int> sizes(n);
  for (int i = 0; i < n; ++i) sizes[i] = sp.items[i].size;

  // Search state, updated in place with strict LIFO undo.
  std::vector<int> choice(n + 1, 0);
  std::vector<int> assign(n, 0);
  std::vector<int> load(T + 1, 0);
  std::vector<int> pcb_on(static_cast<std::size_t>(T + 1) * std::max(P, 1), 0);
  std::vector<int> spread(std::max(P, 1), 0);
  long long remaining = 0;
  for (int s : sizes) remaining += s;
  long long free_open = 0;  // total free capacity among non-empty containers
  int used = 0;
  int open_hi = 0;  // highest container index in use

  const long long cap = sp.capacity;
  bool limit_hit = false;
  int depth = 0;
  long long nodes = 0;

  auto place = [&](int item, int t) {
    const int size = sizes[item];
    if (load[t] == 0) {
      ++used;
      free_open += cap;
    }
    load[t] += size;
    free_open -= size;
    remaining -= size;
    open_hi = std::max(open_hi, t);
    assign[item] = t;
    for (int p : pcbs.member[item]) {
      if (pcb_on[static_cast<std::size_t>(t) * P + p]++ == 0) ++spread[p];
    }
  };
  auto unplace = [&](int item, int t) {
    const int size = sizes[item];
    for (int p : pcbs.member[item]) {
      if (--pcb_on[static_cast<std::size_t>(t) * P + p] == 0) --spread[p];
    }
    load[t] -= size;
    free_open += size;
    remaining += size;
    if (load[t] == 0) {
      --used;
      free_open -= cap;
      while (open_hi > 0 && load[open_hi] == 0) --open_hi;
    }
  };

  while (true) {
    if (cfg.node_limit && nodes >= *cfg.node_limit) {
      limit_hit = true;
      break;
    }
    if (cfg.time_limit_s && (nodes & 2047) == 0 &&
        seconds_since(start) >= *cfg.time_limit_s) {
      limit_hit = true;
      break;
    }

    if (depth == n) {
      if (used < best_obj) {
        best_obj = used;
        best_assign = assign;
        best_solver = "branch_and_bound";
      }
      if (best_obj <= root.lower) break;
      --depth;
      unplace(perm[depth], choice[depth]);
      continue;
    }

    const int item = perm[depth];
    const int branch_hi =
        cfg.symmetry_breaking ? std::min(open_hi + 1, T) : T;
    const int t = ++choice[depth];
    if (t > branch_hi) {
      if (depth == 0) break;
      --depth;
      unplace(perm[depth], choice[depth]);
      continue;
    }

    if (load[t] + sizes[item] > cap) continue;

    bool spread_ok = true;
    for (int p : pcbs.member[item]) {
      if (pcb_on[static_cast<std::size_t>(t) * P + p] == 0 &&
          spread[p] >= pcbs.limits[p]) {
        spread_ok = false;
        break;
      }
    }
    if (!spread_ok) continue;

    if (best_obj != std::numeric_limits<int>::max()) {
      const int used_next = used + (load[t] == 0 ? 1 : 0);
      const long long rem_next = remaining - sizes[item];
      const long long free_next =
          free_open + (load[t] == 0 ? cap : 0) - sizes[item];
      const long long extra =
          rem_next > free_next ? ceil_div(rem_next - free_next, cap) : 0;
      if (used_next + extra >= best_obj) continue;
    }

    place(item, t);
    ++nodes;
    if (cfg.log_every > 0 && cfg.on_progress && nodes % cfg.log_every == 0) {
      SolverProgress event;
      event.nodes = nodes;
      if (best_obj != std::numeric_limits<int>::max()) {
        event.incumbent = best_obj;
      }
      event.bound = report.bound;
      event.elapsed_s = seconds_since(start);
      cfg.on_progress(event);
    }
    ++depth;
    choice[depth] = 0;
  }

  report.nodes = nodes;
  report.elapsed_s = seconds_since(start);

  const bool has_best = best_obj != std::numeric_limits<int>::max();
  if (limit_hit) {
    report.status = SolveStatus::LimitReached;
    if (has_best) {
      report.best = to_solution(sp, best_assign, best_solver,
                                SolveStatus::Feasible);
    }
    return report;
  }
  if (!has_best) {
    report.status = SolveStatus::Infeasible;
    return report;
  }
  report.status = SolveStatus::Optimal;
  report.bound = best_obj;
  report.best =
      to_solution(sp, best_assign, best_solver, SolveStatus::Optimal);
  return report;
}

InstanceSolveResult solve_instance(const Instance& inst,
                                   const SolverConfig& cfg,
                                   TrolleyLimitRule rule) {
  InstanceSolveResult result;

  const Subproblem stacker_sp = build_stacker_subproblem(inst);
  result.stacker_report = solve(stacker_sp, cfg);
  if (result.stacker_report.status == SolveStatus::Infeasible) {
    result.status = SolveStatus::Infeasible;
    result.infeasible_reason = "stacker stage is infeasible";
    return result;
  }
  if (!result.stacker_report.best) {
    result.status = SolveStatus::LimitReached;
    result.infeasible_reason =
        "stacker stage hit its limit without a feasible assignment";
    return result;
  }

  try {
    result.trolley_limits =
        derive_trolley_limits(inst, *result.stacker_report.best, rule);
  } catch (const InfeasibleError& e) {
    result.status = SolveStatus::Infeasible;
    result.infeasible_reason = e.what();
    return result;
  }

  Subproblem trolley_sp;
  try {
    trolley_sp = build_trolley_subproblem(inst, result.trolley_limits);
  } catch (const InfeasibleError& e) {
    result.status = SolveStatus::Infeasible;
    result.infeasible_reason = e.what();
    return result;
  }

  result.trolley_report = solve(trolley_sp, cfg);
  if (result.trolley_report->status == SolveStatus::Infeasible) {
    result.status = SolveStatus::Infeasible;
    result.infeasible_reason = "trolley stage is infeasible";
    return result;
  }
  if (!result.trolley_report->best) {
    result.status = SolveStatus::LimitReached;
    result.infeasible_reason =
        "trolley stage hit its limit without a feasible assignment";
    return result;
  }

  result.plan = merge_solutions(inst, *result.trolley_report->best,
                                *result.stacker_report.best);
  result.status = (result.stacker_report.status == SolveStatus::Optimal &&
                   result.trolley_report->status == SolveStatus::Optimal)
                      ? SolveStatus::Optimal
                      : SolveStatus::LimitReached;
  return result;
}

std::vector<SweepRow> sensitivity_sweep(const Instance& inst,
                                        std::vector<int> limits,
                                        const SolverConfig& cfg) {
  if (limits.empty()) {
    throw InputError("sweep needs at least one limit value");
  }
  for (int limit : limits) {
    if (limit < 1) {
      throw InputError("sweep limits must be >= 1, got " +
                       std::to_string(limit));
    }
  }
  std::sort(limits.begin(), limits.end());

  // The stacker stage does not depend on the trolley limits; solve it once.
  const Subproblem stacker_sp = build_stacker_subproblem(inst);
  const SolveReport stacker_report = solve(stacker_sp, cfg);

  std::vector<SweepRow> rows;
  for (int limit : limits) {
    SweepRow row;
    row.limit = limit;
    if (stacker_report.status == SolveStatus::Infeasible ||
        !stacker_report.best) {
      row.status = SolveStatus::Infeasible;
      rows.push_back(row);
      continue;
    }
    std::map<std::string, int> uniform;
    for (const auto& pcb : inst.pcbs) {
      uniform.emplace(pcb.id, limit);
    }
    try {
      const Subproblem trolley_sp = build_trolley_subproblem(inst, uniform);
      const SolveReport trolley_report = solve(trolley_sp, cfg);
      row.status = trolley_report.status;
      row.nodes = trolley_report.nodes;
      row.elapsed_s = trolley_report.elapsed_s;
      if (trolley_report.best) {
        row.objective = trolley_report.best->objective();
      }
    } catch (const InfeasibleError&) {
      row.status = SolveStatus::Infeasible;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace topt
