#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topt/decompose.hpp"
#include "topt/model.hpp"

namespace topt {

struct SolverProgress {
  long long nodes = 0;
  std::optional<int> incumbent;
  int bound = 0;
  double elapsed_s = 0.0;
};

struct SolverConfig {
  std::optional<double> time_limit_s;
  std::optional<long long> node_limit;
  bool use_incumbent = true;      // seed the search from greedy_pack
  bool symmetry_breaking = true;  // a new container must be the next index
  long long log_every = 0;        // node interval for progress events; 0 = off
  std::function<void(const SolverProgress&)> on_progress;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> best;
  int bound = 0;        // best proven lower bound
  long long nodes = 0;  // explored search nodes
  double elapsed_s = 0.0;
};

/// Depth-first branch-and-bound over policy-ordered items. Children are
/// pruned on residual capacity, on PCB spread limits, and on the node bound
/// (open containers plus the slot-sum bound of the unassigned remainder over
/// the remaining free capacity). Optimality is proven by exhaustion or by
/// matching the root lower bound; hitting a limit yields LimitReached with
/// the best incumbent and the proven bound.
SolveReport solve(const Subproblem& sp, const SolverConfig& cfg = {});

struct InstanceSolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::string infeasible_reason;  // names the failing stage or PCB
  std::optional<LoadingPlan> plan;
  SolveReport stacker_report;
  std::optional<SolveReport> trolley_report;
  std::map<std::string, int> trolley_limits;
};

/// Full pipeline: stacker stage, trolley-limit derivation, trolley stage,
/// merge. The stacker stage is solved first; its assignment fixes the
/// per-PCB trolley limits.
InstanceSolveResult solve_instance(
    const Instance& inst, const SolverConfig& cfg = {},
    TrolleyLimitRule rule = TrolleyLimitRule::PerPcbStackerCount);

struct SweepRow {
  int limit = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<int> objective;  // trolley-stage objective when solvable
  long long nodes = 0;
  double elapsed_s = 0.0;
};

/// Re-solves the trolley stage with every PCB limit overridden by each value
/// of `limits` in turn (the stacker stage is shared). Rows come back sorted
/// by limit. Throws InputError on an empty list or a limit < 1.
std::vector<SweepRow> sensitivity_sweep(const Instance& inst,
                                        std::vector<int> limits,
                                        const SolverConfig& cfg = {});

}  // namespace topt
