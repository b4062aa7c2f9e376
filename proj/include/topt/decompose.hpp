#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topt/model.hpp"

namespace topt {

// How a PCB is charged for the line positions its stackers occupy.
//   PerPcbStackerCount:    charged only for stackers holding its own
//                          components (the less restrictive reading).
//   UniformStackerReserve: charged for every used stacker as soon as it
//                          touches any stacker.
enum class TrolleyLimitRule { PerPcbStackerCount, UniformStackerReserve };

std::string to_string(TrolleyLimitRule rule);

// Record of how the two-container-kind problem was split: the stacker
// subproblem, the charging rule, and the positions each PCB lost to
// stackers. The derived trolley limit is container_positions - reserved.
struct DecompositionPlan {
  Subproblem stacker_subproblem;
  TrolleyLimitRule rule = TrolleyLimitRule::PerPcbStackerCount;
  std::map<std::string, int> reserved;  // PCB id -> positions taken by stackers
};

/// Stacker-class items only; capacity and budget from the line's stacker
/// figures; every PCB keeps a (possibly empty) group with limit
/// max_stackers.
Subproblem build_stacker_subproblem(const Instance& inst);

/// Per-PCB trolley limits from a feasible stacker assignment. Throws
/// InfeasibleError naming the PCB whose trolley demand cannot fit under the
/// derived limit.
std::map<std::string, int> derive_trolley_limits(
    const Instance& inst, const Solution& stacker_solution,
    TrolleyLimitRule rule = TrolleyLimitRule::PerPcbStackerCount);

DecompositionPlan plan_decomposition(
    const Instance& inst, const Solution& stacker_solution,
    TrolleyLimitRule rule = TrolleyLimitRule::PerPcbStackerCount);

/// Trolley-class items with the given per-PCB limits. Limits above the
/// trolley budget are clamped to it (a spread can never exceed the budget);
/// a limit <= 0 raises InfeasibleError.
Subproblem build_trolley_subproblem(const Instance& inst,
                                    const std::map<std::string, int>& limits);

struct PlanContainer {
  int id = 0;  // plan-wide container id, 1-based, trolleys first
  ContainerClass kind = ContainerClass::Trolley;
  std::vector<std::string> components;
  int used_slots = 0;
  int capacity = 0;
};

// Combined loading plan across both container kinds.
struct LoadingPlan {
  std::vector<PlanContainer> containers;
  std::vector<std::pair<std::string, std::vector<int>>> pcb_pulls;  // by PCB id
  int trolley_count = 0;
  int stacker_count = 0;
  SolveStatus trolley_status = SolveStatus::Feasible;
  SolveStatus stacker_status = SolveStatus::Feasible;
};

/// Merges the two stage solutions into one plan. Containers are renumbered
/// plan-wide (trolleys 1..n, stackers n+1..n+m). Throws InputError if the
/// solutions overlap or fail to cover the instance's components.
LoadingPlan merge_solutions(const Instance& inst, const Solution& trolley,
                            const Solution& stacker);

}  // namespace topt
