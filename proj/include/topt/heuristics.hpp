#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topt/model.hpp"

namespace topt {

// Item orderings for greedy packing and branching. The default places large
// items first and breaks ties towards items many PCBs share, which keeps PCB
// families clustered on few containers. GroupThenSize instead walks the PCBs
// in id order and emits each one's still-unordered items largest first; on
// instances with many PCBs sharing component pools it keeps each PCB's items
// on a handful of adjacent containers.
enum class OrderPolicy { SizeThenUsage, SizeOnly, UsageThenSize, GroupThenSize };

/// The policies greedy_best_of races by default.
const std::vector<OrderPolicy>& all_order_policies();

std::string to_string(OrderPolicy policy);

/// Item indices of `sp` sorted by the policy (deterministic; final tie-break
/// is the item id).
std::vector<int> item_order(const Subproblem& sp,
                            OrderPolicy policy = OrderPolicy::SizeThenUsage);

struct Bound {
  int lower = 0;
  std::optional<int> upper;                // from a concrete feasible solution
  std::vector<std::string> certificates;   // which bound rules attained lower
};

/// Combinatorial lower bound on the container count: the slot-sum bound and
/// the half-capacity pairing bound, whichever is larger.
Bound lower_bound(const Subproblem& sp);

/// lower_bound plus an upper bound from the best greedy packing, when one
/// exists.
Bound bound_with_incumbent(const Subproblem& sp);

struct PackFailure {
  std::string item_id;  // item that could not be placed
  std::string pcb_id;   // PCB whose limit blocked it, if any
  std::string reason;
};

struct PackResult {
  std::optional<Solution> solution;
  std::optional<PackFailure> failure;

  bool ok() const { return solution.has_value(); }
};

/// First-fit over policy-ordered items. A placement must respect container
/// capacity and keep every affected PCB's projected spread within its limit;
/// a new container is opened only when no open one is eligible and budget
/// remains.
PackResult greedy_pack(const Subproblem& sp,
                       OrderPolicy policy = OrderPolicy::SizeThenUsage);

/// Runs greedy_pack under each policy and keeps the best feasible result
/// (lowest objective, ties by policy order).
PackResult greedy_best_of(const Subproblem& sp,
                          const std::vector<OrderPolicy>& policies);

/// Single-pass repair of a draft whose only defects are PCB spread
/// overflows: items of over-spread PCBs are re-homed into containers already
/// in those PCBs' spreads, capacity permitting. Returns the first feasible
/// result or a failure.
PackResult repair(const Subproblem& sp, const Solution& draft);

}  // namespace topt
