#pragma once

#include <optional>
#include <vector>

#include "topt/model.hpp"

namespace topt {

// Decision-form bin packing: can `sizes` be packed into k bins of the given
// capacity?
struct BppInstance {
  std::vector<int> sizes;
  int capacity = 0;
  int k = 0;
};

/// Feasibility checker for a subproblem solution: assignment totality and
/// range, per-container capacity, per-PCB spread. Empty list iff feasible;
/// ordering by (kind, subject).
std::vector<Violation> check_feasible(const Subproblem& sp, const Solution& sol);

struct OracleResult {
  bool feasible = false;
  int objective = 0;
  Solution witness;  // present when feasible
};

/// Exhaustive reference optimizer. Enumerates assignments in first-touch
/// canonical form (item i may only use containers 1..min(i, max_containers)),
/// filters complete assignments through check_feasible and keeps the minimum
/// container count. Exponential by design: refuses instances with more than
/// `max_items` items (throws InputError) so oversized runs fail fast.
OracleResult brute_force_optimum(const Subproblem& sp, int max_items = 10);

/// Bin packing as a one-PCB subproblem: a single synthetic PCB requires all
/// items and may span k containers. The BPP answer is YES iff the subproblem
/// packs into at most k containers.
Subproblem reduce_bpp_to_top(const BppInstance& bpp);

}  // namespace topt
