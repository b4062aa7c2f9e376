#include "topt/oracle.hpp"

#include <algorithm>
#include <string>

namespace topt {

std::vector<Violation> check_feasible(const Subproblem& sp,
                                      const Solution& sol) {
  std::vector<Violation> out;

  std::vector<int> assigned(sp.items.size(), 0);
  std::vector<long long> load(sp.max_containers + 1, 0);
  for (std::size_t i = 0; i < sp.items.size(); ++i) {
    auto it = sol.assignment.find(sp.items[i].id);
    if (it == sol.assignment.end()) {
      out.push_back({"missing_assignment", sp.items[i].id,
                     "item '" + sp.items[i].id + "' is not assigned"});
      continue;
    }
    const int t = it->second;
    if (t < 1 || t > sp.max_containers) {
      out.push_back({"container_out_of_range", sp.items[i].id,
                     "item '" + sp.items[i].id + "' assigned to container " +
                         std::to_string(t) + ", budget is " +
                         std::to_string(sp.max_containers)});
      continue;
    }
    assigned[i] = t;
    load[t] += sp.items[i].size;
  }

  std::vector<char> known(sp.items.size(), 0);
  for (const auto& [item_id, t] : sol.assignment) {
    bool found = false;
    for (const auto& item : sp.items) {
      if (item.id == item_id) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.push_back({"unknown_item", item_id,
                     "assignment mentions unknown item '" + item_id + "'"});
    }
  }

  for (int t = 1; t <= sp.max_containers; ++t) {
    if (load[t] > sp.capacity) {
      out.push_back({"capacity_overflow", std::to_string(t),
                     "container " + std::to_string(t) + " holds " +
                         std::to_string(load[t]) + " slots, capacity " +
                         std::to_string(sp.capacity) + ", overflow " +
                         std::to_string(load[t] - sp.capacity)});
    }
  }

  for (const auto& [pcb_id, group] : sp.pcbs) {
    std::set<int> spread;
    for (int idx : group.items) {
      if (assigned[idx] > 0) {
        spread.insert(assigned[idx]);
      }
    }
    if (static_cast<int>(spread.size()) > group.limit) {
      out.push_back({"spread_overflow", pcb_id,
                     "pcb '" + pcb_id + "' spans " +
                         std::to_string(spread.size()) +
                         " containers, limit " + std::to_string(group.limit)});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.subject < b.subject;
                   });
  return out;
}

namespace {

struct Enumeration {
  const Subproblem& sp;
  std::vector<int> assign;
  int best_objective = 0;
  std::vector<int> best_assign;
  bool found = false;

  explicit Enumeration(const Subproblem& s)
      : sp(s), assign(s.items.size(), 0) {}

  Solution to_solution(const std::vector<int>& a) const {
    Solution sol;
    sol.solver = "brute_force";
    sol.status = SolveStatus::Feasible;
    for (std::size_t i = 0; i < sp.items.size(); ++i) {
      sol.assignment.emplace(sp.items[i].id, a[i]);
    }
    return sol;
  }

  // First-touch canonical form: item i may open at most one new container,
  // so container indices up to max_used+1 are the only candidates.
  void walk(std::size_t i, int max_used) {
    if (i == sp.items.size()) {
      if (!check_feasible(sp, to_solution(assign)).empty()) return;
      if (!found || max_used < best_objective) {
        found = true;
        best_objective = max_used;
        best_assign = assign;
      }
      return;
    }
    if (found && max_used >= best_objective) return;  // cannot improve
    const int hi = std::min(max_used + 1, sp.max_containers);
    for (int t = 1; t <= hi; ++t) {
      assign[i] = t;
      walk(i + 1, std::max(max_used, t));
    }
    assign[i] = 0;
  }
};

}  // namespace

OracleResult brute_force_optimum(const Subproblem& sp, int max_items) {
  if (static_cast<int>(sp.items.size()) > max_items) {
    throw InputError("brute force refused: " +
                     std::to_string(sp.items.size()) + " items exceed the " +
                     std::to_string(max_items) +
                     "-item cap (raise max_items to override)");
  }

  OracleResult result;
  if (sp.items.empty()) {
    result.feasible = true;
    result.objective = 0;
    result.witness.solver = "brute_force";
    result.witness.status = SolveStatus::Optimal;
    return result;
  }
  if (sp.max_containers < 1) {
    return result;
  }

  Enumeration e(sp);
  e.walk(0, 0);
  if (!e.found) {
    return result;
  }
  result.feasible = true;
  result.objective = e.best_objective;
  result.witness = e.to_solution(e.best_assign);
  result.witness.status = SolveStatus::Optimal;
  return result;
}

Subproblem reduce_bpp_to_top(const BppInstance& bpp) {
  if (bpp.capacity < 1 || bpp.k < 1) {
    throw InputError("bin packing instance needs positive capacity and k");
  }
  for (int size : bpp.sizes) {
    if (size < 1 || size > bpp.capacity) {
      throw InputError("bin packing item size " + std::to_string(size) +
                       " outside [1, capacity]");
    }
  }

  Subproblem sp;
  sp.capacity = bpp.capacity;
  sp.max_containers = bpp.k;
  PcbGroup all;
  all.limit = bpp.k;
  for (std::size_t i = 0; i < bpp.sizes.size(); ++i) {
    sp.items.push_back({"item_" + std::to_string(i + 1), bpp.sizes[i]});
    all.items.push_back(static_cast<int>(i));
  }
  sp.pcbs.emplace("all", std::move(all));
  return sp;
}

}  // namespace topt
