#include "topt/heuristics.hpp"

#include <algorithm>
#include <numeric>

#include "topt/oracle.hpp"

namespace topt {

std::string to_string(OrderPolicy policy) {
  switch (policy) {
    case OrderPolicy::SizeThenUsage:
      return "size_then_usage";
    case OrderPolicy::SizeOnly:
      return "size_only";
    case OrderPolicy::UsageThenSize:
      return "usage_then_size";
    case OrderPolicy::GroupThenSize:
      return "group_then_size";
  }
  return "unknown";
}

const std::vector<OrderPolicy>& all_order_policies() {
  static const std::vector<OrderPolicy> policies = {
      OrderPolicy::SizeThenUsage, OrderPolicy::SizeOnly,
      OrderPolicy::UsageThenSize, OrderPolicy::GroupThenSize};
  return policies;
}

namespace {

std::vector<int> usage_counts(const Subproblem& sp) {
  std::vector<int> counts(sp.items.size(), 0);
  for (const auto& [pcb_id, group] : sp.pcbs) {
    for (int idx : group.items) {
      if (idx >= 0 && idx < static_cast<int>(counts.size())) {
        ++counts[idx];
      }
    }
  }
  return counts;
}

// pcb indices per item, with the subproblem's pcb map order as index space.
std::vector<std::vector<int>> memberships(const Subproblem& sp) {
  std::vector<std::vector<int>> member(sp.items.size());
  int p = 0;
  for (const auto& [pcb_id, group] : sp.pcbs) {
    for (int idx : group.items) {
      member[idx].push_back(p);
    }
    ++p;
  }
  return member;
}

}  // namespace

std::vector<int> item_order(const Subproblem& sp, OrderPolicy policy) {
  const std::vector<int> usage = usage_counts(sp);
  std::vector<int> order(sp.items.size());
  std::iota(order.begin(), order.end(), 0);
  auto by_id = [&](int a, int b) { return sp.items[a].id < sp.items[b].id; };

  if (policy == OrderPolicy::GroupThenSize) {
    // anchor = position of the first pcb (in id order) requiring the item;
    // items nobody requires go last
    std::vector<int> anchor(sp.items.size(),
                            static_cast<int>(sp.pcbs.size()));
    int p = 0;
    for (const auto& [pcb_id, group] : sp.pcbs) {
      for (int idx : group.items) {
        anchor[idx] = std::min(anchor[idx], p);
      }
      ++p;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (anchor[a] != anchor[b]) return anchor[a] < anchor[b];
      if (sp.items[a].size != sp.items[b].size) {
        return sp.items[a].size > sp.items[b].size;
      }
      return by_id(a, b);
    });
    return order;
  }

  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int sa = sp.items[a].size, sb = sp.items[b].size;
    const int ua = usage[a], ub = usage[b];
    switch (policy) {
      case OrderPolicy::SizeThenUsage:
        if (sa != sb) return sa > sb;
        if (ua != ub) return ua > ub;
        return by_id(a, b);
      case OrderPolicy::SizeOnly:
        if (sa != sb) return sa > sb;
        return by_id(a, b);
      case OrderPolicy::UsageThenSize:
        if (ua != ub) return ua > ub;
        if (sa != sb) return sa > sb;
        return by_id(a, b);
      default:
        break;
    }
    return by_id(a, b);
  });
  return order;
}

Bound lower_bound(const Subproblem& sp) {
  Bound bound;
  if (sp.capacity < 1) {
    return bound;
  }

  long long total = 0;
  long long over_half = 0;   // items that cannot share a container pairwise
  long long exact_half = 0;  // items of exactly half capacity pair up
  for (const auto& item : sp.items) {
    total += item.size;
    if (2 * item.size > sp.capacity) {
      ++over_half;
    } else if (2 * item.size == sp.capacity) {
      ++exact_half;
    }
  }

  const long long slot_sum = ceil_div(total, sp.capacity);
  const long long half_pairing = over_half + (exact_half + 1) / 2;

  bound.lower = static_cast<int>(std::max(slot_sum, half_pairing));
  if (slot_sum == bound.lower) bound.certificates.push_back("slot_sum");
  if (half_pairing == bound.lower && bound.lower > 0) {
    bound.certificates.push_back("half_pairing");
  }
  return bound;
}

Bound bound_with_incumbent(const Subproblem& sp) {
  Bound bound = lower_bound(sp);
  const PackResult packed = greedy_best_of(sp, all_order_policies());
  if (packed.ok()) {
    bound.upper = packed.solution->objective();
  }
  return bound;
}

namespace {

struct PackState {
  std::vector<int> residual;       // per container, 1-based
  std::vector<int> pcb_on;         // (container * P + p) item tally
  std::vector<int> spread;         // per pcb
  std::vector<int> limits;         // per pcb
  std::vector<std::string> pcb_id; // pcb index -> id
  int open = 0;
  int pcb_count = 0;

  PackState(const Subproblem& sp)
      : residual(sp.max_containers + 1, sp.capacity),
        pcb_on((sp.max_containers + 1) * std::max<std::size_t>(sp.pcbs.size(), 1), 0),
        spread(sp.pcbs.size(), 0),
        pcb_count(static_cast<int>(sp.pcbs.size())) {
    for (const auto& [id, group] : sp.pcbs) {
      pcb_id.push_back(id);
      limits.push_back(std::min(group.limit, sp.max_containers));
    }
  }

  int tally(int t, int p) const { return pcb_on[t * pcb_count + p]; }

  bool spread_allows(int t, const std::vector<int>& member) const {
    for (int p : member) {
      if (tally(t, p) == 0 && spread[p] >= limits[p]) {
        return false;
      }
    }
    return true;
  }

  // First pcb whose limit vetoes container t, for failure reporting.
  int vetoing_pcb(int t, const std::vector<int>& member) const {
    for (int p : member) {
      if (tally(t, p) == 0 && spread[p] >= limits[p]) {
        return p;
      }
    }
    return -1;
  }

  void place(int t, int size, const std::vector<int>& member) {
    residual[t] -= size;
    open = std::max(open, t);
    for (int p : member) {
      if (pcb_on[t * pcb_count + p]++ == 0) {
        ++spread[p];
      }
    }
  }
};

}  // namespace

PackResult greedy_pack(const Subproblem& sp, OrderPolicy policy) {
  PackResult result;
  Solution sol;
  sol.solver = "greedy:" + to_string(policy);
  sol.status = SolveStatus::Feasible;

  if (sp.items.empty()) {
    result.solution = std::move(sol);
    return result;
  }
  if (sp.capacity < 1 || sp.max_containers < 1) {
    result.failure = PackFailure{sp.items.front().id, "",
                                 "no container capacity available"};
    return result;
  }

  const auto member = memberships(sp);
  PackState state(sp);

  for (int idx : item_order(sp, policy)) {
    const Item& item = sp.items[idx];
    int chosen = 0;
    int veto_pcb = -1;
    for (int t = 1; t <= state.open && chosen == 0; ++t) {
      if (state.residual[t] < item.size) continue;
      if (!state.spread_allows(t, member[idx])) {
        veto_pcb = state.vetoing_pcb(t, member[idx]);
        continue;
      }
      chosen = t;
    }
    if (chosen == 0 && state.open < sp.max_containers) {
      const int t = state.open + 1;
      if (item.size <= sp.capacity && state.spread_allows(t, member[idx])) {
        chosen = t;
      } else if (item.size <= sp.capacity) {
        veto_pcb = state.vetoing_pcb(t, member[idx]);
      }
    }
    if (chosen == 0) {
      PackFailure failure;
      failure.item_id = item.id;
      if (veto_pcb >= 0) {
        failure.pcb_id = state.pcb_id[veto_pcb];
        failure.reason = "no eligible container for item '" + item.id +
                         "' within the container limit of pcb '" +
                         failure.pcb_id + "'";
      } else if (item.size > sp.capacity) {
        failure.reason = "item '" + item.id + "' of size " +
                         std::to_string(item.size) + " exceeds capacity " +
                         std::to_string(sp.capacity);
      } else {
        failure.reason = "container budget exhausted placing item '" +
                         item.id + "'";
      }
      result.failure = std::move(failure);
      return result;
    }
    state.place(chosen, item.size, member[idx]);
    sol.assignment.emplace(item.id, chosen);
  }

  result.solution = std::move(sol);
  return result;
}

PackResult greedy_best_of(const Subproblem& sp,
                          const std::vector<OrderPolicy>& policies) {
  PackResult best;
  for (OrderPolicy policy : policies) {
    PackResult candidate = greedy_pack(sp, policy);
    if (!candidate.ok()) {
      if (!best.ok() && !best.failure) {
        best.failure = candidate.failure;
      }
      continue;
    }
    if (!best.ok() ||
        candidate.solution->objective() < best.solution->objective()) {
      best = std::move(candidate);
    }
  }
  return best;
}

PackResult repair(const Subproblem& sp, const Solution& draft) {
  PackResult result;

  auto violations = check_feasible(sp, draft);
  if (violations.empty()) {
    result.solution = draft;
    return result;
  }
  for (const auto& v : violations) {
    if (v.kind != "spread_overflow") {
      result.failure = PackFailure{
          "", v.subject, "draft has non-spread violation: " + v.detail};
      return result;
    }
  }

  const auto member = memberships(sp);
  PackState state(sp);
  std::vector<int> assign(sp.items.size(), 0);
  for (std::size_t i = 0; i < sp.items.size(); ++i) {
    const int t = draft.assignment.at(sp.items[i].id);
    assign[i] = t;
    state.place(t, sp.items[i].size, member[static_cast<int>(i)]);
  }

  auto move_item = [&](int idx, int from, int to) {
    const int size = sp.items[idx].size;
    state.residual[from] += size;
    state.residual[to] -= size;
    for (int p : member[idx]) {
      if (--state.pcb_on[from * state.pcb_count + p] == 0) --state.spread[p];
      if (state.pcb_on[to * state.pcb_count + p]++ == 0) ++state.spread[p];
    }
    assign[idx] = to;
  };

  // Containers a move may target: already in the over-spread pcb's spread,
  // and the move must not push any other pcb of the item past its limit.
  auto move_target = [&](int idx, int from, int over_pcb) {
    for (int t = 1; t <= sp.max_containers; ++t) {
      if (t == from) continue;
      if (state.tally(t, over_pcb) == 0) continue;
      if (state.residual[t] < sp.items[idx].size) continue;
      bool ok = true;
      for (int p : member[idx]) {
        if (p == over_pcb) continue;
        if (state.tally(t, p) == 0 && state.spread[p] >= state.limits[p]) {
          ok = false;
          break;
        }
      }
      if (ok) return t;
    }
    return 0;
  };

  for (int p = 0; p < state.pcb_count; ++p) {
    if (state.spread[p] <= state.limits[p]) continue;

    // One pass: try to vacate this pcb's items from its lightest containers.
    std::vector<std::pair<int, int>> loads;  // (pcb item tally, container)
    for (int t = 1; t <= sp.max_containers; ++t) {
      if (state.tally(t, p) > 0) {
        loads.emplace_back(state.tally(t, p), t);
      }
    }
    std::sort(loads.begin(), loads.end());
    for (const auto& [tally, t] : loads) {
      if (state.spread[p] <= state.limits[p]) break;
      // All of p's items on t must find new homes for t to leave the spread.
      std::vector<std::pair<int, int>> moves;
      bool all_moved = true;
      for (std::size_t i = 0; i < sp.items.size() && all_moved; ++i) {
        const int idx = static_cast<int>(i);
        if (assign[idx] != t) continue;
        bool belongs = false;
        for (int q : member[idx]) {
          if (q == p) belongs = true;
        }
        if (!belongs) continue;
        const int target = move_target(idx, t, p);
        if (target == 0) {
          all_moved = false;
        } else {
          move_item(idx, t, target);
          moves.emplace_back(idx, t);
        }
      }
      if (!all_moved) {
        for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
          move_item(it->first, assign[it->first], it->second);
        }
      }
    }
    if (state.spread[p] > state.limits[p]) {
      result.failure = PackFailure{
          "", state.pcb_id[p],
          "could not reduce spread of pcb '" + state.pcb_id[p] + "' to " +
              std::to_string(state.limits[p])};
      return result;
    }
  }

  Solution repaired;
  repaired.solver = "repair(" + draft.solver + ")";
  repaired.status = SolveStatus::Feasible;
  for (std::size_t i = 0; i < sp.items.size(); ++i) {
    repaired.assignment.emplace(sp.items[i].id, assign[i]);
  }
  if (!check_feasible(sp, repaired).empty()) {
    result.failure =
        PackFailure{"", "", "repair pass did not reach feasibility"};
    return result;
  }
  result.solution = std::move(repaired);
  return result;
}

}  // namespace topt
