#include "topt/decompose.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace topt {

std::string to_string(TrolleyLimitRule rule) {
  return rule == TrolleyLimitRule::PerPcbStackerCount ? "per_pcb_stacker_count"
                                                      : "uniform_stacker_reserve";
}

namespace {

// Class-filtered view of an instance: items of one class plus per-PCB groups
// restricted to that class. Every PCB keeps a group, empty or not.
Subproblem filter_by_class(const Instance& inst, ContainerClass cls,
                           int capacity, int max_containers) {
  Subproblem sp;
  sp.capacity = capacity;
  sp.max_containers = max_containers;

  std::unordered_map<std::string, int> item_index;
  for (const auto& comp : inst.components) {
    if (comp.cls == cls) {
      item_index.emplace(comp.id, static_cast<int>(sp.items.size()));
      sp.items.push_back({comp.id, comp.size});
    }
  }

  for (const auto& pcb : inst.pcbs) {
    PcbGroup group;
    std::unordered_set<std::string> seen;
    for (const auto& comp_id : pcb.required) {
      if (!seen.insert(comp_id).second) continue;
      auto it = item_index.find(comp_id);
      if (it != item_index.end()) {
        group.items.push_back(it->second);
      }
    }
    std::sort(group.items.begin(), group.items.end());
    sp.pcbs.emplace(pcb.id, std::move(group));
  }
  return sp;
}

}  // namespace

Subproblem build_stacker_subproblem(const Instance& inst) {
  Subproblem sp = filter_by_class(inst, ContainerClass::Stacker,
                                  inst.line.stacker_capacity,
                                  inst.line.max_stackers);
  // Stackers are bounded only by the global stacker cap; they never crowd
  // out a PCB's own trolley positions.
  for (auto& [pcb_id, group] : sp.pcbs) {
    group.limit = inst.line.max_stackers;
  }
  return sp;
}

std::map<std::string, int> derive_trolley_limits(const Instance& inst,
                                                 const Solution& stacker_solution,
                                                 TrolleyLimitRule rule) {
  const Subproblem stacker_sp = build_stacker_subproblem(inst);
  const auto spreads = stacker_solution.pcb_spread(stacker_sp);
  const int total_used = stacker_solution.objective();
  const int positions = inst.line.container_positions;

  std::map<std::string, int> limits;
  for (const auto& pcb : inst.pcbs) {
    auto it = spreads.find(pcb.id);
    const int touched = it == spreads.end() ? 0 : static_cast<int>(it->second.size());
    int reserved = 0;
    switch (rule) {
      case TrolleyLimitRule::PerPcbStackerCount:
        reserved = touched;
        break;
      case TrolleyLimitRule::UniformStackerReserve:
        reserved = touched > 0 ? total_used : 0;
        break;
    }
    const int limit = positions - reserved;

    const int demand =
        pcb_slot_demand(inst, pcb.id, ContainerClass::Trolley);
    if (demand > 0) {
      const long long needed = ceil_div(demand, inst.line.trolley_capacity);
      if (limit < needed) {
        throw InfeasibleError(
            pcb.id, "pcb '" + pcb.id + "' needs " + std::to_string(needed) +
                        " trolleys for " + std::to_string(demand) +
                        " slots but its container limit is " +
                        std::to_string(limit));
      }
    }
    limits.emplace(pcb.id, limit);
  }
  return limits;
}

DecompositionPlan plan_decomposition(const Instance& inst,
                                     const Solution& stacker_solution,
                                     TrolleyLimitRule rule) {
  DecompositionPlan plan;
  plan.stacker_subproblem = build_stacker_subproblem(inst);
  plan.rule = rule;
  const auto limits = derive_trolley_limits(inst, stacker_solution, rule);
  for (const auto& [pcb_id, limit] : limits) {
    plan.reserved.emplace(pcb_id, inst.line.container_positions - limit);
  }
  return plan;
}

Subproblem build_trolley_subproblem(const Instance& inst,
                                    const std::map<std::string, int>& limits) {
  Subproblem sp = filter_by_class(inst, ContainerClass::Trolley,
                                  inst.line.trolley_capacity,
                                  inst.line.max_trolleys);
  for (auto& [pcb_id, group] : sp.pcbs) {
    auto it = limits.find(pcb_id);
    if (it == limits.end()) {
      throw InputError("no trolley limit provided for pcb '" + pcb_id + "'");
    }
    if (it->second <= 0) {
      throw InfeasibleError(pcb_id, "pcb '" + pcb_id +
                                        "' has non-positive trolley limit " +
                                        std::to_string(it->second));
    }
    // A spread can never exceed the container budget, so a larger limit is
    // equivalent to the budget itself.
    group.limit = std::min(it->second, sp.max_containers);
  }
  return sp;
}

LoadingPlan merge_solutions(const Instance& inst, const Solution& trolley,
                            const Solution& stacker) {
  for (const auto& [item, t] : trolley.assignment) {
    if (stacker.assignment.find(item) != stacker.assignment.end()) {
      throw InputError("component '" + item +
                       "' assigned by both the trolley and stacker solutions");
    }
  }

  std::unordered_map<std::string, const ComponentSpec*> by_id;
  for (const auto& comp : inst.components) {
    by_id.emplace(comp.id, &comp);
  }
  for (const auto& comp : inst.components) {
    const auto& sol =
        comp.cls == ContainerClass::Trolley ? trolley : stacker;
    if (sol.assignment.find(comp.id) == sol.assignment.end()) {
      throw InputError("component '" + comp.id + "' is missing from the " +
                       to_string(comp.cls) + " solution");
    }
  }

  LoadingPlan plan;
  plan.trolley_status = trolley.status;
  plan.stacker_status = stacker.status;

  // Renumber plan-wide: trolleys first in ascending solution index, then
  // stackers.
  auto layout = [&](const Solution& sol, ContainerClass kind, int id_offset,
                    std::map<int, int>& renumber) {
    std::set<int> used = sol.used();
    int next = id_offset;
    for (int t : used) {
      renumber.emplace(t, ++next);
      PlanContainer container;
      container.id = next;
      container.kind = kind;
      container.capacity = kind == ContainerClass::Trolley
                               ? inst.line.trolley_capacity
                               : inst.line.stacker_capacity;
      plan.containers.push_back(std::move(container));
    }
    return static_cast<int>(used.size());
  };

  std::map<int, int> trolley_ids;
  std::map<int, int> stacker_ids;
  plan.trolley_count = layout(trolley, ContainerClass::Trolley, 0, trolley_ids);
  plan.stacker_count = layout(stacker, ContainerClass::Stacker,
                              plan.trolley_count, stacker_ids);

  auto container_at = [&](int plan_id) -> PlanContainer& {
    return plan.containers[static_cast<std::size_t>(plan_id - 1)];
  };

  std::map<std::string, std::set<int>> pulls;
  for (const auto& pcb : inst.pcbs) {
    pulls.emplace(pcb.id, std::set<int>{});
  }
  // Deterministic fill order: components in instance order.
  for (const auto& comp : inst.components) {
    const bool is_trolley = comp.cls == ContainerClass::Trolley;
    const auto& sol = is_trolley ? trolley : stacker;
    const auto& renumber = is_trolley ? trolley_ids : stacker_ids;
    const int plan_id = renumber.at(sol.assignment.at(comp.id));
    auto& container = container_at(plan_id);
    container.components.push_back(comp.id);
    container.used_slots += comp.size;
  }
  for (const auto& pcb : inst.pcbs) {
    auto& touched = pulls[pcb.id];
    for (const auto& comp_id : pcb.required) {
      auto it = by_id.find(comp_id);
      if (it == by_id.end()) continue;
      const bool is_trolley = it->second->cls == ContainerClass::Trolley;
      const auto& sol = is_trolley ? trolley : stacker;
      const auto& renumber = is_trolley ? trolley_ids : stacker_ids;
      touched.insert(renumber.at(sol.assignment.at(comp_id)));
    }
  }
  for (auto& [pcb_id, touched] : pulls) {
    plan.pcb_pulls.emplace_back(
        pcb_id, std::vector<int>(touched.begin(), touched.end()));
  }
  return plan;
}

}  // namespace topt
