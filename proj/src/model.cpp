#include "topt/model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace topt {

std::string to_string(ContainerClass cls) {
  return cls == ContainerClass::Trolley ? "trolley" : "stacker";
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Feasible:
      return "feasible";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::LimitReached:
      return "limit_reached";
  }
  return "unknown";
}

std::set<int> Solution::used() const {
  std::set<int> containers;
  for (const auto& [item, t] : assignment) {
    containers.insert(t);
  }
  return containers;
}

std::map<std::string, std::set<int>> Solution::pcb_spread(
    const Subproblem& sp) const {
  std::map<std::string, std::set<int>> spread;
  for (const auto& [pcb_id, group] : sp.pcbs) {
    auto& containers = spread[pcb_id];
    for (int idx : group.items) {
      auto it = assignment.find(sp.items[idx].id);
      if (it != assignment.end()) {
        containers.insert(it->second);
      }
    }
  }
  return spread;
}

int Solution::objective() const { return static_cast<int>(used().size()); }

namespace {

void sort_violations(std::vector<Violation>& violations) {
  std::stable_sort(violations.begin(), violations.end(),
                   [](const Violation& a, const Violation& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.subject < b.subject;
                   });
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;

  auto check_positive = [&](int value, const std::string& field) {
    if (value < 1) {
      out.push_back({"line_config_nonpositive", field,
                     field + " must be >= 1, got " + std::to_string(value)});
    }
  };
  check_positive(inst.line.container_positions, "container_positions");
  check_positive(inst.line.trolley_capacity, "trolley_capacity");
  check_positive(inst.line.stacker_capacity, "stacker_capacity");
  check_positive(inst.line.max_trolleys, "max_trolleys");
  check_positive(inst.line.max_stackers, "max_stackers");

  std::unordered_map<std::string, const ComponentSpec*> by_id;
  for (const auto& comp : inst.components) {
    if (!by_id.emplace(comp.id, &comp).second) {
      out.push_back({"duplicate_component_id", comp.id,
                     "component id '" + comp.id + "' appears more than once"});
      continue;
    }
    if (comp.size < 1) {
      out.push_back({"component_size_nonpositive", comp.id,
                     "component '" + comp.id + "' has size " +
                         std::to_string(comp.size)});
      continue;
    }
    const int capacity = comp.cls == ContainerClass::Trolley
                             ? inst.line.trolley_capacity
                             : inst.line.stacker_capacity;
    if (capacity >= 1 && comp.size > capacity) {
      out.push_back({"component_exceeds_capacity", comp.id,
                     "component '" + comp.id + "' of size " +
                         std::to_string(comp.size) + " exceeds " +
                         to_string(comp.cls) + " capacity " +
                         std::to_string(capacity)});
    }
  }

  std::unordered_set<std::string> pcb_ids;
  std::unordered_set<std::string> referenced;
  for (const auto& pcb : inst.pcbs) {
    if (!pcb_ids.insert(pcb.id).second) {
      out.push_back({"duplicate_pcb_id", pcb.id,
                     "pcb id '" + pcb.id + "' appears more than once"});
      continue;
    }
    if (pcb.required.empty()) {
      out.push_back({"empty_pcb", pcb.id,
                     "pcb '" + pcb.id + "' requires no components"});
    }
    std::unordered_set<std::string> seen;
    for (const auto& comp_id : pcb.required) {
      if (!seen.insert(comp_id).second) {
        out.push_back({"duplicate_component_reference", pcb.id,
                       "pcb '" + pcb.id + "' lists component '" + comp_id +
                           "' more than once"});
        continue;
      }
      if (by_id.find(comp_id) == by_id.end()) {
        out.push_back({"dangling_component_reference", pcb.id,
                       "pcb '" + pcb.id + "' references unknown component '" +
                           comp_id + "'"});
      } else {
        referenced.insert(comp_id);
      }
    }
  }

  for (const auto& comp : inst.components) {
    if (referenced.find(comp.id) == referenced.end()) {
      out.push_back({"unreferenced_component", comp.id,
                     "component '" + comp.id + "' is required by no pcb"});
    }
  }

  sort_violations(out);
  return out;
}

std::vector<Violation> validate_subproblem(const Subproblem& sp) {
  std::vector<Violation> out;

  std::vector<char> covered(sp.items.size(), 0);
  for (const auto& [pcb_id, group] : sp.pcbs) {
    long long demand = 0;
    for (int idx : group.items) {
      if (idx < 0 || idx >= static_cast<int>(sp.items.size())) {
        out.push_back({"group_item_out_of_range", pcb_id,
                       "pcb '" + pcb_id + "' references item index " +
                           std::to_string(idx)});
        continue;
      }
      covered[idx] = 1;
      demand += sp.items[idx].size;
    }
    if (group.limit < 1 || group.limit > sp.max_containers) {
      out.push_back({"limit_out_of_range", pcb_id,
                     "pcb '" + pcb_id + "' has container limit " +
                         std::to_string(group.limit) + ", budget is " +
                         std::to_string(sp.max_containers)});
    }
    if (sp.capacity >= 1 && demand > 0) {
      const long long needed = ceil_div(demand, sp.capacity);
      const long long allowed =
          std::min<long long>(group.limit, sp.max_containers);
      if (needed > allowed) {
        out.push_back({"pcb_demand_exceeds_limit", pcb_id,
                       "pcb '" + pcb_id + "' needs at least " +
                           std::to_string(needed) + " containers but may span " +
                           std::to_string(allowed)});
      }
    }
  }

  for (std::size_t i = 0; i < sp.items.size(); ++i) {
    if (!covered[i]) {
      out.push_back({"item_unreferenced", sp.items[i].id,
                     "item '" + sp.items[i].id + "' is in no pcb group"});
    }
    if (sp.items[i].size > sp.capacity) {
      out.push_back({"item_exceeds_capacity", sp.items[i].id,
                     "item '" + sp.items[i].id + "' of size " +
                         std::to_string(sp.items[i].size) +
                         " exceeds capacity " + std::to_string(sp.capacity)});
    }
  }

  sort_violations(out);
  return out;
}

int pcb_slot_demand(const Instance& inst, const std::string& pcb_id,
                    ContainerClass cls) {
  const PcbSpec* pcb = nullptr;
  for (const auto& candidate : inst.pcbs) {
    if (candidate.id == pcb_id) {
      pcb = &candidate;
      break;
    }
  }
  if (pcb == nullptr) {
    throw LookupError("unknown pcb id '" + pcb_id + "'");
  }

  std::unordered_map<std::string, const ComponentSpec*> by_id;
  by_id.reserve(inst.components.size());
  for (const auto& comp : inst.components) {
    by_id.emplace(comp.id, &comp);
  }

  int total = 0;
  for (const auto& comp_id : pcb->required) {
    auto it = by_id.find(comp_id);
    if (it != by_id.end() && it->second->cls == cls) {
      total += it->second->size;
    }
  }
  return total;
}

long long variable_count_for(long long items, long long containers,
                             long long pcb_count) {
  return items * containers + containers + pcb_count * containers;
}

long long variable_count(const Subproblem& sp, int pcb_count) {
  return variable_count_for(static_cast<long long>(sp.items.size()),
                            sp.max_containers, pcb_count);
}

}  // namespace topt
