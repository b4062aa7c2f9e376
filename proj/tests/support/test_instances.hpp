#pragma once

// Shared builders for hand-made and randomized test inputs.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "topt/model.hpp"

namespace test_support {

// A subproblem with one group per entry of `limits`; membership[p] lists the
// item indices of pcb p. Item ids are i1, i2, ...
inline topt::Subproblem make_subproblem(
    std::vector<int> sizes, int capacity, int max_containers,
    const std::vector<std::vector<int>>& membership,
    const std::vector<int>& limits) {
  topt::Subproblem sp;
  sp.capacity = capacity;
  sp.max_containers = max_containers;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    sp.items.push_back({"i" + std::to_string(i + 1), sizes[i]});
  }
  for (std::size_t p = 0; p < membership.size(); ++p) {
    topt::PcbGroup group;
    group.items = membership[p];
    group.limit = limits[p];
    sp.pcbs.emplace("p" + std::to_string(p + 1), std::move(group));
  }
  return sp;
}

// One group holding every item (bin-packing shape).
inline topt::Subproblem make_bpp_shape(std::vector<int> sizes, int capacity,
                                       int max_containers, int limit) {
  std::vector<int> all(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) all[i] = static_cast<int>(i);
  return make_subproblem(std::move(sizes), capacity, max_containers, {all},
                         {limit});
}

// Random small subproblem in the oracle-checkable regime. Every item lands
// in at least one group; infeasible instances arise naturally from tight
// limits.
inline topt::Subproblem random_subproblem(std::mt19937& rng, int max_items = 8,
                                          int max_containers = 4,
                                          int max_pcbs = 3) {
  std::uniform_int_distribution<int> item_count(1, max_items);
  std::uniform_int_distribution<int> container_count(1, max_containers);
  std::uniform_int_distribution<int> pcb_count(1, max_pcbs);
  std::uniform_int_distribution<int> capacity_pick(4, 20);

  const int n = item_count(rng);
  const int T = container_count(rng);
  const int P = pcb_count(rng);
  const int capacity = capacity_pick(rng);

  std::uniform_int_distribution<int> size_pick(1, capacity);
  std::uniform_int_distribution<int> pcb_pick(0, P - 1);
  std::uniform_int_distribution<int> limit_pick(1, T);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<int> sizes(n);
  std::vector<std::vector<int>> membership(P);
  for (int i = 0; i < n; ++i) {
    sizes[i] = size_pick(rng);
    membership[pcb_pick(rng)].push_back(i);
    for (int p = 0; p < P; ++p) {
      if (unit(rng) < 0.25) {
        membership[p].push_back(i);
      }
    }
  }
  for (auto& items : membership) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  }
  std::vector<int> limits(P);
  for (int p = 0; p < P; ++p) limits[p] = limit_pick(rng);
  return make_subproblem(std::move(sizes), capacity, T, membership, limits);
}

// A compact valid instance with both component classes.
inline topt::Instance small_instance() {
  topt::Instance inst;
  inst.line = topt::LineConfig{4, 10, 8, 4, 2};
  inst.components = {
      {"c1", 5, topt::ContainerClass::Trolley},
      {"c2", 4, topt::ContainerClass::Trolley},
      {"c3", 3, topt::ContainerClass::Trolley},
      {"c4", 6, topt::ContainerClass::Stacker},
      {"c5", 2, topt::ContainerClass::Stacker},
  };
  inst.pcbs = {
      {"pa", {"c1", "c2", "c4"}},
      {"pb", {"c2", "c3", "c5"}},
  };
  return inst;
}

}  // namespace test_support
