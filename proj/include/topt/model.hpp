#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "topt/errors.hpp"

namespace topt {

enum class ContainerClass { Trolley, Stacker };

std::string to_string(ContainerClass cls);

// One component type. `size` is the number of slots the component occupies on
// a container of its class.
struct ComponentSpec {
  std::string id;
  int size = 0;
  ContainerClass cls = ContainerClass::Trolley;

  bool operator==(const ComponentSpec&) const = default;
};

// One PCB type and the component ids it requires.
struct PcbSpec {
  std::string id;
  std::vector<std::string> required;

  bool operator==(const PcbSpec&) const = default;
};

struct LineConfig {
  int container_positions = 0;  // trolley+stacker positions on the line
  int trolley_capacity = 0;     // slots per trolley
  int stacker_capacity = 0;     // slots per stacker
  int max_trolleys = 0;         // global cap on trolleys the solver may open
  int max_stackers = 0;         // global cap on stackers

  bool operator==(const LineConfig&) const = default;
};

struct Instance {
  std::vector<ComponentSpec> components;
  std::vector<PcbSpec> pcbs;
  LineConfig line;

  bool operator==(const Instance&) const = default;
};

// One item of a single-container-kind packing problem.
struct Item {
  std::string id;
  int size = 0;

  bool operator==(const Item&) const = default;
};

// A PCB's stake in a subproblem: which items it requires (indices into
// Subproblem::items) and the maximum number of containers those items may
// span.
struct PcbGroup {
  std::vector<int> items;
  int limit = 0;

  bool operator==(const PcbGroup&) const = default;
};

// A single-container-kind packing problem. Both the trolley and the stacker
// assignment take this shape; only capacity, the container budget and the
// per-PCB limits differ.
struct Subproblem {
  std::vector<Item> items;
  int capacity = 0;
  int max_containers = 0;
  std::map<std::string, PcbGroup> pcbs;  // keyed by PCB id; empty groups kept

  bool operator==(const Subproblem&) const = default;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, LimitReached };

std::string to_string(SolveStatus status);

// A complete assignment of items to containers plus provenance. Used
// containers, per-PCB spreads and the objective are derived on demand.
struct Solution {
  std::map<std::string, int> assignment;  // item id -> container index (1-based)
  std::string solver;                     // producing algorithm
  SolveStatus status = SolveStatus::Feasible;

  std::set<int> used() const;
  std::map<std::string, std::set<int>> pcb_spread(const Subproblem& sp) const;
  int objective() const;
};

/// Checks every Instance invariant and returns the violations, ordered by
/// (kind, subject). An empty report means the instance is valid.
std::vector<Violation> validate_instance(const Instance& inst);

/// Checks Subproblem invariants (item coverage, limit ranges, per-PCB
/// pigeonhole feasibility). Ordering as in validate_instance.
std::vector<Violation> validate_subproblem(const Subproblem& sp);

/// Total slots the PCB's required components of the given class occupy.
/// Throws LookupError for an unknown PCB id.
int pcb_slot_demand(const Instance& inst, const std::string& pcb_id,
                    ContainerClass cls);

/// Number of binary variables of the assignment model: C*T + T + P*T.
long long variable_count_for(long long items, long long containers,
                             long long pcb_count);
long long variable_count(const Subproblem& sp, int pcb_count);

inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace topt
