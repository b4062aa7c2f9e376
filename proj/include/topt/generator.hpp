#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "topt/model.hpp"

namespace topt {

// Parameters for statistics-matched random instances. Realized per-class
// component counts always equal the requested counts; PCBs are drawn from
// family pools so boards of one family share a sizable core of components.
struct GeneratorSpec {
  int pcb_count = 0;
  int trolley_components = 0;
  int stacker_components = 0;
  std::map<int, double> trolley_size_histogram;  // slot size -> weight
  int stacker_size_min = 1;  // slots a stacker-class component takes on a stacker
  int stacker_size_max = 1;
  int families = 1;
  double overlap_fraction = 0.5;  // shared fraction of a family's pool
  std::uint64_t seed = 1;
  // Line configuration for the emitted instance. max_trolleys == 0 means
  // "seed the trolley budget from a greedy packing of the instance".
  LineConfig line{16, 33, 30, 0, 2};
};

/// Built-in presets: "dataset-a" (80 PCBs, 537 trolley + 42 stacker
/// components, 16 positions) and "dataset-b" (62 PCBs, 930 + 55, 24
/// positions). Throws LookupError for other names.
GeneratorSpec preset(const std::string& name);

/// Deterministic for a fixed spec (including seed). Guarantees: exact
/// per-class counts, sizes drawn from the configured distributions, every
/// component referenced by at least one PCB, non-empty PCBs. Throws
/// GenerationError when the spec cannot be satisfied.
Instance generate(const GeneratorSpec& spec);

std::string generator_spec_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const std::string& text);

}  // namespace topt
