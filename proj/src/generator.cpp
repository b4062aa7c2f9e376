#include "topt/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "topt/decompose.hpp"
#include "topt/heuristics.hpp"

namespace topt {

namespace {

using json = nlohmann::ordered_json;

// Draws go through these helpers rather than <random> distributions so a
// seed reproduces the same instance on every standard library.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int next_index(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

int draw_from_histogram(std::mt19937_64& rng,
                        const std::vector<std::pair<int, double>>& cumulative,
                        double total) {
  const double u = next_unit(rng) * total;
  double acc = 0.0;
  for (const auto& [size, weight] : cumulative) {
    acc += weight;
    if (u < acc) return size;
  }
  return cumulative.back().first;
}

std::string padded(const std::string& prefix, int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, width - digits.size(), '0');
  }
  return prefix + digits;
}

void validate_spec(const GeneratorSpec& spec) {
  if (spec.pcb_count < 0 || spec.trolley_components < 0 ||
      spec.stacker_components < 0) {
    throw GenerationError("component and pcb counts must be non-negative");
  }
  if (spec.pcb_count > 0 &&
      spec.trolley_components + spec.stacker_components == 0) {
    throw GenerationError("cannot generate pcbs without any components");
  }
  if (spec.trolley_components > 0) {
    double total = 0.0;
    for (const auto& [size, weight] : spec.trolley_size_histogram) {
      if (weight < 0.0) {
        throw GenerationError("histogram weights must be non-negative");
      }
      if (size < 1 || size > spec.line.trolley_capacity) {
        throw GenerationError("histogram size " + std::to_string(size) +
                              " outside [1, trolley capacity]");
      }
      total += weight;
    }
    if (total <= 0.0) {
      throw GenerationError("histogram weights must not all be zero");
    }
  }
  if (spec.stacker_components > 0 &&
      (spec.stacker_size_min < 1 || spec.stacker_size_max < spec.stacker_size_min ||
       spec.stacker_size_max > spec.line.stacker_capacity)) {
    throw GenerationError("stacker size range outside [1, stacker capacity]");
  }
  if (spec.overlap_fraction < 0.0 || spec.overlap_fraction > 1.0) {
    throw GenerationError("overlap fraction must be in [0, 1]");
  }
  if (spec.families < 1) {
    throw GenerationError("family count must be >= 1");
  }
  if (spec.line.container_positions < 1 || spec.line.trolley_capacity < 1 ||
      spec.line.stacker_capacity < 1 || spec.line.max_stackers < 1) {
    throw GenerationError("line configuration must be positive");
  }
}

// Trolley budget as a greedy packing would need it, mirroring the practice
// of seeding the budget from a known-feasible solution. Races every order
// policy and keeps the best.
int seed_trolley_budget(const Instance& inst) {
  const Subproblem stacker_sp = build_stacker_subproblem(inst);
  PackResult stacker = greedy_best_of(stacker_sp, all_order_policies());
  if (!stacker.ok()) {
    throw GenerationError(
        "stacker components do not fit the stacker budget: " +
        stacker.failure->reason);
  }
  Instance relaxed = inst;
  relaxed.line.max_trolleys =
      std::max(1, static_cast<int>(relaxed.components.size()));
  std::map<std::string, int> limits;
  try {
    limits = derive_trolley_limits(relaxed, *stacker.solution);
  } catch (const InfeasibleError& e) {
    throw GenerationError(std::string("generated shape is infeasible: ") +
                          e.what());
  }
  const Subproblem trolley_sp = build_trolley_subproblem(relaxed, limits);
  if (trolley_sp.items.empty()) {
    return 1;
  }
  PackResult trolley = greedy_best_of(trolley_sp, all_order_policies());
  if (!trolley.ok()) {
    throw GenerationError("could not seed a trolley budget: " +
                          trolley.failure->reason);
  }
  return trolley.solution->objective();
}

}  // namespace

GeneratorSpec preset(const std::string& name) {
  GeneratorSpec spec;
  spec.trolley_size_histogram = {{1, 0.66}, {2, 0.15}, {3, 0.10}, {4, 0.05}, {5, 0.04}};
  spec.stacker_size_min = 1;
  spec.stacker_size_max = 1;
  spec.overlap_fraction = 0.5;
  if (name == "dataset-a") {
    spec.pcb_count = 80;
    spec.trolley_components = 537;
    spec.stacker_components = 42;
    spec.families = 8;
    spec.seed = 1001;
    spec.line = LineConfig{16, 33, 30, 0, 2};
    return spec;
  }
  if (name == "dataset-b") {
    spec.pcb_count = 62;
    spec.trolley_components = 930;
    spec.stacker_components = 55;
    spec.families = 6;
    spec.seed = 2001;
    spec.line = LineConfig{24, 33, 30, 0, 2};
    return spec;
  }
  throw LookupError("unknown preset '" + name +
                    "' (available: dataset-a, dataset-b)");
}

Instance generate(const GeneratorSpec& spec) {
  validate_spec(spec);
  std::mt19937_64 rng(spec.seed);

  Instance inst;
  inst.line = spec.line;

  std::vector<std::pair<int, double>> histogram(
      spec.trolley_size_histogram.begin(), spec.trolley_size_histogram.end());
  double histogram_total = 0.0;
  for (const auto& [size, weight] : histogram) histogram_total += weight;

  const int digits = 4;
  for (int i = 1; i <= spec.trolley_components; ++i) {
    ComponentSpec comp;
    comp.id = padded("ct_", i, digits);
    comp.size = draw_from_histogram(rng, histogram, histogram_total);
    comp.cls = ContainerClass::Trolley;
    inst.components.push_back(std::move(comp));
  }
  for (int i = 1; i <= spec.stacker_components; ++i) {
    ComponentSpec comp;
    comp.id = padded("cs_", i, digits);
    const int span = spec.stacker_size_max - spec.stacker_size_min + 1;
    comp.size = spec.stacker_size_min + (span > 1 ? next_index(rng, span) : 0);
    comp.cls = ContainerClass::Stacker;
    inst.components.push_back(std::move(comp));
  }

  const int total_components = static_cast<int>(inst.components.size());
  if (spec.pcb_count > 0) {
    // Family pools: shuffle components, deal them out round-robin, and mark
    // the first `overlap_fraction` of each pool as that family's shared core.
    std::vector<int> shuffled(total_components);
    for (int i = 0; i < total_components; ++i) shuffled[i] = i;
    for (int i = total_components - 1; i > 0; --i) {
      std::swap(shuffled[i], shuffled[next_index(rng, i + 1)]);
    }
    const int families = std::min(spec.families, total_components);
    std::vector<std::vector<int>> pools(families);
    for (int i = 0; i < total_components; ++i) {
      pools[i % families].push_back(shuffled[i]);
    }
    std::vector<int> core_size(families);
    for (int f = 0; f < families; ++f) {
      core_size[f] = static_cast<int>(
          std::min<double>(pools[f].size(),
                           std::ceil(spec.overlap_fraction * pools[f].size())));
    }

    std::vector<char> referenced(total_components, 0);
    const int pcb_digits = 3;
    for (int j = 0; j < spec.pcb_count; ++j) {
      const int f = j % families;
      PcbSpec pcb;
      pcb.id = padded("p_", j + 1, pcb_digits);
      std::vector<int> picked;
      for (int k = 0; k < static_cast<int>(pools[f].size()); ++k) {
        const bool in_core = k < core_size[f];
        if (in_core || next_unit(rng) < 0.5) {
          picked.push_back(pools[f][k]);
        }
      }
      if (picked.empty()) {
        picked.push_back(pools[f][next_index(rng, static_cast<int>(pools[f].size()))]);
      }
      std::sort(picked.begin(), picked.end());
      for (int idx : picked) {
        pcb.required.push_back(inst.components[idx].id);
        referenced[idx] = 1;
      }
      inst.pcbs.push_back(std::move(pcb));
    }

    // Any component no PCB picked up is attached to a deterministic random
    // PCB of its family, keeping the realized counts exact.
    for (int i = 0; i < total_components; ++i) {
      if (referenced[i]) continue;
      int f = 0;
      for (int g = 0; g < families; ++g) {
        if (std::find(pools[g].begin(), pools[g].end(), i) != pools[g].end()) {
          f = g;
          break;
        }
      }
      std::vector<int> family_pcbs;
      for (int j = 0; j < spec.pcb_count; ++j) {
        if (j % families == f) family_pcbs.push_back(j);
      }
      if (family_pcbs.empty()) {
        for (int j = 0; j < spec.pcb_count; ++j) family_pcbs.push_back(j);
      }
      const int j = family_pcbs[next_index(
          rng, static_cast<int>(family_pcbs.size()))];
      inst.pcbs[j].required.push_back(inst.components[i].id);
      referenced[i] = 1;
    }
    for (auto& pcb : inst.pcbs) {
      std::sort(pcb.required.begin(), pcb.required.end());
    }
  }

  if (inst.line.max_trolleys == 0) {
    inst.line.max_trolleys = seed_trolley_budget(inst);
  }

  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw GenerationError("generated instance is invalid: " +
                          violations.front().detail);
  }
  return inst;
}

std::string generator_spec_to_json(const GeneratorSpec& spec) {
  json doc;
  doc["pcbs"] = spec.pcb_count;
  doc["components"] = {{"trolley", spec.trolley_components},
                       {"stacker", spec.stacker_components}};
  json histogram = json::object();
  for (const auto& [size, weight] : spec.trolley_size_histogram) {
    histogram[std::to_string(size)] = weight;
  }
  doc["trolley_size_histogram"] = histogram;
  doc["stacker_size_range"] = {spec.stacker_size_min, spec.stacker_size_max};
  doc["families"] = spec.families;
  doc["overlap_fraction"] = spec.overlap_fraction;
  doc["seed"] = spec.seed;
  doc["line"] = {{"container_positions", spec.line.container_positions},
                 {"trolley_capacity", spec.line.trolley_capacity},
                 {"stacker_capacity", spec.line.stacker_capacity},
                 {"max_trolleys", spec.line.max_trolleys},
                 {"max_stackers", spec.line.max_stackers}};
  return doc.dump(2) + "\n";
}

GeneratorSpec generator_spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed json: ") + e.what());
  }
  GeneratorSpec spec;
  try {
    spec.pcb_count = doc.at("pcbs").get<int>();
    spec.trolley_components = doc.at("components").at("trolley").get<int>();
    spec.stacker_components = doc.at("components").at("stacker").get<int>();
    spec.trolley_size_histogram.clear();
    for (const auto& [key, value] : doc.at("trolley_size_histogram").items()) {
      int size = 0;
      try {
        size = std::stoi(key);
      } catch (const std::exception&) {
        throw ParseError(1, "histogram key '" + key + "' is not a slot size");
      }
      spec.trolley_size_histogram[size] = value.get<double>();
    }
    spec.stacker_size_min = doc.at("stacker_size_range").at(0).get<int>();
    spec.stacker_size_max = doc.at("stacker_size_range").at(1).get<int>();
    spec.families = doc.at("families").get<int>();
    spec.overlap_fraction = doc.at("overlap_fraction").get<double>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
    const json& line = doc.at("line");
    spec.line.container_positions = line.at("container_positions").get<int>();
    spec.line.trolley_capacity = line.at("trolley_capacity").get<int>();
    spec.line.stacker_capacity = line.at("stacker_capacity").get<int>();
    spec.line.max_trolleys = line.value("max_trolleys", 0);
    spec.line.max_stackers = line.at("max_stackers").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("generator spec: ") + e.what());
  }
  return spec;
}

}  // namespace topt
