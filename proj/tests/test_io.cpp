#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "support/test_instances.hpp"
#include "topt/generator.hpp"
#include "topt/heuristics.hpp"
#include "topt/io.hpp"
#include "topt/report.hpp"
#include "topt/solver.hpp"

using namespace topt;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }
};

GeneratorSpec tiny_spec() {
  GeneratorSpec spec;
  spec.pcb_count = 6;
  spec.trolley_components = 40;
  spec.stacker_components = 4;
  spec.trolley_size_histogram = {{1, 0.7}, {2, 0.2}, {3, 0.1}};
  spec.families = 2;
  spec.overlap_fraction = 0.5;
  spec.seed = 99;
  spec.line = LineConfig{16, 33, 30, 0, 2};
  return spec;
}

}  // namespace

TEST_CASE("instance json round trip is identity") {
  const Instance inst = test_support::small_instance();
  const std::string text = instance_to_json(inst);
  const Instance back = instance_from_json(text);
  CHECK(back == inst);
  CHECK(instance_to_json(back) == text);
}

TEST_CASE("save and load a generated instance") {
  const Instance inst = generate(tiny_spec());
  TempFile file("topt_roundtrip.json");
  save_instance(inst, file.path);
  const Instance back = load_instance(file.path);
  CHECK(back == inst);
}

TEST_CASE("loading rejects invalid instances with the violation list") {
  TempFile file("topt_invalid.json");

  SUBCASE("duplicate component id") {
    write_text_file(file.path, R"({
      "line": {"container_positions": 16, "trolley_capacity": 33,
               "stacker_capacity": 30, "max_trolleys": 28, "max_stackers": 2},
      "components": [
        {"id": "dup", "size": 1, "class": "trolley"},
        {"id": "dup", "size": 2, "class": "trolley"}
      ],
      "pcbs": [{"id": "p1", "components": ["dup"]}]
    })");
    try {
      load_instance(file.path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      REQUIRE_FALSE(e.violations().empty());
      CHECK(e.violations()[0].subject == "dup");
    }
  }

  SUBCASE("oversized trolley component") {
    write_text_file(file.path, R"({
      "line": {"container_positions": 16, "trolley_capacity": 33,
               "stacker_capacity": 30, "max_trolleys": 28, "max_stackers": 2},
      "components": [{"id": "big", "size": 40, "class": "trolley"}],
      "pcbs": [{"id": "p1", "components": ["big"]}]
    })");
    CHECK_THROWS_AS(load_instance(file.path), ValidationError);
  }

  SUBCASE("malformed json") {
    write_text_file(file.path, "{ not json");
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }

  SUBCASE("out-of-range integer fields are rejected, not truncated") {
    write_text_file(file.path, R"({
      "line": {"container_positions": 16, "trolley_capacity": 4294967297,
               "stacker_capacity": 30, "max_trolleys": 28, "max_stackers": 2},
      "components": [{"id": "c", "size": 1, "class": "trolley"}],
      "pcbs": [{"id": "p1", "components": ["c"]}]
    })");
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }

  SUBCASE("unknown container class") {
    write_text_file(file.path, R"({
      "line": {"container_positions": 16, "trolley_capacity": 33,
               "stacker_capacity": 30, "max_trolleys": 28, "max_stackers": 2},
      "components": [{"id": "c", "size": 1, "class": "pallet"}],
      "pcbs": [{"id": "p1", "components": ["c"]}]
    })");
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_instance("/nonexistent/topt.json"), IoError);
  }
}

TEST_CASE("generator spec json round trip") {
  const GeneratorSpec spec = tiny_spec();
  const GeneratorSpec back = generator_spec_from_json(generator_spec_to_json(spec));
  CHECK(back.pcb_count == spec.pcb_count);
  CHECK(back.trolley_components == spec.trolley_components);
  CHECK(back.stacker_components == spec.stacker_components);
  CHECK(back.trolley_size_histogram == spec.trolley_size_histogram);
  CHECK(back.families == spec.families);
  CHECK(back.seed == spec.seed);
  CHECK(back.line == spec.line);
}

TEST_CASE("generation is deterministic and hits the requested counts") {
  const Instance a = generate(tiny_spec());
  const Instance b = generate(tiny_spec());
  CHECK(instance_to_json(a) == instance_to_json(b));

  GeneratorSpec other = tiny_spec();
  other.seed = 100;
  const Instance c = generate(other);
  CHECK(instance_to_json(a) != instance_to_json(c));

  int trolleys = 0, stackers = 0;
  for (const auto& comp : a.components) {
    (comp.cls == ContainerClass::Trolley ? trolleys : stackers) += 1;
  }
  CHECK(trolleys == 40);
  CHECK(stackers == 4);
  CHECK(a.pcbs.size() == 6);
  CHECK(validate_instance(a).empty());  // includes: every component referenced
}

TEST_CASE("within-family pcbs share at least the overlap fraction") {
  GeneratorSpec spec = tiny_spec();
  spec.pcb_count = 12;
  spec.overlap_fraction = 0.5;
  const Instance inst = generate(spec);

  // pcbs are dealt to families round-robin
  auto family_of = [&](int j) { return j % spec.families; };
  double shared_fraction_sum = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < inst.pcbs.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.pcbs.size(); ++b) {
      if (family_of(static_cast<int>(a)) != family_of(static_cast<int>(b))) {
        continue;
      }
      const auto& ra = inst.pcbs[a].required;
      const auto& rb = inst.pcbs[b].required;
      std::vector<std::string> shared;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                            std::back_inserter(shared));
      const double denom = std::max(ra.size(), rb.size());
      shared_fraction_sum += shared.size() / denom;
      ++pairs;
    }
  }
  REQUIRE(pairs > 0);
  CHECK(shared_fraction_sum / pairs >= spec.overlap_fraction);
}

TEST_CASE("generated trolley budget comes from the greedy packing") {
  const Instance inst = generate(tiny_spec());
  CHECK(inst.line.max_trolleys >= 1);

  Instance relaxed = inst;
  relaxed.line.max_trolleys = static_cast<int>(inst.components.size());
  const SolveReport stacker = solve(build_stacker_subproblem(relaxed));
  REQUIRE(stacker.best.has_value());
  const auto limits = derive_trolley_limits(relaxed, *stacker.best);
  const PackResult greedy =
      greedy_pack(build_trolley_subproblem(relaxed, limits));
  REQUIRE(greedy.ok());
  CHECK(inst.line.max_trolleys == greedy.solution->objective());
}

TEST_CASE("presets reproduce their documented dataset shapes") {
  const GeneratorSpec a = preset("dataset-a");
  CHECK(a.pcb_count == 80);
  CHECK(a.trolley_components == 537);
  CHECK(a.stacker_components == 42);
  CHECK(a.line.container_positions == 16);
  CHECK(a.line.max_stackers == 2);

  const GeneratorSpec b = preset("dataset-b");
  CHECK(b.pcb_count == 62);
  CHECK(b.trolley_components == 930);
  CHECK(b.stacker_components == 55);
  CHECK(b.line.container_positions == 24);

  CHECK_THROWS_AS(preset("dataset-z"), LookupError);
}

TEST_CASE("unsatisfiable generator specs are rejected") {
  GeneratorSpec spec = tiny_spec();
  spec.trolley_components = 0;
  spec.stacker_components = 0;
  CHECK_THROWS_AS(generate(spec), GenerationError);

  GeneratorSpec bad_histogram = tiny_spec();
  bad_histogram.trolley_size_histogram = {{1, 0.0}};
  CHECK_THROWS_AS(generate(bad_histogram), GenerationError);

  GeneratorSpec bad_overlap = tiny_spec();
  bad_overlap.overlap_fraction = 1.5;
  CHECK_THROWS_AS(generate(bad_overlap), GenerationError);
}

TEST_CASE("plan rendering: utilisation rows, pull lists, summary") {
  LoadingPlan plan;
  plan.trolley_count = 3;
  plan.stacker_count = 0;
  plan.trolley_status = SolveStatus::Optimal;
  plan.stacker_status = SolveStatus::Optimal;
  for (int t = 1; t <= 3; ++t) {
    PlanContainer container;
    container.id = t;
    container.kind = ContainerClass::Trolley;
    container.capacity = 33;
    container.used_slots = 11 * t;
    container.components = {"c" + std::to_string(t)};
    plan.containers.push_back(container);
  }
  plan.pcb_pulls = {{"pcb", {2, 5}}};

  const std::string csv = render_plan_csv(plan);
  CHECK(csv.find("1,trolley,11,33,33.3\n") != std::string::npos);
  CHECK(csv.find("2,trolley,22,33,66.7\n") != std::string::npos);
  CHECK(csv.find("3,trolley,33,33,100.0\n") != std::string::npos);
  CHECK(csv.find("pcb,2;5\n") != std::string::npos);
  CHECK(csv.find("summary,3,0,3,optimal\n") != std::string::npos);

  const std::string text = render_plan_text(plan);
  CHECK(text.find("pcb: 2 5") != std::string::npos);
  CHECK(text.find("trolleys=3") != std::string::npos);

  const LoadingPlan back = parse_plan_csv(csv);
  CHECK(render_plan_csv(back) == csv);
}

TEST_CASE("flat csv covers the components table only") {
  const std::vector<ComponentSpec> components = {
      {"c1", 5, ContainerClass::Trolley},
      {"c2", 12, ContainerClass::Stacker},
  };
  const std::string csv = components_to_csv(components);
  CHECK(csv ==
        "id,size,class\n"
        "c1,5,trolley\n"
        "c2,12,stacker\n");
  CHECK(components_from_csv(csv) == components);

  CHECK_THROWS_AS(components_from_csv("wrong,header\n"), ParseError);
  CHECK_THROWS_AS(components_from_csv("id,size,class\nc1,abc,trolley\n"),
                  ParseError);
  CHECK_THROWS_AS(components_from_csv("id,size,class\nc1,5,pallet\n"),
                  ParseError);
}

TEST_CASE("plan parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_plan_csv("nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_plan_csv("container,kind,used,capacity,fill_pct\n"),
                  ParseError);
}

TEST_CASE("an empty plan renders and round-trips") {
  LoadingPlan plan;
  plan.trolley_status = SolveStatus::Optimal;
  plan.stacker_status = SolveStatus::Optimal;
  const std::string csv = render_plan_csv(plan);
  CHECK(csv.find("summary,0,0,0,optimal") != std::string::npos);
  const LoadingPlan back = parse_plan_csv(csv);
  CHECK(back.containers.empty());
  CHECK(render_plan_csv(back) == csv);
}

TEST_CASE("plan slots are conserved on a solved generated instance") {
  const Instance inst = generate(tiny_spec());
  const InstanceSolveResult result = solve_instance(inst);
  REQUIRE(result.plan.has_value());

  long long placed = 0;
  for (const auto& container : result.plan->containers) {
    placed += container.used_slots;
  }
  long long total = 0;
  for (const auto& comp : inst.components) total += comp.size;
  CHECK(placed == total);

  // summary objective equals the recomputed container count
  CHECK(result.plan->trolley_count ==
        result.trolley_report->best->objective());
  CHECK(result.plan->stacker_count ==
        result.stacker_report.best->objective());
}
