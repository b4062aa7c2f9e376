#pragma once

#include <map>
#include <string>
#include <vector>

#include "topt/model.hpp"

namespace topt {

enum class Relation { LessEq, Eq };

struct LinearTerm {
  long long coeff = 0;
  std::string var;

  bool operator==(const LinearTerm&) const = default;
};

struct MilpConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation rel = Relation::LessEq;
  long long rhs = 0;

  bool operator==(const MilpConstraint&) const = default;
};

// Explicit binary program for one subproblem.
//
// Variables (all binary, in this order):
//   x_<c>_<t>  item c (1-based position) assigned to container t
//   y_<t>      container t used
//   z_<p>_<t>  PCB p (1-based, PCBs sorted by id) needs container t
//
// Constraint families, in emission order:
//   assign_<c>      sum_t x_c_t = 1
//   cap_<t>         sum_c s_c x_c_t - N y_t <= 0
//   limit_<p>       sum_t z_p_t <= l_p
//   link_up_<p>_<t> sum_{c in S_p} x_c_t - M_p z_p_t <= 0
//   link_dn_<p>_<t> z_p_t - sum_{c in S_p} x_c_t <= 0
struct MilpModel {
  std::vector<std::string> variables;  // declaration order, all binary
  std::vector<LinearTerm> objective;   // minimized
  std::vector<MilpConstraint> constraints;

  // Construction metadata; not part of the serialized text and excluded
  // from structural equality.
  std::map<std::string, long long> big_m;  // per PCB id
  std::vector<std::string> item_ids;       // model position -> item id
  std::vector<std::string> pcb_ids;        // model position -> PCB id
  int containers = 0;

  bool operator==(const MilpModel& other) const {
    return variables == other.variables && objective == other.objective &&
           constraints == other.constraints;
  }
};

struct ModelOptions {
  // Tight per-PCB linking constant M_p = |S_p| (always valid since
  // sum_{c in S_p} x_c_t <= |S_p|). When false a single large constant is
  // used for every PCB instead.
  bool tight_big_m = true;
  // Emit the z_p_t <= sum x_c_t family. Only the upward link is needed for
  // correctness under minimization; the downward family is kept by default.
  bool emit_down_links = true;
};

inline constexpr long long kGlobalBigM = 1000000;

MilpModel build_model(const Subproblem& sp, const ModelOptions& opts = {});

/// Deterministic LP-format text (documented subset: Minimize / Subject To /
/// Binaries / End sections, integral coefficients, <= and = rows).
std::string emit_lp_text(const MilpModel& model);

/// Parses text conforming to the emitted subset back into a model. Throws
/// ParseError with the offending line; referencing an undeclared variable is
/// an error naming it.
MilpModel parse_lp_text(const std::string& text);

struct ModelViolation {
  std::string constraint;
  long long lhs = 0;
  long long rhs = 0;
  long long slack = 0;  // lhs - rhs; positive = violated amount for <= rows

  bool operator==(const ModelViolation&) const = default;
};

/// Evaluates every constraint at the given 0/1 point. Empty result iff all
/// hold. Throws InputError if any model variable lacks a value.
std::vector<ModelViolation> check_solution_against_model(
    const MilpModel& model, const std::map<std::string, int>& values);

/// Canonical lift of a subproblem Solution onto the model's variables:
/// x from the assignment, y from the used set, z from the PCB spreads.
std::map<std::string, int> solution_to_values(const MilpModel& model,
                                              const Subproblem& sp,
                                              const Solution& sol);

}  // namespace topt
