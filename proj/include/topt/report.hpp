#pragma once

#include <string>

#include "topt/decompose.hpp"

namespace topt {

// Plan documents carry three sections: the per-container utilisation table,
// the per-PCB pull lists, and a one-line summary
// (trolleys, stackers, objective, status).

/// Comma-separated form. Fixed column order: container id, kind, used slots,
/// capacity, fill %. Pull rows are `<pcb>,<c1>;<c2>;...`.
std::string render_plan_csv(const LoadingPlan& plan);

/// Aligned human-readable form of the same content.
std::string render_plan_text(const LoadingPlan& plan);

/// Reads a plan back from its CSV form. Throws ParseError.
LoadingPlan parse_plan_csv(const std::string& text);

}  // namespace topt
