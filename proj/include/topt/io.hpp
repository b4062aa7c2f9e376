#pragma once

#include <filesystem>
#include <string>

#include "topt/model.hpp"

namespace topt {

// Instance document: one JSON file with three sections.
//
//   {
//     "line":       { "container_positions": .., "trolley_capacity": ..,
//                     "stacker_capacity": .., "max_trolleys": ..,
//                     "max_stackers": .. },
//     "components": [ { "id": "..", "size": n, "class": "trolley|stacker" } ],
//     "pcbs":       [ { "id": "..", "components": ["..", ".."] } ]
//   }
//
// Emission order is fixed, so save/load round-trips are identity up to key
// ordering.

std::string instance_to_json(const Instance& inst);

/// Parses an instance document. Throws ParseError on malformed JSON or a
/// wrong shape; the instance is not validated here.
Instance instance_from_json(const std::string& text);

/// Loads and validates. Throws IoError (missing file), ParseError, or
/// ValidationError carrying the full violation list.
Instance load_instance(const std::filesystem::path& path);

void save_instance(const Instance& inst, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Flat CSV import for the components table only (`id,size,class` header).
// PCB membership is a ragged relation and stays in the JSON document.
std::vector<ComponentSpec> components_from_csv(const std::string& text);
std::string components_to_csv(const std::vector<ComponentSpec>& components);

}  // namespace topt
