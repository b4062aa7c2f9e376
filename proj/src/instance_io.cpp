#include "topt/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace topt {

namespace {

using json = nlohmann::ordered_json;

int require_int(const json& node, const std::string& key,
                const std::string& where) {
  if (!node.contains(key) || !node[key].is_number_integer()) {
    throw ParseError(1, where + " needs integer field '" + key + "'");
  }
  const long long value = node[key].get<long long>();
  if (value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max()) {
    throw ParseError(1, where + " field '" + key + "' is out of range");
  }
  return static_cast<int>(value);
}

std::string require_string(const json& node, const std::string& key,
                           const std::string& where) {
  if (!node.contains(key) || !node[key].is_string()) {
    throw ParseError(1, where + " needs string field '" + key + "'");
  }
  return node[key].get<std::string>();
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["line"] = {{"container_positions", inst.line.container_positions},
                 {"trolley_capacity", inst.line.trolley_capacity},
                 {"stacker_capacity", inst.line.stacker_capacity},
                 {"max_trolleys", inst.line.max_trolleys},
                 {"max_stackers", inst.line.max_stackers}};
  doc["components"] = json::array();
  for (const auto& comp : inst.components) {
    doc["components"].push_back({{"id", comp.id},
                                 {"size", comp.size},
                                 {"class", to_string(comp.cls)}});
  }
  doc["pcbs"] = json::array();
  for (const auto& pcb : inst.pcbs) {
    doc["pcbs"].push_back({{"id", pcb.id}, {"components", pcb.required}});
  }
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("line") || !doc.contains("components") ||
      !doc.contains("pcbs")) {
    throw ParseError(1, "instance document needs 'line', 'components' and 'pcbs'");
  }

  Instance inst;
  const json& line = doc["line"];
  inst.line.container_positions = require_int(line, "container_positions", "line");
  inst.line.trolley_capacity = require_int(line, "trolley_capacity", "line");
  inst.line.stacker_capacity = require_int(line, "stacker_capacity", "line");
  inst.line.max_trolleys = require_int(line, "max_trolleys", "line");
  inst.line.max_stackers = require_int(line, "max_stackers", "line");

  if (!doc["components"].is_array()) {
    throw ParseError(1, "'components' must be an array");
  }
  for (const json& node : doc["components"]) {
    ComponentSpec comp;
    comp.id = require_string(node, "id", "component");
    comp.size = require_int(node, "size", "component '" + comp.id + "'");
    const std::string cls =
        require_string(node, "class", "component '" + comp.id + "'");
    if (cls == "trolley") {
      comp.cls = ContainerClass::Trolley;
    } else if (cls == "stacker") {
      comp.cls = ContainerClass::Stacker;
    } else {
      throw ParseError(1, "component '" + comp.id + "' has unknown class '" +
                              cls + "' (expected trolley|stacker)");
    }
    inst.components.push_back(std::move(comp));
  }

  if (!doc["pcbs"].is_array()) {
    throw ParseError(1, "'pcbs' must be an array");
  }
  for (const json& node : doc["pcbs"]) {
    PcbSpec pcb;
    pcb.id = require_string(node, "id", "pcb");
    if (!node.contains("components") || !node["components"].is_array()) {
      throw ParseError(1, "pcb '" + pcb.id + "' needs a 'components' array");
    }
    for (const json& comp_id : node["components"]) {
      if (!comp_id.is_string()) {
        throw ParseError(1, "pcb '" + pcb.id + "' has a non-string component id");
      }
      pcb.required.push_back(comp_id.get<std::string>());
    }
    inst.pcbs.push_back(std::move(pcb));
  }
  return inst;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

Instance load_instance(const std::filesystem::path& path) {
  const Instance inst = instance_from_json(read_text_file(path));
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw ValidationError(violations);
  }
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(inst));
}

std::vector<ComponentSpec> components_from_csv(const std::string& text) {
  std::vector<ComponentSpec> components;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "id,size,class") {
        throw ParseError(1, "expected header 'id,size,class'");
      }
      continue;
    }
    std::istringstream row(line);
    std::string id, size_field, cls_field;
    if (!std::getline(row, id, ',') || !std::getline(row, size_field, ',') ||
        !std::getline(row, cls_field)) {
      throw ParseError(line_no, "component row needs 3 fields");
    }
    ComponentSpec comp;
    comp.id = id;
    try {
      comp.size = std::stoi(size_field);
    } catch (const std::exception&) {
      throw ParseError(line_no, "size must be an integer");
    }
    if (cls_field == "trolley") {
      comp.cls = ContainerClass::Trolley;
    } else if (cls_field == "stacker") {
      comp.cls = ContainerClass::Stacker;
    } else {
      throw ParseError(line_no, "unknown class '" + cls_field + "'");
    }
    components.push_back(std::move(comp));
  }
  if (line_no == 0) {
    throw ParseError(1, "empty components table");
  }
  return components;
}

std::string components_to_csv(const std::vector<ComponentSpec>& components) {
  std::ostringstream out;
  out << "id,size,class\n";
  for (const auto& comp : components) {
    out << comp.id << ',' << comp.size << ',' << to_string(comp.cls) << '\n';
  }
  return out.str();
}

}  // namespace topt
