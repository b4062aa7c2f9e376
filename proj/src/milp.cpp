#include "topt/milp.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace topt {

namespace {

std::string var_x(int c, int t) {
  return "x_" + std::to_string(c) + "_" + std::to_string(t);
}
std::string var_y(int t) { return "y_" + std::to_string(t); }
std::string var_z(int p, int t) {
  return "z_" + std::to_string(p) + "_" + std::to_string(t);
}

}  // namespace

MilpModel build_model(const Subproblem& sp, const ModelOptions& opts) {
  MilpModel model;
  const int C = static_cast<int>(sp.items.size());
  const int T = sp.max_containers;

  for (const auto& item : sp.items) {
    model.item_ids.push_back(item.id);
  }
  for (const auto& [pcb_id, group] : sp.pcbs) {
    model.pcb_ids.push_back(pcb_id);
  }
  const int P = static_cast<int>(model.pcb_ids.size());
  model.containers = T;

  for (int c = 1; c <= C; ++c) {
    for (int t = 1; t <= T; ++t) {
      model.variables.push_back(var_x(c, t));
    }
  }
  for (int t = 1; t <= T; ++t) {
    model.variables.push_back(var_y(t));
  }
  for (int p = 1; p <= P; ++p) {
    for (int t = 1; t <= T; ++t) {
      model.variables.push_back(var_z(p, t));
    }
  }

  for (int t = 1; t <= T; ++t) {
    model.objective.push_back({1, var_y(t)});
  }

  // assign_c: each item sits on exactly one container.
  for (int c = 1; c <= C; ++c) {
    MilpConstraint row;
    row.name = "assign_" + std::to_string(c);
    for (int t = 1; t <= T; ++t) {
      row.terms.push_back({1, var_x(c, t)});
    }
    row.rel = Relation::Eq;
    row.rhs = 1;
    model.constraints.push_back(std::move(row));
  }

  // cap_t: the load of a container must fit its capacity, and only used
  // containers may carry load.
  for (int t = 1; t <= T; ++t) {
    MilpConstraint row;
    row.name = "cap_" + std::to_string(t);
    for (int c = 1; c <= C; ++c) {
      row.terms.push_back({sp.items[c - 1].size, var_x(c, t)});
    }
    row.terms.push_back({-static_cast<long long>(sp.capacity), var_y(t)});
    row.rel = Relation::LessEq;
    row.rhs = 0;
    model.constraints.push_back(std::move(row));
  }

  // limit_p: a PCB's components may span at most l_p containers.
  {
    int p = 0;
    for (const auto& [pcb_id, group] : sp.pcbs) {
      ++p;
      MilpConstraint row;
      row.name = "limit_" + std::to_string(p);
      for (int t = 1; t <= T; ++t) {
        row.terms.push_back({1, var_z(p, t)});
      }
      row.rel = Relation::LessEq;
      row.rhs = group.limit;
      model.constraints.push_back(std::move(row));
    }
  }

  // link_up / link_dn: z_p_t indicates whether any component of PCB p sits
  // on container t. sum_{c in S_p} x_c_t never exceeds |S_p|, so |S_p| is
  // the tightest valid linking constant.
  {
    int p = 0;
    for (const auto& [pcb_id, group] : sp.pcbs) {
      ++p;
      const long long m = opts.tight_big_m
                              ? static_cast<long long>(group.items.size())
                              : kGlobalBigM;
      model.big_m.emplace(pcb_id, m);
      for (int t = 1; t <= T; ++t) {
        MilpConstraint row;
        row.name = "link_up_" + std::to_string(p) + "_" + std::to_string(t);
        for (int idx : group.items) {
          row.terms.push_back({1, var_x(idx + 1, t)});
        }
        row.terms.push_back({-m, var_z(p, t)});
        row.rel = Relation::LessEq;
        row.rhs = 0;
        model.constraints.push_back(std::move(row));
      }
    }
  }
  if (opts.emit_down_links) {
    int p = 0;
    for (const auto& [pcb_id, group] : sp.pcbs) {
      ++p;
      for (int t = 1; t <= T; ++t) {
        MilpConstraint row;
        row.name = "link_dn_" + std::to_string(p) + "_" + std::to_string(t);
        row.terms.push_back({1, var_z(p, t)});
        for (int idx : group.items) {
          row.terms.push_back({-1, var_x(idx + 1, t)});
        }
        row.rel = Relation::LessEq;
        row.rhs = 0;
        model.constraints.push_back(std::move(row));
      }
    }
  }

  return model;
}

namespace {

void render_terms(std::ostringstream& out, const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const auto& term : terms) {
    const long long magnitude = term.coeff < 0 ? -term.coeff : term.coeff;
    if (first) {
      if (term.coeff < 0) out << "- ";
      first = false;
    } else {
      out << (term.coeff < 0 ? " - " : " + ");
    }
    if (magnitude != 1) out << magnitude << ' ';
    out << term.var;
  }
}

}  // namespace

std::string emit_lp_text(const MilpModel& model) {
  std::ostringstream out;
  out << "Minimize\n obj: ";
  render_terms(out, model.objective);
  out << "\nSubject To\n";
  for (const auto& row : model.constraints) {
    out << ' ' << row.name << ": ";
    render_terms(out, row.terms);
    out << (row.rel == Relation::LessEq ? " <= " : " = ") << row.rhs << '\n';
  }
  out << "Binaries\n";
  for (const auto& var : model.variables) {
    out << ' ' << var << '\n';
  }
  out << "End\n";
  return out.str();
}

namespace {

bool is_number_token(const std::string& token) {
  if (token.empty()) return false;
  std::size_t i = token[0] == '-' ? 1 : 0;
  if (i == token.size()) return false;
  for (; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
  }
  return true;
}

long long parse_number(const std::string& token, int line_no) {
  try {
    return std::stoll(token);
  } catch (const std::exception&) {
    throw ParseError(line_no, "number '" + token + "' out of range");
  }
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses "[sign] [number] name { (+|-) [number] name }".
std::vector<LinearTerm> parse_terms(const std::vector<std::string>& tokens,
                                    std::size_t begin, std::size_t end,
                                    int line_no) {
  std::vector<LinearTerm> terms;
  long long sign = 1;
  std::optional<long long> pending;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& token = tokens[i];
    if (token == "+" || token == "-") {
      if (pending) {
        throw ParseError(line_no, "dangling coefficient before '" + token + "'");
      }
      sign = token == "-" ? -1 : 1;
      continue;
    }
    if (is_number_token(token)) {
      if (pending) {
        throw ParseError(line_no, "two consecutive numbers near '" + token + "'");
      }
      pending = parse_number(token, line_no);
      continue;
    }
    const long long coeff = sign * pending.value_or(1);
    terms.push_back({coeff, token});
    sign = 1;
    pending.reset();
  }
  if (pending) {
    throw ParseError(line_no, "coefficient without a variable");
  }
  if (terms.empty()) {
    throw ParseError(line_no, "empty expression");
  }
  return terms;
}

}  // namespace

MilpModel parse_lp_text(const std::string& text) {
  MilpModel model;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  enum class Section { Start, Objective, Rows, Binaries, Done };
  Section section = Section::Start;
  std::vector<std::pair<int, std::string>> term_uses;  // (line, var)

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '\\') continue;

    if (section == Section::Start) {
      if (line != "Minimize") {
        throw ParseError(line_no, "expected 'Minimize'");
      }
      section = Section::Objective;
      continue;
    }
    if (section == Section::Objective) {
      const auto tokens = split_tokens(line);
      if (tokens.empty() || tokens[0] != "obj:") {
        throw ParseError(line_no, "expected objective row 'obj: ...'");
      }
      model.objective = parse_terms(tokens, 1, tokens.size(), line_no);
      for (const auto& term : model.objective) {
        term_uses.emplace_back(line_no, term.var);
      }
      section = Section::Rows;
      continue;
    }
    if (section == Section::Rows) {
      if (line == "Subject To") continue;
      if (line == "Binaries") {
        section = Section::Binaries;
        continue;
      }
      const auto tokens = split_tokens(line);
      if (tokens.size() < 2 || tokens[0].back() != ':') {
        throw ParseError(line_no, "expected constraint row '<name>: ...'");
      }
      MilpConstraint row;
      row.name = tokens[0].substr(0, tokens[0].size() - 1);
      std::size_t rel_pos = 0;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "<=" || tokens[i] == "=") {
          rel_pos = i;
          break;
        }
      }
      if (rel_pos == 0 || rel_pos + 1 != tokens.size() - 1) {
        throw ParseError(line_no, "expected '<relation> <rhs>' at end of row");
      }
      if (!is_number_token(tokens.back())) {
        throw ParseError(line_no, "right-hand side must be an integer");
      }
      row.rel = tokens[rel_pos] == "<=" ? Relation::LessEq : Relation::Eq;
      row.rhs = parse_number(tokens.back(), line_no);
      row.terms = parse_terms(tokens, 1, rel_pos, line_no);
      for (const auto& term : row.terms) {
        term_uses.emplace_back(line_no, term.var);
      }
      model.constraints.push_back(std::move(row));
      continue;
    }
    if (section == Section::Binaries) {
      if (line == "End") {
        section = Section::Done;
        continue;
      }
      for (const auto& token : split_tokens(line)) {
        model.variables.push_back(token);
      }
      continue;
    }
    throw ParseError(line_no, "content after 'End'");
  }
  if (section != Section::Done) {
    throw ParseError(std::max(line_no, 1), "document ended before 'End'");
  }

  std::unordered_set<std::string> declared;
  for (const auto& var : model.variables) {
    if (!declared.insert(var).second) {
      throw ParseError(line_no, "variable '" + var + "' declared twice");
    }
  }
  for (const auto& [use_line, var] : term_uses) {
    if (declared.find(var) == declared.end()) {
      throw ParseError(use_line, "undeclared variable '" + var + "'");
    }
  }
  return model;
}

std::vector<ModelViolation> check_solution_against_model(
    const MilpModel& model, const std::map<std::string, int>& values) {
  for (const auto& var : model.variables) {
    if (values.find(var) == values.end()) {
      throw InputError("no value supplied for variable '" + var + "'");
    }
  }

  std::vector<ModelViolation> out;
  for (const auto& row : model.constraints) {
    long long lhs = 0;
    for (const auto& term : row.terms) {
      auto it = values.find(term.var);
      if (it == values.end()) {
        throw InputError("no value supplied for variable '" + term.var + "'");
      }
      lhs += term.coeff * it->second;
    }
    const long long slack = lhs - row.rhs;
    const bool violated =
        row.rel == Relation::LessEq ? slack > 0 : slack != 0;
    if (violated) {
      out.push_back({row.name, lhs, row.rhs, slack});
    }
  }
  return out;
}

std::map<std::string, int> solution_to_values(const MilpModel& model,
                                              const Subproblem& sp,
                                              const Solution& sol) {
  std::map<std::string, int> values;
  const int T = model.containers;
  for (std::size_t c = 0; c < model.item_ids.size(); ++c) {
    auto it = sol.assignment.find(model.item_ids[c]);
    const int assigned = it == sol.assignment.end() ? 0 : it->second;
    for (int t = 1; t <= T; ++t) {
      values[var_x(static_cast<int>(c) + 1, t)] = assigned == t ? 1 : 0;
    }
  }
  const std::set<int> used = sol.used();
  for (int t = 1; t <= T; ++t) {
    values[var_y(t)] = used.count(t) ? 1 : 0;
  }
  const auto spreads = sol.pcb_spread(sp);
  for (std::size_t p = 0; p < model.pcb_ids.size(); ++p) {
    auto it = spreads.find(model.pcb_ids[p]);
    for (int t = 1; t <= T; ++t) {
      const bool touches = it != spreads.end() && it->second.count(t) > 0;
      values[var_z(static_cast<int>(p) + 1, t)] = touches ? 1 : 0;
    }
  }
  return values;
}

}  // namespace topt
