#include "topt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace topt {

namespace {

std::string fill_pct(int used, int capacity) {
  const double pct = capacity > 0 ? 100.0 * used / capacity : 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", pct);
  return buffer;
}

SolveStatus status_from_string(const std::string& s, int line) {
  if (s == "optimal") return SolveStatus::Optimal;
  if (s == "feasible") return SolveStatus::Feasible;
  if (s == "infeasible") return SolveStatus::Infeasible;
  if (s == "limit_reached") return SolveStatus::LimitReached;
  throw ParseError(line, "unknown status '" + s + "'");
}

SolveStatus combined_status(const LoadingPlan& plan) {
  if (plan.trolley_status == SolveStatus::Optimal &&
      plan.stacker_status == SolveStatus::Optimal) {
    return SolveStatus::Optimal;
  }
  if (plan.trolley_status == SolveStatus::Infeasible ||
      plan.stacker_status == SolveStatus::Infeasible) {
    return SolveStatus::Infeasible;
  }
  if (plan.trolley_status == SolveStatus::LimitReached ||
      plan.stacker_status == SolveStatus::LimitReached) {
    return SolveStatus::LimitReached;
  }
  return SolveStatus::Feasible;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

}  // namespace

std::string render_plan_csv(const LoadingPlan& plan) {
  std::ostringstream out;
  out << "container,kind,used,capacity,fill_pct\n";
  for (const auto& container : plan.containers) {
    out << container.id << ',' << to_string(container.kind) << ','
        << container.used_slots << ',' << container.capacity << ','
        << fill_pct(container.used_slots, container.capacity) << '\n';
  }
  out << "\npcb,containers\n";
  for (const auto& [pcb_id, containers] : plan.pcb_pulls) {
    out << pcb_id << ',';
    for (std::size_t i = 0; i < containers.size(); ++i) {
      if (i > 0) out << ';';
      out << containers[i];
    }
    out << '\n';
  }
  out << "\nsummary,trolleys,stackers,objective,status\n";
  out << "summary," << plan.trolley_count << ',' << plan.stacker_count << ','
      << plan.trolley_count + plan.stacker_count << ','
      << to_string(combined_status(plan)) << '\n';
  return out.str();
}

std::string render_plan_text(const LoadingPlan& plan) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "container" << std::setw(9) << "kind"
      << std::right << std::setw(6) << "used" << std::setw(10) << "capacity"
      << std::setw(8) << "fill%" << '\n';
  for (const auto& container : plan.containers) {
    out << std::left << std::setw(10) << container.id << std::setw(9)
        << to_string(container.kind) << std::right << std::setw(6)
        << container.used_slots << std::setw(10) << container.capacity
        << std::setw(8) << fill_pct(container.used_slots, container.capacity)
        << '\n';
  }
  out << "\npcb pulls:\n";
  for (const auto& [pcb_id, containers] : plan.pcb_pulls) {
    out << "  " << pcb_id << ':';
    for (int id : containers) out << ' ' << id;
    out << '\n';
  }
  out << "\nsummary: trolleys=" << plan.trolley_count
      << " stackers=" << plan.stacker_count
      << " objective=" << plan.trolley_count + plan.stacker_count
      << " status=" << to_string(combined_status(plan)) << '\n';
  return out.str();
}

LoadingPlan parse_plan_csv(const std::string& text) {
  LoadingPlan plan;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  enum class Section { Containers, Pulls, Summary, Done };
  Section section = Section::Containers;
  bool saw_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;

    if (section == Section::Containers) {
      if (!saw_header) {
        if (line != "container,kind,used,capacity,fill_pct") {
          throw ParseError(line_no, "expected container table header");
        }
        saw_header = true;
        continue;
      }
      if (line == "pcb,containers") {
        section = Section::Pulls;
        continue;
      }
      const auto fields = split(line, ',');
      if (fields.size() != 5) {
        throw ParseError(line_no, "container row needs 5 fields");
      }
      PlanContainer container;
      try {
        container.id = std::stoi(fields[0]);
        container.used_slots = std::stoi(fields[2]);
        container.capacity = std::stoi(fields[3]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "container row has non-numeric fields");
      }
      if (fields[1] == "trolley") {
        container.kind = ContainerClass::Trolley;
      } else if (fields[1] == "stacker") {
        container.kind = ContainerClass::Stacker;
      } else {
        throw ParseError(line_no, "unknown container kind '" + fields[1] + "'");
      }
      plan.containers.push_back(std::move(container));
      continue;
    }
    if (section == Section::Pulls) {
      if (line == "summary,trolleys,stackers,objective,status") {
        section = Section::Summary;
        continue;
      }
      const auto fields = split(line, ',');
      if (fields.size() != 2) {
        throw ParseError(line_no, "pull row needs 2 fields");
      }
      std::vector<int> containers;
      if (!fields[1].empty()) {
        for (const auto& token : split(fields[1], ';')) {
          try {
            containers.push_back(std::stoi(token));
          } catch (const std::exception&) {
            throw ParseError(line_no, "pull row has non-numeric container id");
          }
        }
      }
      plan.pcb_pulls.emplace_back(fields[0], std::move(containers));
      continue;
    }
    if (section == Section::Summary) {
      const auto fields = split(line, ',');
      if (fields.size() != 5 || fields[0] != "summary") {
        throw ParseError(line_no, "expected summary row");
      }
      try {
        plan.trolley_count = std::stoi(fields[1]);
        plan.stacker_count = std::stoi(fields[2]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "summary row has non-numeric fields");
      }
      const SolveStatus status = status_from_string(fields[4], line_no);
      plan.trolley_status = status;
      plan.stacker_status = status;
      section = Section::Done;
      continue;
    }
    throw ParseError(line_no, "content after summary row");
  }
  if (section != Section::Done) {
    throw ParseError(std::max(line_no, 1), "plan document ended early");
  }
  return plan;
}

}  // namespace topt
