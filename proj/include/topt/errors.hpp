#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topt {

// One reported breach of an invariant. Validators collect violations as data
// instead of throwing, so a caller always sees the full list.
struct Violation {
  std::string kind;     // stable machine-readable identifier
  std::string subject;  // id of the offending component/pcb/container
  std::string detail;   // human-readable explanation

  bool operator==(const Violation&) const = default;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input that cannot be parsed; carries the 1-based line of the fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stage or PCB that provably cannot be satisfied. subject() names it.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string subject, const std::string& message)
      : std::runtime_error(message), subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    if (violations.empty()) {
      return "validation failed";
    }
    std::string msg = std::to_string(violations.size()) + " violation(s), first: " +
                      violations.front().kind + " [" + violations.front().subject +
                      "] " + violations.front().detail;
    return msg;
  }

  std::vector<Violation> violations_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace topt
