#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// Malformed configuration text. Carries the 1-based line of the offending entry.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A configuration value that parses but violates an invariant.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Quadrature or fit produced a non-finite or degenerate result.
class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The time integrator met a non-finite value.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(double t, double last_stable_time, const std::string& where)
      : std::runtime_error("non-finite field at t=" + std::to_string(t) + " (" + where +
                           "), last stable t=" + std::to_string(last_stable_time)),
        time_(t),
        last_stable_(last_stable_time) {}
  double time() const noexcept { return time_; }
  double last_stable_time() const noexcept { return last_stable_; }

 private:
  double time_;
  double last_stable_;
};

}  // namespace wavelab
