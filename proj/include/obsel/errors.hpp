#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obsel {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (input/validation); anything else escaping is an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Every hypothesis received zero weight.
class DegenerateEvidenceError : public Error {
 public:
  using Error::Error;
};

// Scenario counts contradict each other (e.g. evidence set larger than the
// reference class that is declared to contain it).
class InconsistentScenarioError : public Error {
 public:
  using Error::Error;
};

// FNC evaluated outside the small-match-probability regime.
class RegimeViolationError : public Error {
 public:
  using Error::Error;
};

// Observation is impossible under every hypothesis with prior mass.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

// Mismatched or unsupported configuration of an otherwise valid call.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class SamplerStarvationError : public Error {
 public:
  SamplerStarvationError(const std::string& what, double volume,
                         double acceptance_estimate)
      : Error(what), volume_(volume), acceptance_estimate_(acceptance_estimate) {}

  double volume() const noexcept { return volume_; }
  double acceptance_estimate() const noexcept { return acceptance_estimate_; }

 private:
  double volume_;
  double acceptance_estimate_;
};

// Scenario-file syntax or semantic error. Line and column are 1-based; a
// column of 0 means the whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) +
              (column ? ", column " + std::to_string(column) : std::string()) +
              ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace obsel
