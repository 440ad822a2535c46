#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpltail {

// Invalid inputs: bad parameters, malformed files, unusable samples.
// The command-line driver maps this family to exit code 1.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed data file; carries the 1-based line where parsing stopped.
class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Numerical failures: non-convergence, singular information, empty scans.
// The command-line driver maps this family to exit code 2.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceError : public NumericalError {
public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

// Observed information matrix is not positive definite at the optimum.
class SingularInformationError : public NumericalError {
public:
  explicit SingularInformationError(const std::string& what) : NumericalError(what) {}
};

// No candidate tail start satisfied the acceptance rule.
class NoTailError : public NumericalError {
public:
  explicit NoTailError(const std::string& what) : NumericalError(what) {}
};

}  // namespace gpltail
