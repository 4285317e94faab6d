#pragma once

#include <stdexcept>
#include <string>

namespace lsr {

// A computation diverged, stalled, or produced non-finite values.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual = 0.0, long iteration = -1)
      : std::runtime_error(what), residual_(residual), iteration_(iteration) {}

  double residual() const { return residual_; }
  long iteration() const { return iteration_; }

 private:
  double residual_;
  long iteration_;
};

// Malformed input file; line is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace lsr
