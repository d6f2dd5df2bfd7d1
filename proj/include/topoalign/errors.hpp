#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topoalign {

// Malformed arguments: shape mismatches, out-of-range parameters, non-finite
// coordinates.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input on which the operation is undefined (single point,
// all points coincident, ...).
struct degenerate_input : std::runtime_error {
  explicit degenerate_input(const std::string& what) : std::runtime_error(what) {}
};

// Exact solver refused the instance; callers fall back to a certified
// upper-bound path where one exists.
struct budget_exceeded : std::runtime_error {
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Optimizer hit a non-finite loss or gradient.
struct divergence_error : std::runtime_error {
  divergence_error(const std::string& what, std::size_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step(step) {}
  std::size_t step;
};

// File could not be parsed; line/column are 1-based.
struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace topoalign
