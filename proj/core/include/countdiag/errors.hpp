#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace countdiag {

/** @brief A model, mask or test parameter lies outside its admissible domain. */
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** @brief The data do not support the requested estimate (e.g. all positions masked). */
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief A lag series did not reach its tolerance within the lag cap. */
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief A numerical recursion hit a singular step. */
class NumericalDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief Malformed input file or configuration. */
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

  /// 1-based row of the offending record, 0 when not tied to a row.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace countdiag
