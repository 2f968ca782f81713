#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isingkit {

/// Input text could not be parsed. Positions are 1-based; 0 means the
/// position is not known (e.g. a semantic error found after reading).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0,
                      std::size_t column = 0)
      : std::runtime_error(format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A program could not be compiled into QUBO/Ising form.
class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solve engine could not produce a result (divergence, refused input).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An engine hit a non-finite quantity and stopped.
class DivergenceError : public EngineError {
 public:
  DivergenceError(const std::string& message, std::size_t step)
      : EngineError(message + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace isingkit
