#pragma once

#include <stdexcept>
#include <string>

namespace cfgsim {

// Malformed input: bad JSON, schema violations, invalid graphs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in mini-language source. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Exact search exceeded its state budget. Carries the best admissible
// lower bound proven before giving up; never a silent approximation.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& msg, double best_lower_bound,
                  long long expanded)
      : std::runtime_error(msg),
        best_lower_bound_(best_lower_bound),
        expanded_(expanded) {}

  double best_lower_bound() const { return best_lower_bound_; }
  long long expanded_states() const { return expanded_; }

 private:
  double best_lower_bound_;
  long long expanded_;
};

// Tensor shape mismatch or non-finite value produced by an op.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfgsim
