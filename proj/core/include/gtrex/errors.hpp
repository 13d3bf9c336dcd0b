#ifndef GTREX_ERRORS_HPP
#define GTREX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gtrex {

/// Invalid arguments or violated preconditions (bad k, divisibility, ranges).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or degenerate input data (non-finite entries, zero columns, parse failures).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (factorization of a non-PD matrix, eigensolver breakdown).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver hit its iteration cap; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Pathological solver input (every candidate iterate rejected).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gtrex

#endif  // GTREX_ERRORS_HPP
