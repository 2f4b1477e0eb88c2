#pragma once

#include <stdexcept>
#include <string>

namespace mixbound {

/// Argument outside the mathematical domain of an operation (n_eff < 1, x <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Exact integer result does not fit the 64-bit representation.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// A search range or index limit was exceeded.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// A constructed object failed its own invariants. Always a bug, never user error.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The optimizer support reached the last retained shell.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double trace_residual, double purity_residual)
      : std::runtime_error(what),
        trace_residual_(trace_residual),
        purity_residual_(purity_residual) {}

  double trace_residual() const noexcept { return trace_residual_; }
  double purity_residual() const noexcept { return purity_residual_; }

private:
  double trace_residual_;
  double purity_residual_;
};

}  // namespace mixbound
