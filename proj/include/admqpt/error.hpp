#pragma once

#include <stdexcept>
#include <string>

namespace admqpt {

/// Raised when model or run parameters violate their invariants.
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for arguments outside a function's mathematical domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative eigensolver exhausts its iteration budget or the
/// requested eigenpair is not isolated. Carries the best residual reached.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

}  // namespace admqpt
