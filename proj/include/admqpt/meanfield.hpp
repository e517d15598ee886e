#pragma once
//
// Large-M (mean-field) baselines. With dw = omega0 - omega and x^2 = n_a/M the
// energy surface per particle is
//
//   v(x) = omega/2 + (dw/2) x^2 - lambda x^2 sqrt(1 - x^2),   |x| <= 1,
//
// minimized at x = 0 for lambda <= dw/2 and at x = x2(lambda) beyond.
//

#include <cmath>
#include <string>

#include "admqpt/error.hpp"

namespace admqpt::meanfield {

struct MeanFieldResult {
  double lambda_c = 0.0;
  double x2 = 0.0;
  double e0_per_particle = 0.0;
  double order_parameter = 0.0;  ///< x2^2 = n_a / M
};

inline void validate_levels(double omega0, double omega) {
  if (!(omega0 > omega)) {
    throw InvalidParameter("mean field requires omega0 > omega");
  }
}

inline double lambda_critical(double omega0, double omega) {
  validate_levels(omega0, omega);
  return 0.5 * (omega0 - omega);
}

inline double energy_surface(double x, double lambda, double omega0, double omega) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("energy surface coordinate must satisfy |x| <= 1, got " + std::to_string(x));
  }
  const double x2 = x * x;
  return 0.5 * omega + 0.5 * (omega0 - omega) * x2 - lambda * x2 * std::sqrt(1.0 - x2);
}

/// dv/dx, analytic.
inline double energy_surface_slope(double x, double lambda, double omega0, double omega) {
  if (!(std::abs(x) < 1.0)) {
    throw DomainError("slope undefined at |x| >= 1");
  }
  const double s = std::sqrt(1.0 - x * x);
  return x * ((omega0 - omega) - 2.0 * lambda * s + lambda * x * x / s);
}

/// Nonzero stationary point of v (minus-sign root). Zero where the radicand
/// is non-positive, i.e. for lambda <= dw/2.
inline double x2(double lambda, double delta_omega) {
  if (!(lambda > 0.0)) {
    throw DomainError("x2 requires lambda > 0");
  }
  const double l2 = lambda * lambda;
  const double dw2 = delta_omega * delta_omega;
  const double radicand =
      (12.0 * l2 - dw2 - delta_omega * std::sqrt(dw2 + 12.0 * l2)) / (18.0 * l2);
  // Tiny negative values are rounding noise at lambda_c.
  if (radicand <= 0.0) return 0.0;
  return std::sqrt(radicand);
}

inline double order_parameter(double lambda, double omega0, double omega) {
  const double lc = lambda_critical(omega0, omega);
  if (lambda <= lc) return 0.0;
  const double x = x2(lambda, omega0 - omega);
  return x * x;
}

inline double ground_energy_per_particle(double lambda, double omega0, double omega) {
  const double lc = lambda_critical(omega0, omega);
  if (lambda < 0.0) throw InvalidParameter("lambda must be >= 0");
  if (lambda <= lc) return 0.5 * omega;
  return energy_surface(x2(lambda, omega0 - omega), lambda, omega0, omega);
}

inline MeanFieldResult evaluate(double lambda, double omega0, double omega) {
  MeanFieldResult r;
  r.lambda_c = lambda_critical(omega0, omega);
  r.x2 = lambda > r.lambda_c ? x2(lambda, omega0 - omega) : 0.0;
  r.e0_per_particle = ground_energy_per_particle(lambda, omega0, omega);
  r.order_parameter = r.x2 * r.x2;
  return r;
}

/// Relative deviation (E_exact - E_mf) / E_mf. Scale-free, so total or
/// per-particle energies give the same value.
inline double epsilon(double e0_exact, double e0_mf) {
  if (e0_mf == 0.0) {
    throw DomainError("relative deviation undefined for zero mean-field energy");
  }
  return (e0_exact - e0_mf) / e0_mf;
}

}  // namespace admqpt::meanfield
