#pragma once
//
// Two-level atom / diatomic-molecule boson model
//
//   H = (w0/2) a^+ a + w b^+ b + lambda / sqrt(2M) (b^+ a a + b a^+ a^+)
//
// with M = 2 n_b + n_a conserved. For fixed M the Hamiltonian is a symmetric
// tridiagonal matrix in the |M, n_b> basis, n_b = 0 .. M/2 (ascending).
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "admqpt/error.hpp"

namespace admqpt {

struct ModelParams {
  double omega0 = 2.0;  ///< energy of an atom pair level
  double omega = 1.0;   ///< molecular level energy
  double lambda = 0.0;  ///< atom-molecule coupling (control parameter)
  int M = 700;          ///< total atom number, molecules count twice

  double delta_omega() const noexcept { return omega0 - omega; }
};

/// Largest supported M; coupling radicands stay exact in 64-bit integers.
inline constexpr long long kMaxSystemSize = 1'000'000;

inline void validate_system_size(long long M) {
  if (M < 2 || M % 2 != 0) {
    throw InvalidParameter("total atom number M must be even and >= 2, got " +
                           std::to_string(M));
  }
  if (M > kMaxSystemSize) {
    throw InvalidParameter("total atom number M exceeds " + std::to_string(kMaxSystemSize));
  }
}

inline void validate(const ModelParams& p) {
  validate_system_size(p.M);
  if (!std::isfinite(p.omega0) || !std::isfinite(p.omega) || !(p.omega0 > p.omega)) {
    throw InvalidParameter("omega0 must exceed omega (got omega0=" + std::to_string(p.omega0) +
                           ", omega=" + std::to_string(p.omega) + ")");
  }
  if (!std::isfinite(p.lambda) || p.lambda < 0.0) {
    throw InvalidParameter("lambda must be finite and >= 0, got " + std::to_string(p.lambda));
  }
}

/// Number of |M, n_b> states: n_b runs over 0 .. M/2.
inline std::size_t basis_dimension(long long M) {
  validate_system_size(M);
  return static_cast<std::size_t>(M / 2 + 1);
}

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
/// offdiag[k] couples basis states k and k+1.
struct TridiagonalHamiltonian {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t dim() const noexcept { return diag.size(); }

  /// max_i |diag_i|
  double diag_norm() const noexcept {
    double m = 0.0;
    for (double d : diag) m = std::max(m, std::abs(d));
    return m;
  }

  /// Infinity norm of the full matrix (max absolute row sum).
  double norm_inf() const noexcept {
    const std::size_t n = diag.size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = std::abs(diag[i]);
      if (i > 0) row += std::abs(offdiag[i - 1]);
      if (i + 1 < n) row += std::abs(offdiag[i]);
      m = std::max(m, row);
    }
    return m;
  }

  /// y = H x
  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = diag.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += offdiag[i - 1] * x[i - 1];
      if (i + 1 < n) s += offdiag[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }
};

/// Integer radicand (M-2k)(M-2k-1)(k+1) of the coupling between n_b=k and k+1.
/// Fits in 64 bits for M up to ~10^6.
inline std::uint64_t coupling_radicand(long long M, long long k) {
  const auto na = static_cast<std::uint64_t>(M - 2 * k);
  return na * (na - 1) * static_cast<std::uint64_t>(k + 1);
}

inline TridiagonalHamiltonian build_hamiltonian(const ModelParams& p) {
  validate(p);
  const long long M = p.M;
  const std::size_t dim = basis_dimension(M);

  TridiagonalHamiltonian h;
  h.diag.resize(dim);
  h.offdiag.resize(dim - 1);
  for (std::size_t nb = 0; nb < dim; ++nb) {
    const auto n = static_cast<long long>(nb);
    h.diag[nb] = 0.5 * p.omega0 * static_cast<double>(M - 2 * n) + p.omega * static_cast<double>(n);
  }
  const double scale = p.lambda / std::sqrt(2.0 * static_cast<double>(M));
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const auto r = coupling_radicand(M, static_cast<long long>(k));
    h.offdiag[k] = scale * std::sqrt(static_cast<double>(r));
  }
  return h;
}

}  // namespace admqpt
