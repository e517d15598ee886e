#pragma once
//
// Lowest eigenpair of a real symmetric tridiagonal matrix.
//
//   ground_state  : Sturm-sequence bisection for the eigenvalue, then inverse
//                   iteration (tridiagonal LU with partial pivoting).
//   full_spectrum : implicit-shift QL, eigenvalues only.
//   dense_oracle  : cyclic Jacobi on the densified matrix. O(D^3), tests only.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "admqpt/error.hpp"
#include "admqpt/model.hpp"

namespace admqpt {

struct GroundState {
  double energy = 0.0;
  std::vector<double> coeffs;  ///< unit norm, largest |component| positive
  int converged_iterations = 0;
  double residual = 0.0;  ///< ||H c - E c||_2
};

struct SolverOptions {
  double bisection_rel_tol = 1e-13;
  double residual_rel_tol = 1e-11;  ///< relative to ||H||_inf
  int max_inverse_iterations = 50;
  int max_bisection_steps = 400;
  double degeneracy_rel_tol = 1e-12;
};

/// Largest dimension accepted by dense_oracle.
inline constexpr std::size_t kDenseOracleMaxDim = 2000;

namespace detail {

inline double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double residual_norm(const TridiagonalHamiltonian& h, const std::vector<double>& x,
                            double energy) {
  auto y = h.apply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - energy * x[i];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Normalize to unit length and flip so the largest-magnitude entry is positive.
inline void normalize_and_fix_sign(std::vector<double>& x) {
  const double n = norm2(x);
  std::size_t imax = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] /= n;
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  }
  if (x[imax] < 0.0) {
    for (double& v : x) v = -v;
  }
}

inline std::pair<double, double> gershgorin_bounds(const TridiagonalHamiltonian& h) {
  const std::size_t n = h.dim();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(h.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(h.offdiag[i]);
    lo = std::min(lo, h.diag[i] - r);
    hi = std::max(hi, h.diag[i] + r);
  }
  return {lo, hi};
}

inline double pivot_floor(const TridiagonalHamiltonian& h) {
  double emax2 = 1.0;
  for (double e : h.offdiag) emax2 = std::max(emax2, e * e);
  return std::numeric_limits<double>::min() * emax2;
}

/// Number of eigenvalues strictly below x (negative pivots of the LDL^T
/// factorization of H - x I).
inline std::size_t sturm_count(const TridiagonalHamiltonian& h, double x, double pivmin) {
  std::size_t count = 0;
  double q = h.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < h.dim(); ++i) {
    const double e = h.offdiag[i - 1];
    q = h.diag[i] - x - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

struct Bracket {
  double lo;
  double hi;
  int steps;
  double mid() const { return 0.5 * (lo + hi); }
};

/// Bisect for the k-th smallest eigenvalue (k from 0).
inline Bracket bisect_eigenvalue(const TridiagonalHamiltonian& h, std::size_t k,
                                 const SolverOptions& opt) {
  auto [lo, hi] = gershgorin_bounds(h);
  const double pivmin = pivot_floor(h);
  const double abs_floor = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lo), std::abs(hi));
  // Widen slightly so the Gershgorin endpoints are strict bounds.
  const double pad = abs_floor + pivmin;
  lo -= pad;
  hi += pad;
  int steps = 0;
  while (true) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (width <= std::max(opt.bisection_rel_tol * scale, abs_floor)) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (++steps > opt.max_bisection_steps) {
      throw NonConvergence("bisection did not isolate eigenvalue " + std::to_string(k), width);
    }
    if (sturm_count(h, mid, pivmin) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi, steps};
}

/// LU factorization of (H - shift I) with partial pivoting, then solves for
/// one right-hand side. U carries two superdiagonals after row exchanges.
class ShiftedTridiagonalSolver {
public:
  ShiftedTridiagonalSolver(const TridiagonalHamiltonian& h, double shift) {
    const std::size_t n = h.dim();
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(h.norm_inf(), 1.0);
    u0_.assign(n, 0.0);
    u1_.assign(n, 0.0);
    u2_.assign(n, 0.0);
    mult_.assign(n, 0.0);
    swapped_.assign(n, 0);

    // Working copies of the current row (a = diag, b = super) and next row.
    double a = h.diag[0] - shift;
    double b = n > 1 ? h.offdiag[0] : 0.0;
    double c = 0.0;  // second superdiagonal fill-in of the current row
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double sub = h.offdiag[i];
      const double next_a = h.diag[i + 1] - shift;
      const double next_b = i + 2 < n ? h.offdiag[i + 1] : 0.0;
      if (std::abs(a) >= std::abs(sub)) {
        if (a == 0.0) a = tiny;
        const double m = sub / a;
        mult_[i] = m;
        u0_[i] = a;
        u1_[i] = b;
        u2_[i] = c;
        a = next_a - m * b;
        b = next_b - m * c;
        c = 0.0;
      } else {
        const double m = a / sub;
        mult_[i] = m;
        swapped_[i] = 1;
        u0_[i] = sub;
        u1_[i] = next_a;
        u2_[i] = next_b;
        const double na = b - m * next_a;
        const double nb = c - m * next_b;
        a = na;
        b = nb;
        c = 0.0;
      }
    }
    if (a == 0.0) a = tiny;
    u0_[n - 1] = a;
  }

  std::vector<double> solve(std::vector<double> rhs) const {
    const std::size_t n = rhs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) {
        std::swap(rhs[i], rhs[i + 1]);
      }
      rhs[i + 1] -= mult_[i] * rhs[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = rhs[ii];
      if (ii + 1 < n) s -= u1_[ii] * rhs[ii + 1];
      if (ii + 2 < n) s -= u2_[ii] * rhs[ii + 2];
      rhs[ii] = s / u0_[ii];
    }
    return rhs;
  }

private:
  std::vector<double> u0_, u1_, u2_, mult_;
  std::vector<unsigned char> swapped_;
};

/// Deterministic start vector: uniform plus a small fixed-seed perturbation.
inline std::vector<double> start_vector(std::size_t n) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  std::vector<double> x(n);
  const double base = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : x) {
    // splitmix64
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    v = base * (1.0 + 1e-3 * (u - 0.5));
  }
  return x;
}

inline void check_nondegenerate(const TridiagonalHamiltonian& h, double e0,
                                const SolverOptions& opt) {
  if (h.dim() < 2) return;
  const double gap_tol = opt.degeneracy_rel_tol * std::max(std::abs(e0), h.norm_inf());
  if (sturm_count(h, e0 + gap_tol, pivot_floor(h)) >= 2) {
    throw NonConvergence("lowest eigenvalue is (near-)degenerate; ground state is not unique",
                         std::numeric_limits<double>::infinity());
  }
}

}  // namespace detail

inline double residual(const TridiagonalHamiltonian& h, const GroundState& gs) {
  return detail::residual_norm(h, gs.coeffs, gs.energy);
}

inline GroundState ground_state(const TridiagonalHamiltonian& h, const SolverOptions& opt = {}) {
  const std::size_t n = h.dim();
  if (n == 0 || h.offdiag.size() + 1 != n) {
    throw InvalidParameter("malformed tridiagonal matrix");
  }
  GroundState gs;
  if (n == 1) {
    gs.energy = h.diag[0];
    gs.coeffs = {1.0};
    return gs;
  }

  // Decoupled matrix: the answer is a basis vector, no iteration needed.
  if (std::all_of(h.offdiag.begin(), h.offdiag.end(), [](double e) { return e == 0.0; })) {
    const auto imin = static_cast<std::size_t>(
        std::min_element(h.diag.begin(), h.diag.end()) - h.diag.begin());
    detail::check_nondegenerate(h, h.diag[imin], opt);
    gs.energy = h.diag[imin];
    gs.coeffs.assign(n, 0.0);
    gs.coeffs[imin] = 1.0;
    return gs;
  }

  const auto bracket = detail::bisect_eigenvalue(h, 0, opt);
  const double shift = bracket.mid();
  detail::check_nondegenerate(h, bracket.hi, opt);

  const double stop = opt.residual_rel_tol * h.norm_inf();
  const double accept = 1e-10 * std::max(h.diag_norm(), std::numeric_limits<double>::min());
  const detail::ShiftedTridiagonalSolver solver(h, shift);

  auto x = detail::start_vector(n);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x = x;
  int it = 0;
  bool polished = false;  // one extra sweep after the stop test passes
  while (it < opt.max_inverse_iterations) {
    ++it;
    x = solver.solve(std::move(x));
    const double nrm = detail::norm2(x);
    if (!std::isfinite(nrm) || nrm == 0.0) break;
    for (double& v : x) v /= nrm;
    const double r = detail::residual_norm(h, x, shift);
    if (r < best) {
      best = r;
      best_x = x;
    }
    if (r <= stop && r <= accept) {
      if (polished) break;
      polished = true;
    }
  }
  if (!(best <= accept)) {
    throw NonConvergence("inverse iteration residual " + std::to_string(best) +
                             " above acceptance threshold " + std::to_string(accept),
                         best);
  }
  detail::normalize_and_fix_sign(best_x);
  // Rayleigh quotient is second-order accurate; keep it only inside the bracket.
  const auto hx = h.apply(best_x);
  double rq = 0.0;
  for (std::size_t i = 0; i < n; ++i) rq += best_x[i] * hx[i];
  gs.energy = (rq >= bracket.lo && rq <= bracket.hi) ? rq : shift;
  gs.coeffs = std::move(best_x);
  gs.converged_iterations = bracket.steps + it;
  gs.residual = detail::residual_norm(h, gs.coeffs, gs.energy);
  return gs;
}

/// All eigenvalues in ascending order (implicit-shift QL).
inline std::vector<double> full_spectrum(const TridiagonalHamiltonian& h) {
  const std::size_t n = h.dim();
  std::vector<double> d = h.diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = h.offdiag[i];
  constexpr int kMaxSweeps = 60;
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    while (true) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxSweeps) {
        throw NonConvergence("QL iteration did not converge", std::abs(e[l]));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Ground state through cyclic Jacobi rotations on the dense matrix.
/// Independent of the bisection / inverse-iteration path.
inline GroundState dense_oracle(const TridiagonalHamiltonian& h) {
  const std::size_t n = h.dim();
  if (n == 0) throw InvalidParameter("empty matrix");
  if (n > kDenseOracleMaxDim) {
    throw InvalidParameter("dense oracle limited to dimension " +
                           std::to_string(kDenseOracleMaxDim) + ", got " + std::to_string(n));
  }
  std::vector<double> a(n * n, 0.0);
  std::vector<double> v(n * n, 0.0);
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = h.diag[i];
    V(i, i) = 1.0;
    frob += h.diag[i] * h.diag[i];
    if (i + 1 < n) {
      A(i, i + 1) = A(i + 1, i) = h.offdiag[i];
      frob += 2.0 * h.offdiag[i] * h.offdiag[i];
    }
  }
  frob = std::sqrt(frob);
  const double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    off = std::sqrt(2.0 * off);
    if (off <= eps * eps * frob || off == 0.0) break;
    if (sweep >= kMaxSweeps) throw NonConvergence("Jacobi sweeps did not converge", off);

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double app = A(p, p);
        const double aqq = A(q, q);
        if (std::abs(apq) < 1e-3 * eps * std::min(std::abs(app), std::abs(aqq))) {
          A(p, q) = A(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p);
          const double akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k);
          const double aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = A(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V(k, p);
          const double vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::size_t imin = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (A(i, i) < A(imin, imin)) imin = i;

  GroundState gs;
  gs.energy = A(imin, imin);
  gs.coeffs.resize(n);
  for (std::size_t k = 0; k < n; ++k) gs.coeffs[k] = V(k, imin);
  detail::normalize_and_fix_sign(gs.coeffs);
  gs.converged_iterations = sweep;
  gs.residual = detail::residual_norm(h, gs.coeffs, gs.energy);
  return gs;
}

}  // namespace admqpt
