#pragma once
//
// Delocalization and information markers of a ground state in the |M, n_b>
// basis: IPR, Shannon entropy, Renyi entropies, and <n_a>/M, <n_b>/M.
// All logarithms are natural (nats).
//

#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "admqpt/error.hpp"
#include "admqpt/model.hpp"

namespace admqpt {

/// Default numerical support threshold used by the alpha = 0 Renyi entropy.
inline constexpr double kDefaultSupportEps = 1e-12;
/// Probabilities below this are dropped from alpha < 1 Renyi sums.
inline constexpr double kProbabilityFloor = 1e-300;
/// |alpha - 1| below this evaluates the Shannon limit.
inline constexpr double kShannonWindow = 1e-12;

/// Non-negative weights summing to one.
class ProbabilityVector {
public:
  static constexpr double kSumTolerance = 1e-10;

  explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidParameter("probability vector is empty");
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw InvalidParameter("probabilities must be finite and non-negative");
      }
      sum += p;
    }
    if (sum == 0.0) throw InvalidParameter("probability vector is all zero");
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw InvalidParameter("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
  }

  /// p_i = |c_i|^2 of a normalized amplitude vector.
  static ProbabilityVector from_amplitudes(std::span<const double> coeffs) {
    std::vector<double> p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p[i] = coeffs[i] * coeffs[i];
    return ProbabilityVector(std::move(p));
  }

  std::span<const double> values() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

private:
  std::vector<double> probs_;
};

inline double ipr(const ProbabilityVector& p) {
  double s = 0.0;
  for (double v : p.values()) s += v * v;
  return 1.0 / s;
}

/// -sum p ln p with 0 ln 0 = 0.
inline double shannon(const ProbabilityVector& p) {
  double s = 0.0;
  for (double v : p.values()) {
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

inline double renyi(const ProbabilityVector& p, double alpha,
                    double support_eps = kDefaultSupportEps) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("Renyi order must be finite and >= 0");
  }
  if (alpha == 0.0) {
    std::size_t support = 0;
    for (double v : p.values())
      if (v > support_eps) ++support;
    if (support == 0) throw InvalidParameter("empty numerical support");
    return std::log(static_cast<double>(support));
  }
  if (std::abs(alpha - 1.0) <= kShannonWindow) return shannon(p);
  if (alpha == 2.0) {
    double s = 0.0;
    for (double v : p.values()) s += v * v;
    return -std::log(s);
  }
  double s = 0.0;
  for (double v : p.values()) {
    if (alpha < 1.0 && v < kProbabilityFloor) continue;
    if (v > 0.0) s += std::pow(v, alpha);
  }
  return std::log(s) / (1.0 - alpha);
}

/// <n_a>/M = sum_nb c^2 (M - 2 n_b) / M for coefficients indexed by n_b.
inline double na_expectation(std::span<const double> coeffs, long long M) {
  if (coeffs.size() != basis_dimension(M)) {
    throw InvalidParameter("coefficient vector length " + std::to_string(coeffs.size()) +
                           " does not match M/2+1 for M=" + std::to_string(M));
  }
  double s = 0.0;
  for (std::size_t nb = 0; nb < coeffs.size(); ++nb) {
    s += coeffs[nb] * coeffs[nb] * static_cast<double>(M - 2 * static_cast<long long>(nb));
  }
  return s / static_cast<double>(M);
}

/// <n_b>/M.
inline double nb_expectation(std::span<const double> coeffs, long long M) {
  if (coeffs.size() != basis_dimension(M)) {
    throw InvalidParameter("coefficient vector length does not match M/2+1");
  }
  double s = 0.0;
  for (std::size_t nb = 0; nb < coeffs.size(); ++nb) {
    s += coeffs[nb] * coeffs[nb] * static_cast<double>(nb);
  }
  return s / static_cast<double>(M);
}

/// Binomial(trials, p) PMF over k = 0 .. trials, evaluated through lgamma.
inline ProbabilityVector binomial_reference(long long trials, double p_success) {
  if (trials < 1) throw InvalidParameter("binomial reference needs at least one trial");
  if (!(p_success > 0.0 && p_success < 1.0)) {
    throw InvalidParameter("binomial success probability must lie in (0, 1)");
  }
  const double n = static_cast<double>(trials);
  const double log_p = std::log(p_success);
  const double log_q = std::log1p(-p_success);
  const double log_n_fact = std::lgamma(n + 1.0);
  std::vector<double> pmf(static_cast<std::size_t>(trials) + 1);
  for (long long k = 0; k <= trials; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                            kd * log_p + (n - kd) * log_q;
    pmf[static_cast<std::size_t>(k)] = std::exp(log_term);
  }
  return ProbabilityVector(std::move(pmf));
}

/// Every marker evaluated on one ground state.
struct MarkerSet {
  double ipr = 1.0;
  double shannon = 0.0;
  std::map<double, double> renyi;  ///< alpha -> R^(alpha)
  double na_per_M = 0.0;
  double nb_per_M = 0.0;
};

inline MarkerSet evaluate_markers(std::span<const double> coeffs, long long M,
                                  std::span<const double> alphas,
                                  double support_eps = kDefaultSupportEps) {
  const auto p = ProbabilityVector::from_amplitudes(coeffs);
  MarkerSet m;
  m.ipr = ipr(p);
  m.shannon = shannon(p);
  for (double a : alphas) m.renyi[a] = renyi(p, a, support_eps);
  m.na_per_M = na_expectation(coeffs, M);
  m.nb_per_M = nb_expectation(coeffs, M);
  return m;
}

}  // namespace admqpt
