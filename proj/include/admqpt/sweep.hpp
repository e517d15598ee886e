#pragma once
//
// lambda sweeps and finite-size scans over the exact and mean-field pipelines,
// plus the post-processing that locates the critical point and IPR peak.
//
// Sweep points are independent; workers fill preallocated slots so the table
// never depends on scheduling.
//

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "admqpt/eigensolver.hpp"
#include "admqpt/error.hpp"
#include "admqpt/markers.hpp"
#include "admqpt/meanfield.hpp"
#include "admqpt/model.hpp"

namespace admqpt {

struct SweepSpec {
  ModelParams params;               ///< lambda is overridden per grid point
  std::vector<double> lambda_grid;  ///< strictly increasing, >= 0
  std::vector<double> alphas{0.5, 1.0, 2.0};
  std::vector<int> m_list;          ///< finite-size scans only
  unsigned threads = 1;
  double support_eps = kDefaultSupportEps;
};

struct SweepRow {
  int M = 0;
  double lambda = 0.0;
  double e0_exact_per_particle = 0.0;
  double e0_mf_per_particle = 0.0;
  double epsilon = 0.0;
  double na_per_M_exact = 0.0;
  double nb_per_M_exact = 0.0;
  double na_per_M_mf = 0.0;
  double ipr = 1.0;
  double shannon = 0.0;
  std::vector<double> renyi;  ///< parallel to SweepTable::alphas
};

struct SweepTable {
  double omega0 = 2.0;
  double omega = 1.0;
  std::vector<double> alphas;
  std::vector<SweepRow> rows;

  double lambda_c() const { return meanfield::lambda_critical(omega0, omega); }
};

/// Eigensolver failure at a specific sweep point.
class SweepPointError : public NonConvergence {
public:
  SweepPointError(const NonConvergence& cause, double lambda, int M)
      : NonConvergence("lambda=" + std::to_string(lambda) + ", M=" + std::to_string(M) + ": " +
                           cause.what(),
                       cause.best_residual()),
        lambda_(lambda),
        M_(M) {}

  double lambda() const noexcept { return lambda_; }
  int M() const noexcept { return M_; }

private:
  double lambda_;
  int M_;
};

/// n points from lo to hi inclusive, lo + i*(hi-lo)/(n-1) (no accumulation).
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw InvalidParameter("grid needs at least one point");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw InvalidParameter("grid upper bound must exceed lower bound");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * step;
  g.back() = hi;
  return g;
}

/// Default grid: 401 points on [0, 4 lambda_c].
inline std::vector<double> default_lambda_grid(double omega0, double omega) {
  return uniform_grid(0.0, 4.0 * meanfield::lambda_critical(omega0, omega), 401);
}

inline void validate(const SweepSpec& spec) {
  ModelParams probe = spec.params;
  probe.lambda = 0.0;
  validate(probe);
  if (spec.lambda_grid.empty()) throw InvalidParameter("lambda grid is empty");
  for (std::size_t i = 0; i < spec.lambda_grid.size(); ++i) {
    const double l = spec.lambda_grid[i];
    if (!std::isfinite(l) || l < 0.0) throw InvalidParameter("lambda grid values must be >= 0");
    if (i > 0 && !(l > spec.lambda_grid[i - 1])) {
      throw InvalidParameter("lambda grid must be strictly increasing");
    }
  }
  for (double a : spec.alphas) {
    if (!std::isfinite(a) || a < 0.0) throw InvalidParameter("Renyi orders must be >= 0");
  }
}

/// Single exact + mean-field evaluation.
inline SweepRow evaluate_point(const ModelParams& params, std::span<const double> alphas,
                               double support_eps = kDefaultSupportEps) {
  const auto h = build_hamiltonian(params);
  const auto gs = ground_state(h);
  const auto markers = evaluate_markers(gs.coeffs, params.M, alphas, support_eps);

  SweepRow row;
  row.M = params.M;
  row.lambda = params.lambda;
  row.e0_exact_per_particle = gs.energy / static_cast<double>(params.M);
  row.e0_mf_per_particle =
      meanfield::ground_energy_per_particle(params.lambda, params.omega0, params.omega);
  row.epsilon = meanfield::epsilon(row.e0_exact_per_particle, row.e0_mf_per_particle);
  row.na_per_M_exact = markers.na_per_M;
  row.nb_per_M_exact = markers.nb_per_M;
  row.na_per_M_mf = meanfield::order_parameter(params.lambda, params.omega0, params.omega);
  row.ipr = markers.ipr;
  row.shannon = markers.shannon;
  row.renyi.reserve(alphas.size());
  for (double a : alphas) row.renyi.push_back(markers.renyi.at(a));
  return row;
}

namespace detail {

/// Runs task(i) for i in [0, n) on up to `threads` workers. The first
/// exception (lowest index) is rethrown after all workers join.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& task) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads == 0 ? 1u : threads, static_cast<unsigned>(n)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

inline SweepTable sweep_lambda(const SweepSpec& spec) {
  validate(spec);
  SweepTable table;
  table.omega0 = spec.params.omega0;
  table.omega = spec.params.omega;
  table.alphas = spec.alphas;
  table.rows.resize(spec.lambda_grid.size());
  detail::parallel_for(spec.lambda_grid.size(), spec.threads, [&](std::size_t i) {
    ModelParams p = spec.params;
    p.lambda = spec.lambda_grid[i];
    try {
      table.rows[i] = evaluate_point(p, spec.alphas, spec.support_eps);
    } catch (const NonConvergence& e) {
      throw SweepPointError(e, p.lambda, p.M);
    }
  });
  return table;
}

/// Long-format table keyed by (M, lambda), grouped by M in m_list order.
inline SweepTable finite_size_scan(const SweepSpec& spec) {
  if (spec.m_list.empty()) throw InvalidParameter("finite-size scan needs a non-empty M list");
  for (int M : spec.m_list) validate_system_size(M);
  SweepTable out;
  out.omega0 = spec.params.omega0;
  out.omega = spec.params.omega;
  out.alphas = spec.alphas;
  for (int M : spec.m_list) {
    SweepSpec one = spec;
    one.params.M = M;
    auto t = sweep_lambda(one);
    out.rows.insert(out.rows.end(), std::make_move_iterator(t.rows.begin()),
                    std::make_move_iterator(t.rows.end()));
  }
  return out;
}

/// Rows of a finite-size table with a given M.
inline SweepTable select_size(const SweepTable& table, int M) {
  SweepTable out;
  out.omega0 = table.omega0;
  out.omega = table.omega;
  out.alphas = table.alphas;
  for (const auto& r : table.rows)
    if (r.M == M) out.rows.push_back(r);
  return out;
}

using RowColumn = std::function<double(const SweepRow&)>;

inline double column_exact_energy(const SweepRow& r) { return r.e0_exact_per_particle; }
inline double column_mf_energy(const SweepRow& r) { return r.e0_mf_per_particle; }
inline double column_ipr(const SweepRow& r) { return r.ipr; }

/// Grid spacing; throws unless the lambda column is uniform to 1e-9 relative.
inline double uniform_spacing(const SweepTable& table) {
  const auto& rows = table.rows;
  if (rows.size() < 2) throw InvalidParameter("need at least two rows for a spacing");
  const double h = (rows.back().lambda - rows.front().lambda) / static_cast<double>(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs((rows[i].lambda - rows[i - 1].lambda) - h) > 1e-9 * h) {
      throw InvalidParameter("lambda grid is not uniform");
    }
  }
  return h;
}

/// Central-difference second derivative at interior rows 1 .. n-2.
inline std::vector<double> second_derivative(const SweepTable& table, const RowColumn& col) {
  const double h = uniform_spacing(table);
  const auto& r = table.rows;
  std::vector<double> d2;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    d2.push_back((col(r[i + 1]) - 2.0 * col(r[i]) + col(r[i - 1])) / (h * h));
  }
  return d2;
}

/// Forward-difference slopes between consecutive rows, n-1 values.
inline std::vector<double> slopes(const SweepTable& table, const RowColumn& col) {
  const double h = uniform_spacing(table);
  const auto& r = table.rows;
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) s.push_back((col(r[i + 1]) - col(r[i])) / h);
  return s;
}

struct CriticalPointEstimate {
  double lambda = 0.0;
  double uncertainty = 0.0;  ///< grid spacing
};

/// lambda maximizing |d^2 e0 / d lambda^2| (central differences, edge rows
/// excluded).
inline CriticalPointEstimate locate_critical_point(const SweepTable& table,
                                                   const RowColumn& col = column_exact_energy) {
  if (table.rows.size() < 5) throw InvalidParameter("critical-point search needs >= 5 rows");
  const double h = uniform_spacing(table);
  const auto d2 = second_derivative(table, col);
  std::size_t best = 0;
  for (std::size_t i = 1; i < d2.size(); ++i)
    if (std::abs(d2[i]) > std::abs(d2[best])) best = i;
  return {table.rows[best + 1].lambda, h};
}

struct IprPeak {
  double lambda = 0.0;
  double ipr = 0.0;
};

inline IprPeak locate_ipr_peak(const SweepTable& table) {
  const double lc = table.lambda_c();
  if (table.rows.empty() || !(table.rows.front().lambda <= lc && table.rows.back().lambda > lc)) {
    throw DomainError("IPR peak search requires a table spanning lambda_c");
  }
  const auto it = std::max_element(table.rows.begin(), table.rows.end(),
                                   [](const SweepRow& a, const SweepRow& b) { return a.ipr < b.ipr; });
  return {it->lambda, it->ipr};
}

/// Largest |slope| of a column; a sharpness measure for the transition.
inline double max_abs_slope(const SweepTable& table, const RowColumn& col) {
  double m = 0.0;
  for (double s : slopes(table, col)) m = std::max(m, std::abs(s));
  return m;
}

inline double max_abs_epsilon(const SweepTable& table) {
  double m = 0.0;
  for (const auto& r : table.rows) m = std::max(m, std::abs(r.epsilon));
  return m;
}

/// Kink probe for the discrete first derivative. A finite second derivative
/// changes consecutive slopes by comparable amounts on neighbouring steps;
/// a jump in the first derivative shows up as one isolated step. `jump` is
/// the largest change between consecutive slopes, `noise` the larger of the
/// changes two steps away on either side.
struct SlopeJump {
  double lambda = 0.0;  ///< grid point where the largest slope change occurs
  double jump = 0.0;
  double noise = 0.0;
};

inline SlopeJump first_derivative_jump(const SweepTable& table, const RowColumn& col) {
  const auto s = slopes(table, col);
  if (s.size() < 4) throw InvalidParameter("slope-jump probe needs >= 5 rows");
  std::vector<double> ds;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) ds.push_back(std::abs(s[i + 1] - s[i]));
  std::size_t best = 0;
  for (std::size_t i = 1; i < ds.size(); ++i)
    if (ds[i] > ds[best]) best = i;
  // Reference level two steps away: a corner between two nodes shows up in
  // both neighbouring slope changes.
  double noise = 0.0;
  if (best > 1) noise = std::max(noise, ds[best - 2]);
  if (best + 2 < ds.size()) noise = std::max(noise, ds[best + 2]);
  return {table.rows[best + 1].lambda, ds[best], noise};
}

}  // namespace admqpt
