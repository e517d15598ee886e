// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "admqpt/admqpt.hpp"
#include "../oracles.hpp"

using namespace admqpt;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double g_conservation_worst = 0.0;
std::size_t g_states_checked = 0;

void track_conservation(const SweepTable& t) {
  for (const auto& r : t.rows) {
    g_conservation_worst =
        std::max(g_conservation_worst, std::abs(r.na_per_M_exact + 2.0 * r.nb_per_M_exact - 1.0));
    ++g_states_checked;
  }
}

void track_conservation(const std::vector<double>& coeffs, int M) {
  g_conservation_worst = std::max(
      g_conservation_worst,
      std::abs(na_expectation(coeffs, M) + 2.0 * nb_expectation(coeffs, M) - 1.0));
  ++g_states_checked;
}

SweepTable sweep(int M, double omega0, std::vector<double> grid) {
  SweepSpec s;
  s.params.omega0 = omega0;
  s.params.omega = 1.0;
  s.params.M = M;
  s.lambda_grid = std::move(grid);
  s.alphas = {0.5, 1.0, 2.0};
  auto t = sweep_lambda(s);
  track_conservation(t);
  return t;
}

GroundState exact(double lambda, int M, double omega0 = 2.0) {
  ModelParams p;
  p.omega0 = omega0;
  p.lambda = lambda;
  p.M = M;
  auto gs = ground_state(build_hamiltonian(p));
  track_conservation(gs.coeffs, M);
  return gs;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Grid spanning [0, n * lambda_c] at step 0.01.
std::vector<double> centi_grid(double hi) {
  const auto n = static_cast<std::size_t>(std::llround(hi / 0.01)) + 1;
  return uniform_grid(0.0, hi, n);
}

Outcome ac01_critical_point() {
  constexpr double kStep = 0.01;
  constexpr long long kTolSteps = 5;  // 0.05 in grid units
  bool ok = true;
  std::string d;
  for (double dw : {1.0, 2.0, 3.0}) {
    const double lc = dw / 2.0;
    const auto t = sweep(700, 1.0 + dw, centi_grid(4.0 * lc));
    const auto est = locate_critical_point(t);
    const long long off = std::llround((est.lambda - lc) / kStep);
    ok = ok && std::llabs(off) <= kTolSteps;
    d += fmt("dw=%g: %.2f (lc=%.2f) ", dw, est.lambda, lc);
  }
  return {ok, d + "tol 0.05"};
}

Outcome ac02_order_parameter_asymptote() {
  const double na100 = na_expectation(exact(100.0, 700).coeffs, 700);
  const double mf100 = meanfield::order_parameter(100.0, 2.0, 1.0);
  const double na1000 = na_expectation(exact(1000.0, 700).coeffs, 700);
  const bool ok = std::abs(na100 - mf100) <= 0.02 * mf100 &&
                  std::abs(na1000 - 2.0 / 3.0) <= 0.02 * (2.0 / 3.0);
  return {ok, fmt("na(100)=%.6f mf=%.6f; na(1000)=%.6f vs 2/3", na100, mf100, na1000)};
}

Outcome ac03_order_parameter_vanishing() {
  const double na = na_expectation(exact(0.3, 700).coeffs, 700);
  return {na < 0.01, fmt("na(0.3)=%.3e < 0.01", na)};
}

Outcome ac04_ipr_limits() {
  bool ok = true;
  for (int M : {2, 10, 50, 100, 700}) {
    ok = ok && ipr(ProbabilityVector::from_amplitudes(exact(0.0, M).coeffs)) == 1.0;
  }
  const double big = ipr(ProbabilityVector::from_amplitudes(exact(1000.0, 700).coeffs));
  ok = ok && big >= 28.0 && big <= 33.0;
  return {ok, fmt("ipr(lambda=0)=1 for all M; ipr(1000)=%.4f in [28,33]", big)};
}

Outcome ac05_binomial_oracle() {
  // direct summation of the squared PMF
  const auto pmf = binomial_reference(350, 1.0 / 3.0);
  double sq = 0.0;
  for (double p : pmf.values()) sq += p * p;
  const double bin_ipr = 1.0 / sq;
  const double gs_ipr = ipr(ProbabilityVector::from_amplitudes(exact(1000.0, 700).coeffs));
  const double rel = std::abs(bin_ipr - gs_ipr) / gs_ipr;
  const bool ok = bin_ipr >= 30.0 && bin_ipr <= 33.0 && rel <= 0.15;
  return {ok, fmt("binomial ipr=%.4f in [30,33]; exact=%.4f rel diff=%.3f <= 0.15", bin_ipr,
                  gs_ipr, rel)};
}

Outcome ac06_meanfield_convergence() {
  const auto grid = centi_grid(2.0);
  double prev = INFINITY;
  bool ok = true;
  std::string d;
  for (int M : {50, 100, 200, 400, 700}) {
    const double e = max_abs_epsilon(sweep(M, 2.0, grid));
    ok = ok && e < prev;
    prev = e;
    d += fmt("M=%d:%.4e ", M, e);
  }
  return {ok, d + "strictly decreasing"};
}

Outcome ac07_second_order_signature() {
  const auto t = sweep(700, 2.0, centi_grid(2.0));
  const auto est = locate_critical_point(t);
  const auto jump = first_derivative_jump(t, column_exact_energy);
  const bool ok = std::abs(est.lambda - 0.5) <= 0.05 && jump.jump <= 10.0 * jump.noise;
  return {ok, fmt("max|e''| at %.2f; max slope step %.3e at %.2f vs 10x adjacent %.3e",
                  est.lambda, jump.jump, jump.lambda, 10.0 * jump.noise)};
}

Outcome ac08_eigensolver_oracle() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> half(1, 20);
  std::uniform_real_distribution<double> lam(0.0, 3.0);
  double worst_e = 0.0;
  double worst_c = 0.0;
  for (int i = 0; i < 100; ++i) {
    ModelParams p;
    p.M = 2 * half(rng);
    p.lambda = lam(rng);
    const auto h = build_hamiltonian(p);
    const auto gs = ground_state(h);
    const auto ref = dense_oracle(h);
    track_conservation(gs.coeffs, p.M);
    worst_e = std::max(worst_e, std::abs(gs.energy - ref.energy) / std::abs(ref.energy));
    // both vectors already carry the largest-component-positive sign
    double dot = 0.0;
    for (std::size_t k = 0; k < gs.coeffs.size(); ++k) dot += gs.coeffs[k] * ref.coeffs[k];
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < gs.coeffs.size(); ++k) {
      worst_c = std::max(worst_c, std::abs(gs.coeffs[k] - sign * ref.coeffs[k]));
    }
  }
  return {worst_e <= 1e-10 && worst_c <= 1e-8,
          fmt("max rel energy diff %.2e <= 1e-10; max coeff diff %.2e <= 1e-8", worst_e, worst_c)};
}

Outcome ac09_entropy_identities() {
  std::mt19937_64 rng(9);
  int failures = 0;
  double worst_identity = 0.0;
  const double orders[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 1000; ++i) {
    const ProbabilityVector p(oracle::random_probabilities(rng));
    const double v = ipr(p);
    const double id = std::abs(std::exp(renyi(p, 2.0)) - v) / v;
    worst_identity = std::max(worst_identity, id);
    if (id > 1e-10) ++failures;
    for (int k = 1; k < 5; ++k)
      if (renyi(p, orders[k]) > renyi(p, orders[k - 1]) + 1e-12) ++failures;
    const double s = shannon(p);
    if (!(renyi(p, 0.5) + 1e-12 >= s && s + 1e-12 >= renyi(p, 2.0))) ++failures;

    const std::size_t n = p.size();
    const ProbabilityVector u(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    std::vector<double> dv(n, 0.0);
    dv[rng() % n] = 1.0;
    const ProbabilityVector d(dv);
    for (double a : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
      if (std::abs(renyi(u, a) - std::log(static_cast<double>(n))) > 1e-10) ++failures;
      if (a > 0.0 && std::abs(renyi(d, a)) > 1e-15) ++failures;
    }
  }
  return {failures == 0,
          fmt("%d violations over 1000 vectors; max |exp(R2)-IPR|/IPR=%.2e", failures,
              worst_identity)};
}

Outcome ac10_entropy_phase_dependence() {
  auto s = [](double l, int M) {
    return shannon(ProbabilityVector::from_amplitudes(exact(l, M).coeffs));
  };
  const double low = std::abs(s(0.2, 100) - s(0.2, 700));
  const double high = std::abs(s(1.5, 100) - s(1.5, 700));
  return {low < 0.05 && high > 0.2,
          fmt("|dS|(0.2)=%.2e < 0.05; |dS|(1.5)=%.4f > 0.2", low, high)};
}

Outcome ac11_ipr_peak() {
  const auto grid = centi_grid(2.0);
  bool ok = true;
  std::string d;
  for (int M : {50, 100, 200, 400, 700}) {
    const auto t = sweep(M, 2.0, grid);
    const auto peak = locate_ipr_peak(t);
    const double plateau = t.rows[100].ipr;  // lambda = 2 lambda_c = 1.0
    ok = ok && peak.lambda > t.lambda_c() && peak.ipr > plateau;
    d += fmt("M=%d:(%.2f, %.4f>%.4f) ", M, peak.lambda, peak.ipr, plateau);
  }
  return {ok, d};
}

Outcome ac12_conservation() {
  return {g_states_checked > 0 && g_conservation_worst <= 1e-10,
          fmt("%zu ground states, max |na/M + 2 nb/M - 1| = %.2e", g_states_checked,
              g_conservation_worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"AC01", "critical point from d2e/dlambda2", ac01_critical_point},
      {"AC02", "order parameter asymptote", ac02_order_parameter_asymptote},
      {"AC03", "order parameter vanishes below lambda_c", ac03_order_parameter_vanishing},
      {"AC04", "IPR limits", ac04_ipr_limits},
      {"AC05", "binomial IPR reference", ac05_binomial_oracle},
      {"AC06", "mean-field convergence in M", ac06_meanfield_convergence},
      {"AC07", "second-order signature", ac07_second_order_signature},
      {"AC08", "eigensolver vs dense Jacobi", ac08_eigensolver_oracle},
      {"AC09", "entropy identities", ac09_entropy_identities},
      {"AC10", "phase dependence of entropy", ac10_entropy_phase_dependence},
      {"AC11", "IPR peak after lambda_c", ac11_ipr_peak},
      {"AC12", "particle-number conservation", ac12_conservation},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s %-42s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
