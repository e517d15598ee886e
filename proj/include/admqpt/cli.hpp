#pragma once
//
// Command implementations behind the admqpt executable. Each command
// computes everything first, then serializes once to the configured sink.
//

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "admqpt/eigensolver.hpp"
#include "admqpt/error.hpp"
#include "admqpt/markers.hpp"
#include "admqpt/meanfield.hpp"
#include "admqpt/model.hpp"
#include "admqpt/sweep.hpp"
#include "admqpt/table_io.hpp"
#include "admqpt/version.hpp"

namespace admqpt::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,           ///< invalid flags or parameters
  kNonConvergence = 3,  ///< eigensolver failed on some point
  kIoError = 4,         ///< output could not be written
};

enum class Format { kCsv, kJson };

struct RunConfig {
  std::string subcommand;
  double omega0 = 2.0;
  double omega = 1.0;
  int M = 700;
  std::vector<int> m_list;
  std::vector<double> lambdas;  ///< explicit grid, wins over min/max/steps
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  std::optional<long long> steps;
  std::vector<double> alphas{0.5, 1.0, 2.0};
  Format format = Format::kCsv;
  std::string output;        ///< empty or "-" means stdout
  std::string coeffs_output;  ///< ground: optional per-n_b coefficient file
  std::string gnuplot;        ///< optional companion gnuplot script path
  double p_success = 1.0 / 3.0;
  unsigned threads = 1;
  double support_eps = kDefaultSupportEps;
};

/// Raised when output cannot be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline ModelParams model_params(const RunConfig& c, double lambda, int M) {
  ModelParams p;
  p.omega0 = c.omega0;
  p.omega = c.omega;
  p.lambda = lambda;
  p.M = M;
  return p;
}

inline void validate_common(const RunConfig& c) {
  validate(model_params(c, 0.0, c.M));
  for (double a : c.alphas)
    if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidParameter("alphas must be >= 0");
  if (!(c.support_eps > 0.0)) throw InvalidParameter("support threshold must be positive");
  if (c.threads == 0) throw InvalidParameter("thread count must be >= 1");
}

/// The lambda grid requested by the config. Explicit values win; otherwise
/// min/max/steps fill in around the default [0, 4 lambda_c] with 401 points.
inline std::vector<double> lambda_grid(const RunConfig& c) {
  if (!c.lambdas.empty()) return c.lambdas;
  const double lc = meanfield::lambda_critical(c.omega0, c.omega);
  const double lo = c.lambda_min.value_or(0.0);
  const double hi = c.lambda_max.value_or(4.0 * lc);
  const long long n = c.steps.value_or(401);
  if (n <= 0) throw InvalidParameter("lambda grid is empty (steps must be >= 1)");
  return uniform_grid(lo, hi, static_cast<std::size_t>(n));
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + io::format_label(v[i]);
  return s;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline io::Metadata metadata(const RunConfig& c) {
  io::Metadata m{{"tool", "admqpt"},
                 {"version", kVersion},
                 {"subcommand", c.subcommand},
                 {"omega0", io::format_label(c.omega0)},
                 {"omega", io::format_label(c.omega)}};
  if (c.subcommand == "finite-size") {
    m.emplace_back("m_list", join(c.m_list));
  } else if (c.subcommand != "meanfield") {
    m.emplace_back("M", std::to_string(c.M));
  }
  if (!c.lambdas.empty()) {
    m.emplace_back("lambda", join(c.lambdas));
  } else {
    if (c.lambda_min) m.emplace_back("lambda_min", io::format_label(*c.lambda_min));
    if (c.lambda_max) m.emplace_back("lambda_max", io::format_label(*c.lambda_max));
    if (c.steps) m.emplace_back("steps", std::to_string(*c.steps));
  }
  m.emplace_back("alphas", join(c.alphas));
  if (c.subcommand == "binomial-compare") m.emplace_back("p_success", io::format_label(c.p_success));
  m.emplace_back("threads", std::to_string(c.threads));
  m.emplace_back("support_eps", io::format_label(c.support_eps));
  m.emplace_back("format", c.format == Format::kCsv ? "csv" : "json");
  m.emplace_back("basis", "|M,n_b>, n_b ascending 0..M/2");
  return m;
}

inline std::string serialize(const io::Table& t, const io::Metadata& meta, Format f) {
  std::ostringstream os;
  if (f == Format::kCsv) {
    io::write_csv(os, t, meta);
  } else {
    os << io::to_json(t, meta).dump(2) << '\n';
  }
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file " + path);
  f << text;
  f.close();
  if (!f) throw IoError("failed writing output file " + path);
}

/// Companion gnuplot script for a CSV data file.
inline std::string gnuplot_script(const RunConfig& c, const io::Table& t) {
  std::ostringstream s;
  const std::string data = c.output.empty() ? "data.csv" : c.output;
  s << "# gnuplot script generated by admqpt " << kVersion << "\n"
    << "set datafile separator ','\n"
    << "set datafile commentschars '#'\n"
    << "set key autotitle columnhead\n";
  auto col = [&](const char* name) { return t.column_index(name) + 1; };
  if (c.subcommand == "binomial-compare") {
    s << "set xlabel 'n_b'\nset ylabel 'probability'\n"
      << "plot '" << data << "' using " << col("n_b") << ":" << col("gs_prob") << " with lines, \\\n"
      << "     '' using " << col("n_b") << ":" << col("binomial_pmf") << " with lines dt 2\n";
  } else if (c.subcommand == "meanfield") {
    s << "set xlabel 'lambda'\n"
      << "plot '" << data << "' using " << col("lambda") << ":" << col("e0_mf_per_particle")
      << " with lines, \\\n     '' using " << col("lambda") << ":" << col("order_parameter")
      << " with lines\n";
  } else {
    s << "set xlabel 'lambda'\nset multiplot layout 2,2\n";
    for (const char* y : {"e0_exact_per_particle", "na_per_M_exact", "ipr", "shannon"}) {
      s << "plot '" << data << "' using " << col("lambda") << ":" << col(y) << " with lines\n";
    }
    s << "unset multiplot\n";
  }
  return s.str();
}

inline void emit(const RunConfig& c, const io::Table& t, std::ostream& out) {
  const auto text = serialize(t, metadata(c), c.format);
  write_text(c.output, text, out);
  if (!c.gnuplot.empty()) write_text(c.gnuplot, gnuplot_script(c, t), out);
}

inline void cmd_ground(const RunConfig& c, std::ostream& out) {
  validate_common(c);
  if (c.lambdas.size() != 1) throw InvalidParameter("ground needs exactly one --lambda value");
  const auto p = model_params(c, c.lambdas.front(), c.M);
  const auto h = build_hamiltonian(p);
  const auto gs = ground_state(h);
  const auto mk = evaluate_markers(gs.coeffs, p.M, c.alphas, c.support_eps);

  io::Table t;
  t.columns = {"M", "lambda", "energy", "energy_per_particle", "e0_mf_per_particle",
               "na_per_M", "nb_per_M", "ipr", "shannon"};
  for (double a : c.alphas) t.columns.push_back("renyi_" + io::format_label(a));
  t.columns.push_back("iterations");
  t.columns.push_back("residual");
  std::vector<double> row{static_cast<double>(p.M),
                          p.lambda,
                          gs.energy,
                          gs.energy / p.M,
                          meanfield::ground_energy_per_particle(p.lambda, p.omega0, p.omega),
                          mk.na_per_M,
                          mk.nb_per_M,
                          mk.ipr,
                          mk.shannon};
  for (double a : c.alphas) row.push_back(mk.renyi.at(a));
  row.push_back(gs.converged_iterations);
  row.push_back(gs.residual);
  t.rows.push_back(std::move(row));

  std::string coeff_text;
  if (!c.coeffs_output.empty()) {
    io::Table ct;
    ct.columns = {"n_b", "coeff", "prob"};
    for (std::size_t i = 0; i < gs.coeffs.size(); ++i) {
      ct.rows.push_back({static_cast<double>(i), gs.coeffs[i], gs.coeffs[i] * gs.coeffs[i]});
    }
    coeff_text = serialize(ct, metadata(c), c.format);
  }
  emit(c, t, out);
  if (!coeff_text.empty()) write_text(c.coeffs_output, coeff_text, out);
}

inline SweepSpec sweep_spec(const RunConfig& c) {
  SweepSpec s;
  s.params = model_params(c, 0.0, c.M);
  s.lambda_grid = lambda_grid(c);
  s.alphas = c.alphas;
  s.m_list = c.m_list;
  s.threads = c.threads;
  s.support_eps = c.support_eps;
  return s;
}

inline void cmd_sweep(const RunConfig& c, std::ostream& out) {
  validate_common(c);
  const auto table = sweep_lambda(sweep_spec(c));
  emit(c, io::to_table(table), out);
}

inline void cmd_finite_size(const RunConfig& c, std::ostream& out) {
  if (c.m_list.empty()) throw InvalidParameter("finite-size needs --m-list");
  RunConfig probe = c;
  for (int M : c.m_list) {
    probe.M = M;
    validate_common(probe);
  }
  const auto table = finite_size_scan(sweep_spec(c));
  emit(c, io::to_table(table), out);
}

inline void cmd_binomial_compare(const RunConfig& c, std::ostream& out) {
  validate_common(c);
  if (c.lambdas.size() != 1) {
    throw InvalidParameter("binomial-compare needs exactly one --lambda value");
  }
  const auto p = model_params(c, c.lambdas.front(), c.M);
  const auto gs = ground_state(build_hamiltonian(p));
  const auto probs = ProbabilityVector::from_amplitudes(gs.coeffs);
  const auto binom = binomial_reference(p.M / 2, c.p_success);

  io::Table t;
  t.columns = {"n_b", "gs_prob", "binomial_pmf"};
  for (std::size_t i = 0; i < probs.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), probs[i], binom[i]});
  }
  auto meta = metadata(c);
  meta.emplace_back("ipr_ground_state", io::format_double(ipr(probs)));
  meta.emplace_back("ipr_binomial", io::format_double(ipr(binom)));
  write_text(c.output, serialize(t, meta, c.format), out);
  if (!c.gnuplot.empty()) write_text(c.gnuplot, gnuplot_script(c, t), out);
}

inline void cmd_meanfield(const RunConfig& c, std::ostream& out) {
  validate_common(c);
  const auto grid = lambda_grid(c);
  io::Table t;
  t.columns = {"lambda", "lambda_c", "x2", "e0_mf_per_particle", "order_parameter"};
  for (double l : grid) {
    if (!(l >= 0.0)) throw InvalidParameter("lambda must be >= 0");
    const auto r = meanfield::evaluate(l, c.omega0, c.omega);
    t.rows.push_back({l, r.lambda_c, r.x2, r.e0_per_particle, r.order_parameter});
  }
  emit(c, t, out);
}

/// Dispatches and maps failures onto exit codes. Diagnostics go to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == "ground") {
      cmd_ground(c, out);
    } else if (c.subcommand == "sweep") {
      cmd_sweep(c, out);
    } else if (c.subcommand == "finite-size") {
      cmd_finite_size(c, out);
    } else if (c.subcommand == "binomial-compare") {
      cmd_binomial_compare(c, out);
    } else if (c.subcommand == "meanfield") {
      cmd_meanfield(c, out);
    } else {
      err << "unknown subcommand '" << c.subcommand << "'\n";
      return kUsage;
    }
  } catch (const NonConvergence& e) {
    err << "error: solver did not converge: " << e.what() << " (best residual "
        << e.best_residual() << ")\n";
    return kNonConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace admqpt::cli
