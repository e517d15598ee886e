// admqpt: exact diagonalization and phase-transition markers for the
// atom / diatomic-molecule two-level boson model.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "admqpt/cli.hpp"

namespace {

using admqpt::cli::Format;
using admqpt::cli::RunConfig;

void add_model_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--omega0", cfg.omega0, "atom-pair level energy")->capture_default_str();
  sub->add_option("--omega", cfg.omega, "molecular level energy")->capture_default_str();
  sub->add_option("--alphas", cfg.alphas, "Renyi orders")->delimiter(',')->capture_default_str();
  sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
  sub->add_option("--support-eps", cfg.support_eps, "support threshold for the alpha=0 entropy")
      ->capture_default_str();
  sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  sub->add_option("--gnuplot", cfg.gnuplot, "also write a gnuplot script to this path");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::kCsv}, {"json", Format::kJson}}));
}

void add_grid_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--lambda", cfg.lambdas, "explicit lambda values")->delimiter(',');
  sub->add_option("--lambda-min", cfg.lambda_min, "grid lower bound (default 0)");
  sub->add_option("--lambda-max", cfg.lambda_max, "grid upper bound (default 4 lambda_c)");
  sub->add_option("--steps", cfg.steps, "number of grid points (default 401)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level atom/diatomic-molecule model: exact ground states and QPT markers"};
  app.set_version_flag("--version", std::string(admqpt::kVersion));
  app.require_subcommand(1);

  RunConfig cfg;

  auto* ground = app.add_subcommand("ground", "single ground state and its markers");
  add_model_flags(ground, cfg);
  ground->add_option("--M", cfg.M, "total atom number (even)")->capture_default_str();
  ground->add_option("--lambda", cfg.lambdas, "coupling")->required()->expected(1);
  ground->add_option("--coeffs", cfg.coeffs_output, "write the coefficient vector to this file");

  auto* sweep = app.add_subcommand("sweep", "lambda sweep at fixed M");
  add_model_flags(sweep, cfg);
  add_grid_flags(sweep, cfg);
  sweep->add_option("--M", cfg.M, "total atom number (even)")->capture_default_str();

  auto* fs = app.add_subcommand("finite-size", "lambda sweeps for several M");
  add_model_flags(fs, cfg);
  add_grid_flags(fs, cfg);
  fs->add_option("--m-list", cfg.m_list, "system sizes")->delimiter(',')->required();

  auto* binom = app.add_subcommand("binomial-compare",
                                   "ground-state |c|^2 next to a binomial reference PMF");
  add_model_flags(binom, cfg);
  binom->add_option("--M", cfg.M, "total atom number (even)")->capture_default_str();
  binom->add_option("--lambda", cfg.lambdas, "coupling")->required()->expected(1);
  binom->add_option("--p", cfg.p_success, "binomial success probability")->capture_default_str();

  auto* mf = app.add_subcommand("meanfield", "large-M analytic baselines");
  add_model_flags(mf, cfg);
  add_grid_flags(mf, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return admqpt::cli::kUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return admqpt::cli::run(cfg, std::cout, std::cerr);
}
