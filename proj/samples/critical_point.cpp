// Locates the finite-M critical coupling from the kink in the exact ground
// energy and prints it next to the mean-field value.
//
//   ./critical_point [M] [omega0] [omega]

#include <cstdio>
#include <cstdlib>

#include "admqpt/admqpt.hpp"

int main(int argc, char** argv) {
  admqpt::SweepSpec spec;
  spec.params.M = argc > 1 ? std::atoi(argv[1]) : 700;
  spec.params.omega0 = argc > 2 ? std::atof(argv[2]) : 2.0;
  spec.params.omega = argc > 3 ? std::atof(argv[3]) : 1.0;

  const double lc = admqpt::meanfield::lambda_critical(spec.params.omega0, spec.params.omega);
  spec.lambda_grid = admqpt::uniform_grid(0.0, 4.0 * lc, 401);

  const auto table = admqpt::sweep_lambda(spec);
  const auto est = admqpt::locate_critical_point(table);
  const auto peak = admqpt::locate_ipr_peak(table);
  std::printf("M=%d  lambda_c(mean field)=%.4f  lambda_c(exact, M)=%.4f +- %.4f\n",
              spec.params.M, lc, est.lambda, est.uncertainty);
  std::printf("IPR peak %.3f at lambda=%.4f\n", peak.ipr, peak.lambda);
  return 0;
}
