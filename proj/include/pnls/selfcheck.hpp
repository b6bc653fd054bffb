#pragma once

#include <string>
#include <vector>

namespace pnls {

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by trapezoid sums, step halved until
// two successive sums agree to 1e-15. Independent of bessel_k0/bessel_k1.
double bessel_k_integral(int nu, double x);

struct SelfcheckOptions {
  int grid_n = 4096;
  double grid_r = 40.0;
  double k0_perturbation = 0.0;  // test hook: relative error injected into K0 values
};

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

std::vector<CheckLine> run_selfcheck(const SelfcheckOptions& opts = {});

}  // namespace pnls
