#pragma once

namespace pnls {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;

struct BesselEval {
  double value;
  double abs_error_bound;
};

// Modified Bessel functions of the second kind, orders 0 and 1.
// Power series for x <= 2, Steed's continued fraction above.
// Throws DomainError for x <= 0 or non-finite x. Returns 0 for x > 700.
BesselEval bessel_k0_eval(double x);
BesselEval bessel_k1_eval(double x);

double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace pnls
