#include "pnls/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pnls/errors.hpp"

namespace pnls {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesMax = 2.0;
constexpr double kUnderflow = 700.0;

void check_argument(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError(std::string(name) + ": argument must be finite and positive");
}

struct Pair {
  BesselEval k0, k1;
};

Pair series(double x) {
  const double y = 0.25 * x * x;
  const double lx = std::log(0.5 * x);
  double t0 = 1.0;  // y^k / (k!)^2
  double t1 = 1.0;  // y^k / (k! (k+1)!)
  double harm = 0.0;
  double i0 = 1.0, s0 = 0.0, abs0 = 0.0;
  double i1s = 1.0;
  double s1 = -2.0 * euler_gamma + 1.0;  // psi(1) + psi(2) at k = 0
  double abs1 = std::fabs(s1);
  for (int k = 1; k < 200; ++k) {
    t0 *= y / (double(k) * k);
    t1 *= y / (double(k) * (k + 1));
    harm += 1.0 / k;
    const double psi_sum = -2.0 * euler_gamma + 2.0 * harm + 1.0 / (k + 1);
    i0 += t0;
    s0 += t0 * harm;
    abs0 += t0 * harm;
    i1s += t1;
    s1 += t1 * psi_sum;
    abs1 += t1 * std::fabs(psi_sum);
    if (t0 * harm < kEps * 1e-3 * s0 && t1 < kEps * 1e-3 * i1s) break;
  }
  const double lg = lx + euler_gamma;
  const double k0 = -lg * i0 + s0;
  const double i1 = 0.5 * x * i1s;
  const double k1 = 1.0 / x + lx * i1 - 0.25 * x * s1;
  Pair out;
  out.k0 = {k0, 4.0 * kEps * (std::fabs(lg) * i0 + abs0 + std::fabs(k0))};
  out.k1 = {k1, 4.0 * kEps * (1.0 / x + std::fabs(lx) * i1 + 0.25 * x * abs1 + std::fabs(k1))};
  return out;
}

// Steed's method (CF2) at order 0; K1 follows from the same fraction.
Pair continued_fraction(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  double dels = 0.0;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  const double rel = 64.0 * kEps + std::fabs(dels / s);
  return {{k0, rel * k0}, {k1, rel * k1}};
}

Pair evaluate(double x, const char* name) {
  check_argument(x, name);
  if (x > kUnderflow) return {{0.0, 0.0}, {0.0, 0.0}};
  return x <= kSeriesMax ? series(x) : continued_fraction(x);
}

}  // namespace

BesselEval bessel_k0_eval(double x) { return evaluate(x, "bessel_k0").k0; }
BesselEval bessel_k1_eval(double x) { return evaluate(x, "bessel_k1").k1; }
double bessel_k0(double x) { return bessel_k0_eval(x).value; }
double bessel_k1(double x) { return bessel_k1_eval(x).value; }

}  // namespace pnls
