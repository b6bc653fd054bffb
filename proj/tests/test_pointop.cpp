#include <doctest.h>

#include <cmath>
#include <random>

#include "pnls/errors.hpp"
#include "pnls/pointop.hpp"
#include "pnls/specfun.hpp"

using namespace pnls;

TEST_CASE("e_alpha and beta") {
  const OperatorParams p0 = make_params(0.0);
  // -4 e^{-2 gamma} in long double
  const long double ref = -4.0L * std::exp(-2.0L * 0.57721566490153286060651209L);
  CHECK(std::fabs(p0.e_alpha - double(ref)) <= 1e-14 * std::fabs(double(ref)));
  CHECK(p0.e_alpha == doctest::Approx(-1.2609470).epsilon(1e-7));
  for (double a : {-1.0, 0.0, 0.3, 2.0}) CHECK(make_params(a).beta(-make_params(a).e_alpha) == 0.0);
  CHECK(p0.beta(-4 * p0.e_alpha) == doctest::Approx(std::log(4.0) / (4 * pi)).epsilon(1e-14));
  CHECK(p0.beta(-4 * p0.e_alpha) == doctest::Approx(0.110318).epsilon(1e-5));
  CHECK_THROWS_AS(make_params(std::nan("")), ParameterError);
}

TEST_CASE("two beta forms agree; beta increasing with sign change at -e_alpha") {
  for (double a : {-0.7, 0.0, 0.25, 1.5}) {
    const OperatorParams p = make_params(a);
    double prev = -1e300;
    for (int k = 0; k <= 72; ++k) {
      const double l = std::pow(10.0, -6.0 + k * 0.25);
      CHECK(std::fabs(p.beta(l) - p.beta_expanded(l)) <= 1e-13);
      CHECK(p.beta(l) > prev);
      CHECK((p.beta(l) > 0) == (l > -p.e_alpha));
      prev = p.beta(l);
    }
    CHECK(p.beta(p.omega_for_beta(0.37)) == doctest::Approx(0.37).epsilon(1e-13));
  }
}

TEST_CASE("green_value") {
  CHECK(green_value(1.0, 1.0) == doctest::Approx(0.421024438240708 / (2 * pi)).epsilon(1e-12));
  CHECK(green_value(1.0, 1.0) == doctest::Approx(0.0670081).epsilon(1e-6));
  CHECK(green_value(4.0, 1.0) == doctest::Approx(green_value(1.0, 2.0)).epsilon(1e-15));
  for (double lambda : {0.5, 1.0, 3.0}) {
    const double r = 1e-9;
    CHECK(std::fabs(green_value(lambda, r) + (std::log(std::sqrt(lambda) * r / 2) + euler_gamma) / (2 * pi)) <= 1e-12);
  }
  CHECK(green_value(1.0, 0.5) > green_value(1.0, 0.6));
  CHECK(green_value(1.0, 0.5) > green_value(1.1, 0.5));
  CHECK_THROWS_AS(green_value(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(green_value(1.0, -1.0), DomainError);
}

TEST_CASE("green_inner closed form") {
  CHECK(green_inner(1.0, 1.0) == doctest::Approx(1 / (4 * pi)).epsilon(1e-15));
  CHECK(green_inner(4.0, 1.0) == doctest::Approx(std::log(4.0) / (12 * pi)).epsilon(1e-14));
  CHECK(green_inner(4.0, 1.0) == doctest::Approx(0.0367726).epsilon(1e-6));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 50; ++k) {
    const double a = std::exp(u(rng)), b = std::exp(u(rng));
    CHECK(green_inner(a, b) == green_inner(b, a));
  }
  // continuity across the diagonal branch
  for (double l : {0.3, 1.0, 7.0}) {
    const double d = green_inner(l, l);
    for (double x : {1e-12, 1e-9, 1e-8, 9.99e-7, 1.001e-6, 1e-5}) {
      const double mu = l * (1 + x);
      const double exact = std::log1p(x) / (4 * pi * l * x);
      CHECK(std::fabs(green_inner(l, mu) - exact) <= 1e-12 * exact);
      CHECK(std::fabs(green_inner(l, mu) - d) <= 1.01 * x * d);
    }
  }
  CHECK_THROWS_AS(green_inner(-1.0, 1.0), DomainError);
}

TEST_CASE("green_inner by quadrature") {
  const RadialGrid g(4096, 40.0);
  for (double l : {1.0, 2.0, 4.0})
    for (double m : {1.0, 2.0, 4.0}) {
      CAPTURE(l);
      CAPTURE(m);
      CHECK(std::fabs(green_inner_by_quadrature(g, l, m) / green_inner(l, m) - 1) <= 1e-6);
    }
}

TEST_CASE("chi_alpha") {
  const RadialGrid g(4096, 40.0);
  const OperatorParams p = make_params(0.0);
  const Vec chi = chi_alpha(p, g);
  CHECK(std::fabs(inner(g, chi, chi) - 1.0) <= 1e-10);
  const double ratio0 = chi[0] / green_samples(g, -p.e_alpha)[0];
  const Vec ge = green_samples(g, -p.e_alpha);
  for (int i = 0; i < g.n(); i += 37) CHECK(std::fabs(chi[i] / ge[i] / ratio0 - 1) <= 1e-10);
  CHECK(green_inner(-p.e_alpha, -p.e_alpha) == doctest::Approx(1 / (4 * pi * -p.e_alpha)).epsilon(1e-15));
}

namespace {
double eigen_defect(int n) {
  const RadialGrid g(n, 40.0);
  const OperatorParams p = make_params(0.0);
  const double lambda = 1.0 - p.e_alpha;
  const Vec chi = chi_alpha(p, g);
  const Vec r = apply_resolvent(p, lambda, chi, g);
  Vec d(g.n());
  for (int i = 0; i < g.n(); ++i) d[i] = r[i] - chi[i];
  return std::sqrt(inner(g, d, d));
}
}  // namespace

TEST_CASE("resolvent maps the eigenfunction to itself over (lambda + e_alpha)") {
  const double e4 = eigen_defect(4096), e8 = eigen_defect(8192);
  CHECK(e4 <= 1e-3);
  CHECK(e4 / e8 >= 3.0);
}

TEST_CASE("resolvent consistency and limits") {
  const RadialGrid g(2048, 40.0);
  const OperatorParams p = make_params(0.0);
  Vec src(g.n());
  for (int i = 0; i < g.n(); ++i) src[i] = std::exp(-g.r(i) * g.r(i)) * (2 - g.r(i));
  const double lambda = 2.0;
  const ResolventParts rp = resolvent_parts(p, lambda, src, g);
  // (-Delta_alpha + lambda) acts as (-Delta + lambda) on the regular part
  const Vec back = apply_helmholtz(g, lambda, rp.regular);
  double m = 0.0, s = 0.0;
  for (int i = 0; i < g.n(); ++i) m = std::max(m, std::fabs(back[i] - src[i])), s = std::max(s, std::fabs(src[i]));
  CHECK(m <= 1e-12 * s);
  // the coefficient is tied to the regular part's origin value
  CHECK(std::fabs(rp.coefficient * p.beta(lambda) - extrapolate_origin(rp.regular)) <=
        1e-3 * std::fabs(extrapolate_origin(rp.regular)));

  const Vec zero = apply_resolvent(p, lambda, Vec(g.n(), 0.0), g);
  for (double v : zero) CHECK(v == 0.0);

  const OperatorParams strong = make_params(1e6);
  const Vec r = apply_resolvent(strong, lambda, src, g);
  const Vec free = solve_helmholtz(g, lambda, src);
  double dm = 0.0;
  for (int i = 0; i < g.n(); ++i) dm = std::max(dm, std::fabs(r[i] - free[i]));
  CHECK(dm <= 1e-6);
  CHECK_THROWS_AS(apply_resolvent(p, -p.e_alpha, src, g), ParameterError);
}

TEST_CASE("h1_alpha_norm_sq") {
  const RadialGrid g(4096, 40.0);
  const OperatorParams p = make_params(0.0);
  const Vec zero(g.n(), 0.0);
  const double omega = std::exp(1.0) * -p.e_alpha;
  CHECK(h1_alpha_norm_sq(p, omega, zero, 1.0, g) == doctest::Approx(1 / (4 * pi)).epsilon(1e-14));
  Vec f(g.n());
  for (int i = 0; i < g.n(); ++i) f[i] = std::exp(-g.r(i) * g.r(i) / 2);
  CHECK(std::fabs(h1_alpha_norm_sq(p, 1.3, f, 0.0, g) - 0.3 * inner(g, f, f) - 2 * pi) <= 1e-5);
  CHECK(std::fabs(h1_alpha_norm_sq(make_params(2.0), 1.0, f, 0.0, g) - 2 * pi) <= 1e-5);
  Vec f2 = f;
  for (double& v : f2) v *= 2;
  CHECK(h1_alpha_norm_sq(p, 3.0, f2, 0.4, g) == doctest::Approx(4 * h1_alpha_norm_sq(p, 3.0, f, 0.2, g)).epsilon(1e-14));
  CHECK(h1_alpha_norm_sq(p, 3.0, f, 0.2, g) > 0.0);
  CHECK_THROWS_AS(h1_alpha_norm_sq(p, 1.0, f, 0.0, g), DomainError);
}

TEST_CASE("x.grad G1 weak identity") {
  const RadialGrid g(4096, 40.0);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double r = g.r(i), f = std::exp(-r * r);
    lhs += g.weights()[i] * (5 - 4 * r * r) * f * (-r * bessel_k1(r) / (2 * pi));
    rhs += -2 * g.weights()[i] * f * green_value(1.0, r);
  }
  CHECK(std::fabs(lhs / rhs - 1) <= 1e-4);
  // same identity with the discrete operator applied to f
  Vec f(g.n()), rg(g.n());
  for (int i = 0; i < g.n(); ++i) f[i] = std::exp(-g.r(i) * g.r(i)), rg[i] = -g.r(i) * bessel_k1(g.r(i)) / (2 * pi);
  const double lhs_d = inner(g, apply_helmholtz(g, 1.0, f), rg);
  CHECK(std::fabs(lhs_d / rhs - 1) <= 1e-4);
}
