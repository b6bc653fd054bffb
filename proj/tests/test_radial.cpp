#include <doctest.h>

#include <cmath>
#include <random>

#include "pnls/pointop.hpp"
#include "pnls/radial.hpp"
#include "pnls/specfun.hpp"

using namespace pnls;

namespace {

Vec sample(const RadialGrid& g, double (*fn)(double)) {
  Vec v(g.n());
  for (int i = 0; i < g.n(); ++i) v[i] = fn(g.r(i));
  return v;
}

double g1_interior_residual(int n) {
  const RadialGrid g(n, 40.0);
  const Vec green = green_samples(g, 1.0);
  const Vec a = apply_helmholtz(g, 1.0, green);
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    if (g.r(i) >= 1.0 && g.r(i) <= 10.0) m = std::max(m, std::fabs(a[i]));
  return m;
}

}  // namespace

TEST_CASE("grid layout and weights") {
  const RadialGrid g(4096, 40.0);
  CHECK(g.h() == doctest::Approx(40.0 / 4096).epsilon(1e-15));
  CHECK(g.r(0) == doctest::Approx(g.h() / 2).epsilon(1e-15));
  for (int i = 1; i < g.n(); ++i) CHECK(g.r(i) > g.r(i - 1));
  const Vec one(g.n(), 1.0);
  CHECK(std::fabs(integrate(g, one) - pi * 1600.0) <= 1e-12 * pi * 1600.0);
}

TEST_CASE("midpoint Gaussian integrals match the Euler-Maclaurin prediction") {
  for (int n : {1024, 4096}) {
    const RadialGrid g(n, 40.0);
    const double h = g.h();
    const Vec f = sample(g, [](double r) { return std::exp(-r * r); });
    // midpoint sum of 2 pi r e^{-r^2}: pi + 2 pi (h^2/24 + 7 h^4/960) + O(h^6)
    const double predicted = pi + 2 * pi * (h * h / 24 + 7 * h * h * h * h / 960);
    CHECK(std::fabs(integrate(g, f) - predicted) <= 1e-10);
  }
  const RadialGrid g(4096, 40.0);
  const Vec f = sample(g, [](double r) { return std::exp(-r * r); });
  CHECK(std::fabs(integrate(g, f) - pi) <= 3e-5);
  const Vec q = sample(g, [](double r) { return std::exp(-r * r / 2); });
  CHECK(std::fabs(lp_norm(g, q, 2.0) - std::sqrt(pi)) <= 1.5e-5);
}

TEST_CASE("quadrature error of the Gaussian falls 4x per halving of h") {
  double prev = 0.0;
  for (int n : {1024, 2048, 4096}) {
    const RadialGrid g(n, 40.0);
    const double e = integrate(g, sample(g, [](double r) { return std::exp(-r * r); })) - pi;
    if (prev != 0.0) CHECK(prev / e == doctest::Approx(4.0).epsilon(1e-3));
    prev = e;
  }
}

TEST_CASE("G1 squared integrates to 1/(4 pi)") {
  const RadialGrid g(4096, 40.0);
  const Vec green = green_samples(g, 1.0);
  CHECK(std::fabs(inner(g, green, green) - 1 / (4 * pi)) <= 1e-4);
}

TEST_CASE("lp_norm") {
  const RadialGrid g(512, 40.0);
  const Vec f = sample(g, [](double r) { return std::exp(-r); });
  Vec f2 = f;
  for (double& v : f2) v *= 2;
  CHECK(lp_norm(g, f2, 3.0) == doctest::Approx(2 * lp_norm(g, f, 3.0)).epsilon(1e-14));
  const Vec green = green_samples(g, 1.0);
  for (double q : {2.5, 4.0, 9.0}) CHECK(std::isfinite(lp_norm(g, green, q)));
}

namespace {
double gaussian_stencil_error(int n, double lambda) {
  const RadialGrid g(n, 40.0);
  const Vec f = sample(g, [](double r) { return std::exp(-r * r / 2); });
  const Vec a = apply_helmholtz(g, lambda, f);
  double m = 0.0;
  for (int i = 0; i < g.n() && g.r(i) <= 10.0; ++i) {
    const double r = g.r(i);
    m = std::max(m, std::fabs(a[i] - (lambda + 2 - r * r) * std::exp(-r * r / 2)));
  }
  return m;
}
}  // namespace

TEST_CASE("helmholtz stencil on smooth functions") {
  // the largest error sits at the first node, about 0.75 h^2
  for (double lambda : {0.0, 1.0, 3.0}) {
    const double e4 = gaussian_stencil_error(4096, lambda), e8 = gaussian_stencil_error(8192, lambda);
    CHECK(e4 <= 1e-4);
    CHECK(e4 / e8 == doctest::Approx(4.0).epsilon(0.05));
  }
  const RadialGrid g(4096, 40.0);
  const Vec one(g.n(), 1.0);
  const Vec a = apply_helmholtz(g, 2.5, one);
  for (int i = 0; i + 1 < g.n(); ++i) CHECK(a[i] == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("G1 residual is small and second order") {
  const double r1 = g1_interior_residual(2048), r2 = g1_interior_residual(4096), r3 = g1_interior_residual(8192);
  CHECK(r2 <= 1e-3);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);
  CHECK(r2 / r3 >= 3.5);
  CHECK(r2 / r3 <= 4.5);
}

TEST_CASE("solve_helmholtz round trip, linearity, positivity") {
  const RadialGrid g(4096, 40.0);
  const Vec f = sample(g, [](double r) { return std::cos(r) * std::exp(-r * r / 8); });
  const Vec back = solve_helmholtz(g, 1.3, apply_helmholtz(g, 1.3, f));
  double m = 0.0, s = 0.0;
  for (int i = 0; i < g.n(); ++i) m = std::max(m, std::fabs(back[i] - f[i])), s = std::max(s, std::fabs(f[i]));
  CHECK(m <= 1e-12 * s);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec rhs(g.n());
  for (double& v : rhs) v = u(rng);
  const Vec x = solve_helmholtz(g, 0.7, rhs);
  Vec rhs3 = rhs;
  for (double& v : rhs3) v *= -3;
  const Vec x3 = solve_helmholtz(g, 0.7, rhs3);
  for (int i = 0; i < g.n(); ++i) {
    CHECK(x[i] >= 0.0);
    CHECK(x3[i] == doctest::Approx(-3 * x[i]).epsilon(1e-12));
  }
}

TEST_CASE("discrete delta tracks G1") {
  const RadialGrid g(4096, 40.0);
  Vec rhs(g.n(), 0.0);
  rhs[0] = 1.0 / g.weights()[0];
  const Vec x = solve_helmholtz(g, 1.0, rhs);
  for (int i = 0; i < g.n(); ++i) {
    const double r = g.r(i);
    if (r >= 0.5 && r <= 10.0) CHECK(std::fabs(x[i] / green_value(1.0, r) - 1.0) <= 0.02);
  }
}

TEST_CASE("weighted symmetry of the stencil") {
  const RadialGrid g(1000, 40.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    Vec f(g.n()), h(g.n());
    for (int i = 0; i < g.n(); ++i) f[i] = nd(rng), h[i] = nd(rng);
    const double a = inner(g, apply_helmholtz(g, 1.0, f), h);
    const double b = inner(g, f, apply_helmholtz(g, 1.0, h));
    const double scale = std::sqrt(inner(g, f, f) * inner(g, h, h));
    CHECK(std::fabs(a - b) <= 1e-10 * scale);
  }
}

TEST_CASE("summation by parts gives the gradient form") {
  const RadialGrid g(800, 40.0);
  const Vec f = sample(g, [](double r) { return std::exp(-r * r / 3) * (1 + r); });
  CHECK(inner(g, apply_helmholtz(g, 1.0, f), f) ==
        doctest::Approx(gradient_norm_sq(g, f) + inner(g, f, f)).epsilon(1e-13));
}

TEST_CASE("pivoted tridiagonal solve on an indefinite matrix") {
  Tridiagonal t;
  t.diag = {1e-14, 2.0, -3.0, 1.0, 4.0};
  t.upper = {1.0, 1.0, 2.0, -1.0};
  t.lower = {3.0, 1.0, 1.0, 2.0};
  const Vec x = {1.0, -2.0, 0.5, 3.0, -1.0};
  const Vec b = t.apply(x);
  const Vec y = TridiagonalLU(t).solve(b);
  for (int i = 0; i < 5; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("origin extrapolation") {
  const RadialGrid g(4096, 40.0);
  CHECK(extrapolate_origin(Vec(3, 2.75)) == 2.75);
  CHECK(std::fabs(extrapolate_origin(sample(g, [](double r) { return 1 - r * r; })) - 1.0) <= 1e-15);
  CHECK(std::fabs(extrapolate_origin(sample(g, [](double r) { return 2 + r * r * r * r; })) - 2.0) <= 1e-15);
  CHECK(std::fabs(extrapolate_origin(sample(g, [](double r) { return std::cos(r); })) - 1.0) <= 1e-8);
}

TEST_CASE("near-origin rule integrates cell by cell") {
  const RadialGrid g(256, 40.0);
  const NearOriginRule rule = near_origin_rule(g, 8, 24);
  for (int i = 0; i < 8; ++i) {
    double s = 0.0, slog = 0.0;
    for (int k = 0; k < 24; ++k) {
      s += rule.w[i * 24 + k];
      slog += rule.w[i * 24 + k] * std::log(rule.r[i * 24 + k]);
    }
    CHECK(s == doctest::Approx(g.weights()[i]).epsilon(1e-14));
    if (i == 0) {
      // 2 pi int_0^h r ln r dr = pi h^2 (ln h - 1/2)
      const double h = g.h();
      CHECK(slog == doctest::Approx(pi * h * h * (std::log(h) - 0.5)).epsilon(1e-10));
    }
  }
}
