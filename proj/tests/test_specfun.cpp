#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "pnls/errors.hpp"
#include "pnls/selfcheck.hpp"
#include "pnls/specfun.hpp"

using namespace pnls;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("K0 and K1 at x = 1") {
  CHECK(std::fabs(bessel_k0(1.0) - 0.421024438240708) <= 1e-12);
  CHECK(std::fabs(bessel_k1(1.0) - 0.601907230197235) <= 1e-12);
}

TEST_CASE("small and large argument laws") {
  const double x = 1e-8;
  CHECK(rel(bessel_k0(x), -std::log(x / 2) - euler_gamma) <= 1e-8);
  CHECK(rel(bessel_k1(1e-6), 1e6) <= 1e-6);
  const double y = 10.0;
  const double asym = std::sqrt(pi / (2 * y)) * std::exp(-y) * (1 - 1 / (8 * y) + 9 / (128 * y * y));
  CHECK(rel(bessel_k0(y), asym) <= 1e-4);
}

TEST_CASE("K0' = -K1") {
  const double x = 2.0, h = 1e-5;
  CHECK(rel((bessel_k0(x + h) - bessel_k0(x - h)) / (2 * h), -bessel_k1(x)) <= 1e-8);
}

TEST_CASE("quadrature oracle at 25 log-spaced points") {
  for (int k = 0; k < 25; ++k) {
    const double x = 1e-3 * std::pow(1e5, k / 24.0);  // [1e-3, 100]
    CAPTURE(x);
    CHECK(rel(bessel_k0(x), oracle::bessel_k(0, x)) <= 1e-12);
    CHECK(rel(bessel_k1(x), oracle::bessel_k(1, x)) <= 1e-12);
  }
}

TEST_CASE("library integral oracle agrees with the long-double oracle") {
  for (double x : {1e-3, 0.1, 1.0, 2.0, 7.5, 20.0}) {
    CHECK(rel(bessel_k_integral(0, x), oracle::bessel_k(0, x)) <= 1e-13);
    CHECK(rel(bessel_k_integral(1, x), oracle::bessel_k(1, x)) <= 1e-13);
  }
}

TEST_CASE("continuity across the series / continued-fraction switch") {
  const double a = std::nextafter(2.0, 0.0), b = std::nextafter(2.0, 3.0);
  CHECK(rel(bessel_k0(a), bessel_k0(b)) <= 1e-14);
  CHECK(rel(bessel_k1(a), bessel_k1(b)) <= 1e-14);
}

TEST_CASE("monotone and positive") {
  double prev0 = std::numeric_limits<double>::infinity(), prev1 = prev0;
  for (int k = 0; k <= 400; ++k) {
    const double x = 1e-12 * std::pow(650.0 / 1e-12, k / 400.0);
    const double k0 = bessel_k0(x), k1 = bessel_k1(x);
    CHECK(k0 > 0.0);
    CHECK(k1 > 0.0);
    CHECK(k0 < prev0);
    CHECK(k1 < prev1);
    prev0 = k0;
    prev1 = k1;
  }
}

TEST_CASE("error bound is conservative and tight") {
  for (int k = 0; k <= 200; ++k) {
    const double x = 1e-12 * std::pow(700.0 / 1e-12, k / 200.0);
    const auto a = bessel_k0_eval(x), b = bessel_k1_eval(x);
    CHECK(a.abs_error_bound <= 1e-12 * std::max(1.0, a.value));
    CHECK(b.abs_error_bound <= 1e-12 * std::max(1.0, b.value));
    CHECK(std::isfinite(a.value));
  }
  for (double x : {1e-3, 0.5, 1.9, 2.1, 10.0, 50.0}) {
    CHECK(std::fabs(bessel_k0(x) - oracle::bessel_k(0, x)) <= bessel_k0_eval(x).abs_error_bound + 1e-15);
  }
}

// Measured against the size of the individual terms: near x = 0.1 the terms are O(1)
// while x^2 K0 is small, so a bound relative to x^2 K0 alone sits below roundoff.
TEST_CASE("modified Bessel equation residual") {
  for (int k = 0; k <= 30; ++k) {
    const double x = 0.1 * std::pow(500.0, k / 30.0);
    const double h = std::min(1e-4 * x, 1e-3);
    const double k0 = bessel_k0(x), kp = bessel_k0(x + h), km = bessel_k0(x - h);
    const double d2 = (kp - 2 * k0 + km) / (h * h), d1 = (kp - km) / (2 * h);
    CAPTURE(x);
    CHECK(std::fabs(x * x * d2 + x * d1 - x * x * k0) <=
          1e-6 * (std::fabs(x * x * d2) + std::fabs(x * d1) + x * x * k0));
  }
}

TEST_CASE("K0 e^x sqrt(x) varies slowly for x >= 5") {
  for (double x = 5.0; x <= 320.0; x *= 2) {
    const double a = bessel_k0(x) * std::exp(x) * std::sqrt(x);
    const double b = bessel_k0(2 * x) * std::exp(2 * x) * std::sqrt(2 * x);
    CHECK(std::fabs(b / a - 1.0) < 0.2);
  }
}

TEST_CASE("domain") {
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
  CHECK_THROWS_AS(bessel_k0(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_k1(std::nan("")), DomainError);
  CHECK_THROWS_AS(bessel_k1(std::numeric_limits<double>::infinity()), DomainError);
  CHECK(bessel_k0(800.0) == 0.0);
  CHECK(bessel_k1(701.0) == 0.0);
}
