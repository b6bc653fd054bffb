#include "pnls/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pnls/errors.hpp"
#include "pnls/pointop.hpp"
#include "pnls/radial.hpp"
#include "pnls/specfun.hpp"

namespace pnls {
namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckLine line(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

}  // namespace

double bessel_k_integral(int nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k_integral: x must be positive");
  // integrand below exp(-745) past T
  const double tmax = std::acosh(745.0 / x + 1.0) + 1.0;
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); };
  double step = 0.5;
  double prev = 0.0;
  for (int level = 0; level < 12; ++level) {
    const int m = int(std::ceil(tmax / step));
    double s = 0.5 * f(0.0);
    for (int k = 1; k <= m; ++k) s += f(k * step);
    s *= step;
    if (level > 0 && std::fabs(s - prev) <= 1e-15 * std::fabs(s)) return s;
    prev = s;
    step *= 0.5;
  }
  return prev;
}

std::vector<CheckLine> run_selfcheck(const SelfcheckOptions& opts) {
  std::vector<CheckLine> out;
  const RadialGrid grid(opts.grid_n, opts.grid_r);
  const int n = grid.n();

  {
    double worst = 0.0, at = 0.0;
    for (int k = 0; k < 25; ++k) {
      const double x = 1e-3 * std::pow(2e4, k / 24.0);
      const double v = bessel_k0(x) * (1.0 + opts.k0_perturbation);
      const double ref = bessel_k_integral(0, x);
      const double e = std::fabs(v - ref) / ref;
      if (e > worst) worst = e, at = x;
    }
    out.push_back(line("K0 vs integral representation (25 points in [1e-3, 20])", worst, 1e-10,
                       "worst at x = " + sci(at)));
  }
  {
    double worst = 0.0;
    const double ls[] = {1.0, 2.0, 4.0};
    for (double l : ls)
      for (double m : ls) {
        const double a = green_inner(l, m);
        worst = std::max(worst, std::fabs(green_inner_by_quadrature(grid, l, m) - a) / a);
      }
    out.push_back(line("(G_l, G_m) closed form vs quadrature, l, m in {1,2,4}", worst, 1e-6));
  }
  {
    double worst = 0.0, plain = 0.0;
    for (double l : {0.25, 0.5, 1.0, 8.0, 16.0}) {
      const double a = 1.0 / (4.0 * pi * l);
      worst = std::max(worst, std::fabs(green_inner_by_quadrature(grid, l, l) - a) / a);
      worst = std::max(worst, std::fabs(green_inner(l, l) - a) / a);
      const RadialField g = green_samples(grid, l);
      plain = std::max(plain, std::fabs(inner(grid, g, g) - a) / a);
    }
    out.push_back(line("||G_l||^2 = 1/(4 pi l)", worst, 1e-6, "plain midpoint error " + sci(plain)));
  }
  {
    double worst = 0.0;
    for (double alpha : {-0.5, 0.0, 0.5, 2.0}) {
      const OperatorParams prm = make_params(alpha);
      for (int k = 0; k <= 36; ++k) {
        const double l = std::pow(10.0, -6.0 + 0.5 * k);
        worst = std::max(worst, std::fabs(prm.beta(l) - prm.beta_expanded(l)));
      }
    }
    out.push_back(line("beta_alpha: log ratio vs expanded form (absolute)", worst, 1e-13));
  }
  {
    const OperatorParams prm = make_params(0.0);
    const double lambda = 1.0 - prm.e_alpha;
    const RadialField chi = chi_alpha(prm, grid);
    const RadialField r = apply_resolvent(prm, lambda, chi, grid);
    RadialField d(n);
    for (int i = 0; i < n; ++i) d[i] = r[i] - chi[i] / (lambda + prm.e_alpha);
    out.push_back(line("resolvent eigenpair, alpha = 0, lambda = 1 - e_alpha (L2)", std::sqrt(inner(grid, d, d)),
                       1e-3));
  }
  {
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = grid.r(i), f = std::exp(-r * r);
      const double lf = (5.0 - 4.0 * r * r) * f;  // (-Delta + 1) e^{-r^2}
      lhs += grid.weights()[i] * lf * (-r * bessel_k1(r) / (2.0 * pi));
      rhs += grid.weights()[i] * f * green_value(1.0, r);
    }
    rhs *= -2.0;
    out.push_back(line("x.grad G_1 weak identity", std::fabs(lhs - rhs) / std::fabs(rhs), 1e-4));
  }
  {
    RadialField g1(n), g2(n);
    for (int i = 0; i < n; ++i) {
      const double r = grid.r(i);
      g1[i] = std::exp(-r * r);
      g2[i] = std::exp(-r * r / 2.0);
    }
    const double e1 = std::fabs(integrate(grid, g1) - pi) / pi;
    const double e2 = std::fabs(lp_norm(grid, g2, 2.0) - std::sqrt(pi)) / std::sqrt(pi);
    const double e3 = std::fabs(gradient_norm_sq(grid, g2) + inner(grid, g2, g2) - 2.0 * pi) / (2.0 * pi);
    out.push_back(line("Gaussian anchors (integral, L2 norm, H1 norm)", std::max({e1, e2, e3}), 2e-5,
                       "integral " + sci(e1) + ", L2 " + sci(e2) + ", H1 " + sci(e3)));
  }
  return out;
}

}  // namespace pnls
