#include "pnls/pointop.hpp"

#include <cmath>
#include <utility>

#include "pnls/errors.hpp"
#include "pnls/specfun.hpp"

namespace pnls {

double OperatorParams::beta(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("beta: lambda must be positive");
  return std::log(lambda / -e_alpha) / (4.0 * pi);
}

double OperatorParams::beta_expanded(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("beta: lambda must be positive");
  return alpha + euler_gamma / (2.0 * pi) + std::log(std::sqrt(lambda) / 2.0) / (2.0 * pi);
}

double OperatorParams::omega_for_beta(double b) const { return -e_alpha * std::exp(4.0 * pi * b); }

OperatorParams make_params(double alpha) {
  if (!std::isfinite(alpha)) throw ParameterError("alpha must be finite");
  return {alpha, -4.0 * std::exp(-4.0 * pi * alpha - 2.0 * euler_gamma)};
}

double green_value(double lambda, double r) {
  if (!(lambda > 0.0) || !(r > 0.0)) throw DomainError("green_value: arguments must be positive");
  return bessel_k0(std::sqrt(lambda) * r) / (2.0 * pi);
}

RadialField green_samples(const RadialGrid& grid, double lambda) {
  RadialField g(grid.n());
  for (int i = 0; i < grid.n(); ++i) g[i] = green_value(lambda, grid.r(i));
  return g;
}

double green_inner(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw DomainError("green_inner: arguments must be positive");
  if (mu < lambda) std::swap(lambda, mu);
  const double x = (mu - lambda) / lambda;
  if (x <= 1e-6) return (1.0 - x / 2.0 + x * x / 3.0 - x * x * x / 4.0) / (4.0 * pi * lambda);
  return std::log1p(x) / (4.0 * pi * lambda * x);
}

double green_inner_by_quadrature(const RadialGrid& grid, double lambda, double mu) {
  const double a = std::log(std::sqrt(lambda) / 2.0) + euler_gamma;
  const double b = std::log(std::sqrt(mu) / 2.0) + euler_gamma;
  const double c = 1.0 / (4.0 * pi * pi);
  // 2 pi int_0^inf r c (ln r + a)(ln r + b) e^{-r^2} dr
  const double model =
      (0.25 * (euler_gamma * euler_gamma + pi * pi / 6.0) - 0.5 * euler_gamma * (a + b) + a * b) / (4.0 * pi);
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    const double r = grid.r(i);
    const double lr = std::log(r);
    const double sing = c * (lr + a) * (lr + b) * std::exp(-r * r);
    s += grid.weights()[i] * (green_value(lambda, r) * green_value(mu, r) - sing);
  }
  return s + model;
}

RadialField chi_alpha(const OperatorParams& params, const RadialGrid& grid) {
  RadialField g = green_samples(grid, -params.e_alpha);
  const double norm = std::sqrt(inner(grid, g, g));
  for (double& v : g) v /= norm;
  return g;
}

ResolventParts resolvent_parts(const OperatorParams& params, double lambda, std::span<const double> g,
                               const RadialGrid& grid) {
  if (!(lambda > 0.0)) throw ParameterError("resolvent needs lambda > 0");
  const double beta = params.beta(lambda);
  if (std::fabs(beta) < 1e-12) throw ParameterError("resolvent: lambda is the eigenvalue -e_alpha");
  ResolventParts out;
  out.regular = solve_helmholtz(grid, lambda, g);
  const RadialField gl = green_samples(grid, lambda);
  out.coefficient = inner(grid, g, gl) / beta;
  out.field = out.regular;
  for (int i = 0; i < grid.n(); ++i) out.field[i] += out.coefficient * gl[i];
  return out;
}

RadialField apply_resolvent(const OperatorParams& params, double lambda, std::span<const double> g,
                            const RadialGrid& grid) {
  return resolvent_parts(params, lambda, g, grid).field;
}

double h1_alpha_norm_sq(const OperatorParams& params, double omega, std::span<const double> f, double c,
                        const RadialGrid& grid) {
  if (!(omega > -params.e_alpha)) throw DomainError("h1_alpha_norm_sq: omega must exceed -e_alpha");
  return gradient_norm_sq(grid, f) + omega * inner(grid, f, f) + params.beta(omega) * c * c;
}

}  // namespace pnls
