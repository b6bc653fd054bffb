#pragma once

#include <span>

#include "pnls/radial.hpp"

namespace pnls {

struct OperatorParams {
  double alpha = 0.0;
  double e_alpha = 0.0;  // -4 exp(-4 pi alpha - 2 gamma)

  // (1/4pi) ln(lambda / -e_alpha)
  double beta(double lambda) const;
  // alpha + gamma/2pi + (1/2pi) ln(sqrt(lambda)/2); same value, independent route
  double beta_expanded(double lambda) const;
  // smallest omega with beta(omega) >= b
  double omega_for_beta(double b) const;
};

OperatorParams make_params(double alpha);

// G_lambda(r) = K0(sqrt(lambda) r) / 2pi
double green_value(double lambda, double r);
RadialField green_samples(const RadialGrid& grid, double lambda);
// (G_lambda, G_mu) in L2(R^2)
double green_inner(double lambda, double mu);
// Same inner product by grid quadrature. The log^2 singularity at the origin is
// subtracted with a Gaussian-damped model integrated in closed form.
double green_inner_by_quadrature(const RadialGrid& grid, double lambda, double mu);

// Normalized eigenfunction G_{-e}/||G_{-e}|| on the grid, normalized with the grid quadrature.
RadialField chi_alpha(const OperatorParams& params, const RadialGrid& grid);

struct ResolventParts {
  RadialField regular;  // (-Delta + lambda)^{-1} g on the grid
  double coefficient;   // (g, G_lambda) / beta(lambda)
  RadialField field;    // regular + coefficient * G_lambda
};
ResolventParts resolvent_parts(const OperatorParams& params, double lambda, std::span<const double> g,
                               const RadialGrid& grid);
RadialField apply_resolvent(const OperatorParams& params, double lambda, std::span<const double> g,
                            const RadialGrid& grid);

// ||grad f||^2 + omega ||f||^2 + beta(omega) c^2
double h1_alpha_norm_sq(const OperatorParams& params, double omega, std::span<const double> f, double c,
                        const RadialGrid& grid);

}  // namespace pnls
