#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnls/groundstate.hpp"

namespace pnls {

enum class Classification { stable, unstable, inconclusive };
std::string to_string(Classification c);

struct MassCurve {
  double alpha = 0.0, p = 0.0;
  Vec omegas, mass, mass_rescaled, f0, beta, action;
  Vec dmass;        // d/domega of mass
  Vec dmass_error;  // truncation estimate of dmass
  Vec dmass_asymptotic;
  std::vector<Classification> classification;
};

// Relative residual of ||phi||^2 = f0^2/(4 pi beta^2) + 2/(p+1) ||phi||_{p+1}^{p+1}.
double pohozaev_residual(const GroundState& gs);

// d y / d omega from three-point Lagrange differences in ln omega (one-sided at the ends).
// The error estimate is the distance to the four-point derivative on the nearest stencil.
struct SlopeEstimate {
  Vec value;
  Vec error;
};
SlopeEstimate log_slope(std::span<const double> omegas, std::span<const double> y);

Classification classify(double dmass, double threshold);
MassCurve mass_curve(std::span<const GroundState> states);
// Same curve from raw arrays (mass = omega^{(3-p)/(p-1)} mass_rescaled).
MassCurve mass_curve(double alpha, double p, std::span<const double> omegas, std::span<const double> mass);

// Intervals (omega_a, omega_b) between consecutive classified points whose signs differ.
std::vector<std::pair<double, double>> sign_changes(const MassCurve& curve);

double asymptotic_dmass(const GroundState& gs);

// omega beta^{3/2} d f0/d omega at interior sweep points.
Vec domega_f0_ratio(std::span<const GroundState> states);
Vec domega_f0_ratio(std::span<const double> omegas, std::span<const double> f0, std::span<const double> beta);

struct LinearizedReport {
  double omega = 0.0;
  double beta = 0.0;
  double smallest_abs_eig = 0.0;
  double coercivity_eig = 0.0;
  double lowest_eig = 0.0;
  double regular_block_eig = 0.0;  // singular coordinate removed
  int dims = 0;
};

struct LinearizedOptions {
  int target_n = 1024;
  int max_n = 2048;
};

// Pencil of S'' against the H-tilde Gram matrix at the fields (f, c) of the model.
LinearizedReport linearized_pencil(const NonlinearModel& model, std::span<const double> f, double c, double omega);

// Restricts the grid by pair averaging until n <= target_n, re-polishes, then assembles.
GroundState coarsen(const GroundState& gs, int target_n, const SolverOptions& opts = {});
LinearizedReport linearized_report(const GroundState& gs, const LinearizedOptions& lopts = {},
                                   const SolverOptions& opts = {});

}  // namespace pnls
