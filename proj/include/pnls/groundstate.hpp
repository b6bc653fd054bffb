#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnls/pointop.hpp"
#include "pnls/radial.hpp"

namespace pnls {

// Ground-state candidate in the rescaled frame: phi = f + c G_1 with c = f(0)/beta.
struct Profile {
  GridPtr grid;
  Vec f;
  double f0 = 0.0;
  double beta = std::numeric_limits<double>::infinity();
  double c = 0.0;
  double omega = 0.0;
  double p = 0.0;
  double alpha = 0.0;

  Vec phi() const;
};

struct GroundState {
  Profile profile;
  double action = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
  double mass_rescaled = 0.0;
  double mass_physical = 0.0;
  double energy = 0.0;
  int newton_iters = 0;
  bool converged = false;
  double newton_residual = 0.0;  // sup |F| / (1 + sup |f|)
  double lp_norm_pow = 0.0;      // ||phi||_{p+1}^{p+1}
  double h_norm_sq = 0.0;        // ||f||_{H1}^2 + beta c^2
};

struct ClassicProfile {
  GridPtr grid;
  double p = 0.0;
  Vec u;
  double u0 = 0.0;  // shooting parameter
  // Scalars below are extrapolated from this grid and its refinement (h -> h/2).
  double action_infty = 0.0;
  double mass = 0.0;
  double lp_norm_pow = 0.0;
  double gradient_sq = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
  int newton_iters = 0;
};

struct SolverOptions {
  int max_iterations = 50;
  int max_halvings = 8;
  double tolerance = 1e-10;
  int near_origin_cells = 8;
  int near_origin_order = 24;
  bool homotopy = true;     // fall back to a path in 1/beta when a direct solve fails
  bool extrapolate = true;  // classical scalars from a second solve at h/2
};

inline constexpr double beta_guard = 0.02;

// Discrete action S(f) = 1/2 <Af,f>_w + 1/2 beta c^2 - Q(f,c)/(p+1), c = E(f)/beta,
// with Q the quadrature of |phi|^{p+1}: midpoint away from the origin and
// Gauss sub-cells on the first cells, where G_1 is log singular.
// beta = inf switches the singular part off (classical equation).
class NonlinearModel {
 public:
  NonlinearModel(GridPtr grid, double p, double beta, int cells = 8, int order = 24);

  const RadialGrid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  double p() const { return p_; }
  double beta() const { return beta_; }
  bool coupled() const { return coupled_; }
  const Vec& green() const { return g_; }
  int cells() const { return rule_.cells; }

  double coefficient(std::span<const double> f) const;
  Vec phi(std::span<const double> f, double c) const;

  // W^{-1} grad S: A f + (c - Gamma/beta) e/w - WN/w
  Vec residual(std::span<const double> f) const;
  Vec jacobian_apply(std::span<const double> f, std::span<const double> v) const;
  // Solves J dx = rhs (tridiagonal plus rank-two update).
  Vec newton_direction(std::span<const double> f, std::span<const double> rhs) const;

  struct Curvature {
    Vec wd;    // integral of p phi^{p-1} over each cell
    Vec wa;    // same with an extra G_1 factor
    double b;  // integral of p phi^{p-1} G_1^2
  };
  Curvature curvature(std::span<const double> f, double c) const;
  // Rows of the L2 pairing with phi for v = g + d G_1: n grid entries, then the d entry.
  Vec l2_pairing(std::span<const double> f, double c) const;

  struct Functionals {
    double gradient_sq = 0.0;
    double l2_sq = 0.0;
    double h_norm_sq = 0.0;
    double lp_pow = 0.0;
    double action = 0.0;
    double nehari = 0.0;
    double f_dot_green = 0.0;
    double mass_rescaled = 0.0;
  };
  Functionals functionals(std::span<const double> f, double c) const;

 private:
  template <class Fn>
  void for_each_point(std::span<const double> f, double c, Fn&& fn) const;

  GridPtr grid_;
  double p_, beta_;
  bool coupled_;
  Vec g_;
  NearOriginRule rule_;
  Vec cell_g_;
  Tridiagonal a_;
  Vec e_over_w_;
};

Profile make_profile(GridPtr grid, Vec f, double alpha, double p, double omega);

ClassicProfile solve_classic(double p, GridPtr grid, const SolverOptions& opts = {});

// (action, Nehari functional) of a profile, both unnormalized.
std::pair<double, double> functional_values(const Profile& prof, const SolverOptions& opts = {});
Profile nehari_rescale(const Profile& prof, const SolverOptions& opts = {});

// Throws ParameterError (bad p), BetaGuardError, ConvergenceError, PositivityError.
GroundState solve_ground(double alpha, double p, double omega, GridPtr grid, const Profile* seed = nullptr,
                         const SolverOptions& opts = {});
// Diagnostics of a converged profile (used after solve and by coarsening).
GroundState evaluate_state(const Profile& prof, int iters, double residual, const SolverOptions& opts = {});

struct SweepPoint {
  double omega = 0.0;
  std::optional<GroundState> state;
  std::string error;
};

// Warm-started continuation. Default order descends from the largest omega, the first
// solve seeded by the classical profile. Results come back in ascending omega order.
std::vector<SweepPoint> continue_sweep(double alpha, double p, std::span<const double> omegas, GridPtr grid,
                                       const SolverOptions& opts = {}, bool descending = true);

// Admissibility check shared by the CLI: throws ParameterError / BetaGuardError.
void check_admissible(double alpha, double p, double omega);

}  // namespace pnls
