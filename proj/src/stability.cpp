#include "pnls/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "pnls/errors.hpp"
#include "pnls/specfun.hpp"

namespace pnls {
namespace {

// derivative at x of the interpolant through (xs[j], ys[j])
double lagrange_slope(std::span<const double> xs, std::span<const double> ys, double x) {
  const size_t m = xs.size();
  double d = 0.0;
  for (size_t j = 0; j < m; ++j) {
    double denom = 1.0;
    for (size_t k = 0; k < m; ++k)
      if (k != j) denom *= xs[j] - xs[k];
    double num = 0.0;
    for (size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      double prod = 1.0;
      for (size_t l = 0; l < m; ++l)
        if (l != j && l != k) prod *= x - xs[l];
      num += prod;
    }
    d += ys[j] * num / denom;
  }
  return d;
}

double stencil_slope(const Vec& x, std::span<const double> y, size_t first, size_t count, size_t at) {
  return lagrange_slope(std::span<const double>(x).subspan(first, count), y.subspan(first, count), x[at]);
}

Eigen::MatrixXd complement(const Eigen::MatrixXd& a, Eigen::Index k,
                           const Eigen::VectorXd& u, double tau) {
  // H A H with H = I - tau u u^T, then drop row and column k
  const Eigen::VectorXd v = a * u;
  const double s = u.dot(v);
  Eigen::MatrixXd b = a - tau * (u * v.transpose() + v * u.transpose()) + tau * tau * s * (u * u.transpose());
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd out(n - 1, n - 1);
  for (Eigen::Index i = 0, ii = 0; i < n; ++i) {
    if (i == k) continue;
    for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
      if (j == k) continue;
      out(ii, jj++) = b(i, j);
    }
    ++ii;
  }
  return out;
}

Eigen::VectorXd pencil_eigenvalues(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(k, m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("generalized eigensolver failed");
  return es.eigenvalues();
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::stable: return "stable";
    case Classification::unstable: return "unstable";
    default: return "inconclusive";
  }
}

double pohozaev_residual(const GroundState& gs) {
  const Profile& pr = gs.profile;
  const double sing = std::isfinite(pr.beta) ? pr.f0 * pr.f0 / (4.0 * pi * pr.beta * pr.beta) : 0.0;
  return std::fabs(gs.mass_rescaled - sing - 2.0 / (pr.p + 1.0) * gs.lp_norm_pow) / gs.mass_rescaled;
}

SlopeEstimate log_slope(std::span<const double> omegas, std::span<const double> y) {
  const size_t n = omegas.size();
  if (n < 3 || y.size() != n) throw ParameterError("log_slope needs at least 3 matching points");
  Vec x(n);
  for (size_t i = 0; i < n; ++i) {
    if (i > 0 && !(omegas[i] > omegas[i - 1])) throw ParameterError("omegas must be strictly ascending");
    x[i] = std::log(omegas[i]);
  }
  SlopeEstimate out{Vec(n), Vec(n)};
  for (size_t i = 0; i < n; ++i) {
    const size_t s3 = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const double d3 = stencil_slope(x, y, s3, 3, i);
    double d_ref;
    if (n >= 4) {
      const size_t s4 = std::min(i == 0 ? size_t(0) : i - 1, n - 4);
      d_ref = stencil_slope(x, y, s4, 4, i);
    } else {
      const size_t s2 = i == n - 1 ? n - 2 : i;
      d_ref = stencil_slope(x, y, s2, 2, i);
    }
    out.value[i] = d3 / omegas[i];
    out.error[i] = std::fabs(d3 - d_ref) / omegas[i];
  }
  return out;
}

Classification classify(double dmass, double threshold) {
  if (dmass > threshold) return Classification::stable;
  if (dmass < -threshold) return Classification::unstable;
  return Classification::inconclusive;
}

MassCurve mass_curve(double alpha, double p, std::span<const double> omegas, std::span<const double> mass) {
  MassCurve mc;
  mc.alpha = alpha;
  mc.p = p;
  mc.omegas.assign(omegas.begin(), omegas.end());
  mc.mass.assign(mass.begin(), mass.end());
  const SlopeEstimate s = log_slope(omegas, mass);
  mc.dmass = s.value;
  mc.dmass_error = s.error;
  for (size_t i = 0; i < omegas.size(); ++i) mc.classification.push_back(classify(s.value[i], 10.0 * s.error[i]));
  return mc;
}

MassCurve mass_curve(std::span<const GroundState> states) {
  if (states.size() < 3) throw ParameterError("mass_curve needs at least 3 states");
  const double alpha = states[0].profile.alpha, p = states[0].profile.p;
  Vec om, mass;
  for (const auto& s : states) {
    if (s.profile.alpha != alpha || s.profile.p != p) throw ParameterError("mass_curve: mixed (alpha, p)");
    om.push_back(s.profile.omega);
    mass.push_back(s.mass_physical);
  }
  MassCurve mc = mass_curve(alpha, p, om, mass);
  for (const auto& s : states) {
    mc.mass_rescaled.push_back(s.mass_rescaled);
    mc.f0.push_back(s.profile.f0);
    mc.beta.push_back(s.profile.beta);
    mc.action.push_back(s.action);
    mc.dmass_asymptotic.push_back(asymptotic_dmass(s));
  }
  return mc;
}

std::vector<std::pair<double, double>> sign_changes(const MassCurve& curve) {
  std::vector<std::pair<double, double>> out;
  int prev = -1;
  for (size_t i = 0; i < curve.classification.size(); ++i) {
    if (curve.classification[i] == Classification::inconclusive) continue;
    if (prev >= 0 && curve.classification[prev] != curve.classification[i])
      out.emplace_back(curve.omegas[prev], curve.omegas[i]);
    prev = int(i);
  }
  return out;
}

double asymptotic_dmass(const GroundState& gs) {
  const Profile& pr = gs.profile;
  const double p = pr.p;
  return std::pow(pr.omega, 2.0 * (2.0 - p) / (p - 1.0)) *
         ((3.0 - p) / (p - 1.0) * gs.mass_rescaled + pr.f0 * pr.f0 / (2.0 * (p - 1.0) * pi * pr.beta * pr.beta));
}

Vec domega_f0_ratio(std::span<const double> omegas, std::span<const double> f0, std::span<const double> beta) {
  const size_t n = omegas.size();
  if (n < 3 || f0.size() != n || beta.size() != n) throw ParameterError("domega_f0_ratio needs at least 3 points");
  const SlopeEstimate s = log_slope(omegas, f0);
  Vec out;
  for (size_t i = 1; i + 1 < n; ++i) out.push_back(s.value[i] * omegas[i] * std::pow(beta[i], 1.5));
  return out;
}

Vec domega_f0_ratio(std::span<const GroundState> states) {
  Vec om, f0, beta;
  for (const auto& s : states) {
    om.push_back(s.profile.omega);
    f0.push_back(s.profile.f0);
    beta.push_back(s.profile.beta);
  }
  return domega_f0_ratio(om, f0, beta);
}

LinearizedReport linearized_pencil(const NonlinearModel& model, std::span<const double> f, double c,
                                   double omega) {
  const RadialGrid& grid = model.grid();
  const int n = grid.n();
  const double beta = model.beta();
  if (!model.coupled()) throw ParameterError("linearized_pencil needs a finite beta");
  const Vec& w = grid.weights();
  const Tridiagonal a = helmholtz_matrix(grid, 1.0);
  const auto cv = model.curvature(f, c);

  Eigen::MatrixXd km = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    gm(i, i) = w[i] * a.diag[i];
    if (i + 1 < n) {
      gm(i, i + 1) = w[i] * a.upper[i];
      gm(i + 1, i) = w[i + 1] * a.lower[i];
    }
  }
  // W A is symmetric up to rounding; enforce it exactly
  gm.topLeftCorner(n, n) = 0.5 * (gm.topLeftCorner(n, n) + gm.topLeftCorner(n, n).transpose()).eval();
  gm(n, n) = beta;
  km = gm;
  for (int i = 0; i < n; ++i) {
    km(i, i) -= cv.wd[i];
    km(i, n) = km(n, i) = -cv.wa[i];
  }
  km(n, n) = beta - cv.b;

  LinearizedReport rep;
  rep.omega = omega;
  rep.beta = beta;
  rep.dims = n + 1;
  const Eigen::VectorXd ev = pencil_eigenvalues(km, gm);
  rep.lowest_eig = ev.minCoeff();
  rep.smallest_abs_eig = ev.cwiseAbs().minCoeff();
  rep.regular_block_eig = pencil_eigenvalues(km.topLeftCorner(n, n), gm.topLeftCorner(n, n)).minCoeff();

  const Vec pair = model.l2_pairing(f, c);
  Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(pair.data(), n + 1);
  if (q.norm() == 0.0) q(n) = 1.0;
  q /= q.norm();
  Eigen::Index k;
  q.cwiseAbs().maxCoeff(&k);
  Eigen::VectorXd u = q;
  u(k) += q(k) >= 0.0 ? 1.0 : -1.0;
  const double tau = 2.0 / u.squaredNorm();
  rep.coercivity_eig = pencil_eigenvalues(complement(km, k, u, tau), complement(gm, k, u, tau)).minCoeff();
  return rep;
}

GroundState coarsen(const GroundState& gs, int target_n, const SolverOptions& opts) {
  const Profile& pr = gs.profile;
  int n = pr.grid->n();
  if (n <= target_n) return gs;
  Vec f = pr.f;
  while (n > target_n) {
    if (n % 2) throw ParameterError("coarsening needs an even node count");
    Vec g(n / 2);
    for (int j = 0; j < n / 2; ++j) g[j] = 0.5 * (f[2 * j] + f[2 * j + 1]);
    f.swap(g);
    n /= 2;
  }
  const GridPtr grid = make_grid(n, pr.grid->r_max());
  const Profile seed = make_profile(grid, std::move(f), pr.alpha, pr.p, pr.omega);
  return solve_ground(pr.alpha, pr.p, pr.omega, grid, &seed, opts);
}

LinearizedReport linearized_report(const GroundState& gs, const LinearizedOptions& lopts,
                                   const SolverOptions& opts) {
  const GroundState coarse = coarsen(gs, lopts.target_n, opts);
  const Profile& pr = coarse.profile;
  if (pr.grid->n() > lopts.max_n)
    throw GridTooLargeError("linearized_report: n = " + std::to_string(pr.grid->n()) + " exceeds the dense limit " +
                            std::to_string(lopts.max_n));
  const NonlinearModel model(pr.grid, pr.p, pr.beta, opts.near_origin_cells, opts.near_origin_order);
  return linearized_pencil(model, pr.f, pr.c, pr.omega);
}

}  // namespace pnls
