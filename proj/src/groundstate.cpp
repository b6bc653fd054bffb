#include "pnls/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pnls/errors.hpp"
#include "pnls/specfun.hpp"

namespace pnls {
namespace {

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::fabs(x));
  }
  return m;
}

double pos_pow(double x, double e) { return x > 0.0 ? std::pow(x, e) : 0.0; }

struct NewtonOutcome {
  Vec f;
  int iters = 0;
  double residual = 0.0;
  bool converged = false;
};

NewtonOutcome newton(const NonlinearModel& model, Vec f, const SolverOptions& o) {
  NewtonOutcome out;
  Vec res = model.residual(f);
  double nr = sup_norm(res);
  for (int it = 0;; ++it) {
    const double scale = 1.0 + sup_norm(f);
    out.iters = it;
    out.residual = nr / scale;
    if (!std::isfinite(nr)) break;
    if (nr <= o.tolerance * scale) {
      out.converged = true;
      break;
    }
    if (it >= o.max_iterations) break;
    Vec dx;
    try {
      dx = model.newton_direction(f, res);
    } catch (const ConvergenceError&) {
      break;
    }
    double t = 1.0;
    Vec fn(f.size()), rn;
    double nn = 0.0;
    for (int k = 0;; ++k) {
      for (size_t i = 0; i < f.size(); ++i) fn[i] = f[i] - t * dx[i];
      rn = model.residual(fn);
      nn = sup_norm(rn);
      if ((std::isfinite(nn) && nn < nr) || k == o.max_halvings) break;
      t *= 0.5;
    }
    f.swap(fn);
    res.swap(rn);
    nr = nn;
  }
  out.f = std::move(f);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_p(double p) {
  if (!std::isfinite(p) || p <= 1.0 || p > 8.0) throw ParameterError("p must lie in (1, 8], got " + fmt(p));
}

// RK4 shot for -u'' - u'/r + u - u^p = 0 from the first node.
// Returns +1 on overshoot (u < 0 or blow-up), -1 on undershoot (u' > 0), 0 if the grid end is reached.
int shoot(double p, double u0, const RadialGrid& grid, Vec* values) {
  const double h = grid.h();
  auto rhs = [p](double x, double u, double v, double& du, double& dv) {
    du = v;
    dv = -v / x + u - std::pow(std::fabs(u), p - 1.0) * u;
  };
  double x = grid.r(0);
  const double a = (u0 - std::pow(u0, p)) / 4.0;
  double u = u0 + a * x * x, v = 2.0 * a * x;
  if (values) {
    values->clear();
    values->push_back(u);
  }
  for (int i = 1; i < grid.n(); ++i) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(x, u, v, k1u, k1v);
    rhs(x + h / 2, u + h / 2 * k1u, v + h / 2 * k1v, k2u, k2v);
    rhs(x + h / 2, u + h / 2 * k2u, v + h / 2 * k2v, k3u, k3v);
    rhs(x + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    x += h;
    if (!std::isfinite(u) || !std::isfinite(v) || u < 0.0) return +1;
    if (v > 0.0) return -1;
    if (values) values->push_back(u);
  }
  return 0;
}

}  // namespace

Vec Profile::phi() const {
  Vec out = f;
  if (c != 0.0) {
    const Vec g = green_samples(*grid, 1.0);
    for (size_t i = 0; i < out.size(); ++i) out[i] += c * g[i];
  }
  return out;
}

NonlinearModel::NonlinearModel(GridPtr grid, double p, double beta, int cells, int order)
    : grid_(std::move(grid)), p_(p), beta_(beta), coupled_(std::isfinite(beta)) {
  if (coupled_ && !(beta > 0.0)) throw ParameterError("beta must be positive");
  g_ = green_samples(*grid_, 1.0);
  rule_ = near_origin_rule(*grid_, std::min(cells, grid_->n()), order);
  cell_g_.resize(rule_.r.size());
  for (size_t k = 0; k < rule_.r.size(); ++k) cell_g_[k] = green_value(1.0, rule_.r[k]);
  a_ = helmholtz_matrix(*grid_, 1.0);
  e_over_w_.assign(3, 0.0);
  for (int k = 0; k < 3; ++k) e_over_w_[k] = origin_weights[k] / grid_->weights()[k];
}

template <class Fn>
void NonlinearModel::for_each_point(std::span<const double> f, double c, Fn&& fn) const {
  const Vec& w = grid_->weights();
  const int m = rule_.cells, q = rule_.order;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < q; ++k) {
      const size_t j = size_t(i) * q + k;
      fn(i, rule_.w[j], f[i] + c * cell_g_[j], cell_g_[j]);
    }
  for (int i = m; i < grid_->n(); ++i) fn(i, w[i], f[i] + c * g_[i], g_[i]);
}

double NonlinearModel::coefficient(std::span<const double> f) const {
  return coupled_ ? extrapolate_origin(f) / beta_ : 0.0;
}

Vec NonlinearModel::phi(std::span<const double> f, double c) const {
  Vec out(f.begin(), f.end());
  if (c != 0.0)
    for (size_t i = 0; i < out.size(); ++i) out[i] += c * g_[i];
  return out;
}

Vec NonlinearModel::residual(std::span<const double> f) const {
  const double c = coefficient(f);
  const Vec& w = grid_->weights();
  Vec wn(grid_->n(), 0.0);
  double gamma = 0.0;
  for_each_point(f, c, [&](int i, double wt, double ph, double g) {
    const double t = wt * pos_pow(ph, p_);
    wn[i] += t;
    gamma += t * g;
  });
  Vec res = a_.apply(f);
  for (int i = 0; i < grid_->n(); ++i) res[i] -= wn[i] / w[i];
  if (coupled_)
    for (int k = 0; k < 3; ++k) res[k] += (c - gamma / beta_) * e_over_w_[k];
  return res;
}

NonlinearModel::Curvature NonlinearModel::curvature(std::span<const double> f, double c) const {
  Curvature cv{Vec(grid_->n(), 0.0), Vec(grid_->n(), 0.0), 0.0};
  for_each_point(f, c, [&](int i, double wt, double ph, double g) {
    const double t = wt * p_ * pos_pow(ph, p_ - 1.0);
    cv.wd[i] += t;
    cv.wa[i] += t * g;
    cv.b += t * g * g;
  });
  return cv;
}

Vec NonlinearModel::l2_pairing(std::span<const double> f, double c) const {
  Vec out(grid_->n() + 1, 0.0);
  for_each_point(f, c, [&](int i, double wt, double ph, double g) {
    out[i] += wt * ph;
    out.back() += wt * ph * g;
  });
  return out;
}

Vec NonlinearModel::jacobian_apply(std::span<const double> f, std::span<const double> v) const {
  const double c = coefficient(f);
  const Curvature cv = curvature(f, c);
  const Vec& w = grid_->weights();
  Vec out = a_.apply(v);
  for (int i = 0; i < grid_->n(); ++i) out[i] -= cv.wd[i] / w[i] * v[i];
  if (coupled_) {
    const double ev = extrapolate_origin(v);
    double wav = 0.0;
    for (int i = 0; i < grid_->n(); ++i) wav += cv.wa[i] * v[i];
    const double s1 = (1.0 / beta_ - cv.b / (beta_ * beta_)) * ev - wav / beta_;
    const double s2 = -ev / beta_;
    for (int k = 0; k < 3; ++k) out[k] += e_over_w_[k] * s1;
    for (int i = 0; i < grid_->n(); ++i) out[i] += cv.wa[i] / w[i] * s2;
  }
  return out;
}

Vec NonlinearModel::newton_direction(std::span<const double> f, std::span<const double> rhs) const {
  const int n = grid_->n();
  const double c = coefficient(f);
  const Curvature cv = curvature(f, c);
  const Vec& w = grid_->weights();
  Tridiagonal t = a_;
  for (int i = 0; i < n; ++i) t.diag[i] -= cv.wd[i] / w[i];
  const TridiagonalLU lu(std::move(t));
  Vec y = lu.solve(rhs);
  if (!coupled_) return y;

  // J = T + U V^T with U = [e/w, wa/w], V = [(1/beta - b/beta^2) e - wa/beta, -e/beta]
  Vec u1(n, 0.0), u2(n);
  for (int k = 0; k < 3; ++k) u1[k] = e_over_w_[k];
  for (int i = 0; i < n; ++i) u2[i] = cv.wa[i] / w[i];
  const Vec z1 = lu.solve(u1), z2 = lu.solve(u2);
  const double k1 = 1.0 / beta_ - cv.b / (beta_ * beta_);
  auto vt = [&](int col, const Vec& x) {
    const double ex = extrapolate_origin(x);
    if (col == 1) return -ex / beta_;
    double wax = 0.0;
    for (int i = 0; i < n; ++i) wax += cv.wa[i] * x[i];
    return k1 * ex - wax / beta_;
  };
  const double s00 = 1.0 + vt(0, z1), s01 = vt(0, z2);
  const double s10 = vt(1, z1), s11 = 1.0 + vt(1, z2);
  const double r0 = vt(0, y), r1 = vt(1, y);
  const double det = s00 * s11 - s01 * s10;
  if (det == 0.0 || !std::isfinite(det)) throw ConvergenceError("singular capacitance matrix");
  const double a0 = (s11 * r0 - s01 * r1) / det;
  const double a1 = (s00 * r1 - s10 * r0) / det;
  for (int i = 0; i < n; ++i) y[i] -= z1[i] * a0 + z2[i] * a1;
  return y;
}

NonlinearModel::Functionals NonlinearModel::functionals(std::span<const double> f, double c) const {
  Functionals fv;
  fv.gradient_sq = gradient_norm_sq(*grid_, f);
  fv.l2_sq = inner(*grid_, f, f);
  fv.h_norm_sq = fv.gradient_sq + fv.l2_sq + (coupled_ ? beta_ * c * c : 0.0);
  for_each_point(f, c, [&](int i, double wt, double ph, double g) {
    fv.lp_pow += wt * std::pow(std::fabs(ph), p_ + 1.0);
    fv.f_dot_green += wt * f[i] * g;
  });
  fv.action = 0.5 * fv.h_norm_sq - fv.lp_pow / (p_ + 1.0);
  fv.nehari = fv.h_norm_sq - fv.lp_pow;
  fv.mass_rescaled = fv.l2_sq + 2.0 * c * fv.f_dot_green + c * c / (4.0 * pi);
  return fv;
}

Profile make_profile(GridPtr grid, Vec f, double alpha, double p, double omega) {
  Profile prof;
  prof.grid = std::move(grid);
  prof.f = std::move(f);
  prof.alpha = alpha;
  prof.p = p;
  prof.omega = omega;
  prof.beta = make_params(alpha).beta(omega);
  prof.f0 = extrapolate_origin(prof.f);
  prof.c = prof.f0 / prof.beta;
  return prof;
}

void check_admissible(double alpha, double p, double omega) {
  check_p(p);
  const OperatorParams params = make_params(alpha);
  if (!std::isfinite(omega) || omega <= -params.e_alpha)
    throw BetaGuardError("omega = " + fmt(omega) + " is not above -e_alpha = " + fmt(-params.e_alpha) +
                         "; admissible omega >= " + fmt(params.omega_for_beta(beta_guard)) + " for alpha = " +
                         fmt(alpha));
  // inclusive up to rounding, so omega_for_beta(beta_guard) itself is admissible
  if (params.beta(omega) < beta_guard * (1.0 - 1e-12))
    throw BetaGuardError("beta(omega) = " + fmt(params.beta(omega)) + " is below the guard " + fmt(beta_guard) +
                         "; admissible omega >= " + fmt(params.omega_for_beta(beta_guard)) + " for alpha = " +
                         fmt(alpha));
}

ClassicProfile solve_classic(double p, GridPtr grid, const SolverOptions& opts) {
  check_p(p);
  const RadialGrid& gr = *grid;
  double lo = 1.001, hi = 100.0;
  if (shoot(p, lo, gr, nullptr) > 0 || shoot(p, hi, gr, nullptr) <= 0)
    throw ConvergenceError("shooting failed to bracket u(0) in [1.001, 100] for p = " + fmt(p));
  while (hi - lo > 1e-12 * lo) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(p, mid, gr, nullptr) > 0)
      hi = mid;
    else
      lo = mid;
  }
  Vec u;
  shoot(p, lo, gr, &u);
  // continue with the K0 tail past the point where the shot turned
  const size_t k = u.size() - 1;
  const double uk = u[k], gk = bessel_k0(gr.r(int(k)));
  u.resize(gr.n());
  for (int i = int(k) + 1; i < gr.n(); ++i) u[i] = uk * bessel_k0(gr.r(i)) / gk;

  const NonlinearModel model(grid, p, std::numeric_limits<double>::infinity(), opts.near_origin_cells,
                             opts.near_origin_order);
  NewtonOutcome nw = newton(model, std::move(u), opts);
  if (!nw.converged) throw ConvergenceError("classical Newton polish did not converge for p = " + fmt(p));
  for (double v : nw.f)
    if (!(v > 0.0)) throw PositivityError("classical profile is not positive for p = " + fmt(p));

  ClassicProfile out;
  out.grid = grid;
  out.p = p;
  out.u = std::move(nw.f);
  out.u0 = 0.5 * (lo + hi);
  out.newton_iters = nw.iters;
  const auto fv = model.functionals(out.u, 0.0);
  out.gradient_sq = fv.gradient_sq;
  out.mass = fv.l2_sq;
  out.lp_norm_pow = fv.lp_pow;
  out.action_infty = fv.action;
  if (opts.extrapolate) {
    SolverOptions fine_opts = opts;
    fine_opts.extrapolate = false;
    const ClassicProfile fine = solve_classic(p, make_grid(2 * gr.n(), gr.r_max()), fine_opts);
    auto rich = [](double coarse, double fine_v) { return (4.0 * fine_v - coarse) / 3.0; };
    out.gradient_sq = rich(out.gradient_sq, fine.gradient_sq);
    out.mass = rich(out.mass, fine.mass);
    out.lp_norm_pow = rich(out.lp_norm_pow, fine.lp_norm_pow);
    out.action_infty = rich(out.action_infty, fine.action_infty);
  }
  const double h1 = out.gradient_sq + out.mass;
  out.nehari_residual = std::fabs(h1 - out.lp_norm_pow) / h1;
  out.pohozaev_residual = std::fabs(out.mass - 2.0 / (p + 1.0) * out.lp_norm_pow) / out.mass;
  return out;
}

std::pair<double, double> functional_values(const Profile& prof, const SolverOptions& opts) {
  const NonlinearModel model(prof.grid, prof.p, prof.beta, opts.near_origin_cells, opts.near_origin_order);
  const auto fv = model.functionals(prof.f, prof.c);
  return {fv.action, fv.nehari};
}

Profile nehari_rescale(const Profile& prof, const SolverOptions& opts) {
  const NonlinearModel model(prof.grid, prof.p, prof.beta, opts.near_origin_cells, opts.near_origin_order);
  const auto fv = model.functionals(prof.f, prof.c);
  if (!(fv.lp_pow > 0.0)) throw DomainError("nehari_rescale: profile has zero L^{p+1} norm");
  const double lam = std::pow(fv.h_norm_sq / fv.lp_pow, 1.0 / (prof.p - 1.0));
  Profile out = prof;
  for (double& v : out.f) v *= lam;
  out.f0 *= lam;
  out.c *= lam;
  return out;
}

GroundState evaluate_state(const Profile& prof, int iters, double residual, const SolverOptions& opts) {
  const NonlinearModel model(prof.grid, prof.p, prof.beta, opts.near_origin_cells, opts.near_origin_order);
  const auto fv = model.functionals(prof.f, prof.c);
  const double p = prof.p;
  GroundState gs;
  gs.profile = prof;
  gs.action = fv.action;
  gs.nehari_residual = std::fabs(fv.nehari) / fv.h_norm_sq;
  gs.mass_rescaled = fv.mass_rescaled;
  gs.lp_norm_pow = fv.lp_pow;
  gs.h_norm_sq = fv.h_norm_sq;
  const double sing = std::isfinite(prof.beta) ? prof.f0 * prof.f0 / (4.0 * pi * prof.beta * prof.beta) : 0.0;
  gs.pohozaev_residual = std::fabs(fv.mass_rescaled - sing - 2.0 / (p + 1.0) * fv.lp_pow) / fv.mass_rescaled;
  gs.mass_physical = std::pow(prof.omega, (3.0 - p) / (p - 1.0)) * fv.mass_rescaled;
  gs.energy = std::pow(prof.omega, 2.0 / (p - 1.0)) * (fv.action - 0.5 * fv.mass_rescaled);
  gs.newton_iters = iters;
  gs.newton_residual = residual;
  gs.converged = true;
  return gs;
}

GroundState solve_ground(double alpha, double p, double omega, GridPtr grid, const Profile* seed,
                         const SolverOptions& opts) {
  check_admissible(alpha, p, omega);
  const double beta = make_params(alpha).beta(omega);

  Vec start;
  double seed_s = 0.0;  // 1/beta of the seed; the classical seed sits at 0
  if (seed) {
    if (!seed->grid || seed->grid->n() != grid->n() || seed->grid->r_max() != grid->r_max())
      throw ParameterError("seed profile lives on a different grid");
    start = seed->f;
    if (std::isfinite(seed->beta) && seed->beta > 0.0) seed_s = 1.0 / seed->beta;
  } else {
    SolverOptions copts = opts;
    copts.extrapolate = false;
    start = solve_classic(p, grid, copts).u;
  }

  auto attempt = [&](const Vec& from, double b) {
    Profile pr = make_profile(grid, from, alpha, p, make_params(alpha).omega_for_beta(b));
    pr.beta = b;
    pr.c = pr.f0 / b;
    pr = nehari_rescale(pr, opts);
    const NonlinearModel model(grid, p, b, opts.near_origin_cells, opts.near_origin_order);
    return newton(model, std::move(pr.f), opts);
  };

  NewtonOutcome nw = attempt(start, beta);
  if (!nw.converged && opts.homotopy) {
    const double s1 = 1.0 / beta;
    for (int steps = 2; steps <= 64 && !nw.converged; steps *= 2) {
      Vec cur = start;
      bool ok = true;
      for (int k = 1; k <= steps; ++k) {
        const double s = seed_s + (s1 - seed_s) * k / steps;
        NewtonOutcome step = attempt(cur, 1.0 / s);
        if (!step.converged) {
          ok = false;
          break;
        }
        cur = std::move(step.f);
        if (k == steps) nw = std::move(step);
      }
      if (!ok) nw.converged = false;
    }
  }
  if (!nw.converged)
    throw ConvergenceError("Newton did not converge for alpha = " + fmt(alpha) + ", p = " + fmt(p) +
                           ", omega = " + fmt(omega));

  Profile prof = make_profile(grid, std::move(nw.f), alpha, p, omega);
  const Vec phi = prof.phi();
  for (int i = 0; i < grid->n(); ++i)
    if (!(phi[i] > 0.0))
      throw PositivityError("converged field is not positive at r = " + fmt(grid->r(i)) + " (omega = " +
                            fmt(omega) + ")");
  return evaluate_state(prof, nw.iters, nw.residual, opts);
}

std::vector<SweepPoint> continue_sweep(double alpha, double p, std::span<const double> omegas, GridPtr grid,
                                       const SolverOptions& opts, bool descending) {
  if (omegas.empty()) throw ParameterError("continue_sweep: empty omega list");
  for (size_t i = 1; i < omegas.size(); ++i)
    if (!(omegas[i] > omegas[i - 1])) throw ParameterError("continue_sweep: omegas must be strictly ascending");
  const size_t n = omegas.size();
  std::vector<SweepPoint> out(n);
  std::optional<Profile> last;
  size_t failures = 0;
  for (size_t k = 0; k < n; ++k) {
    const size_t i = descending ? n - 1 - k : k;
    out[i].omega = omegas[i];
    try {
      GroundState gs = solve_ground(alpha, p, omegas[i], grid, last ? &*last : nullptr, opts);
      last = gs.profile;
      out[i].state = std::move(gs);
    } catch (const std::exception& e) {
      out[i].error = e.what();
      ++failures;
    }
  }
  if (failures == n) throw ConvergenceError("continue_sweep: every point failed; first error: " + out[0].error);
  return out;
}

}  // namespace pnls
