#include "pnls/radial.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pnls/errors.hpp"
#include "pnls/format.hpp"
#include "pnls/specfun.hpp"

namespace pnls {

RadialGrid::RadialGrid(int n, double r_max) : n_(n), r_max_(r_max) {
  if (n < 3) throw ParameterError("grid needs at least 3 nodes");
  if (!std::isfinite(r_max) || r_max <= 0.0) throw ParameterError("grid radius must be positive");
  h_ = r_max / n;
  r_.resize(n);
  w_.resize(n);
  for (int i = 0; i < n; ++i) {
    r_[i] = (i + 0.5) * h_;
    w_[i] = 2.0 * pi * r_[i] * h_;
  }
}

GridPtr make_grid(int n, double r_max) { return std::make_shared<const RadialGrid>(n, r_max); }

Vec Tridiagonal::apply(std::span<const double> x) const {
  const size_t n = diag.size();
  Vec y(n);
  for (size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i + 1 < n) s += upper[i] * x[i + 1];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    y[i] = s;
  }
  return y;
}

TridiagonalLU::TridiagonalLU(Tridiagonal t)
    : dl_(std::move(t.lower)), d_(std::move(t.diag)), du_(std::move(t.upper)) {
  const size_t n = d_.size();
  du2_.assign(n > 2 ? n - 2 : 0, 0.0);
  swapped_.assign(n > 1 ? n - 1 : 0, 0);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
      if (d_[i] == 0.0) throw ConvergenceError("singular tridiagonal matrix");
      const double fact = dl_[i] / d_[i];
      dl_[i] = fact;
      d_[i + 1] -= fact * du_[i];
    } else {
      swapped_[i] = 1;
      const double fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      const double temp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = temp - fact * du_[i];
      if (i + 2 < n) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du2_[i];
      }
    }
  }
  if (n > 0 && d_[n - 1] == 0.0) throw ConvergenceError("singular tridiagonal matrix");
}

Vec TridiagonalLU::solve(std::span<const double> rhs) const {
  const size_t n = d_.size();
  Vec b(rhs.begin(), rhs.end());
  for (size_t i = 0; i + 1 < n; ++i) {
    if (swapped_[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl_[i] * b[i];
  }
  for (size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du_[k] * b[k + 1];
    if (k + 2 < n) s -= du2_[k] * b[k + 2];
    b[k] = s / d_[k];
  }
  return b;
}

Tridiagonal helmholtz_matrix(const RadialGrid& grid, double lambda) {
  const int n = grid.n();
  const double h = grid.h();
  Tridiagonal t;
  t.diag.resize(n);
  t.upper.resize(n - 1);
  t.lower.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double ri = grid.r(i);
    const double rp = ri + 0.5 * h;
    const double rm = i == 0 ? 0.0 : ri - 0.5 * h;
    const double s = 1.0 / (ri * h * h);
    t.diag[i] = (rp + rm) * s + lambda;
    if (i + 1 < n) t.upper[i] = -rp * s;
    if (i > 0) t.lower[i - 1] = -rm * s;
  }
  return t;
}

RadialField apply_helmholtz(const RadialGrid& grid, double lambda, std::span<const double> f) {
  return helmholtz_matrix(grid, lambda).apply(f);
}

RadialField solve_helmholtz(const RadialGrid& grid, double lambda, std::span<const double> rhs) {
  if (!(lambda > 0.0)) throw ParameterError("solve_helmholtz needs lambda > 0");
  return TridiagonalLU(helmholtz_matrix(grid, lambda)).solve(rhs);
}

double integrate(const RadialGrid& grid, std::span<const double> f) {
  const Vec& w = grid.weights();
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i) s += w[i] * f[i];
  return s;
}

double inner(const RadialGrid& grid, std::span<const double> f, std::span<const double> g) {
  const Vec& w = grid.weights();
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

double lp_norm(const RadialGrid& grid, std::span<const double> f, double q) {
  if (!(q >= 1.0)) throw ParameterError("lp_norm needs q >= 1");
  const Vec& w = grid.weights();
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i) s += w[i] * std::pow(std::fabs(f[i]), q);
  return std::pow(s, 1.0 / q);
}

double gradient_norm_sq(const RadialGrid& grid, std::span<const double> f) {
  const int n = grid.n();
  const double h = grid.h();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < n ? f[i + 1] : 0.0;
    const double d = next - f[i];
    s += (i + 1) * h * d * d;  // r_{i+1/2} = (i+1) h
  }
  return 2.0 * pi * s / h;
}

double extrapolate_origin(std::span<const double> f) {
  if (f.size() < 3) throw ParameterError("extrapolate_origin needs 3 nodes");
  return origin_weights[0] * f[0] + origin_weights[1] * f[1] + origin_weights[2] * f[2];
}

void gauss_legendre(int order, Vec& x, Vec& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= order; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = order * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

NearOriginRule near_origin_rule(const RadialGrid& grid, int cells, int order) {
  if (cells < 0 || cells > grid.n()) throw ParameterError("near-origin cell count out of range");
  NearOriginRule rule;
  rule.cells = cells;
  rule.order = order;
  if (cells == 0) return rule;
  Vec gx, gw;
  gauss_legendre(order, gx, gw);
  const double h = grid.h();
  rule.r.resize(size_t(cells) * order);
  rule.w.resize(size_t(cells) * order);
  for (int i = 0; i < cells; ++i) {
    const double a = i * h;
    for (int k = 0; k < order; ++k) {
      const double t = 0.5 * (gx[k] + 1.0);
      const double wt = 0.5 * gw[k];
      double r, w;
      if (i == 0) {
        r = h * t * t;
        w = wt * 2.0 * h * t * r * 2.0 * pi;
      } else {
        r = a + h * t;
        w = wt * h * r * 2.0 * pi;
      }
      rule.r[size_t(i) * order + k] = r;
      rule.w[size_t(i) * order + k] = w;
    }
  }
  return rule;
}

void write_field_csv(std::ostream& os, const RadialGrid& grid, std::span<const double> v) {
  os << "r,value\n";
  for (int i = 0; i < grid.n(); ++i) os << format_number(grid.r(i)) << ',' << format_number(v[i]) << '\n';
}

}  // namespace pnls
