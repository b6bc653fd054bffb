#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace pnls {

using Vec = std::vector<double>;
// Samples of a radial function at the nodes of a RadialGrid.
using RadialField = Vec;

// Offset mesh r_i = (i - 1/2) h, i = 1..n, on (0, r_max]. Indices below are 0-based.
class RadialGrid {
 public:
  RadialGrid(int n, double r_max);

  int n() const { return n_; }
  double r_max() const { return r_max_; }
  double h() const { return h_; }
  double r(int i) const { return r_[i]; }
  const Vec& nodes() const { return r_; }
  // w_i = 2 pi r_i h
  const Vec& weights() const { return w_; }

 private:
  int n_;
  double r_max_, h_;
  Vec r_, w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;
GridPtr make_grid(int n = 4096, double r_max = 40.0);

struct Tridiagonal {
  Vec lower, diag, upper;  // lower[i] couples row i+1 to i, upper[i] couples row i to i+1

  Vec apply(std::span<const double> x) const;
};

// LU factorization with partial pivoting (rows i, i+1 swapped when needed).
class TridiagonalLU {
 public:
  explicit TridiagonalLU(Tridiagonal t);
  Vec solve(std::span<const double> rhs) const;

 private:
  Vec dl_, d_, du_, du2_;
  std::vector<char> swapped_;
};

// Discrete -Delta + lambda with r_{1/2} = 0 and f_{n+1} = 0.
Tridiagonal helmholtz_matrix(const RadialGrid& grid, double lambda);
RadialField apply_helmholtz(const RadialGrid& grid, double lambda, std::span<const double> f);
RadialField solve_helmholtz(const RadialGrid& grid, double lambda, std::span<const double> rhs);

double integrate(const RadialGrid& grid, std::span<const double> f);
double inner(const RadialGrid& grid, std::span<const double> f, std::span<const double> g);
double lp_norm(const RadialGrid& grid, std::span<const double> f, double q);
// sum 2 pi r_{i+1/2} (f_{i+1} - f_i)^2 / h with f_{n+1} = 0.
double gradient_norm_sq(const RadialGrid& grid, std::span<const double> f);

inline constexpr std::array<double, 3> origin_weights = {150.0 / 128.0, -25.0 / 128.0, 3.0 / 128.0};
double extrapolate_origin(std::span<const double> f);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, Vec& x, Vec& w);

// Sub-cell quadrature for the first m cells [i h, (i+1) h]. Weights carry the 2 pi r factor
// and sum to w_i within each cell. Cell 0 uses r = h t^2 to absorb log singularities.
struct NearOriginRule {
  int cells = 0;
  int order = 0;
  Vec r;  // cells * order nodes, cell-major
  Vec w;
};
NearOriginRule near_origin_rule(const RadialGrid& grid, int cells = 8, int order = 24);

void write_field_csv(std::ostream& os, const RadialGrid& grid, std::span<const double> v);

}  // namespace pnls
