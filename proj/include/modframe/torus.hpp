#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "modframe/laurent.hpp"

namespace modframe {

using Complex = std::complex<double>;

/// Uniform grid omega_k = 2 pi k / N on each axis of the n-torus.
class TorusGrid {
 public:
  TorusGrid(std::size_t dim, std::size_t points_per_axis) : dim_(dim), n_(points_per_axis) {
    require(dim >= 1, ErrorCode::InvalidArgument, "grid dimension must be >= 1");
    require(points_per_axis >= 2, ErrorCode::InvalidArgument, "grid needs N >= 2");
    table_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
      table_[k] = {std::cos(w), std::sin(w)};
    }
    // exact values at the quarter points keep symmetric symbols exact at 0, pi/2, pi
    table_[0] = {1.0, 0.0};
    if (n_ % 2 == 0) table_[n_ / 2] = {-1.0, 0.0};
    if (n_ % 4 == 0) {
      table_[n_ / 4] = {0.0, 1.0};
      table_[3 * n_ / 4] = {0.0, -1.0};
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t points_per_axis() const { return n_; }
  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < dim_; ++i) s *= n_;
    return s;
  }

  /// Multi-index of the flat point index (axis 0 slowest).
  std::vector<std::size_t> index(std::size_t flat) const {
    std::vector<std::size_t> k(dim_);
    for (std::size_t a = dim_; a-- > 0;) {
      k[a] = flat % n_;
      flat /= n_;
    }
    return k;
  }

  std::vector<double> angles(std::size_t flat) const {
    auto k = index(flat);
    std::vector<double> w(dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      w[a] = 2.0 * std::numbers::pi * static_cast<double>(k[a]) / static_cast<double>(n_);
    return w;
  }

  /// e^{i g.omega_k}, reduced mod N exactly in integers.
  Complex character(const Exponent& g, const std::vector<std::size_t>& k) const {
    long n = static_cast<long>(n_);
    long phase = 0;
    for (std::size_t a = 0; a < dim_; ++a) phase = (phase + (g[a] % n) * static_cast<long>(k[a])) % n;
    if (phase < 0) phase += n;
    return table_[static_cast<std::size_t>(phase)];
  }

 private:
  std::size_t dim_, n_;
  std::vector<Complex> table_;
};

/// Values sum_g c_g e^{i g.omega} at every grid point, flat order.
inline std::vector<Complex> evaluate_on_grid(const LaurentPoly& a, const TorusGrid& grid) {
  require(a.dim() == grid.dim(), ErrorCode::DimensionMismatch, "grid and polynomial dimensions differ");
  std::vector<std::pair<Exponent, Complex>> terms;
  for (const auto& [g, c] : a.terms()) terms.emplace_back(g, c.to_complex());
  std::vector<Complex> out(grid.size());
  for (std::size_t p = 0; p < out.size(); ++p) {
    auto k = grid.index(p);
    Complex s = 0;
    for (const auto& [g, c] : terms) s += c * grid.character(g, k);
    out[p] = s;
  }
  return out;
}

/// Evaluate at a point of the torus given by n complex units.
inline Complex eval_torus(const LaurentPoly& a, const std::vector<Complex>& point, double precision = 1e-9) {
  require(point.size() == a.dim(), ErrorCode::DimensionMismatch, "point dimension differs");
  for (const auto& z : point)
    require(std::abs(std::abs(z) - 1.0) <= precision, ErrorCode::NotOnTorus, "point coordinate off the unit circle");
  Complex s = 0;
  for (const auto& [g, c] : a.terms()) {
    Complex m = 1;
    for (std::size_t j = 0; j < g.size(); ++j) m *= std::pow(point[j], static_cast<int>(g[j]));
    s += c.to_complex() * m;
  }
  return s;
}

inline Complex eval_angles(const LaurentPoly& a, const std::vector<double>& omega) {
  require(omega.size() == a.dim(), ErrorCode::DimensionMismatch, "angle dimension differs");
  Complex s = 0;
  for (const auto& [g, c] : a.terms()) {
    double phase = 0;
    for (std::size_t j = 0; j < g.size(); ++j) phase += static_cast<double>(g[j]) * omega[j];
    s += c.to_complex() * std::polar(1.0, phase);
  }
  return s;
}

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x, double slack = 0) const { return lo - slack <= x && x <= hi + slack; }
};

inline double l1_norm(const LaurentPoly& a) {
  double s = 0;
  for (const auto& [g, c] : a.terms()) s += c.abs();
  return s;
}

/// [max over grid, l1 norm] bracketing the sup norm on the torus.
inline Interval sup_norm_interval(const LaurentPoly& a, const TorusGrid& grid) {
  double hi = l1_norm(a);
  double lo = 0;
  for (const auto& v : evaluate_on_grid(a, grid)) lo = std::max(lo, std::abs(v));
  return {std::min(lo, hi), hi};
}

}  // namespace modframe
