#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "modframe/bracket.hpp"

namespace modframe {

/// Box [-R, R]^n of lattice coordinates.
struct Window {
  long radius = 0;

  explicit Window(long r = 0) : radius(r) {
    require(r >= 0, ErrorCode::InvalidArgument, "window radius must be >= 0");
  }

  bool contains(const Exponent& g) const {
    return std::all_of(g.begin(), g.end(), [&](long x) { return std::labs(x) <= radius; });
  }

  std::vector<Exponent> points(std::size_t n) const {
    std::vector<Exponent> out;
    Exponent g(n, -radius);
    while (true) {
      out.push_back(g);
      std::size_t a = n;
      while (a > 0 && g[a - 1] == radius) g[--a] = -radius;
      if (a == 0) break;
      ++g[a - 1];
    }
    return out;
  }
};

struct AnalysisEntry {
  std::size_t generator;
  Exponent shift;
  Scalar value;  // <v, nu_{M g} F_i>
};

struct AnalysisTable {
  std::vector<AnalysisEntry> entries;
  bool complete = false;  // every nonzero coefficient lies inside the window
};

/// Coefficients <v, nu_g F_i> for all g in the window.
template <ShiftSpace V>
AnalysisTable analyze(const V& v, const GeneratorFamily<V>& f, const Window& w) {
  AnalysisTable t;
  t.complete = true;
  auto pts = w.points(f.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const auto& g : overlap_shifts(v, f[i], f.lattice()))
      if (!w.contains(g)) t.complete = false;
    for (const auto& g : pts) t.entries.push_back({i, g, inner_product(v, shift(f[i], f.lattice() * g))});
  }
  return t;
}

struct Residual {
  Scalar norm_squared;  // exact
  double norm() const { return std::sqrt(std::max(0.0, norm_squared.to_complex().real())); }
};

/// || v - sum_{g in W, i} <v, nu_g zeta_i> nu_g ~zeta_i ||, exact.
template <ShiftSpace V>
Residual reconstruct_residual(const V& v, const DualPair<V>& p, const Window& w) {
  V r = v;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (const auto& g : overlap_shifts(v, p.primal[i], p.lattice())) {
      if (!w.contains(g)) continue;
      Exponent mg = p.lattice() * g;
      Scalar c = inner_product(v, shift(p.primal[i], mg));
      if (!c.is_zero()) r = r - c * shift(p.dual[i], mg);
    }
  return {inner_product(r, r)};
}

/// Smallest window containing every overlap of v with the family translates.
template <ShiftSpace V>
Window complete_window(const V& v, const GeneratorFamily<V>& f) {
  long r = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& g : overlap_shifts(v, f[i], f.lattice()))
      for (long x : g) r = std::max(r, std::labs(x));
  return Window(r);
}

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// G(omega_k) for every grid point of a square Laurent matrix.
inline std::vector<ComplexMatrix> evaluate_matrix_on_grid(const LaurentMatrix& g, const TorusGrid& grid) {
  std::vector<ComplexMatrix> out(grid.size(), ComplexMatrix(g.rows(), g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      auto vals = evaluate_on_grid(g(i, j), grid);
      for (std::size_t p = 0; p < vals.size(); ++p) out[p](i, j) = vals[p];
    }
  return out;
}

/// Ascending eigenvalues of the Hermitian Gramian symbol at every grid point.
template <ShiftSpace V>
std::vector<std::vector<double>> gramian_symbol_eigenvalues(const GeneratorFamily<V>& f, const TorusGrid& grid) {
  std::vector<std::vector<double>> out;
  for (const auto& m : evaluate_matrix_on_grid(gramian(f), grid)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.emplace_back(ev.data(), ev.data() + ev.size());
  }
  return out;
}

struct SpectralBounds {
  double lower = 0;
  double upper = 0;
  bool singular = false;
};

template <ShiftSpace V>
SpectralBounds spectral_frame_bounds(const GeneratorFamily<V>& f, const TorusGrid& grid) {
  SpectralBounds b{std::numeric_limits<double>::infinity(), 0.0, false};
  for (const auto& ev : gramian_symbol_eigenvalues(f, grid)) {
    b.lower = std::min(b.lower, ev.front());
    b.upper = std::max(b.upper, ev.back());
  }
  b.singular = b.lower < 1e-12;
  return b;
}

namespace detail {

/// c_g = N^-n sum_k h(omega_k) e^{-i g.omega_k} for g in [-N/2, N/2)^n, one axis at a time.
inline std::vector<Complex> inverse_dft(std::vector<Complex> vals, const TorusGrid& grid) {
  const std::size_t n = grid.dim(), N = grid.points_per_axis();
  const long lo = -static_cast<long>(N / 2);
  TorusGrid axis(1, N);
  std::vector<Complex> tw(N);
  for (std::size_t k = 0; k < N; ++k) tw[k] = axis.character({1}, {k});
  // axis a: replace the frequency index with the coefficient index (offset lo)
  std::size_t stride = 1;
  for (std::size_t a = n; a-- > 0;) {
    std::vector<Complex> next(vals.size());
    std::size_t block = stride * N;
    for (std::size_t base = 0; base < vals.size(); base += block)
      for (std::size_t s = 0; s < stride; ++s)
        for (std::size_t c = 0; c < N; ++c) {
          long g = lo + static_cast<long>(c);
          Complex acc = 0;
          for (std::size_t k = 0; k < N; ++k) {
            long ph = (-g * static_cast<long>(k)) % static_cast<long>(N);
            if (ph < 0) ph += static_cast<long>(N);
            acc += vals[base + k * stride + s] * tw[static_cast<std::size_t>(ph)];
          }
          next[base + c * stride + s] = acc / static_cast<double>(N);
        }
    vals.swap(next);
    stride *= N;
  }
  return vals;
}

/// Coefficient array from inverse_dft as a Laurent polynomial, dropping parts below tol_abs.
inline LaurentPoly truncate_coefficients(const std::vector<Complex>& vals, const TorusGrid& grid, double tol_abs) {
  const std::size_t n = grid.dim();
  const long lo = -static_cast<long>(grid.points_per_axis() / 2);
  LaurentPoly out(n);
  for (std::size_t p = 0; p < vals.size(); ++p) {
    double re = std::abs(vals[p].real()) < tol_abs ? 0.0 : vals[p].real();
    double im = std::abs(vals[p].imag()) < tol_abs ? 0.0 : vals[p].imag();
    if (re == 0.0 && im == 0.0) continue;
    auto k = grid.index(p);
    Exponent g(n);
    for (std::size_t a = 0; a < n; ++a) g[a] = lo + static_cast<long>(k[a]);
    out.add_term(g, Scalar(Rational(re), Rational(im)));
  }
  return out;
}

}  // namespace detail

template <ShiftSpace V>
struct CanonicalDual {
  GeneratorFamily<V> dual;
  LaurentMatrix symbol;  // truncated coefficients of G^-1
  double residual = 0;   // max over generators of the exact reconstruction residual norm
};

/// Canonical dual ~zeta_j = sum_l (G^-1)_{jl} . zeta_l from the inverted Gramian
/// symbol, truncated below tol relative to the largest coefficient.
template <ShiftSpace V>
CanonicalDual<V> canonical_dual_numeric(const GeneratorFamily<V>& f, const TorusGrid& grid, double tol) {
  require(grid.dim() == f.dim(), ErrorCode::DimensionMismatch, "grid and family dimensions differ");
  LaurentMatrix g = gramian(f);
  auto vals = evaluate_matrix_on_grid(g, grid);
  const std::size_t d = f.size();
  std::vector<std::vector<Complex>> inv(d * d, std::vector<Complex>(grid.size()));
  double floor = std::max(tol, 1e-12);
  for (std::size_t p = 0; p < vals.size(); ++p) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(vals[p]);
    if (es.eigenvalues().minCoeff() <= floor)
      fail(ErrorCode::GramianSingular, "Gramian symbol is not invertible at grid point " + std::to_string(p));
    ComplexMatrix h = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) inv[i * d + j][p] = h(i, j);
  }
  double peak = 0;
  for (auto& e : inv) {
    e = detail::inverse_dft(std::move(e), grid);
    for (const auto& x : e) peak = std::max(peak, std::abs(x));
  }
  LaurentMatrix n(d, d, f.dim());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) n(i, j) = detail::truncate_coefficients(inv[i * d + j], grid, tol * peak);

  std::vector<V> out;
  for (std::size_t j = 0; j < d; ++j) {
    V acc = zero_like(f[0]);
    for (std::size_t l = 0; l < d; ++l) acc = acc + act(n(j, l), f[l], f.lattice());
    out.push_back(std::move(acc));
  }
  CanonicalDual<V> r{GeneratorFamily<V>(std::move(out), f.lattice()), n, 0.0};
  DualPair<V> pair(f, r.dual);
  for (std::size_t k = 0; k < d; ++k)
    r.residual = std::max(r.residual, reconstruct_residual(f[k], pair, complete_window(f[k], f)).norm());
  return r;
}

}  // namespace modframe
