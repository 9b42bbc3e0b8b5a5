#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <vector>

#include "modframe/bracket.hpp"
#include "modframe/smith.hpp"

namespace modframe {

/// Expansive integer matrix A (|det A| >= 2, every eigenvalue outside the unit disk).
class Dilation {
 public:
  explicit Dilation(IntMatrix a) : a_(std::move(a)) {
    long det = a_.determinant();
    q_ = det < 0 ? -det : det;
    if (q_ < 2) fail(ErrorCode::BadDilation, "dilation needs |det A| >= 2, got " + std::to_string(det));
    const auto n = static_cast<Eigen::Index>(a_.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        m(i, j) = static_cast<double>(a_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(es.eigenvalues()(i)) <= 1.0 + 1e-9)
        fail(ErrorCode::BadDilation, "dilation is not expansive: " + a_.to_string());
  }

  static Dilation scalar(long a) { return Dilation(IntMatrix{{a}}); }

  const IntMatrix& matrix() const { return a_; }
  long q() const { return q_; }
  std::size_t dim() const { return a_.size(); }
  friend bool operator==(const Dilation& a, const Dilation& b) { return a.a_ == b.a_; }

 private:
  IntMatrix a_;
  long q_ = 0;
};

/// Coset representatives of Z^n / A Z^n: the integer points of A [0,1)^n, lexicographic.
inline std::vector<Exponent> digits(const Dilation& d) {
  const IntMatrix& a = d.matrix();
  const std::size_t n = a.size();
  const long det = a.determinant();
  const IntMatrix adj = a.adjugate();
  Exponent lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) (a(i, j) < 0 ? lo[i] : hi[i]) += a(i, j);
  std::vector<Exponent> out;
  Exponent k = lo;
  while (true) {
    // A^-1 k = adj k / det must lie in [0,1)^n
    Exponent y = adj * k;
    bool inside = std::all_of(y.begin(), y.end(), [&](long c) { return det > 0 ? (c >= 0 && c < det) : (c <= 0 && c > det); });
    if (inside) out.push_back(k);
    std::size_t i = n;
    while (i > 0 && k[i - 1] == hi[i - 1]) {
      k[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++k[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Refinement mask m of phi = sum_k m_k U nu_k phi.
struct Mask {
  FinSeq coeffs;
  Dilation dilation;

  Mask(FinSeq c, Dilation d) : coeffs(std::move(c)), dilation(std::move(d)) {
    require(coeffs.dim() == dilation.dim(), ErrorCode::DimensionMismatch, "mask and dilation dimensions differ");
  }
  std::size_t dim() const { return coeffs.dim(); }
  friend bool operator==(const Mask& a, const Mask& b) = default;
};

namespace detail {

/// Some exact solution x of a x = b over the scalar field (free variables set to 0).
inline std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Scalar inv = Scalar(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Scalar> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

/// Coefficients of v in the span of basis, exactly, or nullopt.
inline std::optional<std::vector<Scalar>> solve_membership(const PiecewisePoly& v, const std::vector<PiecewisePoly>& basis) {
  std::vector<Rational> br = v.breaks();
  for (const auto& b : basis) br.insert(br.end(), b.breaks().begin(), b.breaks().end());
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::size_t degree = 0;
  auto deg = [&](const PiecewisePoly& f) {
    for (const auto& p : f.pieces()) degree = std::max(degree, p.size());
  };
  deg(v);
  for (const auto& b : basis) deg(b);

  std::vector<std::vector<Scalar>> a;
  std::vector<Scalar> rhs;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    std::vector<Poly> cols;
    for (const auto& b : basis) cols.push_back(b.piece_at(br[i]));
    Poly target = v.piece_at(br[i]);
    for (std::size_t p = 0; p < degree; ++p) {
      std::vector<Scalar> row(basis.size());
      bool any = false;
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (p < cols[k].size()) {
          row[k] = cols[k][p];
          any = any || !row[k].is_zero();
        }
      Scalar t = p < target.size() ? target[p] : Scalar();
      if (!any && t.is_zero()) continue;
      a.push_back(std::move(row));
      rhs.push_back(t);
    }
  }
  if (basis.empty()) return v.is_zero() ? std::optional<std::vector<Scalar>>(std::vector<Scalar>{}) : std::nullopt;
  if (a.empty()) return std::vector<Scalar>(basis.size());
  return solve_linear(std::move(a), std::move(rhs));
}

inline long scalar_factor(const Dilation& d) {
  require(d.dim() == 1, ErrorCode::WrongDimension, "function-domain dilation needs n = 1");
  return d.matrix()(0, 0);
}

}  // namespace detail

/// Coefficients w with v = sum_l sum_k w^l_k U nu_k phi_l, one FinSeq per phi_l.
inline std::vector<FinSeq> expand_in_dilated(const PiecewisePoly& v, const std::vector<PiecewisePoly>& phis, long a) {
  std::vector<PiecewisePoly> basis;
  std::vector<std::pair<std::size_t, long>> label;
  // U nu_k phi_l lives on [(lo + k)/a, (hi + k)/a): keep the k that meet supp v
  if (!v.is_zero())
    for (std::size_t l = 0; l < phis.size(); ++l) {
      if (phis[l].is_zero()) continue;
      Rational lo = v.support_lo() * a - phis[l].support_hi(), hi = v.support_hi() * a - phis[l].support_lo();
      mpz_class k;
      mpz_fdiv_q(k.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
      for (; Rational(k) < hi; ++k)
        if (Rational(k) > lo) {
          basis.push_back(dilate_U(shift(phis[l], k.get_si()), a));
          label.emplace_back(l, k.get_si());
        }
    }
  auto sol = detail::solve_membership(v, basis);
  require(sol.has_value(), ErrorCode::NotRefinable, "vector is not in the span of the dilated translates");
  std::vector<FinSeq> out(phis.size(), FinSeq(1));
  for (std::size_t i = 0; i < basis.size(); ++i) out[label[i].first].add({label[i].second}, (*sol)[i]);
  return out;
}

/// Exact mask m with phi = sum_k m_k U nu_k phi.
inline Mask refinement_solve(const PiecewisePoly& phi, long a) {
  require(!phi.is_zero(), ErrorCode::ZeroVector, "refinement of the zero function");
  return Mask(expand_in_dilated(phi, {phi}, a).front(), Dilation::scalar(a));
}

/// a_i = <U nu_i phi, ~phi>_A = sum_g conj(~m_{i - A g}) z^g, valid for a bi-orthogonal scaling pair.
inline LaurentPoly mask_bracket(const Exponent& i, const Mask& mt) {
  require(i.size() == mt.dim(), ErrorCode::DimensionMismatch, "digit and mask dimensions differ");
  LatticeSolver solver(mt.dilation.matrix());
  LaurentPoly out(mt.dim());
  for (const auto& [k, c] : mt.coeffs.entries())
    if (auto g = solver.solve(i - k)) out.add_term(*g, c.conj());
  return out;
}

/// Cross-Gramian of mask families on the coarse lattice: entry (i,j)(g) = sum_l f_i[A g + l] conj(h_j[l]).
/// Perfect reconstruction of (m, w ; ~m, ~w) is exactly cross = I.
inline LaurentMatrix mask_cross_gramian(const std::vector<FinSeq>& f, const std::vector<FinSeq>& h, const Dilation& d) {
  return gramian(GeneratorFamily<FinSeq>(f, d.matrix()), GeneratorFamily<FinSeq>(h, d.matrix()));
}

inline bool masks_biorthogonal(const Mask& m, const Mask& mt) {
  require(m.dilation == mt.dilation, ErrorCode::DimensionMismatch, "masks use different dilations");
  return bracket(m.coeffs, mt.coeffs, m.dilation.matrix()) == LaurentPoly::one(m.dim());
}

struct WaveletMasks {
  Mask w;
  Mask wt;
  LaurentMatrix cross;  // mask cross-Gramian of (m, w) against (~m, ~w)
  bool perfect_reconstruction = false;
};

namespace detail {

/// a . (U phi) - b . (U nu_g1 phi) in mask coordinates.
inline FinSeq q2_combination(const LaurentPoly& a, const LaurentPoly& b, const Exponent& g1, const IntMatrix& A) {
  FinSeq out(g1.size());
  for (const auto& [g, c] : a.terms()) out.add(A * g, c);
  for (const auto& [g, c] : b.terms()) out.add(A * g + g1, -c);
  return out;
}

inline void check_q2(const Dilation& d, const Exponent& g1) {
  require(d.q() == 2, ErrorCode::BadDeterminant, "the explicit wavelet formula needs |det A| = 2");
  require(g1.size() == d.dim(), ErrorCode::DimensionMismatch, "g1 dimension differs from the dilation");
  if (d.matrix().contains_in_lattice(g1)) fail(ErrorCode::BadCoset, "g1 = " + to_string(g1) + " lies in A Z^n");
}

}  // namespace detail

/// Wavelet masks psi = <U nu_g1 phi, ~phi>_A U phi - <U phi, ~phi>_A U nu_g1 phi and the tilde twin.
inline WaveletMasks wavelet_q2_masks(const Mask& m, const Mask& mt, const Exponent& g1) {
  detail::check_q2(m.dilation, g1);
  require(m.dilation == mt.dilation, ErrorCode::DimensionMismatch, "masks use different dilations");
  require(masks_biorthogonal(m, mt), ErrorCode::NotBiorthogonal, "scaling masks are not bi-orthogonal");
  const IntMatrix& a = m.dilation.matrix();
  Exponent zero(m.dim(), 0);
  FinSeq w = detail::q2_combination(mask_bracket(g1, mt), mask_bracket(zero, mt), g1, a);
  FinSeq wt = detail::q2_combination(mask_bracket(g1, m), mask_bracket(zero, m), g1, a);
  WaveletMasks r{Mask(w, m.dilation), Mask(wt, m.dilation),
                 mask_cross_gramian({m.coeffs, w}, {mt.coeffs, wt}, m.dilation)};
  r.perfect_reconstruction = r.cross.is_identity();
  return r;
}

struct WaveletFunctions {
  PiecewisePoly psi;
  PiecewisePoly psit;
  LaurentPoly phi_psit;  // <phi, ~psi>_A
  LaurentPoly phit_psi;  // <~phi, psi>_A
  LaurentPoly psi_psit;  // <psi, ~psi>_A
  bool verified = false;
};

/// Function-domain version of the q = 2 formula for A = 2 on R.
inline WaveletFunctions wavelet_q2_function(const PiecewisePoly& phi, const PiecewisePoly& phit, const Exponent& g1,
                                            long a = 2) {
  Dilation d = Dilation::scalar(a);
  detail::check_q2(d, g1);
  require(!phi.is_zero() && !phit.is_zero(), ErrorCode::NotBiorthogonal, "zero scaling function");
  if (bracket(phi, phit) != LaurentPoly::one(1))
    fail(ErrorCode::NotBiorthogonal, "scaling functions are not bi-orthogonal: <phi, ~phi>_A = " + bracket(phi, phit).to_string());
  auto u = [&](const PiecewisePoly& f, long k) { return dilate_U(shift(f, k), a); };
  const long g = g1[0];
  PiecewisePoly uphi = u(phi, 0), uphig = u(phi, g), uphit = u(phit, 0), uphitg = u(phit, g);
  WaveletFunctions r;
  r.psi = act(bracket(uphig, phit), uphi) - act(bracket(uphi, phit), uphig);
  r.psit = act(bracket(uphitg, phi), uphit) - act(bracket(uphit, phi), uphitg);
  r.phi_psit = bracket(phi, r.psit);
  r.phit_psi = bracket(phit, r.psi);
  r.psi_psit = bracket(r.psi, r.psit);
  r.verified = r.phi_psit.is_zero() && r.phit_psi.is_zero() && r.psi_psit == LaurentPoly::one(1);
  return r;
}

/// Bi-orthogonal pair generating the same module as a pair of dual module frames (n = 1).
/// K = <F, ~F> is idempotent; its Smith form U K V = diag(I_r, 0) factors K = X Y with
/// Y X = I_r, and eta = Y zeta, ~eta = V[:, :r]* ~zeta.
template <ShiftSpace V>
DualPair<V> biorthogonal_completion_1d(const DualPair<V>& p) {
  require(p.primal.dim() == 1, ErrorCode::WrongDimension,
          "constructive completion is only available for one variable; verify a supplied basis instead");
  require(verify_dual_module_frames(p).holds, ErrorCode::NotDualFrames, "completion needs dual module frames");
  LaurentMatrix k = gramian(p.primal, p.dual);
  SmithForm s = smith_normal_form_1d(k);
  const std::size_t d = p.size();
  std::size_t r = 0;
  while (r < d && !s.diagonal(r, r).is_zero()) {
    require(s.diagonal(r, r) == LaurentPoly::one(1), ErrorCode::NotDualFrames, "cross-Gramian is not idempotent");
    ++r;
  }
  require(r > 0, ErrorCode::NotDualFrames, "the module is zero");
  LaurentMatrix y = unimodular_inverse(s.right).block(0, 0, r, d);
  LaurentMatrix c = s.right.block(0, 0, d, r).star();
  auto apply = [&](const LaurentMatrix& m, const GeneratorFamily<V>& f) {
    std::vector<V> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      V acc = zero_like(f[0]);
      for (std::size_t j = 0; j < d; ++j) acc = acc + act(m(i, j), f[j], f.lattice());
      out.push_back(std::move(acc));
    }
    return GeneratorFamily<V>(std::move(out), f.lattice());
  };
  DualPair<V> out(apply(y, p.primal), apply(c, p.dual));
  require(verify_dual_module_bases(out).holds(), ErrorCode::NotDualFrames, "completed pair failed verification");
  for (std::size_t i = 0; i < d; ++i) {
    require(reconstruct(p.primal[i], out.dual, out.primal) == p.primal[i], ErrorCode::NotDualFrames,
            "completed pair does not reproduce the primal generators");
    require(reconstruct(p.dual[i], out.primal, out.dual) == p.dual[i], ErrorCode::NotDualFrames,
            "completed pair does not reproduce the dual generators");
  }
  return out;
}

/// Scaling refinability: every phi_j and ~phi_j lies in the dilated module.
inline bool is_refinable(const DualPair<PiecewisePoly>& scaling, long a) {
  for (const auto* fam : {&scaling.primal, &scaling.dual})
    for (const auto& f : fam->generators()) {
      try {
        expand_in_dilated(f, fam->generators(), a);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotRefinable) return false;
        throw;
      }
    }
  return true;
}

/// Bi-orthogonal generators of the wavelet module (1 - P) U E for a refinable scaling pair on R.
inline DualPair<PiecewisePoly> wavelet_space_presentation(const DualPair<PiecewisePoly>& scaling, const Dilation& d) {
  const long a = detail::scalar_factor(d);
  require(a >= 2, ErrorCode::BadDilation, "function-domain dilation must be a positive integer >= 2");
  require(verify_dual_module_bases(scaling).holds(), ErrorCode::NotBiorthogonal, "scaling pair is not bi-orthogonal");
  if (!is_refinable(scaling, a)) fail(ErrorCode::NotRefinable, "scaling functions are not refinable for a = " + std::to_string(a));
  DualPair<PiecewisePoly> swapped(scaling.dual, scaling.primal);
  std::vector<PiecewisePoly> gens, duals;
  for (const auto& g : digits(d))
    for (std::size_t j = 0; j < scaling.size(); ++j) {
      PiecewisePoly u = dilate_U(shift(scaling.primal[j], g), a);
      PiecewisePoly ut = dilate_U(shift(scaling.dual[j], g), a);
      gens.push_back(u - module_project(u, scaling));
      duals.push_back(ut - module_project(ut, swapped));
    }
  return biorthogonal_completion_1d(DualPair<PiecewisePoly>(GeneratorFamily<PiecewisePoly>(gens),
                                                            GeneratorFamily<PiecewisePoly>(duals)));
}

/// Sufficient condition used for density of the scaling spaces: integral of phi is nonzero.
inline bool density_heuristic(const PiecewisePoly& phi) { return !integral(phi).is_zero(); }

}  // namespace modframe
