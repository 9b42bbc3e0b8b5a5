#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modframe/laurent_matrix.hpp"
#include "modframe/shift_space.hpp"
#include "modframe/torus.hpp"

namespace modframe {

/// Ordered generators of the module E = A zeta_1 + ... + A zeta_d, with the
/// lattice M Z^n through which the group acts (M = I for plain translates).
template <ShiftSpace V>
class GeneratorFamily {
 public:
  GeneratorFamily(std::vector<V> generators, IntMatrix lattice)
      : generators_(std::move(generators)), lattice_(std::move(lattice)) {
    require(!generators_.empty(), ErrorCode::InvalidArgument, "generator family must be nonempty");
    for (const auto& v : generators_)
      require(dimension(v) == lattice_.size(), ErrorCode::DimensionMismatch,
              "generator dimension differs from lattice dimension");
    require(lattice_.determinant() != 0, ErrorCode::InvalidArgument, "lattice matrix must be nonsingular");
  }

  explicit GeneratorFamily(std::vector<V> generators)
      : GeneratorFamily(generators, IntMatrix::identity(generators.empty() ? 1 : dimension(generators.front()))) {}

  const std::vector<V>& generators() const { return generators_; }
  const V& operator[](std::size_t i) const { return generators_[i]; }
  std::size_t size() const { return generators_.size(); }
  const IntMatrix& lattice() const { return lattice_; }
  std::size_t dim() const { return lattice_.size(); }

  friend bool operator==(const GeneratorFamily& a, const GeneratorFamily& b) = default;

 private:
  std::vector<V> generators_;
  IntMatrix lattice_;
};

template <ShiftSpace V>
struct DualPair {
  GeneratorFamily<V> primal;
  GeneratorFamily<V> dual;

  DualPair(GeneratorFamily<V> p, GeneratorFamily<V> d) : primal(std::move(p)), dual(std::move(d)) {
    require(primal.size() == dual.size(), ErrorCode::DimensionMismatch, "dual families differ in length");
    require(primal.lattice() == dual.lattice(), ErrorCode::DimensionMismatch, "dual families use different lattices");
  }

  const IntMatrix& lattice() const { return primal.lattice(); }
  std::size_t size() const { return primal.size(); }
  friend bool operator==(const DualPair& a, const DualPair& b) = default;
};

/// <v, w>_A = sum_g <v, nu_{M g} w> z^g
template <ShiftSpace V>
LaurentPoly bracket(const V& v, const V& w, const IntMatrix& lattice) {
  require(dimension(v) == dimension(w), ErrorCode::DimensionMismatch, "bracket of vectors of different dimension");
  LaurentPoly out(lattice.size());
  for (const auto& g : overlap_shifts(v, w, lattice)) out.add_term(g, inner_product(v, shift(w, lattice * g)));
  return out;
}

/// Sequences: one pass over support pairs, v_x conj(w_y) lands on g with M g = x - y.
inline LaurentPoly bracket(const FinSeq& v, const FinSeq& w, const IntMatrix& lattice) {
  require(v.dim() == w.dim() && lattice.size() == v.dim(), ErrorCode::DimensionMismatch,
          "bracket of vectors of different dimension");
  LatticeSolver solver(lattice);
  LaurentPoly out(lattice.size());
  for (const auto& [x, a] : v.entries())
    for (const auto& [y, b] : w.entries())
      if (auto g = solver.solve(x - y)) out.add_term(*g, a * b.conj());
  return out;
}

template <ShiftSpace V>
LaurentPoly bracket(const V& v, const V& w) {
  return bracket(v, w, IntMatrix::identity(dimension(v)));
}

/// Entry (i, j) = <F_i, G_j>_A.
template <ShiftSpace V>
LaurentMatrix gramian(const GeneratorFamily<V>& f, const GeneratorFamily<V>& g) {
  require(f.lattice() == g.lattice(), ErrorCode::DimensionMismatch, "families act through different lattices");
  LaurentMatrix m(f.size(), g.size(), f.dim());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = bracket(f[i], g[j], f.lattice());
  return m;
}

template <ShiftSpace V>
LaurentMatrix gramian(const GeneratorFamily<V>& f) {
  return gramian(f, f);
}

/// sum_i <v, analysis_i>_A . synthesis_i
template <ShiftSpace V>
V reconstruct(const V& v, const GeneratorFamily<V>& analysis, const GeneratorFamily<V>& synthesis) {
  V out = zero_like(v);
  for (std::size_t i = 0; i < analysis.size(); ++i)
    out = out + act(bracket(v, analysis[i], analysis.lattice()), synthesis[i], synthesis.lattice());
  return out;
}

enum class Side { primal, dual };

template <ShiftSpace V>
struct DualFrameWitness {
  Side family;         // which family the failing generator belongs to
  std::size_t index;   // its position
  Side analysis;       // identity that failed: analysis with this family, synthesis with the other
  V defect;            // reconstruction minus generator
};

template <ShiftSpace V>
struct DualFrameReport {
  bool holds = false;
  std::optional<DualFrameWitness<V>> witness;
  explicit operator bool() const { return holds; }
};

/// Checks sum_i <zeta, zeta_i>_A ~zeta_i = zeta = sum_i <zeta, ~zeta_i>_A zeta_i on
/// every generator of both families; A-linearity extends it to the module.
template <ShiftSpace V>
DualFrameReport<V> verify_dual_module_frames(const DualPair<V>& p) {
  for (Side fam : {Side::primal, Side::dual}) {
    const auto& gens = fam == Side::primal ? p.primal : p.dual;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const V& z = gens[k];
      V r1 = reconstruct(z, p.primal, p.dual);
      if (r1 != z) return {false, DualFrameWitness<V>{fam, k, Side::primal, r1 - z}};
      V r2 = reconstruct(z, p.dual, p.primal);
      if (r2 != z) return {false, DualFrameWitness<V>{fam, k, Side::dual, r2 - z}};
    }
  }
  return {true, std::nullopt};
}

template <ShiftSpace V>
struct DualBasisReport {
  DualFrameReport<V> frames;
  LaurentMatrix cross_gramian;
  bool biorthogonal = false;
  bool holds() const { return frames.holds && biorthogonal; }
  explicit operator bool() const { return holds(); }
};

template <ShiftSpace V>
DualBasisReport<V> verify_dual_module_bases(const DualPair<V>& p) {
  DualBasisReport<V> r{verify_dual_module_frames(p), gramian(p.primal, p.dual)};
  r.biorthogonal = r.cross_gramian.is_identity();
  return r;
}

namespace detail {

/// Exact l1 norm when every coefficient is a real rational; otherwise nullopt.
inline std::optional<Rational> exact_l1(const LaurentPoly& a) {
  Rational s = 0;
  for (const auto& [g, c] : a.terms()) {
    if (!c.is_rational()) return std::nullopt;
    s += abs(c.re());
  }
  return s;
}

/// Rational upper bound for the l1 norm of a.
inline Rational l1_upper(const LaurentPoly& a) {
  if (auto e = exact_l1(a)) return *e;
  double hi = l1_norm(a);
  hi = hi * (1 + 8 * std::numeric_limits<double>::epsilon()) + std::numeric_limits<double>::denorm_min();
  return Rational(hi);
}

/// Nearest doubles below and above an exact rational.
inline double round_down(const Rational& r) {
  double d = r.get_d();
  return Rational(d) > r ? std::nextafter(d, -std::numeric_limits<double>::infinity()) : d;
}

inline double round_up(const Rational& r) {
  double d = r.get_d();
  return Rational(d) < r ? std::nextafter(d, std::numeric_limits<double>::infinity()) : d;
}

}  // namespace detail

struct FrameBounds {
  Interval lower;  // interval for A = (sum_i ||<~zeta_i, ~zeta_i>_A||)^-1
  Interval upper;  // interval for B = sum_i ||<zeta_i, zeta_i>_A||
  double certified_lower() const { return lower.lo; }
  double certified_upper() const { return upper.hi; }
};

/// Frame bounds A <= sum |<zeta, nu_g zeta_i>|^2 / ||zeta||^2 <= B for dual module frames.
/// The certified ends come from rational l1 bounds rounded outward.
template <ShiftSpace V>
FrameBounds frame_bounds(const DualPair<V>& p, const TorusGrid& grid) {
  require(verify_dual_module_frames(p).holds, ErrorCode::NotDualFrames, "frame bounds need dual module frames");
  double b_lo = 0, a_inv_lo = 0;
  Rational b_hi = 0, a_inv_hi = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    LaurentPoly g = bracket(p.primal[i], p.primal[i], p.lattice());
    b_lo += sup_norm_interval(g, grid).lo;
    b_hi += detail::l1_upper(g);
    LaurentPoly h = bracket(p.dual[i], p.dual[i], p.lattice());
    a_inv_lo += sup_norm_interval(h, grid).lo;
    a_inv_hi += detail::l1_upper(h);
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  // a zero dual family only occurs for the zero module, where every A works
  Interval a{sgn(a_inv_hi) > 0 ? detail::round_down(1 / a_inv_hi) : inf, a_inv_lo > 0 ? 1.0 / a_inv_lo : inf};
  Interval b{std::min(b_lo, b_hi.get_d()), detail::round_up(b_hi)};
  return {a, b};
}

struct CauchySchwarzReport {
  bool holds = false;
  double min_defect = 0;
  LaurentPoly defect{1};  // ||<v,v>||_hi <w,w> - <v,w><w,v>
  explicit operator bool() const { return holds; }
};

/// Grid test of <v,w><w,v> <= ||<v,v>|| <w,w> using the l1 upper norm; sound one-sided.
template <ShiftSpace V>
CauchySchwarzReport cauchy_schwarz_check(const V& v, const V& w, const TorusGrid& grid, const IntMatrix& lattice,
                                         double tolerance = 1e-12) {
  LaurentPoly vv = bracket(v, v, lattice);
  LaurentPoly vw = bracket(v, w, lattice);
  LaurentPoly defect = Scalar(detail::l1_upper(vv)) * bracket(w, w, lattice) - vw * star(vw);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& x : evaluate_on_grid(defect, grid)) worst = std::min(worst, x.real());
  return {worst >= -tolerance, worst, defect};
}

template <ShiftSpace V>
CauchySchwarzReport cauchy_schwarz_check(const V& v, const V& w, const TorusGrid& grid) {
  return cauchy_schwarz_check(v, w, grid, IntMatrix::identity(dimension(v)));
}

/// P v = sum_i <v, ~phi_i>_A phi_i
template <ShiftSpace V>
V module_project(const V& v, const DualPair<V>& p) {
  require(verify_dual_module_frames(p).holds, ErrorCode::NotDualFrames, "projection needs dual module frames");
  return reconstruct(v, p.dual, p.primal);
}

/// Dual basis ~F = (S^-1)* F for a family with unimodular Gramian S.
template <ShiftSpace V>
GeneratorFamily<V> dual_basis_from_gramian(const GeneratorFamily<V>& f) {
  LaurentMatrix n = unimodular_inverse(gramian(f)).star();
  std::vector<V> out;
  for (std::size_t j = 0; j < f.size(); ++j) {
    V acc = zero_like(f[0]);
    for (std::size_t l = 0; l < f.size(); ++l) acc = acc + act(n(j, l), f[l], f.lattice());
    out.push_back(std::move(acc));
  }
  return GeneratorFamily<V>(std::move(out), f.lattice());
}

enum class ParsevalVerdict { orthonormal, not_parseval };

struct ParsevalReport {
  ParsevalVerdict verdict;
  LaurentPoly gramian;
  LaurentPoly defect;  // g g - g
};

/// A compactly supported generator whose translates form a Parseval frame is
/// orthonormal: the only self-adjoint idempotent Gramian is 1.
template <ShiftSpace V>
ParsevalReport parseval_compact_check(const V& v, const IntMatrix& lattice) {
  require(!v.is_zero(), ErrorCode::ZeroVector, "Parseval check of the zero vector");
  LaurentPoly g = bracket(v, v, lattice);
  LaurentPoly defect = g * g - g;
  if (!defect.is_zero()) return {ParsevalVerdict::not_parseval, g, defect};
  if (g != LaurentPoly::one(g.dim()))
    throw std::logic_error("idempotent Gramian different from 1: " + g.to_string());
  return {ParsevalVerdict::orthonormal, g, defect};
}

template <ShiftSpace V>
ParsevalReport parseval_compact_check(const V& v) {
  return parseval_compact_check(v, IntMatrix::identity(dimension(v)));
}

}  // namespace modframe
