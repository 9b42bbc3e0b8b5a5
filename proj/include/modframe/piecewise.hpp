#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "modframe/int_matrix.hpp"
#include "modframe/scalar.hpp"

namespace modframe {

/// Dense polynomial in t, ascending powers.
using Poly = std::vector<Scalar>;

namespace poly {

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly add(const Poly& a, const Poly& b, const Scalar& sb = 1) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += sb * b[k];
  trim(r);
  return r;
}

inline Poly scale(Poly p, const Scalar& s) {
  for (auto& c : p) c *= s;
  trim(p);
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline Poly conj(Poly p) {
  for (auto& c : p) c = c.conj();
  return p;
}

/// p(alpha t + beta)
inline Poly compose_affine(const Poly& p, const Rational& alpha, const Rational& beta) {
  Poly r;
  const Poly lin{Scalar(beta), Scalar(alpha)};
  for (std::size_t k = p.size(); k-- > 0;) {
    r = mul(r, lin);
    r = add(r, Poly{p[k]});
  }
  trim(r);
  return r;
}

inline Scalar eval(const Poly& p, const Rational& x) {
  Scalar s;
  for (std::size_t k = p.size(); k-- > 0;) s = s * Scalar(x) + p[k];
  return s;
}

/// Exact integral of p over [l, r].
inline Scalar integrate(const Poly& p, const Rational& l, const Rational& r) {
  Scalar s;
  Rational lp = l, rp = r;  // l^(k+1), r^(k+1)
  for (std::size_t k = 0; k < p.size(); ++k) {
    Rational w = (rp - lp) / static_cast<long>(k + 1);
    s += p[k] * Scalar(w);
    lp *= l;
    rp *= r;
  }
  return s;
}

}  // namespace poly

/// Compactly supported piecewise polynomial on R with rational breakpoints,
/// canonical a.e. representative on left-closed intervals [t_i, t_{i+1}).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;

  static PiecewisePoly from_pieces(std::vector<Rational> breaks, std::vector<Poly> pieces) {
    if (breaks.empty() && pieces.empty()) return {};
    require(breaks.size() == pieces.size() + 1, ErrorCode::InvalidArgument,
            "piecewise polynomial needs one more breakpoint than pieces");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      require(breaks[i] < breaks[i + 1], ErrorCode::InvalidArgument, "breakpoints must strictly increase");
    PiecewisePoly v;
    v.breaks_ = std::move(breaks);
    v.pieces_ = std::move(pieces);
    v.canonicalize();
    return v;
  }

  static PiecewisePoly indicator(const Rational& a, const Rational& b, const Scalar& c = 1) {
    return from_pieces({a, b}, {Poly{c}});
  }

  /// Linear B-spline N2 on [0, 2).
  static PiecewisePoly hat() {
    return from_pieces({0, 1, 2}, {Poly{0, 1}, Poly{2, -1}});
  }

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  std::size_t dim() const { return 1; }

  Rational support_lo() const { return breaks_.front(); }
  Rational support_hi() const { return breaks_.back(); }

  /// Polynomial in force on the interval containing x, or an empty poly outside the support.
  Poly piece_at(const Rational& x) const {
    if (pieces_.empty() || x < breaks_.front() || x >= breaks_.back()) return {};
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  Scalar evaluate(const Rational& x) const { return poly::eval(piece_at(x), x); }

  template <class Op>
  static PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
    std::vector<Rational> br;
    std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(), std::back_inserter(br));
    br.erase(std::unique(br.begin(), br.end()), br.end());
    if (br.size() < 2) return {};
    std::vector<Poly> pcs;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) pcs.push_back(op(a.piece_at(br[i]), b.piece_at(br[i])));
    return from_pieces(std::move(br), std::move(pcs));
  }

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const Poly& p, const Poly& q) { return poly::add(p, q); });
  }
  friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const Poly& p, const Poly& q) { return poly::add(p, q, -1); });
  }
  PiecewisePoly& operator+=(const PiecewisePoly& o) { return *this = *this + o; }
  PiecewisePoly& operator-=(const PiecewisePoly& o) { return *this = *this - o; }

  friend PiecewisePoly operator*(const Scalar& s, const PiecewisePoly& a) {
    if (s.is_zero()) return {};
    PiecewisePoly r = a;
    for (auto& p : r.pieces_) p = poly::scale(p, s);
    return r;
  }

  friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
    return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
  }

  /// Applies a map to the breakpoints and pieces, then re-canonicalizes.
  template <class BreakFn, class PieceFn>
  PiecewisePoly transform(BreakFn bf, PieceFn pf, bool reverses = false) const {
    std::vector<Rational> br;
    std::vector<Poly> pcs;
    for (const auto& t : breaks_) br.push_back(bf(t));
    for (const auto& p : pieces_) pcs.push_back(pf(p));
    if (reverses) {
      std::reverse(br.begin(), br.end());
      std::reverse(pcs.begin(), pcs.end());
    }
    return from_pieces(std::move(br), std::move(pcs));
  }

  std::string to_string() const {
    if (pieces_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      s += "[" + breaks_[i].get_str() + "," + breaks_[i + 1].get_str() + "): ";
      if (pieces_[i].empty()) s += "0";
      for (std::size_t k = 0; k < pieces_[i].size(); ++k) {
        if (pieces_[i][k].is_zero()) continue;
        s += "(" + pieces_[i][k].to_string() + ")t^" + std::to_string(k) + " ";
      }
      s += "; ";
    }
    return s;
  }

 private:
  void canonicalize() {
    for (auto& p : pieces_) poly::trim(p);
    std::vector<Rational> br{breaks_.front()};
    std::vector<Poly> pcs;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (!pcs.empty() && pcs.back() == pieces_[i]) {
        br.back() = breaks_[i + 1];
      } else {
        pcs.push_back(pieces_[i]);
        br.push_back(breaks_[i + 1]);
      }
    }
    std::size_t first = 0, last = pcs.size();
    while (first < last && pcs[first].empty()) ++first;
    while (last > first && pcs[last - 1].empty()) --last;
    if (first == last) {
      breaks_.clear();
      pieces_.clear();
      return;
    }
    breaks_.assign(br.begin() + static_cast<long>(first), br.begin() + static_cast<long>(last) + 1);
    pieces_.assign(pcs.begin() + static_cast<long>(first), pcs.begin() + static_cast<long>(last));
  }

  std::vector<Rational> breaks_;
  std::vector<Poly> pieces_;
};

inline std::size_t dimension(const PiecewisePoly&) { return 1; }
inline PiecewisePoly zero_like(const PiecewisePoly&) { return {}; }

inline PiecewisePoly shift(const PiecewisePoly& v, long g) {
  Rational d = g;
  return v.transform([&](const Rational& t) { return Rational(t + d); },
                     [&](const Poly& p) { return poly::compose_affine(p, 1, -d); });
}

inline PiecewisePoly shift(const PiecewisePoly& v, const Exponent& g) {
  require(g.size() == 1, ErrorCode::DimensionMismatch, "piecewise polynomials live on R (n = 1)");
  return shift(v, g[0]);
}

/// Integral of v conj(w) over R.
inline Scalar inner_product(const PiecewisePoly& v, const PiecewisePoly& w) {
  if (v.is_zero() || w.is_zero()) return {};
  Rational lo = std::max(v.support_lo(), w.support_lo());
  Rational hi = std::min(v.support_hi(), w.support_hi());
  if (lo >= hi) return {};
  std::vector<Rational> br;
  std::merge(v.breaks().begin(), v.breaks().end(), w.breaks().begin(), w.breaks().end(), std::back_inserter(br));
  br.erase(std::unique(br.begin(), br.end()), br.end());
  Scalar s;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i] < lo || br[i + 1] > hi) continue;
    Poly p = poly::mul(v.piece_at(br[i]), poly::conj(w.piece_at(br[i])));
    if (!p.empty()) s += poly::integrate(p, br[i], br[i + 1]);
  }
  return s;
}

inline Scalar norm_squared(const PiecewisePoly& v) { return inner_product(v, v); }

inline Scalar integral(const PiecewisePoly& v) {
  Scalar s;
  for (std::size_t i = 0; i < v.pieces().size(); ++i) s += poly::integrate(v.pieces()[i], v.breaks()[i], v.breaks()[i + 1]);
  return s;
}

/// (W_h v)(t) = v(h^-1 t) for h = +-1.
inline PiecewisePoly reflect(const PiecewisePoly& v, const IntMatrix& h) {
  require(h.size() == 1, ErrorCode::DimensionMismatch, "piecewise polynomials live on R (n = 1)");
  if (h(0, 0) != 1 && h(0, 0) != -1) fail(ErrorCode::UnsupportedSymmetry, "only h = +-1 acts on functions on R");
  if (h(0, 0) == 1) return v;
  return v.transform([](const Rational& t) { return Rational(-t); },
                     [](const Poly& p) { return poly::compose_affine(p, -1, 0); }, true);
}

enum class Direction { forward, inverse };

/// forward: sqrt(a) v(a t); inverse: v(t / a) / sqrt(a).
inline PiecewisePoly dilate_U(const PiecewisePoly& v, long a, Direction dir = Direction::forward) {
  require(a >= 2, ErrorCode::BadDilation, "dilation factor must be an integer >= 2");
  Scalar root = Scalar::sqrt_of(a);
  Rational fa = a;
  if (dir == Direction::forward) {
    return v.transform([&](const Rational& t) { return Rational(t / fa); },
                       [&](const Poly& p) { return poly::scale(poly::compose_affine(p, fa, 0), root); });
  }
  Scalar inv_root = Scalar(1) / root;
  return v.transform([&](const Rational& t) { return Rational(t * fa); },
                     [&](const Poly& p) { return poly::scale(poly::compose_affine(p, 1 / fa, 0), inv_root); });
}

/// Shifts g with supp v and supp w + m g overlapping in positive measure.
inline std::vector<Exponent> overlap_shifts(const PiecewisePoly& v, const PiecewisePoly& w, const IntMatrix& lattice) {
  require(lattice.size() == 1, ErrorCode::DimensionMismatch, "piecewise polynomials live on R (n = 1)");
  long m = lattice(0, 0);
  require(m != 0, ErrorCode::InvalidArgument, "singular lattice");
  std::vector<Exponent> out;
  if (v.is_zero() || w.is_zero()) return out;
  // m g in the open interval (lo v - hi w, hi v - lo w)
  Rational lo = v.support_lo() - w.support_hi(), hi = v.support_hi() - w.support_lo();
  if (m < 0) {
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
    m = -m;
  }
  Rational glo = lo / m, ghi = hi / m;
  mpz_class first;
  mpz_fdiv_q(first.get_mpz_t(), glo.get_num_mpz_t(), glo.get_den_mpz_t());
  for (mpz_class g = first; Rational(g) < ghi; ++g)
    if (Rational(g) > glo) out.push_back({g.get_si()});
  return out;
}

}  // namespace modframe
