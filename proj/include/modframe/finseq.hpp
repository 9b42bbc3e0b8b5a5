#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "modframe/int_matrix.hpp"
#include "modframe/scalar.hpp"

namespace modframe {

/// Finitely supported sequence on Z^n.
class FinSeq {
 public:
  using Entries = std::map<Exponent, Scalar>;

  explicit FinSeq(std::size_t n = 1) : n_(n) {
    require(n >= 1, ErrorCode::InvalidArgument, "sequence dimension must be >= 1");
  }

  static FinSeq delta(const Exponent& k, const Scalar& c = 1) {
    FinSeq v(k.size());
    v.add(k, c);
    return v;
  }

  /// Univariate shorthand: sum_j values[j] delta_(low + j).
  static FinSeq univariate(long low, std::initializer_list<Scalar> values) {
    FinSeq v(1);
    long k = low;
    for (const auto& c : values) v.add({k++}, c);
    return v;
  }

  std::size_t dim() const { return n_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Scalar at(const Exponent& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? Scalar() : it->second;
  }

  void add(const Exponent& k, const Scalar& c) {
    if (k.size() != n_)
      fail(ErrorCode::DimensionMismatch, "index " + modframe::to_string(k) + " in dimension " + std::to_string(n_));
    if (c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  FinSeq& operator+=(const FinSeq& o) {
    check_dim(o);
    for (const auto& [k, c] : o.entries_) add(k, c);
    return *this;
  }
  FinSeq& operator-=(const FinSeq& o) {
    check_dim(o);
    for (const auto& [k, c] : o.entries_) add(k, -c);
    return *this;
  }
  FinSeq& operator*=(const Scalar& s) {
    if (s.is_zero()) entries_.clear();
    for (auto& [k, c] : entries_) c *= s;
    return *this;
  }

  friend FinSeq operator+(FinSeq a, const FinSeq& b) { return a += b; }
  friend FinSeq operator-(FinSeq a, const FinSeq& b) { return a -= b; }
  friend FinSeq operator*(const Scalar& s, FinSeq a) { return a *= s; }
  friend bool operator==(const FinSeq& a, const FinSeq& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

  std::string to_string() const {
    if (entries_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : entries_) s += (s.empty() ? "" : " + ") + ("(" + c.to_string() + ")d" + modframe::to_string(k));
    return s;
  }

 private:
  void check_dim(const FinSeq& o) const {
    if (n_ != o.n_)
      fail(ErrorCode::DimensionMismatch, "sequence dimensions " + std::to_string(n_) + " and " + std::to_string(o.n_));
  }

  std::size_t n_;
  Entries entries_;
};

inline std::size_t dimension(const FinSeq& v) { return v.dim(); }
inline FinSeq zero_like(const FinSeq& v) { return FinSeq(v.dim()); }

/// (nu_g v)(x) = v(x - g)
inline FinSeq shift(const FinSeq& v, const Exponent& g) {
  require(g.size() == v.dim(), ErrorCode::DimensionMismatch, "shift dimension differs");
  FinSeq r(v.dim());
  for (const auto& [k, c] : v.entries()) r.add(k + g, c);
  return r;
}

/// sum_x v(x) conj(w(x))
inline Scalar inner_product(const FinSeq& v, const FinSeq& w) {
  require(v.dim() == w.dim(), ErrorCode::DimensionMismatch, "inner product dimensions differ");
  const FinSeq& small = v.entries().size() <= w.entries().size() ? v : w;
  const FinSeq& large = &small == &v ? w : v;
  Scalar s;
  for (const auto& [k, c] : small.entries()) {
    auto it = large.entries().find(k);
    if (it == large.entries().end()) continue;
    s += (&small == &v) ? c * it->second.conj() : it->second * c.conj();
  }
  return s;
}

inline Scalar norm_squared(const FinSeq& v) { return inner_product(v, v); }

/// (W_h v)(x) = v(h^-1 x): the entry at k moves to h k.
inline FinSeq reflect(const FinSeq& v, const IntMatrix& h) {
  require(h.size() == v.dim(), ErrorCode::DimensionMismatch, "reflection size differs");
  long det = h.determinant();
  require(det == 1 || det == -1, ErrorCode::UnsupportedSymmetry, "reflection must be invertible over Z");
  if (v.dim() >= 2)
    require(h.is_signed_permutation(), ErrorCode::UnsupportedSymmetry,
            "only signed permutation matrices act on sequences with n >= 2");
  FinSeq r(v.dim());
  for (const auto& [k, c] : v.entries()) r.add(h * k, c);
  return r;
}

/// Shifts g for which <v, nu_{M g} w> can be nonzero (supports intersect).
inline std::vector<Exponent> overlap_shifts(const FinSeq& v, const FinSeq& w, const IntMatrix& lattice) {
  require(v.dim() == w.dim() && lattice.size() == v.dim(), ErrorCode::DimensionMismatch,
          "overlap dimensions differ");
  LatticeSolver solver(lattice);
  std::set<Exponent> out;
  for (const auto& [x, a] : v.entries())
    for (const auto& [y, b] : w.entries())
      if (auto g = solver.solve(x - y)) out.insert(*g);
  return {out.begin(), out.end()};
}

}  // namespace modframe
