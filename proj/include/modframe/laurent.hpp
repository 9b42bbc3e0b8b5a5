#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "modframe/int_matrix.hpp"
#include "modframe/scalar.hpp"

namespace modframe {

/// Element of the group algebra of Z^n: a finitely supported map from exponents to
/// nonzero scalars.  The monomial z^g plays the role of the translation lambda_g.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Scalar>;

  explicit LaurentPoly(std::size_t n = 1) : n_(n) {
    require(n >= 1, ErrorCode::InvalidArgument, "Laurent dimension must be >= 1");
  }

  static LaurentPoly constant(std::size_t n, const Scalar& c) {
    LaurentPoly p(n);
    p.add_term(Exponent(n, 0), c);
    return p;
  }

  static LaurentPoly one(std::size_t n) { return constant(n, 1); }

  static LaurentPoly monomial(const Exponent& g, const Scalar& c = 1) {
    LaurentPoly p(g.size());
    p.add_term(g, c);
    return p;
  }

  /// Univariate shorthand: sum_k coeffs[k] z^(low + k).
  static LaurentPoly univariate(long low, std::initializer_list<Scalar> coeffs) {
    LaurentPoly p(1);
    long e = low;
    for (const auto& c : coeffs) p.add_term({e++}, c);
    return p;
  }

  std::size_t dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coeff(const Exponent& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(const Exponent& g, const Scalar& c) {
    if (g.size() != n_)
      fail(ErrorCode::DimensionMismatch, "exponent " + modframe::to_string(g) + " in dimension " + std::to_string(n_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [g, c] : o.terms_) add_term(g, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [g, c] : o.terms_) add_term(g, -c);
    return *this;
  }

  LaurentPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Scalar& s) { return a *= s; }
  friend LaurentPoly operator*(const Scalar& s, LaurentPoly a) { return a *= s; }
  LaurentPoly operator-() const { return *this * Scalar(-1); }

  /// Convolution product.
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly r(a.n_);
    for (const auto& [g, c] : a.terms_)
      for (const auto& [h, d] : b.terms_) r.add_term(g + h, c * d);
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Multiply every exponent by the lattice matrix: z^g -> z^(M g).
  LaurentPoly substitute(const IntMatrix& m) const {
    require(m.size() == n_, ErrorCode::DimensionMismatch, "lattice size differs from Laurent dimension");
    LaurentPoly r(n_);
    for (const auto& [g, c] : terms_) r.add_term(m * g, c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [g, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.to_string() + ")";
      if (std::any_of(g.begin(), g.end(), [](long x) { return x != 0; })) s += "z^" + modframe::to_string(g);
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

 private:
  void check_dim(const LaurentPoly& o) const {
    if (n_ != o.n_)
      fail(ErrorCode::DimensionMismatch, "Laurent dimensions " + std::to_string(n_) + " and " + std::to_string(o.n_));
  }

  std::size_t n_;
  Terms terms_;
};

/// Coefficient at -g conjugated: the involution of the group algebra.
inline LaurentPoly star(const LaurentPoly& a) {
  LaurentPoly r(a.dim());
  for (const auto& [g, c] : a.terms()) r.add_term(-g, c.conj());
  return r;
}

/// Coefficient of a at g; tau(a) (g = 0) is the trace state.
inline Scalar tau(const LaurentPoly& a, const Exponent& g) { return a.coeff(g); }
inline Scalar tau(const LaurentPoly& a) { return a.coeff(Exponent(a.dim(), 0)); }

/// Units of the Laurent ring are exactly the nonzero monomials.
inline bool is_unit(const LaurentPoly& a) { return a.size() == 1; }

inline LaurentPoly unit_inverse(const LaurentPoly& u) {
  if (!is_unit(u)) fail(ErrorCode::NotUnimodular, "not a monomial: " + u.to_string());
  const auto& [g, c] = *u.terms().begin();
  return LaurentPoly::monomial(-g, Scalar(1) / c);
}

inline long min_exponent(const LaurentPoly& a) {
  if (a.dim() != 1) fail(ErrorCode::WrongDimension, "univariate operation on n = " + std::to_string(a.dim()));
  require(!a.is_zero(), ErrorCode::InvalidArgument, "zero polynomial has no degree");
  return a.terms().begin()->first[0];
}

inline long max_exponent(const LaurentPoly& a) {
  if (a.dim() != 1) fail(ErrorCode::WrongDimension, "univariate operation on n = " + std::to_string(a.dim()));
  require(!a.is_zero(), ErrorCode::InvalidArgument, "zero polynomial has no degree");
  return a.terms().rbegin()->first[0];
}

/// max exponent - min exponent; the Euclidean size function of the univariate ring.
inline long degree_span(const LaurentPoly& a) { return max_exponent(a) - min_exponent(a); }

}  // namespace modframe
