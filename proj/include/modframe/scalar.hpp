#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <string>

#include <gmpxx.h>

#include "modframe/error.hpp"

namespace modframe {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q".  Throws ParseError on malformed input.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) fail(ErrorCode::ParseError, "bad rational '" + text + "'");
  if (r.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string rational_string(const Rational& r) { return r.get_str(10); }

/// Element of Q(i)[sqrt(q)] stored as (re + i im) + (re_s + i im_s) sqrt(q).
///
/// The radicand q is square-free and travels with the value.  q == 1 means the
/// surd part is zero; mixing two different radicands with nonzero surd parts is
/// a FieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Scalar with_surd(const Rational& re, const Rational& im, const Rational& re_s, const Rational& im_s,
                          long q) {
    require(q >= 1, ErrorCode::InvalidArgument, "radicand must be positive");
    Scalar s(re, im);
    long k = 1;
    long free = squarefree_part(q, k);
    if (free == 1) {
      s.re_ += re_s * k;
      s.im_ += im_s * k;
      return s;
    }
    s.re_s_ = re_s * k;
    s.im_s_ = im_s * k;
    s.q_ = free;
    s.normalize();
    return s;
  }

  /// sqrt(a) for a positive integer a, reduced to k * sqrt(squarefree).
  static Scalar sqrt_of(long a) { return with_surd(0, 0, 1, 0, a); }

  static Scalar i() { return Scalar(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  const Rational& re_s() const { return re_s_; }
  const Rational& im_s() const { return im_s_; }
  long radicand() const { return q_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0 && q_ == 1; }
  bool is_rational() const { return sgn(im_) == 0 && q_ == 1; }
  bool is_real() const { return sgn(im_) == 0 && sgn(im_s_) == 0; }

  Scalar conj() const {
    Scalar s = *this;
    s.im_ = -s.im_;
    s.im_s_ = -s.im_s_;
    return s;
  }

  std::complex<double> to_complex() const {
    double root = std::sqrt(static_cast<double>(q_));
    return {re_.get_d() + re_s_.get_d() * root, im_.get_d() + im_s_.get_d() * root};
  }

  double abs() const { return std::abs(to_complex()); }

  Scalar operator-() const {
    Scalar s = *this;
    s.re_ = -s.re_;
    s.im_ = -s.im_;
    s.re_s_ = -s.re_s_;
    s.im_s_ = -s.im_s_;
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
      re_ += o.re_;
      return *this;
    }
    q_ = join(q_, o.q_);
    re_ += o.re_;
    im_ += o.im_;
    re_s_ += o.re_s_;
    im_s_ += o.im_s_;
    normalize();
    return *this;
  }

  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
      re_ *= o.re_;
      return *this;
    }
    long q = join(q_, o.q_);
    if (is_real() && o.is_real()) {
      Rational a = re_ * o.re_ + re_s_ * o.re_s_ * q;
      re_s_ = re_ * o.re_s_ + re_s_ * o.re_;
      re_ = a;
      q_ = q;
      normalize();
      return *this;
    }
    // (a + b r)(c + d r) = (ac + q bd) + (ad + bc) r with a..d Gaussian rationals
    Rational ar, ai, br, bi;
    gmul(re_, im_, o.re_, o.im_, ar, ai);
    Rational tr, ti;
    gmul(re_s_, im_s_, o.re_s_, o.im_s_, tr, ti);
    ar += tr * q;
    ai += ti * q;
    gmul(re_, im_, o.re_s_, o.im_s_, br, bi);
    gmul(re_s_, im_s_, o.re_, o.im_, tr, ti);
    br += tr;
    bi += ti;
    re_ = ar;
    im_ = ai;
    re_s_ = br;
    im_s_ = bi;
    q_ = q;
    normalize();
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    require(!o.is_zero(), ErrorCode::DivisionByZero, "scalar division by zero");
    long q = join(q_, o.q_);
    // multiply by the radical conjugate c - d r, then divide by the Gaussian norm c^2 - q d^2
    Scalar conj_r = o;
    conj_r.re_s_ = -conj_r.re_s_;
    conj_r.im_s_ = -conj_r.im_s_;
    Scalar num = *this;
    num *= conj_r;
    Scalar den = o;
    den *= conj_r;  // lies in Q(i)
    Rational nr = den.re_ * den.re_ + den.im_ * den.im_;
    Rational xr, xi;
    // 1/(u + iv) = (u - iv)/(u^2 + v^2)
    Rational inv_r = den.re_ / nr, inv_i = -den.im_ / nr;
    gmul(num.re_, num.im_, inv_r, inv_i, xr, xi);
    Rational yr, yi;
    gmul(num.re_s_, num.im_s_, inv_r, inv_i, yr, yi);
    re_ = xr;
    im_ = xi;
    re_s_ = yr;
    im_s_ = yi;
    q_ = q;
    normalize();
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.q_ == b.q_ && a.re_ == b.re_ && a.im_ == b.im_ && a.re_s_ == b.re_s_ && a.im_s_ == b.im_s_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool any = false;
    auto term = [&](const Rational& v, const std::string& suffix) {
      if (sgn(v) == 0) return;
      if (any) os << (sgn(v) > 0 ? "+" : "");
      os << v.get_str() << suffix;
      any = true;
    };
    term(re_, "");
    term(im_, "i");
    term(re_s_, "*sqrt(" + std::to_string(q_) + ")");
    term(im_s_, "i*sqrt(" + std::to_string(q_) + ")");
    if (!any) os << "0";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static long squarefree_part(long q, long& square_root) {
    long free = 1;
    square_root = 1;
    for (long p = 2; p * p <= q; ++p) {
      while (q % (p * p) == 0) {
        q /= p * p;
        square_root *= p;
      }
      if (q % p == 0) {
        q /= p;
        free *= p;
      }
    }
    return free * q;
  }

  static long join(long a, long b) {
    if (a == 1) return b;
    if (b == 1 || a == b) return a;
    fail(ErrorCode::FieldMismatch, "sqrt(" + std::to_string(a) + ") and sqrt(" + std::to_string(b) +
                                       ") in one expression");
  }

  static void gmul(const Rational& a, const Rational& b, const Rational& c, const Rational& d, Rational& re,
                   Rational& im) {
    re = a * c - b * d;
    im = a * d + b * c;
  }

  void normalize() {
    if (sgn(re_s_) == 0 && sgn(im_s_) == 0) q_ = 1;
  }

  Rational re_, im_, re_s_, im_s_;
  long q_ = 1;
};

}  // namespace modframe
