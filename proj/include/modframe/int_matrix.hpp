#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "modframe/error.hpp"
#include "modframe/scalar.hpp"

namespace modframe {

/// Lattice point in Z^n; also the exponent of a Laurent monomial.
using Exponent = std::vector<long>;

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "exponent sizes differ");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Exponent operator-(const Exponent& a, const Exponent& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "exponent sizes differ");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Exponent operator-(const Exponent& a) {
  Exponent r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline std::string to_string(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

/// Small square integer matrix (dilations, lattice embeddings, point-group elements).
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      require(r.size() == n_, ErrorCode::DimensionMismatch, "integer matrix must be square");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == rows.size(), ErrorCode::DimensionMismatch, "integer matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix scalar(std::size_t n, long s) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  std::size_t size() const { return n_; }
  long& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  long operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<std::vector<long>> rows() const {
    std::vector<std::vector<long>> r(n_, std::vector<long>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    require(a.n_ == b.n_, ErrorCode::DimensionMismatch, "matrix sizes differ");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k)
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }

  friend Exponent operator*(const IntMatrix& a, const Exponent& x) {
    require(a.n_ == x.size(), ErrorCode::DimensionMismatch, "matrix/vector sizes differ");
    Exponent y(a.n_, 0);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    require(a.n_ == b.n_, ErrorCode::DimensionMismatch, "matrix sizes differ");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
  }

  IntMatrix operator-() const {
    IntMatrix c = *this;
    for (auto& x : c.a_) x = -x;
    return c;
  }

  long determinant() const { return det_rec(rows()); }

  /// adj(A) with A adj(A) = det(A) I.
  IntMatrix adjugate() const {
    IntMatrix adj(n_);
    if (n_ == 1) {
      adj(0, 0) = 1;
      return adj;
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        long minor = det_rec(minor_rows(j, i));
        adj(i, j) = ((i + j) % 2 ? -minor : minor);
      }
    return adj;
  }

  /// Integer solution x of A x = b, if one exists (A nonsingular).
  std::optional<Exponent> solve_integer(const Exponent& b) const;

  /// Exact rational solution of A x = b.
  std::vector<Rational> solve_rational(const std::vector<Rational>& b) const {
    long d = determinant();
    require(d != 0, ErrorCode::InvalidArgument, "singular integer matrix");
    IntMatrix adj = adjugate();
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += adj(i, j) * b[j];
      x[i] = s / d;
    }
    return x;
  }

  bool contains_in_lattice(const Exponent& v) const { return solve_integer(v).has_value(); }

  /// Exactly one nonzero entry, equal to +-1, in each row and column.
  bool is_signed_permutation() const {
    for (std::size_t i = 0; i < n_; ++i) {
      int row_hits = 0, col_hits = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        long r = (*this)(i, j), c = (*this)(j, i);
        if (r != 0) row_hits += (r == 1 || r == -1) ? 1 : 2;
        if (c != 0) col_hits += (c == 1 || c == -1) ? 1 : 2;
      }
      if (row_hits != 1 || col_hits != 1) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  std::vector<std::vector<long>> minor_rows(std::size_t skip_r, std::size_t skip_c) const {
    std::vector<std::vector<long>> m;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == skip_r) continue;
      std::vector<long> row;
      for (std::size_t j = 0; j < n_; ++j)
        if (j != skip_c) row.push_back((*this)(i, j));
      m.push_back(std::move(row));
    }
    return m;
  }

  static long det_rec(const std::vector<std::vector<long>>& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    long d = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[0][j] == 0) continue;
      std::vector<std::vector<long>> sub;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<long> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != j) row.push_back(m[i][k]);
        sub.push_back(std::move(row));
      }
      long c = m[0][j] * det_rec(sub);
      d += (j % 2 ? -c : c);
    }
    return d;
  }

  std::size_t n_ = 0;
  std::vector<long> a_;
};

/// Repeated integer solves against one nonsingular matrix.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& a) : det_(a.determinant()), adj_(a.adjugate()) {
    require(det_ != 0, ErrorCode::InvalidArgument, "singular integer matrix");
  }

  std::optional<Exponent> solve(const Exponent& b) const {
    Exponent y = adj_ * b;
    for (auto& v : y) {
      if (v % det_ != 0) return std::nullopt;
      v /= det_;
    }
    return y;
  }

 private:
  long det_;
  IntMatrix adj_;
};

inline std::optional<Exponent> IntMatrix::solve_integer(const Exponent& b) const { return LatticeSolver(*this).solve(b); }

}  // namespace modframe
