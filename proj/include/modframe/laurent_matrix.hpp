#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "modframe/laurent.hpp"

namespace modframe {

class LaurentMatrix {
 public:
  LaurentMatrix(std::size_t rows, std::size_t cols, std::size_t n)
      : rows_(rows), cols_(cols), n_(n), a_(rows * cols, LaurentPoly(n)) {}

  static LaurentMatrix identity(std::size_t size, std::size_t n) {
    LaurentMatrix m(size, size, n);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = LaurentPoly::one(n);
    return m;
  }

  static LaurentMatrix from_rows(const std::vector<std::vector<LaurentPoly>>& rows) {
    require(!rows.empty() && !rows[0].empty(), ErrorCode::InvalidArgument, "empty Laurent matrix");
    LaurentMatrix m(rows.size(), rows[0].size(), rows[0][0].dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == m.cols_, ErrorCode::DimensionMismatch, "ragged Laurent matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        require(rows[i][j].dim() == m.n_, ErrorCode::DimensionMismatch, "mixed Laurent dimensions");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  static LaurentMatrix diagonal(const std::vector<LaurentPoly>& d) {
    require(!d.empty(), ErrorCode::InvalidArgument, "empty diagonal");
    LaurentMatrix m(d.size(), d.size(), d[0].dim());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return n_; }
  bool is_square() const { return rows_ == cols_; }

  LaurentPoly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.n_ == b.n_ && a.a_ == b.a_;
  }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    require(a.cols_ == b.rows_ && a.n_ == b.n_, ErrorCode::DimensionMismatch, "matrix product shape");
    LaurentMatrix c(a.rows_, b.cols_, a.n_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix sum shape");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }

  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix difference shape");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }

  /// Conjugate transpose with the algebra involution applied entrywise.
  LaurentMatrix star() const {
    LaurentMatrix m(cols_, rows_, n_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = modframe::star((*this)(i, j));
    return m;
  }

  LaurentMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::InvalidArgument, "block out of range");
    LaurentMatrix m(nr, nc, n_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  bool is_identity() const { return is_square() && *this == identity(rows_, n_); }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
  }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row_i += f * row_k
  void add_row_multiple(std::size_t i, std::size_t k, const LaurentPoly& f) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(k, j).is_zero()) (*this)(i, j) += f * (*this)(k, j);
  }
  /// col_j += col_k * f
  void add_col_multiple(std::size_t j, std::size_t k, const LaurentPoly& f) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, k).is_zero()) (*this)(i, j) += (*this)(i, k) * f;
  }
  void scale_row(std::size_t i, const LaurentPoly& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = f * (*this)(i, j);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_, cols_, n_;
  std::vector<LaurentPoly> a_;
};

namespace detail {

inline LaurentMatrix minor_matrix(const LaurentMatrix& m, std::size_t skip_r, std::size_t skip_c) {
  LaurentMatrix r(m.rows() - 1, m.cols() - 1, m.dim());
  for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == skip_c) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace detail

/// Cofactor expansion along the first row; exact.
inline LaurentPoly determinant(const LaurentMatrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  LaurentPoly d(m.dim());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    LaurentPoly c = m(0, j) * determinant(detail::minor_matrix(m, 0, j));
    if (j % 2) d -= c;
    else d += c;
  }
  return d;
}

inline LaurentMatrix adjugate(const LaurentMatrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "adjugate of non-square matrix");
  std::size_t n = m.rows();
  LaurentMatrix adj(n, n, m.dim());
  if (n == 1) {
    adj(0, 0) = LaurentPoly::one(m.dim());
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPoly c = determinant(detail::minor_matrix(m, j, i));
      adj(i, j) = ((i + j) % 2) ? -c : c;
    }
  return adj;
}

/// Exact inverse over the Laurent ring; requires det(M) to be a monomial.
inline LaurentMatrix unimodular_inverse(const LaurentMatrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  LaurentPoly det = determinant(m);
  if (!is_unit(det)) fail(ErrorCode::NotUnimodular, "determinant " + det.to_string() + " is not a monomial");
  LaurentMatrix inv = adjugate(m);
  LaurentPoly u = unit_inverse(det);
  for (std::size_t i = 0; i < inv.rows(); ++i) inv.scale_row(i, u);
  return inv;
}

}  // namespace modframe
