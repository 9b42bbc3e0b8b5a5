#pragma once

#include <optional>
#include <vector>

#include "modframe/laurent_matrix.hpp"

namespace modframe {

struct Division {
  LaurentPoly quotient;
  LaurentPoly remainder;
};

/// Euclidean division in the univariate Laurent ring: a = q b + r with
/// r = 0 or degree_span(r) < degree_span(b).
inline Division divide_1d(const LaurentPoly& a, const LaurentPoly& b) {
  require(a.dim() == 1 && b.dim() == 1, ErrorCode::WrongDimension, "univariate division needs n = 1");
  require(!b.is_zero(), ErrorCode::DivisionByZero, "Laurent division by zero");
  if (a.is_zero()) return {LaurentPoly(1), LaurentPoly(1)};

  long alpha = min_exponent(a), beta = min_exponent(b);
  long db = degree_span(b);
  // dense ordinary polynomials A = a z^-alpha, B = b z^-beta
  std::vector<Scalar> rem(static_cast<std::size_t>(degree_span(a) + 1));
  for (const auto& [g, c] : a.terms()) rem[static_cast<std::size_t>(g[0] - alpha)] = c;
  std::vector<Scalar> den(static_cast<std::size_t>(db + 1));
  for (const auto& [g, c] : b.terms()) den[static_cast<std::size_t>(g[0] - beta)] = c;

  LaurentPoly quot(1);
  const Scalar& lead = den.back();
  for (long k = static_cast<long>(rem.size()) - 1; k >= db; --k) {
    const Scalar c = rem[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    Scalar f = c / lead;
    long shift = k - db;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(shift + j)] -= f * den[static_cast<std::size_t>(j)];
    quot.add_term({shift + alpha - beta}, f);
  }
  LaurentPoly r(1);
  for (std::size_t k = 0; k < rem.size(); ++k) r.add_term({static_cast<long>(k) + alpha}, rem[k]);
  return {quot, r};
}

inline bool divides_1d(const LaurentPoly& d, const LaurentPoly& a) {
  if (d.is_zero()) return a.is_zero();
  return divide_1d(a, d).remainder.is_zero();
}

/// The unit c z^alpha that turns a nonzero univariate Laurent polynomial into its
/// normal form (lowest exponent 0, leading coefficient 1).
inline LaurentPoly normalizing_unit(const LaurentPoly& a) {
  return LaurentPoly::monomial({min_exponent(a)}, a.terms().rbegin()->second);
}

inline LaurentPoly normalize_1d(const LaurentPoly& a) {
  if (a.is_zero()) return a;
  return unit_inverse(normalizing_unit(a)) * a;
}

struct SmithForm {
  LaurentMatrix left;      // U
  LaurentMatrix diagonal;  // D = U M V
  LaurentMatrix right;     // V
};

/// Smith normal form over the univariate Laurent ring.  Pivot: nonzero entry of
/// minimal degree span in the active block, ties broken in row-major order.
inline SmithForm smith_normal_form_1d(const LaurentMatrix& m) {
  require(m.dim() == 1, ErrorCode::WrongDimension, "Smith form needs univariate entries (n = 1)");
  const std::size_t rows = m.rows(), cols = m.cols();
  LaurentMatrix d = m;
  LaurentMatrix u = LaurentMatrix::identity(rows, 1);
  LaurentMatrix v = LaurentMatrix::identity(cols, 1);

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      long best_span = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j).is_zero()) continue;
          long s = degree_span(d(i, j));
          if (!best || s < best_span) {
            best = {i, j};
            best_span = s;
          }
        }
      if (!best) break;
      if (best->first != t) {
        d.swap_rows(t, best->first);
        u.swap_rows(t, best->first);
      }
      if (best->second != t) {
        d.swap_cols(t, best->second);
        v.swap_cols(t, best->second);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t).is_zero()) continue;
        Division qr = divide_1d(d(i, t), d(t, t));
        LaurentPoly f = -qr.quotient;
        d.add_row_multiple(i, t, f);
        u.add_row_multiple(i, t, f);
        if (!d(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j).is_zero()) continue;
        Division qr = divide_1d(d(t, j), d(t, t));
        LaurentPoly f = -qr.quotient;
        d.add_col_multiple(j, t, f);
        v.add_col_multiple(j, t, f);
        if (!d(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: pull a non-divisible entry into the pivot row
      bool chain_ok = true;
      for (std::size_t i = t + 1; i < rows && chain_ok; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides_1d(d(t, t), d(i, j))) {
            LaurentPoly one = LaurentPoly::one(1);
            d.add_row_multiple(t, i, one);
            u.add_row_multiple(t, i, one);
            chain_ok = false;
            break;
          }
      if (chain_ok) break;
    }
    if (d(t, t).is_zero()) break;
    LaurentPoly inv = unit_inverse(normalizing_unit(d(t, t)));
    d.scale_row(t, inv);
    u.scale_row(t, inv);
  }
  return {u, d, v};
}

/// Square matrix with the given unimodular row as its first row and a monomial
/// determinant.
inline LaurentMatrix unimodular_complete_1d(const LaurentMatrix& row) {
  require(row.dim() == 1, ErrorCode::WrongDimension, "completion needs univariate entries (n = 1)");
  require(row.rows() == 1, ErrorCode::DimensionMismatch, "completion takes a single row");
  SmithForm s = smith_normal_form_1d(row);
  if (s.diagonal(0, 0) != LaurentPoly::one(1))
    fail(ErrorCode::NotUnimodular, "row entries share the factor " + s.diagonal(0, 0).to_string());
  // row = U^-1 e_1 V^-1, so diag(U^-1, I) V^-1 has it as first row
  LaurentMatrix c = unimodular_inverse(s.right);
  c.scale_row(0, unit_inverse(s.left(0, 0)));
  return c;
}

}  // namespace modframe
