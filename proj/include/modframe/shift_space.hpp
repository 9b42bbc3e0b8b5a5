#pragma once

#include <concepts>
#include <utility>
#include <vector>

#include "modframe/finseq.hpp"
#include "modframe/laurent.hpp"
#include "modframe/piecewise.hpp"

namespace modframe {

/// A space of compactly supported vectors with a Z^n translation action and
/// finite overlap: the two backends FinSeq and PiecewisePoly model it.
template <class V>
concept ShiftSpace = std::regular<V> && requires(const V& v, const V& w, const Exponent& g, const Scalar& s,
                                                  const IntMatrix& m) {
  { dimension(v) } -> std::convertible_to<std::size_t>;
  { shift(v, g) } -> std::same_as<V>;
  { inner_product(v, w) } -> std::same_as<Scalar>;
  { overlap_shifts(v, w, m) } -> std::same_as<std::vector<Exponent>>;
  { zero_like(v) } -> std::same_as<V>;
  { v + w } -> std::same_as<V>;
  { v - w } -> std::same_as<V>;
  { s * v } -> std::same_as<V>;
  { v.is_zero() } -> std::convertible_to<bool>;
};

/// a . v = sum_g a_g nu_{M g} v
template <ShiftSpace V>
V act(const LaurentPoly& a, const V& v, const IntMatrix& lattice) {
  require(a.dim() == lattice.size(), ErrorCode::DimensionMismatch, "Laurent and lattice dimensions differ");
  require(dimension(v) == lattice.size(), ErrorCode::DimensionMismatch, "vector and lattice dimensions differ");
  V out = zero_like(v);
  for (const auto& [g, c] : a.terms()) out = out + c * shift(v, lattice * g);
  return out;
}

template <ShiftSpace V>
V act(const LaurentPoly& a, const V& v) {
  return act(a, v, IntMatrix::identity(dimension(v)));
}

/// sum_i a_i . v_i
template <ShiftSpace V>
V linear_combine(const std::vector<std::pair<LaurentPoly, V>>& terms, const IntMatrix& lattice) {
  require(!terms.empty(), ErrorCode::InvalidArgument, "empty linear combination");
  V out = zero_like(terms.front().second);
  for (const auto& [a, v] : terms) out = out + act(a, v, lattice);
  return out;
}

template <ShiftSpace V>
V linear_combine(const std::vector<std::pair<LaurentPoly, V>>& terms) {
  require(!terms.empty(), ErrorCode::InvalidArgument, "empty linear combination");
  return linear_combine(terms, IntMatrix::identity(dimension(terms.front().second)));
}

}  // namespace modframe
