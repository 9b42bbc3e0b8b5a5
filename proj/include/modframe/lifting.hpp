#pragma once

#include <random>
#include <set>
#include <vector>

#include "modframe/symmetry.hpp"

namespace modframe {

/// Bi-orthogonal filter bank (m, w ; ~m, ~w) in mask coordinates.
struct FilterBank {
  Mask m, w, mt, wt;
};

/// The lazy bank m = ~m = delta_0, w = ~w = delta_g1.
inline FilterBank lazy_bank(const Dilation& d, const Exponent& g1) {
  Exponent zero(d.dim(), 0);
  Mask m(FinSeq::delta(zero), d), w(FinSeq::delta(g1), d);
  return {m, w, m, w};
}

/// w += t *_A m and ~m -= t* *_A ~w; keeps the cross-Gramian equal to I.
inline void dual_lift(FilterBank& b, const LaurentPoly& t) {
  const IntMatrix& a = b.m.dilation.matrix();
  b.w.coeffs = b.w.coeffs + act(t, b.m.coeffs, a);
  b.mt.coeffs = b.mt.coeffs - act(star(t), b.wt.coeffs, a);
}

/// m += s *_A w and ~w -= s* *_A ~m.
inline void primal_lift(FilterBank& b, const LaurentPoly& s) {
  const IntMatrix& a = b.m.dilation.matrix();
  b.m.coeffs = b.m.coeffs + act(s, b.w.coeffs, a);
  b.wt.coeffs = b.wt.coeffs - act(star(s), b.mt.coeffs, a);
}

/// Random real Laurent polynomial invariant under g -> h g + (I - h) p for all h,
/// where p = sign * A^-1 g1; coefficients p/q with |p| <= max_num, 1 <= q <= max_den.
inline LaurentPoly random_invariant_poly(const PointGroup& group, const Dilation& d, const Exponent& g1, int sign,
                                         long radius, std::mt19937_64& rng, long max_num = 4, long max_den = 4) {
  const std::size_t n = d.dim();
  const IntMatrix& a = d.matrix();
  std::vector<Exponent> offsets;
  for (const auto& h : group.elements()) {
    // (I - h) p = sign * A^-1 (I - h) g1, integral when H is affiliated
    Exponent col = g1 - h * g1;
    auto x = a.solve_integer(col);
    require(x.has_value(), ErrorCode::NotAffiliated, "group is not affiliated to the dilation");
    Exponent o = *x;
    if (sign < 0) o = -o;
    offsets.push_back(o);
  }
  std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den), keep(0, 2);
  LaurentPoly t(n);
  std::set<Exponent> seen;
  Exponent g(n, -radius);
  while (true) {
    if (!seen.count(g)) {
      std::set<Exponent> orbit;
      for (std::size_t i = 0; i < group.order(); ++i) orbit.insert(group.elements()[i] * g + offsets[i]);
      seen.insert(orbit.begin(), orbit.end());
      if (keep(rng) != 0) {
        Scalar c(make_rational(num(rng), den(rng)));
        for (const auto& e : orbit) t.add_term(e, c);
      }
    }
    std::size_t i = n;
    while (i > 0 && g[i - 1] == radius) g[--i] = -radius;
    if (i == 0) break;
    ++g[i - 1];
  }
  return t;
}

/// Random bank with h-symmetric scaling masks (about 0) and wavelet masks symmetric about g1,
/// built by alternating dual and primal lifting steps from the lazy bank.
inline FilterBank random_symmetric_bank(const PointGroup& group, const Dilation& d, const Exponent& g1,
                                        std::mt19937_64& rng, int steps = 2, long radius = 1) {
  detail::check_q2(d, g1);
  detail::require_affiliated(group, d);
  FilterBank b = lazy_bank(d, g1);
  for (int s = 0; s < steps; ++s) {
    dual_lift(b, random_invariant_poly(group, d, g1, +1, radius, rng));
    primal_lift(b, random_invariant_poly(group, d, g1, -1, radius, rng));
  }
  return b;
}

}  // namespace modframe
