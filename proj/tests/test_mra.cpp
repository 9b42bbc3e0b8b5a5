#include <gtest/gtest.h>

#include "generators.hpp"

using namespace modframe;
using namespace modframe::testing;

namespace {

Scalar r(long p, long q = 1) { return Scalar(make_rational(p, q)); }
Scalar inv_sqrt(long a) { return Scalar(1) / Scalar::sqrt_of(a); }

}  // namespace

TEST(Dilation, Validation) {
  EXPECT_EQ(Dilation::scalar(2).q(), 2);
  EXPECT_EQ(Dilation(IntMatrix{{1, -1}, {1, 1}}).q(), 2);
  EXPECT_THROW(Dilation::scalar(1), Error);
  EXPECT_THROW(Dilation::scalar(-1), Error);
  EXPECT_THROW(Dilation(IntMatrix{{2, 0}, {0, 1}}), Error);  // det 2 but not expansive
  EXPECT_THROW(Dilation(IntMatrix{{1, 1}, {0, 2}}), Error);
  EXPECT_NO_THROW(Dilation(IntMatrix{{0, 2}, {1, 0}}));
}

TEST(Digits, Examples) {
  EXPECT_EQ(digits(Dilation::scalar(2)), (std::vector<Exponent>{{0}, {1}}));
  EXPECT_EQ(digits(Dilation::scalar(-3)), (std::vector<Exponent>{{-2}, {-1}, {0}}));
  EXPECT_EQ(digits(Dilation(IntMatrix{{2, 0}, {0, 2}})), (std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  // integer points of A [0,1)^2: A^-1 (0,1) = (1/2, 1/2)
  EXPECT_EQ(digits(Dilation(IntMatrix{{1, -1}, {1, 1}})), (std::vector<Exponent>{{0, 0}, {0, 1}}));
}

TEST(Digits, CompleteResidueSystems) {
  const std::vector<IntMatrix> mats{IntMatrix{{3}}, IntMatrix{{0, 2}, {1, 0}}, IntMatrix{{0, 2}, {-1, 1}},
                                    IntMatrix{{2, 1}, {0, 2}}, IntMatrix{{3, 0}, {0, 3}}, IntMatrix{{1, -2}, {2, 1}}};
  for (const auto& a : mats) {
    Dilation d(a);
    auto ds = digits(d);
    EXPECT_EQ(static_cast<long>(ds.size()), d.q()) << a.to_string();
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = i + 1; j < ds.size(); ++j) EXPECT_FALSE(a.contains_in_lattice(ds[i] - ds[j]));
    EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
  }
}

TEST(Refinement, Examples) {
  EXPECT_EQ(refinement_solve(chi(0, 1), 2).coeffs, haar_mask().coeffs);
  EXPECT_EQ(refinement_solve(chi(0, 1), 3).coeffs, inv_sqrt(3) * FinSeq::univariate(0, {1, 1, 1}));
  Scalar c = Scalar(1) / (Scalar(2) * Scalar::sqrt_of(2));
  EXPECT_EQ(refinement_solve(shift(PiecewisePoly::hat(), -1L), 2).coeffs,
            FinSeq::univariate(-1, {c, inv_sqrt(2), c}));
  try {
    refinement_solve(chi(make_rational(1, 3), make_rational(4, 3)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRefinable);
  }
}

TEST(Refinement, IdentityHoldsForSplines) {
  // cardinal B-splines of orders 1, 2, 3 are refinable for every integer dilation
  PiecewisePoly quadratic = PiecewisePoly::from_pieces(
      {0, 1, 2, 3}, {{0, 0, r(1, 2)}, {r(-3, 2), 3, -1}, {r(9, 2), -3, r(1, 2)}});
  for (const PiecewisePoly& b : {chi(0, 1), PiecewisePoly::hat(), quadratic})
    for (long a : {2L, 3L}) {
      Mask m = refinement_solve(b, a);
      PiecewisePoly rebuilt;
      for (const auto& [k, v] : m.coeffs.entries()) rebuilt = rebuilt + v * dilate_U(shift(b, k), a);
      EXPECT_EQ(rebuilt, b);
    }
  // quadratic spline, a = 2: binomial weights (1, 3, 3, 1) / 4 times 1/sqrt(2)
  Scalar c = inv_sqrt(2) * r(1, 4);
  EXPECT_EQ(refinement_solve(quadratic, 2).coeffs, FinSeq::univariate(0, {c, Scalar(3) * c, Scalar(3) * c, c}));
}

TEST(MaskBracket, Examples) {
  EXPECT_EQ(mask_bracket({0}, haar_mask()), LaurentPoly::constant(1, inv_sqrt(2)));
  EXPECT_EQ(mask_bracket({1}, haar_mask()), LaurentPoly::constant(1, inv_sqrt(2)));
  Mask lazy(FinSeq::delta({0}), Dilation::scalar(2));
  EXPECT_EQ(mask_bracket({0}, lazy), LaurentPoly::one(1));
  EXPECT_TRUE(mask_bracket({1}, lazy).is_zero());
}

TEST(MaskBracket, MatchesFunctionBracket) {
  // a_i = <U nu_i phi, ~phi>_A, computed directly on the Haar scaling function
  PiecewisePoly phi = chi(0, 1);
  Mask m = refinement_solve(phi, 2);
  for (long i : {-1L, 0L, 1L, 2L}) EXPECT_EQ(mask_bracket({i}, m), bracket(dilate_U(shift(phi, i), 2), phi));
}

TEST(MaskBracket, PolyphaseComponentsOfCdf53) {
  auto [m, mt] = cdf53();
  for (long i : {0L, 1L}) {
    LaurentPoly expected(1);
    for (const auto& [k, c] : mt.coeffs.entries())
      if ((i - k[0]) % 2 == 0) expected.add_term({(i - k[0]) / 2}, c.conj());
    EXPECT_EQ(mask_bracket({i}, mt), expected);
  }
  EXPECT_TRUE(masks_biorthogonal(m, mt));
  EXPECT_FALSE(masks_biorthogonal(m, m));
}

TEST(WaveletFunction, Haar) {
  PiecewisePoly phi = chi(0, 1);
  auto w = wavelet_q2_function(phi, phi, {1});
  PiecewisePoly psi = chi(0, make_rational(1, 2)) - chi(make_rational(1, 2), 1);
  EXPECT_EQ(w.psi, psi);
  EXPECT_EQ(w.psit, psi);
  EXPECT_TRUE(w.phi_psit.is_zero());
  EXPECT_TRUE(w.phit_psi.is_zero());
  EXPECT_EQ(w.psi_psit, LaurentPoly::one(1));
  EXPECT_TRUE(w.verified);
  DualPair<PiecewisePoly> wp(GeneratorFamily<PiecewisePoly>({w.psi}), GeneratorFamily<PiecewisePoly>({w.psit}));
  EXPECT_TRUE(verify_dual_module_bases(wp).holds());
}

TEST(WaveletFunction, OtherOddCosetRepresentatives) {
  PiecewisePoly phi = chi(0, 1);
  for (long g : {-1L, 3L}) {
    auto w = wavelet_q2_function(phi, phi, {g});
    EXPECT_TRUE(w.verified);
    for (long s = -3; s <= 3; ++s) EXPECT_TRUE(inner_product(w.psi, shift(phi, s)).is_zero());
  }
}

TEST(WaveletFunction, Errors) {
  auto hat = PiecewisePoly::hat();
  try {
    wavelet_q2_function(hat, hat, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBiorthogonal);
  }
  try {
    wavelet_q2_function(chi(0, 1), chi(0, 1), {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadCoset);
  }
}

TEST(WaveletMasks, HaarLazyAndAgreement) {
  auto w = wavelet_q2_masks(haar_mask(), haar_mask(), {1});
  EXPECT_EQ(w.w.coeffs, inv_sqrt(2) * (FinSeq::delta({0}) - FinSeq::delta({1})));
  EXPECT_TRUE(w.perfect_reconstruction);
  auto f = wavelet_q2_function(chi(0, 1), chi(0, 1), {1});
  EXPECT_EQ(refinement_solve(chi(0, 1), 2).coeffs, haar_mask().coeffs);
  EXPECT_EQ(expand_in_dilated(f.psi, {chi(0, 1)}, 2)[0], w.w.coeffs);

  Mask lazy(FinSeq::delta({0}), Dilation::scalar(2));
  auto l = wavelet_q2_masks(lazy, lazy, {1});
  EXPECT_EQ(l.w.coeffs, FinSeq::delta({1}, -1));
  EXPECT_TRUE(l.perfect_reconstruction);
}

TEST(WaveletMasks, Cdf53) {
  auto [m, mt] = cdf53();
  auto w = wavelet_q2_masks(m, mt, {1});
  Scalar s = Scalar::sqrt_of(2);
  EXPECT_EQ(w.w.coeffs, s * FinSeq::univariate(-1, {r(1, 8), r(2, 8), r(-6, 8), r(2, 8), r(1, 8)}));
  EXPECT_EQ(w.wt.coeffs, s * FinSeq::univariate(0, {r(1, 4), r(-1, 2), r(1, 4)}));
  EXPECT_TRUE(w.perfect_reconstruction);
  EXPECT_TRUE(pr_by_summation({m.coeffs, w.w.coeffs}, {mt.coeffs, w.wt.coeffs}, IntMatrix{{2}}));
}

TEST(WaveletMasks, Errors) {
  Mask m3(FinSeq::delta({0}), Dilation::scalar(3));
  EXPECT_THROW(wavelet_q2_masks(m3, m3, {1}), Error);
  EXPECT_THROW(wavelet_q2_masks(haar_mask(), haar_mask(), {0}), Error);
  auto [m, mt] = cdf53();
  try {
    wavelet_q2_masks(m, m, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBiorthogonal);
  }
}

TEST(WaveletMasks, QuincunxLiftedBanks) {
  Rng rng(131);
  Dilation q(IntMatrix{{1, -1}, {1, 1}});
  for (int t = 0; t < 5; ++t) {
    FilterBank b = random_symmetric_bank(PointGroup::sign_group(2), q, {1, 0}, rng);
    auto w = wavelet_q2_masks(b.m, b.mt, {1, 0});
    EXPECT_TRUE(w.perfect_reconstruction);
    EXPECT_TRUE(pr_by_summation({b.m.coeffs, w.w.coeffs}, {b.mt.coeffs, w.wt.coeffs}, q.matrix()));
  }
}

TEST(Completion1d, RedundantPair) {
  using P = PiecewisePoly;
  DualPair<P> p(GeneratorFamily<P>({chi(0, 1), shift(chi(0, 1), 1L)}), GeneratorFamily<P>({chi(0, 1), P()}));
  auto c = biorthogonal_completion_1d(p);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(verify_dual_module_bases(c).holds());
  // the new generator spans the same module as chi_[0,1)
  EXPECT_EQ(reconstruct(chi(0, 1), c.primal, c.dual), chi(0, 1));
  EXPECT_EQ(parseval_compact_check(c.primal[0]).verdict, ParsevalVerdict::orthonormal);
}

TEST(Completion1d, BiorthogonalInputKeepsRank) {
  Rng rng(137);
  for (int t = 0; t < 5; ++t) {
    auto p = remix_pair(random_unimodular(rng, 2, 3));
    auto c = biorthogonal_completion_1d(p);
    EXPECT_EQ(c.size(), 2u);
    EXPECT_TRUE(verify_dual_module_bases(c).holds());
  }
}

TEST(Completion1d, MutualReconstructionOnRandomRedundantFrames) {
  Rng rng(139);
  for (int t = 0; t < 8; ++t) {
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 2));
    auto base = remix_pair(random_unimodular(rng, d, 2));
    auto red = redundant_pair(base, random_laurent_matrix(rng, 1, d, 1), random_laurent_matrix(rng, 1, d, 1));
    auto c = biorthogonal_completion_1d(red);
    EXPECT_EQ(c.size(), d);
    EXPECT_TRUE(verify_dual_module_bases(c).holds());
    for (const auto& g : red.primal.generators()) EXPECT_EQ(reconstruct(g, c.dual, c.primal), g);
    for (const auto& g : red.dual.generators()) EXPECT_EQ(reconstruct(g, c.primal, c.dual), g);
    for (const auto& g : c.primal.generators()) EXPECT_EQ(reconstruct(g, red.dual, red.primal), g);
  }
}

TEST(Completion1d, Errors) {
  using P = PiecewisePoly;
  P f = chi(0, 1) + shift(chi(0, 1), 1L);
  try {
    biorthogonal_completion_1d(DualPair<P>(GeneratorFamily<P>({f}), GeneratorFamily<P>({f})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDualFrames);
  }
  GeneratorFamily<FinSeq> two({FinSeq::delta({0, 0})});
  try {
    biorthogonal_completion_1d(DualPair<FinSeq>(two, two));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongDimension);
  }
  auto hat = GeneratorFamily<P>({P::hat()});
  EXPECT_THROW(biorthogonal_completion_1d(DualPair<P>(hat, hat)), Error);
}

TEST(WaveletSpace, HaarDyadicAndTriadic) {
  auto s = haar_pair();
  auto w2 = wavelet_space_presentation(s, Dilation::scalar(2));
  ASSERT_EQ(w2.size(), 1u);
  EXPECT_TRUE(verify_dual_module_bases(w2).holds());
  PiecewisePoly psi = chi(0, make_rational(1, 2)) - chi(make_rational(1, 2), 1);
  // equal to the Haar wavelet up to a unit of the Laurent ring
  LaurentPoly c = bracket(w2.primal[0], psi);
  EXPECT_TRUE(is_unit(c));
  EXPECT_EQ(act(c, psi), w2.primal[0]);

  auto w3 = wavelet_space_presentation(s, Dilation::scalar(3));
  ASSERT_EQ(w3.size(), 2u);
  EXPECT_TRUE(verify_dual_module_bases(w3).holds());
  for (const auto& g : w3.primal.generators()) {
    EXPECT_TRUE(bracket(g, chi(0, 1)).is_zero());
    EXPECT_GE(g.support_lo(), 0);
    EXPECT_LE(g.support_hi(), 1);
  }
  for (const auto& g : w3.dual.generators()) EXPECT_TRUE(bracket(g, chi(0, 1)).is_zero());
}

TEST(WaveletSpace, Errors) {
  using P = PiecewisePoly;
  auto shifted = GeneratorFamily<P>({chi(make_rational(1, 3), make_rational(4, 3))});
  EXPECT_THROW(wavelet_space_presentation(DualPair<P>(shifted, shifted), Dilation::scalar(2)), Error);
  auto hat = GeneratorFamily<P>({P::hat()});
  EXPECT_THROW(wavelet_space_presentation(DualPair<P>(hat, hat), Dilation::scalar(2)), Error);
}

TEST(Density, IntegralHeuristic) {
  EXPECT_TRUE(density_heuristic(chi(0, 1)));
  EXPECT_TRUE(density_heuristic(PiecewisePoly::hat()));
  EXPECT_FALSE(density_heuristic(chi(0, make_rational(1, 2)) - chi(make_rational(1, 2), 1)));
}
