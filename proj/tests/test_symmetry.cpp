#include <gtest/gtest.h>

#include <functional>

#include "generators.hpp"

using namespace modframe;
using namespace modframe::testing;

namespace {

const IntMatrix quincunx{{1, -1}, {1, 1}};
const IntMatrix rotation{{0, 1}, {-1, 0}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

Mask centered_hat_mask() {
  Scalar s = Scalar(1) / Scalar::sqrt_of(2);
  return Mask(s * FinSeq::univariate(-1, {rq(1, 2), 1, rq(1, 2)}), Dilation::scalar(2));
}

std::vector<Rational> origin(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

}  // namespace

TEST(PointGroup, Validation) {
  EXPECT_EQ(PointGroup::sign_group(2).order(), 2u);
  EXPECT_EQ(code_of([] { PointGroup({IntMatrix{{2}}, IntMatrix{{1}}}); }), ErrorCode::InvalidGroup);
  EXPECT_EQ(code_of([] { PointGroup({IntMatrix{{-1}}}); }), ErrorCode::InvalidGroup);
  EXPECT_EQ(code_of([] { PointGroup({IntMatrix::identity(2), IntMatrix{{1, 1}, {0, 1}}}); }), ErrorCode::InvalidGroup);
  EXPECT_EQ(code_of([] { PointGroup({IntMatrix::identity(2), rotation}); }), ErrorCode::InvalidGroup);
  EXPECT_THROW(PointGroup({IntMatrix::identity(1), IntMatrix::identity(2)}), Error);
}

TEST(PointGroup, GeneratedBy) {
  PointGroup z4 = PointGroup::generated_by({rotation});
  EXPECT_EQ(z4.order(), 4u);
  EXPECT_TRUE(z4.contains(-IntMatrix::identity(2)));
  EXPECT_EQ(PointGroup::generated_by({IntMatrix{{0, 1}, {1, 0}}, -IntMatrix::identity(2)}).order(), 4u);
  EXPECT_EQ(code_of([] { PointGroup::generated_by({IntMatrix{{1, 1}, {0, 1}}}, 64); }), ErrorCode::InvalidGroup);
  // listing order and duplicates do not matter
  EXPECT_EQ(PointGroup({-IntMatrix::identity(2), IntMatrix::identity(2), IntMatrix::identity(2)}),
            PointGroup::sign_group(2));
}

TEST(Affiliation, Examples) {
  PointGroup pm1 = PointGroup::sign_group(1);
  EXPECT_TRUE(verify_affiliated(pm1, Dilation::scalar(2)).holds());
  EXPECT_TRUE(verify_affiliated(pm1, Dilation::scalar(-2)).holds());
  EXPECT_FALSE(verify_affiliated(pm1, Dilation::scalar(3)).holds());
  EXPECT_TRUE(verify_affiliated(PointGroup::sign_group(2), Dilation(quincunx)).holds());

  auto r = verify_affiliated(PointGroup::sign_group(2), Dilation(IntMatrix{{3, 0}, {0, 3}}));
  EXPECT_FALSE(r.holds());
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.commutes);
    EXPECT_EQ(c.coset, c.h == IntMatrix::identity(2));
  }
  EXPECT_THROW(verify_affiliated(pm1, Dilation(quincunx)), Error);
}

TEST(Affiliation, CommutationFailureIsReported) {
  // the swap commutes with 2I but not with [[0,2],[1,0]]
  PointGroup swap({IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}});
  auto r = verify_affiliated(swap, Dilation(IntMatrix{{0, 2}, {1, 0}}));
  EXPECT_FALSE(r.holds());
  EXPECT_TRUE(std::any_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return !c.commutes; }));
}

TEST(Affiliation, MonotoneUnderSubgroups) {
  for (const auto& f : canonical_forms_2d()) {
    ASSERT_TRUE(verify_affiliated(f.h, f.a).holds());
    for (const auto& h : f.h.elements()) {
      PointGroup sub = PointGroup::generated_by({h});
      EXPECT_TRUE(verify_affiliated(sub, f.a).holds());
    }
  }
}

TEST(Classification, TableContents) {
  auto t = canonical_forms_2d();
  std::size_t z2 = 0, z4 = 0;
  for (const auto& f : t) {
    EXPECT_EQ(f.a.q(), 2);
    EXPECT_TRUE(verify_affiliated(f.h, f.a).holds()) << f.a.matrix().to_string();
    if (f.group == "Z/2") {
      ++z2;
      EXPECT_EQ(f.h, PointGroup::sign_group(2));
    } else {
      ++z4;
      EXPECT_EQ(f.group, "Z/4");
      EXPECT_TRUE(f.h.contains(rotation));
    }
  }
  EXPECT_EQ(z2, 6u);
  EXPECT_EQ(z4, 2u);
  EXPECT_TRUE(std::any_of(t.begin(), t.end(),
                          [](const auto& f) { return f.group == "Z/4" && f.a.matrix() == quincunx; }));
}

TEST(Classification, ConjugatorCheck) {
  IntMatrix swap{{0, 1}, {1, 0}};
  EXPECT_TRUE(conjugates_to(swap, IntMatrix{{0, 2}, {1, 0}}, IntMatrix{{0, 1}, {2, 0}}));
  EXPECT_FALSE(conjugates_to(swap, IntMatrix{{0, 2}, {1, 0}}, IntMatrix{{0, 2}, {1, 0}}));
  EXPECT_FALSE(conjugates_to(IntMatrix{{2, 0}, {0, 1}}, quincunx, quincunx));
  EXPECT_TRUE(conjugates_to(IntMatrix::identity(2), quincunx, quincunx));
}

TEST(MaskSymmetry, Examples) {
  PointGroup pm1 = PointGroup::sign_group(1);
  EXPECT_TRUE(mask_symmetry_check(centered_hat_mask(), pm1, origin(1)));
  EXPECT_FALSE(mask_symmetry_check(haar_mask(), pm1, origin(1)));
  EXPECT_TRUE(mask_symmetry_check(haar_mask(), pm1, {make_rational(1, 2)}));
  auto [m, mt] = cdf53();
  EXPECT_TRUE(mask_symmetry_check(m, pm1, origin(1)));
  EXPECT_TRUE(mask_symmetry_check(mt, pm1, origin(1)));
}

TEST(MaskSymmetry, Errors) {
  PointGroup pm1 = PointGroup::sign_group(1);
  EXPECT_EQ(code_of([&] { mask_symmetry_check(haar_mask(), pm1, {make_rational(1, 3)}); }),
            ErrorCode::IncompatibleCenter);
  Mask m3(FinSeq::delta({0}), Dilation::scalar(3));
  EXPECT_EQ(code_of([&] { mask_symmetry_check(m3, pm1, origin(1)); }), ErrorCode::NotAffiliated);
  EXPECT_THROW(mask_symmetry_check(haar_mask(), pm1, origin(2)), Error);
}

TEST(SymmetricWavelet, Examples) {
  PointGroup pm1 = PointGroup::sign_group(1);
  auto [m, mt] = cdf53();
  auto w = wavelet_q2_masks(m, mt, {1});
  EXPECT_TRUE(symmetric_wavelet_verify(w.w, pm1, {1}));
  EXPECT_TRUE(symmetric_wavelet_verify(w.wt, pm1, {1}));
  // the Haar wavelet is antisymmetric about 1/2
  auto h = wavelet_q2_masks(haar_mask(), haar_mask(), {1});
  EXPECT_FALSE(symmetric_wavelet_verify(h.w, pm1, {1}));
  EXPECT_THROW(symmetric_wavelet_verify(w.w, pm1, {1, 0}), Error);
}

TEST(SymmetricWavelet, MatchesDirectCoefficientComparison) {
  Rng rng(151);
  PointGroup pm1 = PointGroup::sign_group(1);
  for (int t = 0; t < 50; ++t) {
    Mask w(random_finseq(rng, 1, 5), Dilation::scalar(2));
    bool direct = true;
    for (long k = -12; k <= 12; ++k) direct = direct && w.coeffs.at({1 - k}) == w.coeffs.at({1 + k});
    EXPECT_EQ(symmetric_wavelet_verify(w, pm1, {1}), direct);
  }
}

TEST(Lifting, OneDimensionalBanksAreSymmetric) {
  Rng rng(157);
  PointGroup pm1 = PointGroup::sign_group(1);
  Dilation two = Dilation::scalar(2);
  for (int t = 0; t < 20; ++t) {
    FilterBank b = random_symmetric_bank(pm1, two, {1}, rng, 1 + t % 3);
    ASSERT_TRUE(mask_symmetry_check(b.m, pm1, origin(1)));
    ASSERT_TRUE(mask_symmetry_check(b.mt, pm1, origin(1)));
    auto w = wavelet_q2_masks(b.m, b.mt, {1});
    EXPECT_TRUE(w.perfect_reconstruction);
    EXPECT_TRUE(symmetric_wavelet_verify(w.w, pm1, {1}));
    EXPECT_TRUE(symmetric_wavelet_verify(w.wt, pm1, {1}));
    EXPECT_TRUE(symmetric_wavelet_verify(b.w, pm1, {1}));
  }
}

TEST(Lifting, PlanarBanksAreSymmetric) {
  Rng rng(163);
  for (const auto& f : canonical_forms_2d()) {
    Exponent g1 = nonzero_digit(f.a);
    for (int t = 0; t < 3; ++t) {
      FilterBank b = random_symmetric_bank(f.h, f.a, g1, rng);
      ASSERT_TRUE(mask_symmetry_check(b.m, f.h, origin(2)));
      auto w = wavelet_q2_masks(b.m, b.mt, g1);
      EXPECT_TRUE(w.perfect_reconstruction);
      EXPECT_TRUE(symmetric_wavelet_verify(w.w, f.h, g1)) << f.a.matrix().to_string();
      EXPECT_TRUE(symmetric_wavelet_verify(w.wt, f.h, g1)) << f.a.matrix().to_string();
    }
  }
}

TEST(Lifting, RejectsUnaffiliatedGroups) {
  Rng rng(167);
  PointGroup swap({IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}});
  EXPECT_EQ(code_of([&] { random_symmetric_bank(swap, Dilation(IntMatrix{{0, 2}, {1, 0}}), {1, 0}, rng); }),
            ErrorCode::NotAffiliated);
}
