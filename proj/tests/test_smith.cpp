#include <gtest/gtest.h>

#include "generators.hpp"

using namespace modframe;
using namespace modframe::testing;

namespace {

LaurentPoly z(long e = 1, const Scalar& c = 1) { return LaurentPoly::monomial({e}, c); }
LaurentPoly one() { return LaurentPoly::one(1); }

bool normalized(const LaurentPoly& d) {
  return d.is_zero() || (min_exponent(d) == 0 && d.coeff({max_exponent(d)}) == Scalar(1));
}

void expect_smith(const LaurentMatrix& m) {
  SmithForm s = smith_normal_form_1d(m);
  EXPECT_EQ(s.left * m * s.right, s.diagonal);
  EXPECT_TRUE(is_unit(determinant(s.left)));
  EXPECT_TRUE(is_unit(determinant(s.right)));
  const std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
      if (i != j) EXPECT_TRUE(s.diagonal(i, j).is_zero());
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_TRUE(normalized(s.diagonal(i, i))) << s.diagonal(i, i);
    if (i + 1 < k && !s.diagonal(i + 1, i + 1).is_zero())
      EXPECT_TRUE(divides_1d(s.diagonal(i, i), s.diagonal(i + 1, i + 1)));
    if (i + 1 < k && s.diagonal(i, i).is_zero()) EXPECT_TRUE(s.diagonal(i + 1, i + 1).is_zero());
  }
}

}  // namespace

TEST(Division, EuclideanRemainderIsShorter) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    LaurentPoly a = random_laurent_1d(rng, -2, 5), b = random_laurent_1d(rng, -1, 2);
    if (b.is_zero()) continue;
    Division d = divide_1d(a, b);
    EXPECT_EQ(d.quotient * b + d.remainder, a);
    if (!d.remainder.is_zero()) EXPECT_LT(degree_span(d.remainder), degree_span(b));
  }
  EXPECT_THROW(divide_1d(one(), LaurentPoly(1)), Error);
  EXPECT_THROW(divide_1d(LaurentPoly::one(2), LaurentPoly::one(2)), Error);
}

TEST(Smith, IdentityAndUnits) {
  SmithForm s = smith_normal_form_1d(LaurentMatrix::identity(2, 1));
  EXPECT_TRUE(s.diagonal.is_identity());
  SmithForm d = smith_normal_form_1d(LaurentMatrix::diagonal({z(), LaurentPoly::constant(1, 3)}));
  EXPECT_TRUE(d.diagonal.is_identity());
}

TEST(Smith, NonUnitInvariantFactor) {
  LaurentMatrix m = LaurentMatrix::diagonal({one() + z(), one()});
  SmithForm s = smith_normal_form_1d(m);
  EXPECT_EQ(s.diagonal, LaurentMatrix::diagonal({one(), one() + z()}));
  expect_smith(m);
}

TEST(Smith, RandomMatricesSatisfyContract) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 3)), c = static_cast<std::size_t>(uniform(rng, 1, 3));
    expect_smith(random_laurent_matrix(rng, r, c, 3));
  }
}

TEST(Smith, RankDeficientMatrix) {
  LaurentPoly a = one() + z();
  LaurentMatrix m = LaurentMatrix::from_rows({{a, a * z()}, {a * z(-1), a}});
  SmithForm s = smith_normal_form_1d(m);
  EXPECT_EQ(s.diagonal(0, 0), a);
  EXPECT_TRUE(s.diagonal(1, 1).is_zero());
  expect_smith(m);
}

TEST(Smith, RejectsMultivariate) {
  EXPECT_THROW(smith_normal_form_1d(LaurentMatrix::identity(2, 2)), Error);
}

TEST(Completion, FirstRowAndMonomialDeterminant) {
  LaurentMatrix row = LaurentMatrix::from_rows({{one() + z(), LaurentPoly::constant(1, 2) + z()}});
  LaurentMatrix c = unimodular_complete_1d(row);
  EXPECT_EQ(c.block(0, 0, 1, 2), row);
  EXPECT_TRUE(is_unit(determinant(c)));

  LaurentMatrix single = LaurentMatrix::from_rows({{z(2)}});
  EXPECT_EQ(unimodular_complete_1d(single), single);
}

TEST(Completion, CommonFactorIsRejected) {
  LaurentMatrix row = LaurentMatrix::from_rows({{one() + z(), one() + z()}});
  try {
    unimodular_complete_1d(row);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
  }
}

TEST(Completion, RandomUnimodularRows) {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 4));
    LaurentMatrix row = random_unimodular(rng, d, 6).block(0, 0, 1, d);
    LaurentMatrix c = unimodular_complete_1d(row);
    EXPECT_EQ(c.block(0, 0, 1, d), row);
    EXPECT_TRUE(is_unit(determinant(c)));
  }
}

TEST(UnimodularInverse, ShearAndDiagonal) {
  LaurentMatrix shear = LaurentMatrix::from_rows({{one(), z()}, {LaurentPoly(1), one()}});
  EXPECT_EQ(unimodular_inverse(shear), LaurentMatrix::from_rows({{one(), -1 * z()}, {LaurentPoly(1), one()}}));
  EXPECT_EQ(unimodular_inverse(LaurentMatrix::diagonal({z(), z(-1)})), LaurentMatrix::diagonal({z(-1), z()}));
  LaurentMatrix hat = LaurentMatrix::from_rows({{LaurentPoly::univariate(-1, {Scalar(make_rational(1, 6)),
                                                                               Scalar(make_rational(2, 3)),
                                                                               Scalar(make_rational(1, 6))})}});
  EXPECT_THROW(unimodular_inverse(hat), Error);
}

TEST(UnimodularInverse, RandomProductsInvertExactly) {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    LaurentMatrix m = random_unimodular(rng, d, 5);
    LaurentMatrix inv = unimodular_inverse(m);
    EXPECT_TRUE((m * inv).is_identity());
    EXPECT_TRUE((inv * m).is_identity());
  }
}
