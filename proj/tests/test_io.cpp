#include <gtest/gtest.h>

#include "generators.hpp"
#include "modframe/io.hpp"

using namespace modframe;
using namespace modframe::testing;
using modframe::io::json;

namespace {

/// Serialize, print, parse back.
template <class T>
json through_text(const T& v) {
  return json::parse(io::to_json(v).dump());
}

bool parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::ParseError;
  }
  return false;
}

}  // namespace

TEST(IoScalar, BareRationalsAndObjects) {
  EXPECT_EQ(io::scalar_value(Scalar(make_rational(-3, 4)), false), json("-3/4"));
  EXPECT_EQ(io::scalar_from_value(json("5/6"), 1), Scalar(make_rational(5, 6)));
  EXPECT_EQ(io::scalar_from_value(json(7), 1), Scalar(7));
  Scalar s = Scalar(make_rational(1, 2), 1) + Scalar::sqrt_of(3);
  json v = io::scalar_value(s, true);
  ASSERT_TRUE(v.is_object());
  EXPECT_EQ(v.at("q"), 3);
  EXPECT_EQ(io::scalar_from_value(v, 1), s);
}

TEST(IoScalar, Rejections) {
  EXPECT_TRUE(parse_error([] { io::scalar_from_value(json(0.5), 1); }));
  EXPECT_TRUE(parse_error([] { io::scalar_from_value(json{{"re", "1"}, {"re_s", "1"}}, 1); }));
  EXPECT_TRUE(parse_error([] { io::scalar_from_value(json{{"re", "1"}, {"re_s", "1"}, {"q", 0}}, 1); }));
}

TEST(IoExponent, Parsing) {
  EXPECT_EQ(io::parse_exponent("1,0"), (Exponent{1, 0}));
  EXPECT_EQ(io::parse_exponent("-3"), (Exponent{-3}));
  EXPECT_TRUE(parse_error([] { io::parse_exponent("1,x"); }));
  EXPECT_TRUE(parse_error([] { io::parse_exponent(""); }));
  EXPECT_EQ(io::exponent_from_json(json(4)), (Exponent{4}));
  EXPECT_TRUE(parse_error([] { io::exponent_from_json(json("4")); }));
}

TEST(IoRoundTrip, LaurentPolynomialsAndMatrices) {
  Rng rng(173);
  for (int t = 0; t < 50; ++t) {
    LaurentPoly a = random_laurent(rng, 1 + t % 3, 5, 3, t % 2 == 0);
    EXPECT_EQ(io::laurent_from_json(through_text(a)), a);
  }
  LaurentPoly surd = LaurentPoly::monomial({1}, Scalar::sqrt_of(2)) + LaurentPoly::constant(1, 1);
  EXPECT_EQ(io::laurent_from_json(through_text(surd)), surd);
  // different radicands on different terms are kept per term
  LaurentPoly mixed = LaurentPoly::monomial({1}, Scalar::sqrt_of(2)) + LaurentPoly::monomial({2}, Scalar::sqrt_of(3));
  EXPECT_EQ(io::laurent_from_json(through_text(mixed)), mixed);

  LaurentMatrix m = random_unimodular(rng, 3, 4);
  EXPECT_EQ(io::laurent_matrix_from_json(through_text(m)), m);
}

TEST(IoRoundTrip, Vectors) {
  Rng rng(179);
  for (int t = 0; t < 50; ++t) {
    FinSeq v = random_finseq(rng, 1 + t % 2, 6, true);
    EXPECT_EQ(io::finseq_from_json(through_text(v)), v);
    PiecewisePoly p = random_piecewise(rng);
    EXPECT_EQ(io::piecewise_from_json(through_text(p)), p);
    EXPECT_TRUE(io::is_piecewise(io::to_json(p)));
    EXPECT_FALSE(io::is_piecewise(io::to_json(v)));
  }
  PiecewisePoly s = Scalar::sqrt_of(2) * chi(0, make_rational(1, 2));
  EXPECT_EQ(std::get<PiecewisePoly>(io::vector_from_json(through_text(s))), s);
}

TEST(IoRoundTrip, MasksFamiliesPairsGroups) {
  auto [m, mt] = cdf53();
  EXPECT_EQ(io::mask_from_json(through_text(m)).coeffs, m.coeffs);
  Mask q(FinSeq::delta({0, 0}), Dilation(IntMatrix{{1, -1}, {1, 1}}));
  Mask back = io::mask_from_json(through_text(q));
  EXPECT_EQ(back.dilation, q.dilation);

  Rng rng(181);
  auto pair = remix_pair(random_unimodular(rng, 2, 3));
  auto p = io::pair_from_json<PiecewisePoly>(through_text(pair));
  EXPECT_EQ(p.primal.generators(), pair.primal.generators());
  EXPECT_EQ(p.dual.generators(), pair.dual.generators());
  EXPECT_TRUE(io::document_is_piecewise(io::to_json(pair)));

  GeneratorFamily<FinSeq> f({FinSeq::univariate(0, {1, 2})}, IntMatrix{{2}});
  auto g = io::family_from_json<FinSeq>(through_text(f));
  EXPECT_EQ(g.generators(), f.generators());
  EXPECT_EQ(g.lattice(), f.lattice());
  EXPECT_FALSE(io::document_is_piecewise(io::to_json(f)));

  PointGroup z4 = PointGroup::generated_by({IntMatrix{{0, 1}, {-1, 0}}});
  EXPECT_EQ(io::group_from_json(through_text(z4)), z4);
  EXPECT_EQ(io::group_from_json(json{{"generators", {{{0, 1}, {-1, 0}}}}}), z4);
}

TEST(IoErrors, MalformedDocuments) {
  EXPECT_TRUE(parse_error([] { io::family_from_json<FinSeq>(json{{"lattice", {{1}}}}); }));
  EXPECT_TRUE(parse_error([] { io::family_from_json<FinSeq>(json{{"generators", json::array()}}); }));
  EXPECT_TRUE(parse_error([] { io::mask_from_json(json{{"n", 1}, {"entries", json::array()}, {"A", {{1, 0}, {0, 2}}}}); }));
  EXPECT_TRUE(parse_error([] { io::read_json_file("/nonexistent/modframe.json"); }));
}

TEST(IoDigest, Fnv1aReferenceValues) {
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(io::fnv1a_hex("foobar"), "85944171f73967e8");
}
