#include <gtest/gtest.h>

#include "tsl/json_io.hpp"
#include "tsl/tsl.hpp"

using namespace tsl;

TEST(Json, RationalForms) {
  EXPECT_EQ(rational_from_json(json("-3/4")), Rational(-3, 4));
  EXPECT_EQ(rational_from_json(json(7)), Rational(7));
  EXPECT_EQ(rational_from_json(json::parse(R"({"num": "5", "den": "10"})")), Rational(1, 2));
  EXPECT_EQ(rational_from_json(json::parse(R"({"num": 2, "den": 3})")), Rational(2, 3));
  const Rational big = make_rational(Integer("123456789012345678901234567890"), Integer(7));
  EXPECT_EQ(rational_from_json(to_json(big)), big);
  EXPECT_THROW(rational_from_json(json(1.5)), Error);
  EXPECT_THROW(rational_from_json(json("1/0")), Error);
}

TEST(Json, GaussianForms) {
  EXPECT_EQ(gaussian_from_json(json("2")), Gaussian(Rational(2)));
  EXPECT_EQ(gaussian_from_json(json::parse(R"({"re": "1/2", "im": -1})")), Gaussian(Rational(1, 2), Rational(-1)));
}

TEST(Json, PolynomialRoundTrip) {
  const QPoly p{1, Rational(-5, 7), 0, 3};
  const json j = to_json(p, "s");
  EXPECT_EQ(qpoly_from_json(j.at("coefficients")), p);
  EXPECT_EQ(j.at("text"), p.to_string("s"));
  EXPECT_THROW(qpoly_from_json(json("1")), Error);
}

TEST(Json, SubsetRoundTrip) {
  const RationalSubset u(6, {0, 2, 5}, {1, 7}, {12});
  EXPECT_EQ(subset_from_json(to_json(u)), u);
  EXPECT_EQ(index_set_from_json(to_json(u)).subset(), u);
  EXPECT_THROW(index_set_from_json(json("primes")), Error);
}

TEST(Json, SpecTypes) {
  PrecisionScope scope(128);
  const auto same = [](const SeriesSpec& a, const SeriesSpec& b) {
    const CoefficientStream x(a), y(b);
    const int n = std::min(24, x.limit() ? static_cast<int>(*x.limit()) - 1 : 24);
    return x.prefix(n) == y.prefix(n);
  };
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "group", "orders": [2, 3]})")), SeriesSpec::free_product({2, 3})));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "rational", "num": [1], "den": [1, "-1/2"]})")),
                   SeriesSpec::rational(QPoly{1}, QPoly{1, Rational(-1, 2)})));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "coeffs", "values": [1, 2, "3/4"]})")),
                   SeriesSpec::explicit_coeffs({Rational(1), Rational(2), Rational(3, 4)})));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "oscillating", "U": {"h": 2, "residues": [0]}, "a": 2, "b": 3})")),
                   SeriesSpec::oscillating(IndexSet{RationalSubset(2, {0})}, Rational(2), Rational(3))));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "oscillating", "U": "squares", "a": 2, "b": 3})")),
                   SeriesSpec::oscillating(IndexSet{NamedIndexSet::squares}, Rational(2), Rational(3))));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "sqrt"})")), SeriesSpec::sqrt_fixture()));
  const auto machi = SeriesSpec::free_product({2, 3});
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "derivative", "order": 2, "inner": {"type": "group", "orders": [2, 3]}})")),
                   SeriesSpec::derivative(machi, 2)));
  EXPECT_TRUE(same(spec_from_json(json::parse(
                       R"({"type": "sum", "left": {"type": "group", "orders": [2, 3]}, "right": {"type": "rational", "num": [1], "den": [1, -1]}})")),
                   SeriesSpec::sum(machi, SeriesSpec::rational(QPoly{1}, QPoly{1, -1}))));
  EXPECT_TRUE(same(spec_from_json(json::parse(R"({"type": "rescale", "c": "3/2", "inner": {"type": "group", "orders": [2, 3]}})")),
                   SeriesSpec::rescale(machi, Rational(3, 2))));
  EXPECT_TRUE(same(spec_from_json(json::parse(
                       R"({"type": "section", "U": {"h": 2, "residues": [1]}, "inner": {"type": "group", "orders": [2, 3]}})")),
                   SeriesSpec::section(machi, RationalSubset(2, {1}))));
}

TEST(Json, MalformedSpecs) {
  for (const char* text : {R"({"type": "nope"})", R"({"orders": [2]})", R"({"type": "group"})",
                           R"({"type": "rational", "num": [1]})", R"({"type": "group", "orders": [1, 3]})"}) {
    try {
      spec_from_json(json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_input) << text;
    }
  }
}

TEST(Json, DualityReportShape) {
  PrecisionScope scope(256);
  const auto r = verify_duality(CoefficientStream(SeriesSpec::free_product({2, 3})));
  const json j = to_json(r);
  EXPECT_EQ(j.at("verdict"), "pass");
  EXPECT_EQ(j.at("series").at("h_P"), 2);
  EXPECT_EQ(rational_from_json(j.at("series").at("A_exact")), Rational(1, 2));
  EXPECT_EQ(qpoly_from_json(j.at("pole").at("delta_top_exact").at("coefficients")), (QPoly{Rational(-1, 2), 0, 1}));
  EXPECT_EQ(j.at("pole").at("matrix").at("entries").size(), 2u);
  EXPECT_EQ(j.at("checks").size(), r.checks.size());
  // round trip through text keeps everything
  EXPECT_EQ(json::parse(j.dump()), j);
}

TEST(Json, RealsCarryWorkingPrecision) {
  PrecisionScope scope(256);
  const std::string s = to_json(sqrt(Real(2))).get<std::string>();
  EXPECT_GE(s.size(), 70u);
  EXPECT_EQ(s.substr(0, 12), "1.4142135623");
}
