#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "metext/sampling.hpp"
#include "metext/space_io.hpp"

using namespace metext;

namespace {

Axiom axiom_of(std::vector<std::string> labels, std::vector<std::vector<std::string>> m,
               MetricMode mode = MetricMode::metric, std::optional<std::string> base = std::nullopt) {
  std::vector<std::vector<Scalar>> rows;
  for (auto& r : m) {
    rows.emplace_back();
    for (auto& v : r) rows.back().push_back(Scalar::parse(v));
  }
  auto r = validate_space(std::move(labels), std::move(rows), mode, std::move(base));
  EXPECT_TRUE(std::holds_alternative<Violation>(r));
  return std::get<Violation>(r).axiom;
}

}  // namespace

TEST(Validate, AcceptsMetric) {
  const auto X = test::two_points("5");
  EXPECT_EQ(X.size(), 2u);
  EXPECT_EQ(X(0, 1), Scalar(5));
  EXPECT_EQ(X.index_of("y"), std::optional<std::size_t>(1));
  EXPECT_FALSE(X.index_of("z"));
}

TEST(Validate, NamesEachAxiom) {
  EXPECT_EQ(axiom_of({"x", "y"}, {{"0", "1"}}), Axiom::non_square);
  EXPECT_EQ(axiom_of({"x", "x"}, {{"0", "1"}, {"1", "0"}}), Axiom::duplicate_label);
  EXPECT_EQ(axiom_of({"x", "y"}, {{"0", "-1"}, {"-1", "0"}}), Axiom::negative_entry);
  EXPECT_EQ(axiom_of({"x", "y"}, {{"0", "1"}, {"2", "0"}}), Axiom::asymmetry);
  EXPECT_EQ(axiom_of({"x", "y"}, {{"1", "1"}, {"1", "0"}}), Axiom::nonzero_diagonal);
  EXPECT_EQ(axiom_of({"x", "y"}, {{"0", "0"}, {"0", "0"}}), Axiom::separation);
  EXPECT_EQ(axiom_of({"x", "y"}, {{"0", "1"}, {"1", "0"}}, MetricMode::metric, "q"), Axiom::bad_basepoint);
}

TEST(Validate, TriangleViolationNamesTriple) {
  std::vector<std::vector<Scalar>> m{{Scalar(0), Scalar(1), Scalar(5)},
                                     {Scalar(1), Scalar(0), Scalar(1)},
                                     {Scalar(5), Scalar(1), Scalar(0)}};
  auto r = validate_space({"x", "y", "z"}, m, MetricMode::metric, std::nullopt);
  ASSERT_TRUE(std::holds_alternative<Violation>(r));
  const auto& v = std::get<Violation>(r);
  EXPECT_EQ(v.axiom, Axiom::triangle);
  EXPECT_NE(v.message.find("d(x,z)"), std::string::npos);
}

TEST(Validate, PseudometricAllowsZeroDistance) {
  const auto X = test::space({"u", "v"}, {{"0", "0"}, {"0", "0"}}, MetricMode::pseudometric);
  EXPECT_TRUE(X(0, 1).is_zero());
}

TEST(SpaceIo, ParseErrorsNameTheField) {
  auto msg = [](const char* text) {
    try {
      parse_space_document(nlohmann::json::parse(text));
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(msg(R"({"matrix": []})").find("space.points"), std::string::npos);
  EXPECT_NE(msg(R"({"points": ["x"], "matrix": [["zero"]]})").find("space.matrix[0][0]"), std::string::npos);
  EXPECT_NE(msg(R"({"points": ["x"], "matrix": [["0"]], "mode": "ultra"})").find("space.mode"), std::string::npos);
}

TEST(SpaceIo, CanonicalFormRoundTrips) {
  Sampler rng(3);
  for (int k = 0; k < 30; ++k) {
    const auto X = rng.space(rng.index(1, 5), static_cast<long>(rng.index(1, 5)), 9,
                             k % 2 ? MetricMode::metric : MetricMode::pseudometric, k % 3 == 0);
    const std::string text = format_space(X);
    const auto again = std::get<FiniteMetricSpace>(validate_document(parse_space_document(nlohmann::json::parse(text))));
    EXPECT_EQ(format_space(again), text);
    EXPECT_EQ(again.pair_table(), X.pair_table());
  }
}

TEST(SpaceIo, LabelsAreEscaped) {
  const auto X = test::space({"a\"b", "c\\d"}, {{"0", "1"}, {"1", "0"}});
  const auto text = format_space(X);
  const auto back = std::get<FiniteMetricSpace>(validate_document(parse_space_document(nlohmann::json::parse(text))));
  EXPECT_EQ(back.label(0), "a\"b");
  EXPECT_EQ(back.label(1), "c\\d");
}

TEST(PointMaps, ProductStructure) {
  const auto P = product_space(3);
  EXPECT_EQ(P.size(), 9u);
  for (std::size_t k = 0; k < 9; ++k) {
    EXPECT_EQ(P.swap(P.swap(k)), k);
    EXPECT_EQ(P.pr1(P.swap(k)), P.pr2(k));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(P.pr1(P.diagonal(i)), i);
    EXPECT_EQ(P.pr2(P.diagonal(i)), i);
  }
  EXPECT_EQ(compose(P.pr1, P.diagonal), PointMap::identity(3));
}

TEST(PointMaps, PullBackAndInjectivity) {
  const auto m = PointMap::make(2, 3, {2, 0});
  EXPECT_TRUE(m.injective());
  EXPECT_FALSE(PointMap::make(2, 3, {1, 1}).injective());
  EXPECT_EQ(m.pull_back({Scalar(1), Scalar(2), Scalar(3)}), (PointFunction{Scalar(3), Scalar(1)}));
  EXPECT_THROW(PointMap::make(2, 3, {0, 3}), InputError);
}

TEST(Sampling, SpacesAreValidAndDeterministic) {
  Sampler a(11), b(11);
  for (int k = 0; k < 20; ++k) {
    const auto X = a.space(4, 3, 7);
    const auto Y = b.space(4, 3, 7);
    EXPECT_EQ(X.pair_table(), Y.pair_table());
  }
}
