#include <gtest/gtest.h>

#include "helpers.hpp"
#include "metext/power.hpp"
#include "metext/sampling.hpp"

using namespace metext;

TEST(Power, LiftExamples) {
  const PointFunction phi{Scalar(1), Scalar(2)};
  EXPECT_EQ(power_lift(phi, Tuple{{0, 1}}, PNorm::finite(1u)), Scalar(3));
  EXPECT_EQ(power_lift(phi, Tuple{{0, 1}}, PNorm::max()), Scalar(2));
  EXPECT_EQ(power_lift(phi, Tuple{{0, 1}}, PNorm::finite(2u)), Scalar(5));
  const PointFunction zero{Scalar(0), Scalar(0)};
  for (auto norm : {PNorm::max(), PNorm::finite(1u), PNorm::finite(3u)})
    EXPECT_EQ(power_lift(zero, Tuple{{0, 0}}, norm), Scalar(0));
  EXPECT_THROW(power_lift(PointFunction{Scalar(-1)}, Tuple{{0}}, PNorm::max()), InputError);
}

TEST(Power, DistanceExamples) {
  const auto X = test::two_points("3");
  EXPECT_EQ(power_distance(X, Tuple{{0, 0}}, Tuple{{1, 1}}, PNorm::finite(2u)), Scalar(18));
  EXPECT_EQ(power_distance(X, Tuple{{0, 0}}, Tuple{{1, 1}}, PNorm::max()), Scalar(3));
  EXPECT_EQ(power_distance(X, Tuple{{0, 1}}, Tuple{{0, 1}}, PNorm::finite(3u)), Scalar(0));
  EXPECT_THROW(power_distance(X, Tuple{{0}}, Tuple{{0, 1}}, PNorm::max()), InputError);
  EXPECT_EQ(render_power_value(Scalar(18), PNorm::finite(2u), 6), "4.242640");
}

TEST(Power, NormParsing) {
  EXPECT_EQ(PNorm::finite(Scalar(2)).p(), 2u);
  EXPECT_THROW(PNorm::finite(Scalar(3, 2)), InputError);
  EXPECT_THROW(PNorm::finite(Scalar(0)), InputError);
  EXPECT_EQ(PNorm::max().str(), "max");
  EXPECT_EQ(PNorm::finite(3u).str(), "p:3");
}

TEST(Power, SingletonFiber) {
  std::vector<Tuple> seen;
  fiber_tuples(Tuple{{0, 1}}, Tuple{{1, 1}}, 2, [&](const Tuple& c) { seen.push_back(c); });
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0], (Tuple{{1, 3}}));
}

TEST(Power, RootBoundsEnclose) {
  const auto b = root_bounds(Scalar(2), 2, 30);
  EXPECT_LE(b.lower * b.lower, Scalar(2));
  EXPECT_GE(b.upper * b.upper, Scalar(2));
  EXPECT_EQ(b.upper - b.lower, Scalar(mpz_class(1), mpz_class("1" + std::string(30, '0'))));
  EXPECT_EQ(root_bounds(Scalar(9, 4), 2).lower, Scalar(3, 2));
  EXPECT_EQ(exact_root(Scalar(8, 27), 3), std::optional<Scalar>(Scalar(2, 3)));
  EXPECT_FALSE(exact_root(Scalar(2), 2));
}

TEST(Power, RootTriangleDecidesTightCases) {
  // sqrt(8) = sqrt(2) + sqrt(2): equality, decided through commensurable radicals.
  EXPECT_EQ(root_triangle(Scalar(8), Scalar(2), Scalar(2), 2), Verdict::holds);
  EXPECT_EQ(root_triangle(Scalar(9), Scalar(2), Scalar(2), 2), Verdict::violated);
  EXPECT_EQ(root_triangle(Scalar(5), Scalar(1), Scalar(1), 2), Verdict::violated);
  EXPECT_EQ(root_triangle(Scalar(4), Scalar(1), Scalar(1), 2), Verdict::holds);
  EXPECT_EQ(root_triangle(Scalar(27), Scalar(1), Scalar(8), 3), Verdict::holds);
  EXPECT_EQ(root_triangle(Scalar(0), Scalar(0), Scalar(0), 3), Verdict::holds);
}

TEST(Power, ExtensionOperatorOnlyForMaxOrLengthOne) {
  const PointFunction phi{Scalar(2), Scalar(3)};
  EXPECT_TRUE(check_extension_operator(PowerFunctor{3, PNorm::max()}, phi).ok());
  EXPECT_TRUE(check_extension_operator(PowerFunctor{1, PNorm::finite(2u)}, phi).ok());
  EXPECT_FALSE(check_extension_operator(PowerFunctor{2, PNorm::finite(1u)}, phi).ok());
}

TEST(Power, MetricAxiomsExhaustive) {
  Sampler rng(9);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto X = rng.space(n, 2, 6);
    for (auto norm : {PNorm::max(), PNorm::finite(1u), PNorm::finite(2u), PNorm::finite(3u)}) {
      const PowerFunctor F{2, norm};
      const auto r = check_pseudometric_axioms(F, all_tuples(n, 2), [&](const Tuple& a, const Tuple& b) {
        return power_distance(X, a, b, norm);
      });
      EXPECT_TRUE(r.ok()) << r.summary();
    }
  }
}
