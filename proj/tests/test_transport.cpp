#include <gtest/gtest.h>

#include "helpers.hpp"
#include "metext/sampling.hpp"
#include "metext/transport.hpp"

using namespace metext;

namespace {

Distribution dist(std::vector<std::pair<std::size_t, Scalar>> w) { return Distribution::make(w); }

std::vector<TransportPlan> vertices(const Distribution& mu, const Distribution& nu, std::size_t n) {
  std::vector<TransportPlan> out;
  fiber_vertices(mu, nu, n, [&](const TransportPlan& p) { out.push_back(p); return true; });
  return out;
}

}  // namespace

TEST(Distribution, Invariants) {
  const auto d = dist({{1, Scalar(1, 2)}, {0, Scalar(1, 4)}, {1, Scalar(1, 4)}, {2, Scalar(0)}});
  EXPECT_EQ(d.support(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.mass_at(1), Scalar(3, 4));
  EXPECT_EQ(d.mass_at(2), Scalar(0));
  EXPECT_THROW(dist({{0, Scalar(1, 2)}}), UnbalancedMass);
  EXPECT_THROW(dist({{0, Scalar(3, 2)}, {1, Scalar(-1, 2)}}), InputError);
}

TEST(Transport, Integrate) {
  const PointFunction phi{Scalar(0), Scalar(1)};
  EXPECT_EQ(integrate(phi, Distribution::point_mass(1)), Scalar(1));
  EXPECT_EQ(integrate(phi, dist({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}})), Scalar(1, 2));
  EXPECT_EQ(integrate(PointFunction{Scalar(7), Scalar(7)}, dist({{0, Scalar(1, 3)}, {1, Scalar(2, 3)}})), Scalar(7));
}

TEST(Transport, KantorovichExamples) {
  const auto X = test::two_points("5");
  auto r = kantorovich(X, Distribution::point_mass(0), Distribution::point_mass(1));
  EXPECT_EQ(r.value, Scalar(5));
  EXPECT_EQ(r.plan, Distribution::point_mass(1));  // (x,y) has product index 1

  const auto Y = test::two_points("1");
  const auto uniform = dist({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}});
  EXPECT_EQ(kantorovich(Y, uniform, Distribution::point_mass(0)).value, Scalar(1, 2));
  r = kantorovich(Y, uniform, uniform);
  EXPECT_EQ(r.value, Scalar(0));
  EXPECT_EQ(r.plan, dist({{0, Scalar(1, 2)}, {3, Scalar(1, 2)}}));
}

// On two points the optimal cost is |mu(x) - nu(x)| d(x,y).
TEST(Transport, TwoPointClosedForm) {
  Sampler rng(21);
  for (int k = 0; k < 100; ++k) {
    const auto X = rng.space(2, 3, 9);
    const auto mu = rng.distribution(2, 2, 7), nu = rng.distribution(2, 2, 7);
    EXPECT_EQ(kantorovich(X, mu, nu).value, abs(mu.mass_at(0) - nu.mass_at(0)) * X(0, 1));
  }
}

TEST(Transport, VertexExamples) {
  const auto uniform = dist({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}});
  EXPECT_EQ(vertices(Distribution::point_mass(0), Distribution::point_mass(1), 2).size(), 1u);
  const auto v = vertices(uniform, Distribution::point_mass(0), 2);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], dist({{0, Scalar(1, 2)}, {2, Scalar(1, 2)}}));
  const auto w = vertices(uniform, uniform, 2);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NE(w[0], w[1]);
}

TEST(Transport, VertexCap) {
  std::vector<std::pair<std::size_t, Scalar>> five;
  for (std::size_t i = 0; i < 5; ++i) five.emplace_back(i, Scalar(1, 5));
  EXPECT_THROW(vertices(dist(five), dist(five), 5), CapExceeded);
}

TEST(Transport, UnbalancedIsRejected) {
  const auto X = test::two_points("1");
  EXPECT_THROW(kantorovich(X, Distribution::point_mass(0), Distribution::point_mass(3)), InputError);
}

TEST(Transport, GluePlans) {
  const auto X = test::space({"x", "y", "z"}, {{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
  const auto a = Distribution::point_mass(0), b = Distribution::point_mass(1), c = Distribution::point_mass(2);
  const auto g = glue_plans(kantorovich(X, a, b).plan, kantorovich(X, b, c).plan, 3);
  EXPECT_EQ(g, Distribution::point_mass(2));  // unit flow on (x,z)

  Sampler rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto mu = rng.distribution(3, 3, 5), nu = rng.distribution(3, 3, 5);
    const auto p = kantorovich(X, mu, nu).plan;
    const auto diag = kantorovich(X, nu, nu).plan;
    EXPECT_EQ(glue_plans(p, diag, 3), p);
  }
  EXPECT_THROW(glue_plans(kantorovich(X, a, b).plan, kantorovich(X, c, a).plan, 3), InputError);
}

TEST(Transport, DualCertificates) {
  Sampler rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto X = rng.space(4, 2, 7);
    const auto mu = rng.distribution(4, 4, 6), nu = rng.distribution(4, 4, 6);
    const auto r = kantorovich(X, mu, nu);
    EXPECT_TRUE(certify_optimality(X, mu, nu, r.plan, kantorovich_dual(X, mu, nu, r.plan)).ok());
  }
}

TEST(Transport, CorruptedSolverIsDetectable) {
  const auto X = test::space({"a", "b", "c"}, {{"0", "1/2", "3/4"}, {"1/2", "0", "1/3"}, {"3/4", "1/3", "0"}});
  const auto mu = dist({{1, Scalar(1, 2)}, {2, Scalar(1, 2)}}), nu = dist({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}});
  const auto good = kantorovich(X, mu, nu), bad = kantorovich(X, mu, nu, {.corrupt_northwest_corner = true});
  EXPECT_EQ(good.value, Scalar(3, 8));
  EXPECT_EQ(bad.value, Scalar(5, 12));
  EXPECT_FALSE(certify_optimality(X, mu, nu, bad.plan, kantorovich_dual(X, mu, nu, good.plan)).ok());
}
