#include <gtest/gtest.h>

#include "helpers.hpp"
#include "metext/hyperspace.hpp"
#include "metext/sampling.hpp"

using namespace metext;

namespace {

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Relations on an a×b grid with both projections onto, by inclusion-exclusion.
long onto_relations(long a, long b) {
  long total = 0;
  for (long i = 0; i <= a; ++i)
    for (long j = 0; j <= b; ++j) total += ((i + j) % 2 ? -1 : 1) * binom(a, i) * binom(b, j) * (1L << ((a - i) * (b - j)));
  return total;
}

std::size_t fiber_count(const Subset& A, const Subset& B, std::size_t n) {
  std::size_t count = 0;
  fiber_subsets(A, B, n, [&](const SubsetCoupling&) { ++count; return true; });
  return count;
}

}  // namespace

TEST(Hyperspace, SupLift) {
  const auto X = test::two_points("5");
  EXPECT_EQ(sup_lift(PointFunction{Scalar(0), Scalar(0)}, Subset{0, 1}), Scalar(0));
  EXPECT_EQ(sup_lift(X.pair_table(), Subset{0, 1}), Scalar(5));  // {(x,x),(x,y)}
  EXPECT_EQ(sup_lift(X.pair_table(), Subset{1}), Scalar(5));
}

TEST(Hyperspace, HausdorffExamples) {
  const auto X = test::two_points("5");
  EXPECT_EQ(hausdorff(X, Subset{0}, Subset{0, 1}), Scalar(5));
  EXPECT_EQ(hausdorff(X, Subset{0, 1}, Subset{0, 1}), Scalar(0));
  EXPECT_EQ(hausdorff(X, Subset{0}, Subset{1}), Scalar(5));
  EXPECT_THROW(hausdorff(X, Subset{}, Subset{0}), InputError);
  EXPECT_THROW(hausdorff(X, Subset{2}, Subset{0}), InputError);
}

TEST(Hyperspace, OptimalCoupling) {
  const auto X = test::two_points("5");
  EXPECT_EQ(optimal_coupling(X, Subset{0}, Subset{0, 1}), (Subset{0, 1}));
  const auto diag = optimal_coupling(X, Subset{0, 1}, Subset{0, 1});
  EXPECT_TRUE(diag.contains(0) && diag.contains(3));
  EXPECT_EQ(sup_lift(X.pair_table(), diag), Scalar(0));
}

TEST(Hyperspace, FiberCounts) {
  EXPECT_EQ(fiber_count(Subset{0}, Subset{1}, 2), 1u);
  EXPECT_EQ(fiber_count(Subset{0}, Subset{0, 1}, 2), 1u);
  EXPECT_EQ(fiber_count(Subset{0, 1}, Subset{0, 1}, 2), 7u);
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b) {
      Subset A, B;
      std::vector<std::size_t> pa, pb;
      for (std::size_t i = 0; i < a; ++i) pa.push_back(i);
      for (std::size_t j = 0; j < b; ++j) pb.push_back(j);
      EXPECT_EQ(static_cast<long>(fiber_count(Subset(pa), Subset(pb), 3)), onto_relations(a, b)) << a << "x" << b;
    }
}

TEST(Hyperspace, FiberCapEnforced) {
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  EXPECT_THROW(fiber_subsets(Subset(all), Subset(all), 5, [](const SubsetCoupling&) { return true; }), CapExceeded);
}

TEST(Hyperspace, MetricAxiomsOnRandomSpaces) {
  Sampler rng(5);
  const HyperspaceFunctor F;
  for (int k = 0; k < 10; ++k) {
    const auto X = rng.space(3, 2, 6);
    EXPECT_TRUE(check_pseudometric_axioms(F, all_subsets(3), [&](const Subset& a, const Subset& b) {
                  return hausdorff(X, a, b);
                }).ok());
  }
}

TEST(Hyperspace, FiberInvariants) {
  Sampler rng(6);
  const HyperspaceFunctor F;
  const auto X = rng.space(3, 1, 5);
  for (const auto& a : all_subsets(3))
    for (const auto& b : all_subsets(3)) {
      const auto r = check_fiber_invariants(F, 3, X.pair_table(), a, b);
      EXPECT_TRUE(r.ok()) << r.summary() << (r.failures.empty() ? "" : r.failures.front());
    }
}
