#pragma once

// Seeded generators for random finite spaces and functor elements.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "metext/space.hpp"
#include "metext/transport.hpp"
#include "metext/words.hpp"

namespace metext {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return index(0, 1) == 1; }

  // Random (pseudo-)metric on n points with all distances multiples of
  // 1/denominator: random symmetric weights closed under shortest paths.
  FiniteMetricSpace space(std::size_t n, long denominator = 1, long max_numerator = 6,
                          MetricMode mode = MetricMode::metric, bool pointed = false) {
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
    const long lo = mode == MetricMode::metric ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = Scalar(integer(lo, max_numerator), denominator);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 && pointed ? "e" : "p" + std::to_string(i));
    return FiniteMetricSpace::make(std::move(labels), std::move(m), mode,
                                   pointed && n > 0 ? std::optional<std::string>("e") : std::nullopt);
  }

  // Pseudometric table on n points (zero distances between distinct points allowed).
  PointFunction pseudometric_table(std::size_t n, long denominator = 1, long max_numerator = 6) {
    return space(n, denominator, max_numerator, MetricMode::pseudometric).pair_table();
  }

  PointFunction function(std::size_t n, long denominator = 1, long max_numerator = 6, bool allow_negative = false) {
    PointFunction f(n);
    for (auto& v : f) v = Scalar(integer(allow_negative ? -max_numerator : 0, max_numerator), denominator);
    return f;
  }

  // Distribution with support size in [1, max_support] and weights k/q, q <= max_denominator.
  Distribution distribution(std::size_t n, std::size_t max_support, long max_denominator) {
    const std::size_t cap = std::min<std::size_t>({n, max_support, static_cast<std::size_t>(max_denominator)});
    const std::size_t s = index(1, cap);
    std::vector<std::size_t> pts(n);
    std::iota(pts.begin(), pts.end(), 0);
    std::shuffle(pts.begin(), pts.end(), rng_);
    const long q = integer(static_cast<long>(s), max_denominator);
    // Composition of q into s positive parts via s-1 distinct cut points.
    std::vector<long> cuts;
    std::vector<long> pool(static_cast<std::size_t>(q - 1));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng_);
    cuts.assign(pool.begin(), pool.begin() + static_cast<long>(s - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(q);
    std::vector<Distribution::Entry> w;
    for (std::size_t i = 0; i < s; ++i) w.emplace_back(pts[i], Scalar(cuts[i + 1] - cuts[i], q));
    return Distribution::make(w);
  }

  PointMap point_map(std::size_t source, std::size_t target) {
    std::vector<std::size_t> image(source);
    for (auto& t : image) t = index(0, target - 1);
    return PointMap::make(source, target, std::move(image));
  }

  // Reduced word of exactly `length` letters avoiding the basepoint (needs n >= 2).
  GroupWord word(std::size_t n, std::size_t basepoint, std::size_t length, bool commutative) {
    std::vector<Letter> letters;
    while (letters.size() < length) {
      std::size_t p = index(0, n - 2);
      if (p >= basepoint) ++p;
      const Letter l{p, coin() ? 1 : -1};
      if (!commutative && !letters.empty() && letters.back() == l.inverse()) continue;
      if (commutative && std::find(letters.begin(), letters.end(), l.inverse()) != letters.end()) continue;
      letters.push_back(l);
    }
    return GroupWord::reduce(letters, basepoint, commutative);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace metext
