#pragma once

// Generate-and-filter oracle for proper representations: every signed pair of
// letter strings of length <= cap, kept when both sides reduce to the targets.
// Shares no code with the pruned searcher beyond GroupWord::reduce and the lift.

#include <optional>
#include <vector>

#include "metext/words.hpp"

namespace metext::oracle {

struct NaiveWordResult {
  Scalar value;
  std::size_t representations = 0;
};

inline std::optional<NaiveWordResult> naive_word_distance(const FiniteMetricSpace& X, const GroupWord& A,
                                                          const GroupWord& B, WordVariant variant, std::size_t cap) {
  const std::size_t n = X.size();
  std::optional<NaiveWordResult> best;
  for (std::size_t len = 0; len <= cap; ++len) {
    // Odometer over (sign, a, b) per row: 2 * n * n symbols per position.
    const std::size_t symbols = 2 * n * n;
    std::vector<std::size_t> digit(len, 0);
    while (true) {
      ProperRepresentationPair rep{{}, A.basepoint(), A.commutative()};
      for (auto d : digit) rep.rows.push_back({(d / n) % n, d % n, d / (n * n) == 0 ? 1 : -1});
      if (rep.side(1) == A && rep.side(2) == B) {
        const Scalar v = letter_sum_lift(X.pair_table(), rep, n, variant);
        if (!best) best = NaiveWordResult{v, 0};
        if (v < best->value) best->value = v;
        ++best->representations;
      }
      std::size_t k = 0;
      while (k < len && ++digit[k] == symbols) digit[k++] = 0;
      if (k == len) break;
    }
  }
  return best;
}

}  // namespace metext::oracle
