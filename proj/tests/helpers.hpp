#pragma once

#include <string>
#include <vector>

#include "metext/space.hpp"

namespace metext::test {

// Space from an integer (or "p/q") matrix literal.
inline FiniteMetricSpace space(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& m,
                               MetricMode mode = MetricMode::metric,
                               std::optional<std::string> basepoint = std::nullopt) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& r : m) {
    std::vector<Scalar> row;
    for (const auto& v : r) row.push_back(Scalar::parse(v));
    rows.push_back(std::move(row));
  }
  return FiniteMetricSpace::make(std::move(labels), std::move(rows), mode, std::move(basepoint));
}

inline FiniteMetricSpace two_points(const std::string& d) {
  return space({"x", "y"}, {{"0", d}, {d, "0"}});
}

// e, x, y with d(x,y) = 1 and both at distance 10 from the basepoint e.
inline FiniteMetricSpace pointed_exy() {
  return space({"e", "x", "y"}, {{"0", "10", "10"}, {"10", "0", "1"}, {"10", "1", "0"}}, MetricMode::metric, "e");
}

}  // namespace metext::test
