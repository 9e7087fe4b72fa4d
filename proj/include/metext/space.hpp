#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "metext/errors.hpp"
#include "metext/scalar.hpp"

namespace metext {

// A real-valued function on the points 0..size-1 of some finite index space.
// For the product X×X the point (i, j) lives at index i * |X| + j.
using PointFunction = std::vector<Scalar>;

enum class MetricMode { metric, pseudometric };

inline const char* to_string(MetricMode m) { return m == MetricMode::metric ? "metric" : "pseudometric"; }

enum class Axiom {
  non_square,
  duplicate_label,
  negative_entry,
  asymmetry,
  nonzero_diagonal,
  separation,  // distinct points at distance zero in metric mode
  triangle,
  bad_basepoint,
};

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::non_square: return "non-square matrix";
    case Axiom::duplicate_label: return "duplicate label";
    case Axiom::negative_entry: return "negative entry";
    case Axiom::asymmetry: return "asymmetry";
    case Axiom::nonzero_diagonal: return "nonzero diagonal";
    case Axiom::separation: return "distinct points at distance 0";
    case Axiom::triangle: return "triangle inequality";
    case Axiom::bad_basepoint: return "unknown basepoint";
  }
  return "unknown";
}

struct Violation {
  Axiom axiom;
  std::vector<std::size_t> indices;  // witnessing positions (row, column or triple)
  std::string message;
};

class FiniteMetricSpace;
using ValidationResult = std::variant<FiniteMetricSpace, Violation>;

ValidationResult validate_space(std::vector<std::string> labels, std::vector<std::vector<Scalar>> matrix,
                                MetricMode mode, std::optional<std::string> basepoint = std::nullopt);

// Finite (pseudo-)metric space with labeled points. Only constructible through
// validate_space / make, so every instance satisfies the axioms of its mode.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace make(std::vector<std::string> labels, std::vector<std::vector<Scalar>> matrix,
                                MetricMode mode = MetricMode::metric,
                                std::optional<std::string> basepoint = std::nullopt) {
    auto r = validate_space(std::move(labels), std::move(matrix), mode, std::move(basepoint));
    if (auto* v = std::get_if<Violation>(&r)) throw InputError("invalid space: " + v->message);
    return std::get<FiniteMetricSpace>(std::move(r));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  MetricMode mode() const { return mode_; }
  std::optional<std::size_t> basepoint() const { return basepoint_; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }
  std::size_t require_index(std::string_view label) const {
    if (auto i = index_of(label)) return *i;
    throw InputError("unknown point label '" + std::string(label) + "'");
  }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }

  // d as a function on X×X.
  const PointFunction& pair_table() const { return dist_; }

  std::vector<std::vector<Scalar>> matrix() const {
    std::vector<std::vector<Scalar>> m(size(), std::vector<Scalar>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m[i][j] = (*this)(i, j);
    return m;
  }

  FiniteMetricSpace with_basepoint(std::optional<std::size_t> b) const {
    FiniteMetricSpace s = *this;
    s.basepoint_ = b;
    return s;
  }

 private:
  friend ValidationResult validate_space(std::vector<std::string>, std::vector<std::vector<Scalar>>, MetricMode,
                                         std::optional<std::string>);
  FiniteMetricSpace() = default;

  std::vector<std::string> labels_;
  PointFunction dist_;
  MetricMode mode_ = MetricMode::metric;
  std::optional<std::size_t> basepoint_;
};

inline ValidationResult validate_space(std::vector<std::string> labels, std::vector<std::vector<Scalar>> matrix,
                                       MetricMode mode, std::optional<std::string> basepoint) {
  const std::size_t n = labels.size();
  auto fail = [](Axiom a, std::vector<std::size_t> idx, const std::string& detail) {
    return Violation{a, std::move(idx), std::string(to_string(a)) + ": " + detail};
  };
  if (matrix.size() != n)
    return fail(Axiom::non_square, {}, std::to_string(matrix.size()) + " rows for " + std::to_string(n) + " labels");
  for (std::size_t i = 0; i < n; ++i)
    if (matrix[i].size() != n)
      return fail(Axiom::non_square, {i}, "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                                              " entries, expected " + std::to_string(n));
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i)
      if (!seen.insert(labels[i]).second) return fail(Axiom::duplicate_label, {i}, "'" + labels[i] + "'");
  }
  auto pair_name = [&](std::size_t i, std::size_t j) { return "(" + labels[i] + "," + labels[j] + ")"; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (matrix[i][j].sign() < 0)
        return fail(Axiom::negative_entry, {i, j}, "d" + pair_name(i, j) + " = " + matrix[i][j].str());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix[i][j] != matrix[j][i])
        return fail(Axiom::asymmetry, {i, j},
                    "d" + pair_name(i, j) + " = " + matrix[i][j].str() + " but d" + pair_name(j, i) + " = " +
                        matrix[j][i].str());
  for (std::size_t i = 0; i < n; ++i)
    if (!matrix[i][i].is_zero())
      return fail(Axiom::nonzero_diagonal, {i}, "d" + pair_name(i, i) + " = " + matrix[i][i].str());
  if (mode == MetricMode::metric)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (matrix[i][j].is_zero()) return fail(Axiom::separation, {i, j}, "d" + pair_name(i, j) + " = 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (matrix[i][k] > matrix[i][j] + matrix[j][k])
          return fail(Axiom::triangle, {i, j, k},
                      "d(" + labels[i] + "," + labels[k] + ") = " + matrix[i][k].str() + " > d(" + labels[i] + "," +
                          labels[j] + ") + d(" + labels[j] + "," + labels[k] + ") = " +
                          (matrix[i][j] + matrix[j][k]).str() + " at (" + labels[i] + "," + labels[j] + "," +
                          labels[k] + ")");

  FiniteMetricSpace s;
  if (basepoint) {
    std::optional<std::size_t> b;
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == *basepoint) b = i;
    if (!b) return fail(Axiom::bad_basepoint, {}, "'" + *basepoint + "' is not a point");
    s.basepoint_ = b;
  }
  s.labels_ = std::move(labels);
  s.mode_ = mode;
  s.dist_.reserve(n * n);
  for (auto& row : matrix)
    for (auto& v : row) s.dist_.push_back(std::move(v));
  return s;
}

// A total map between finite index spaces; image[i] is the image of source point i.
struct PointMap {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::vector<std::size_t> image;

  static PointMap identity(std::size_t n) {
    PointMap m{n, n, std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) m.image[i] = i;
    return m;
  }

  static PointMap make(std::size_t source_size, std::size_t target_size, std::vector<std::size_t> image) {
    if (image.size() != source_size) throw InputError("point map is not total");
    for (auto t : image)
      if (t >= target_size) throw InputError("point map image out of range");
    return PointMap{source_size, target_size, std::move(image)};
  }

  std::size_t operator()(std::size_t i) const { return image.at(i); }

  bool injective() const {
    std::vector<bool> hit(target_size, false);
    for (auto t : image) {
      if (hit[t]) return false;
      hit[t] = true;
    }
    return true;
  }

  // i_*: pulls a function on the target back to the source (φ ↦ φ∘i).
  PointFunction pull_back(const PointFunction& phi) const {
    PointFunction out(source_size);
    for (std::size_t i = 0; i < source_size; ++i) out[i] = phi.at(image[i]);
    return out;
  }

  friend bool operator==(const PointMap&, const PointMap&) = default;
};

// (this ∘ first): apply `first`, then `second`.
inline PointMap compose(const PointMap& second, const PointMap& first) {
  if (first.target_size != second.source_size) throw std::invalid_argument("compose: size mismatch");
  PointMap m{first.source_size, second.target_size, std::vector<std::size_t>(first.source_size)};
  for (std::size_t i = 0; i < first.source_size; ++i) m.image[i] = second.image[first.image[i]];
  return m;
}

// The point set X×X with its projections, diagonal and swap.
struct ProductSpace {
  std::size_t base = 0;
  std::vector<std::string> labels;  // "(x,y)"
  PointMap pr1, pr2;                // X×X → X
  PointMap diagonal;                // X → X×X, x ↦ (x,x)
  PointMap swap;                    // X×X → X×X, (x,y) ↦ (y,x)

  std::size_t size() const { return base * base; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * base + j; }
  std::size_t first(std::size_t k) const { return k / base; }
  std::size_t second(std::size_t k) const { return k % base; }
};

inline ProductSpace product_space(std::size_t n, const std::vector<std::string>& point_labels = {}) {
  ProductSpace p;
  p.base = n;
  const std::size_t nn = n * n;
  p.pr1 = PointMap{nn, n, std::vector<std::size_t>(nn)};
  p.pr2 = PointMap{nn, n, std::vector<std::size_t>(nn)};
  p.swap = PointMap{nn, nn, std::vector<std::size_t>(nn)};
  p.diagonal = PointMap{n, nn, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.diagonal.image[i] = i * n + i;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      p.pr1.image[k] = i;
      p.pr2.image[k] = j;
      p.swap.image[k] = j * n + i;
      auto name = [&](std::size_t t) { return t < point_labels.size() ? point_labels[t] : std::to_string(t); };
      p.labels.push_back("(" + name(i) + "," + name(j) + ")");
    }
  }
  return p;
}

inline ProductSpace product_space(const FiniteMetricSpace& X) { return product_space(X.size(), X.labels()); }

// ∇_*: the pulled-back table (x,y) ↦ p(y,x).
inline PointFunction swapped(const PointFunction& pair_table, std::size_t n) {
  PointFunction out(pair_table.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = pair_table[j * n + i];
  return out;
}

}  // namespace metext
