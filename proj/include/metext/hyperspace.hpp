#pragma once

// F = exp: nonempty subsets of a finite space with the sup-operator
// u(φ)(A) = max φ(A). The extended metric coincides with the Hausdorff metric.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "metext/errors.hpp"
#include "metext/extension.hpp"
#include "metext/space.hpp"

namespace metext {

// Nonempty set of point indices, kept sorted and unique.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  Subset(std::initializer_list<std::size_t> members) : Subset(std::vector<std::size_t>(members)) {}

  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::vector<std::size_t> members_;
};

// A coupling is a subset of X×X in product indexing (i * |X| + j).
using SubsetCoupling = Subset;

inline constexpr std::size_t kDefaultSubsetFiberCap = 16;

// max of φ over the members; φ is indexed in whatever space the subset lives in.
inline Scalar sup_lift(const PointFunction& phi, const Subset& s) {
  if (s.empty()) throw std::invalid_argument("sup_lift: empty subset");
  Scalar best = phi.at(s.members().front());
  for (auto i : s.members()) best = std::max(best, phi.at(i));
  return best;
}

inline void require_nonempty(const Subset& A, std::size_t n, const char* what) {
  if (A.empty()) throw InputError(std::string(what) + ": empty subset");
  if (A.members().back() >= n) throw InputError(std::string(what) + ": point index out of range");
}

// Two-sided max-min: the finite form of inf{ε : A_ε ⊇ B, B_ε ⊇ A}.
inline Scalar hausdorff(const FiniteMetricSpace& X, const Subset& A, const Subset& B) {
  require_nonempty(A, X.size(), "hausdorff");
  require_nonempty(B, X.size(), "hausdorff");
  auto directed = [&](const Subset& from, const Subset& to) {
    Scalar worst;
    for (auto a : from.members()) {
      Scalar nearest = X(a, to.members().front());
      for (auto b : to.members()) nearest = std::min(nearest, X(a, b));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(A, B), directed(B, A));
}

// C = {(a,b) ∈ A×B : d(a,b) = d(a,B) or d(a,b) = d(A,b)}: full marginals and
// sup over C equals the Hausdorff distance.
inline SubsetCoupling optimal_coupling(const FiniteMetricSpace& X, const Subset& A, const Subset& B) {
  require_nonempty(A, X.size(), "optimal_coupling");
  require_nonempty(B, X.size(), "optimal_coupling");
  const std::size_t n = X.size();
  auto dist_to = [&](std::size_t x, const Subset& S) {
    Scalar m = X(x, S.members().front());
    for (auto s : S.members()) m = std::min(m, X(x, s));
    return m;
  };
  std::vector<std::size_t> pairs;
  for (auto a : A.members()) {
    const Scalar da = dist_to(a, B);
    for (auto b : B.members())
      if (X(a, b) == da || X(a, b) == dist_to(b, A)) pairs.push_back(a * n + b);
  }
  return SubsetCoupling(std::move(pairs));
}

// Every C ⊆ A×B with pr1(C) = A and pr2(C) = B. Restricting to A×B loses no
// minimizer: C ∩ (A×B) keeps both projections and cannot raise the sup.
// Couplings are produced in increasing bitmask order over the A×B grid.
template <class Visitor>
void fiber_subsets(const Subset& A, const Subset& B, std::size_t n, Visitor&& visit,
                   std::size_t cap = kDefaultSubsetFiberCap) {
  const std::size_t ra = A.size(), rb = B.size(), cells = ra * rb;
  if (cells > cap || cells >= 63)
    throw CapExceeded("subset fiber: |A|*|B| = " + std::to_string(cells) + " exceeds cap " + std::to_string(cap));
  const std::uint64_t full_rows = (std::uint64_t{1} << ra) - 1, full_cols = (std::uint64_t{1} << rb) - 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    std::uint64_t rows = 0, cols = 0;
    for (std::size_t c = 0; c < cells; ++c)
      if (mask >> c & 1) {
        rows |= std::uint64_t{1} << (c / rb);
        cols |= std::uint64_t{1} << (c % rb);
      }
    if (rows != full_rows || cols != full_cols) continue;
    std::vector<std::size_t> pairs;
    for (std::size_t c = 0; c < cells; ++c)
      if (mask >> c & 1) pairs.push_back(A.members()[c / rb] * n + B.members()[c % rb]);
    if (!visit(SubsetCoupling(std::move(pairs)))) return;
  }
}

// All nonempty subsets of an n-point space, by increasing bitmask.
inline std::vector<Subset> all_subsets(std::size_t n) {
  std::vector<Subset> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) m.push_back(i);
    out.emplace_back(std::move(m));
  }
  return out;
}

struct HyperspaceFunctor {
  using element_type = Subset;
  using coupling_type = SubsetCoupling;

  std::size_t fiber_cap = kDefaultSubsetFiberCap;

  std::string name() const { return "hyperspace"; }
  Subset embed(std::size_t x) const { return Subset{x}; }
  bool valid(const Subset& s, std::size_t n) const { return !s.empty() && s.members().back() < n; }

  Subset apply_map(const PointMap& m, const Subset& s) const {
    std::vector<std::size_t> image;
    for (auto i : s.members()) image.push_back(m(i));
    return Subset(std::move(image));
  }

  Scalar lift(const PointFunction& phi, const Subset& s) const { return sup_lift(phi, s); }
  Scalar lift_coupling(const PointFunction& p, const SubsetCoupling& c, std::size_t) const { return sup_lift(p, c); }

  Subset marginal(const SubsetCoupling& c, int side, std::size_t n) const {
    const auto P = product_space(n);
    return apply_map(side == 1 ? P.pr1 : P.pr2, c);
  }
  SubsetCoupling swap(const SubsetCoupling& c, std::size_t n) const { return apply_map(product_space(n).swap, c); }
  SubsetCoupling diagonal_lift(const Subset& a, std::size_t n) const {
    return apply_map(product_space(n).diagonal, a);
  }

  template <class Visitor>
  void fiber(const Subset& a, const Subset& b, std::size_t n, Visitor&& visit) const {
    fiber_subsets(a, b, n, std::forward<Visitor>(visit), fiber_cap);
  }

  std::string describe(const Subset& s) const {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s.members()[i]);
    return out + "}";
  }
};

static_assert(FunctorInstance<HyperspaceFunctor>);

}  // namespace metext
