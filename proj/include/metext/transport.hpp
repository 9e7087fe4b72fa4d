#pragma once

// F = P: finitely supported probability measures with the integration lift
// u(φ)(μ) = Σ μ(x) φ(x). The extended metric is the Kantorovich distance,
// computed here by successive shortest paths on exact rationals and checked
// against enumeration of transportation-polytope vertices.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metext/errors.hpp"
#include "metext/extension.hpp"
#include "metext/space.hpp"

namespace metext {

// Probability measure with finite support: strictly positive rational weights
// summing to exactly one, sorted by point index.
class Distribution {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  Distribution() = default;

  // Duplicate indices are summed; zero weights are dropped.
  static Distribution make(const std::vector<Entry>& weights) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [i, w] : weights) {
      if (w.sign() < 0) throw InputError("distribution: negative weight " + w.str());
      acc[i] += w;
    }
    Distribution d;
    Scalar total;
    for (auto& [i, w] : acc) {
      total += w;
      if (!w.is_zero()) d.mass_.emplace_back(i, std::move(w));
    }
    if (total != Scalar(1)) throw UnbalancedMass("distribution: weights sum to " + total.str() + ", not 1");
    return d;
  }

  static Distribution point_mass(std::size_t x) {
    Distribution d;
    d.mass_.emplace_back(x, Scalar(1));
    return d;
  }

  const std::vector<Entry>& masses() const { return mass_; }
  std::size_t support_size() const { return mass_.size(); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (const auto& e : mass_) s.push_back(e.first);
    return s;
  }

  Scalar mass_at(std::size_t i) const {
    auto it = std::lower_bound(mass_.begin(), mass_.end(), i, [](const Entry& e, std::size_t k) { return e.first < k; });
    return it != mass_.end() && it->first == i ? it->second : Scalar();
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Entry> mass_;
};

// A plan η ∈ P(X×X), stored in product indexing i * |X| + j.
using TransportPlan = Distribution;

inline Scalar integrate(const PointFunction& phi, const Distribution& mu) {
  Scalar s;
  for (const auto& [i, w] : mu.masses()) s += w * phi.at(i);
  return s;
}

inline Distribution push_forward(const PointMap& m, const Distribution& mu) {
  std::vector<Distribution::Entry> out;
  for (const auto& [i, w] : mu.masses()) out.emplace_back(m(i), w);
  return Distribution::make(out);
}

inline Distribution plan_marginal(const TransportPlan& plan, int side, std::size_t n) {
  const auto P = product_space(n);
  return push_forward(side == 1 ? P.pr1 : P.pr2, plan);
}

struct KantorovichResult {
  Scalar value;
  TransportPlan plan;
};

struct KantorovichOptions {
  // Test hook: skip optimization and return the north-west corner plan.
  bool corrupt_northwest_corner = false;
};

namespace detail {

inline void require_over(const Distribution& mu, std::size_t n, const char* what) {
  if (mu.masses().empty()) throw InputError(std::string(what) + ": empty distribution");
  if (mu.masses().back().first >= n) throw InputError(std::string(what) + ": point index out of range");
}

inline TransportPlan northwest_corner(const Distribution& mu, const Distribution& nu, std::size_t n) {
  std::vector<Distribution::Entry> flow;
  std::size_t i = 0, j = 0;
  Scalar ri = mu.masses()[0].second, rj = nu.masses()[0].second;
  while (i < mu.support_size() && j < nu.support_size()) {
    const Scalar f = std::min(ri, rj);
    flow.emplace_back(mu.masses()[i].first * n + nu.masses()[j].first, f);
    ri -= f;
    rj -= f;
    if (ri.is_zero() && ++i < mu.support_size()) ri = mu.masses()[i].second;
    if (rj.is_zero() && ++j < nu.support_size()) rj = nu.masses()[j].second;
  }
  return Distribution::make(flow);
}

}  // namespace detail

// Exact optimal transport value and plan by successive shortest paths
// (Bellman-Ford on the residual network, bottleneck augmentation).
inline KantorovichResult kantorovich(const FiniteMetricSpace& X, const Distribution& mu, const Distribution& nu,
                                     KantorovichOptions opts = {}) {
  const std::size_t n = X.size();
  detail::require_over(mu, n, "kantorovich");
  detail::require_over(nu, n, "kantorovich");
  if (opts.corrupt_northwest_corner) {
    auto plan = detail::northwest_corner(mu, nu, n);
    return {integrate(X.pair_table(), plan), plan};
  }

  struct Arc {
    std::size_t to;
    Scalar cap;
    Scalar cost;
    std::size_t rev;
  };
  const std::size_t m = mu.support_size(), k = nu.support_size();
  const std::size_t source = 0, sink = m + k + 1, nodes = m + k + 2;
  std::vector<std::vector<Arc>> g(nodes);
  auto add_arc = [&](std::size_t u, std::size_t v, const Scalar& cap, const Scalar& cost) {
    g[u].push_back({v, cap, cost, g[v].size()});
    g[v].push_back({u, Scalar(), -cost, g[u].size() - 1});
  };
  for (std::size_t i = 0; i < m; ++i) add_arc(source, 1 + i, mu.masses()[i].second, Scalar());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      add_arc(1 + i, 1 + m + j, Scalar(1), X(mu.masses()[i].first, nu.masses()[j].first));
  for (std::size_t j = 0; j < k; ++j) add_arc(1 + m + j, sink, nu.masses()[j].second, Scalar());

  Scalar shipped;
  while (shipped < Scalar(1)) {
    std::vector<std::optional<Scalar>> dist(nodes);
    std::vector<std::pair<std::size_t, std::size_t>> via(nodes, {nodes, 0});
    dist[source] = Scalar();
    for (std::size_t round = 0; round + 1 < nodes; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < nodes; ++u) {
        if (!dist[u]) continue;
        for (std::size_t e = 0; e < g[u].size(); ++e) {
          const Arc& a = g[u][e];
          if (a.cap.sign() <= 0) continue;
          Scalar cand = *dist[u] + a.cost;
          if (!dist[a.to] || cand < *dist[a.to]) {
            dist[a.to] = std::move(cand);
            via[a.to] = {u, e};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (!dist[sink]) throw std::logic_error("kantorovich: sink unreachable before full flow");
    Scalar push = Scalar(1) - shipped;
    for (std::size_t v = sink; v != source; v = via[v].first) push = std::min(push, g[via[v].first][via[v].second].cap);
    for (std::size_t v = sink; v != source; v = via[v].first) {
      Arc& a = g[via[v].first][via[v].second];
      a.cap -= push;
      g[a.to][a.rev].cap += push;
    }
    shipped += push;
  }

  std::vector<Distribution::Entry> flow;
  for (std::size_t i = 0; i < m; ++i)
    for (const Arc& a : g[1 + i]) {
      if (a.to <= m || a.to == sink) continue;
      const Scalar used = Scalar(1) - a.cap;
      if (used.sign() > 0) flow.emplace_back(mu.masses()[i].first * n + nu.masses()[a.to - 1 - m].first, used);
    }
  TransportPlan plan = Distribution::make(flow);
  return {integrate(X.pair_table(), plan), std::move(plan)};
}

// Dual potentials: u over supp μ, v over supp ν, with u_i + v_j <= d(i,j).
struct DualPotentials {
  std::vector<Scalar> row;
  std::vector<Scalar> col;
};

// Potentials from shortest-path distances in the residual network of `plan`
// (forward arcs i→j at cost d, backward arcs j→i at cost -d where η_ij > 0).
inline DualPotentials kantorovich_dual(const FiniteMetricSpace& X, const Distribution& mu, const Distribution& nu,
                                       const TransportPlan& plan) {
  const std::size_t n = X.size(), m = mu.support_size(), k = nu.support_size();
  std::vector<Scalar> pi(m + k);
  struct Edge {
    std::size_t from, to;
    Scalar cost;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t xi = mu.masses()[i].first, yj = nu.masses()[j].first;
      edges.push_back({i, m + j, X(xi, yj)});
      if (plan.mass_at(xi * n + yj).sign() > 0) edges.push_back({m + j, i, -X(xi, yj)});
    }
  bool changed = true;
  for (std::size_t round = 0; changed; ++round) {
    if (round > m + k) throw ComputationError("kantorovich_dual: negative cycle, plan is not optimal");
    changed = false;
    for (const auto& e : edges)
      if (pi[e.from] + e.cost < pi[e.to]) {
        pi[e.to] = pi[e.from] + e.cost;
        changed = true;
      }
  }
  DualPotentials d;
  for (std::size_t i = 0; i < m; ++i) d.row.push_back(-pi[i]);
  for (std::size_t j = 0; j < k; ++j) d.col.push_back(pi[m + j]);
  return d;
}

// Dual feasibility, complementary slackness and zero duality gap.
inline Report certify_optimality(const FiniteMetricSpace& X, const Distribution& mu, const Distribution& nu,
                                 const TransportPlan& plan, const DualPotentials& dual) {
  Report r{"duality"};
  const std::size_t n = X.size();
  Scalar dual_value;
  for (std::size_t i = 0; i < mu.support_size(); ++i) dual_value += mu.masses()[i].second * dual.row[i];
  for (std::size_t j = 0; j < nu.support_size(); ++j) dual_value += nu.masses()[j].second * dual.col[j];
  for (std::size_t i = 0; i < mu.support_size(); ++i)
    for (std::size_t j = 0; j < nu.support_size(); ++j) {
      const std::size_t xi = mu.masses()[i].first, yj = nu.masses()[j].first;
      const Scalar slack = X(xi, yj) - dual.row[i] - dual.col[j];
      ++r.checks;
      if (slack.sign() < 0) r.fail("dual infeasible at (" + X.label(xi) + "," + X.label(yj) + ")");
      ++r.checks;
      if (plan.mass_at(xi * n + yj).sign() > 0 && !slack.is_zero())
        r.fail("complementary slackness fails at (" + X.label(xi) + "," + X.label(yj) + ")");
    }
  ++r.checks;
  const Scalar primal = integrate(X.pair_table(), plan);
  if (primal != dual_value) r.fail("duality gap " + (primal - dual_value).str());
  return r;
}

inline constexpr std::size_t kDefaultVertexCap = 20;

// All vertices of {η >= 0 : row sums μ, column sums ν}: plans whose support
// is a spanning forest of the support grid with strictly positive flows. Each
// vertex is produced exactly once.
template <class Visitor>
void fiber_vertices(const Distribution& mu, const Distribution& nu, std::size_t n, Visitor&& visit,
                    std::size_t cap = kDefaultVertexCap) {
  const std::size_t m = mu.support_size(), k = nu.support_size(), cells = m * k;
  if (cells > cap)
    throw CapExceeded("vertex enumeration: " + std::to_string(m) + "x" + std::to_string(k) + " support exceeds cap " +
                      std::to_string(cap));
  const std::size_t max_edges = m + k - 1;
  std::vector<std::size_t> chosen;
  bool stop = false;

  auto find = [](std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  // Solves the forest by peeling leaves; returns nullopt unless every flow is
  // strictly positive and all masses are used.
  auto solve = [&]() -> std::optional<TransportPlan> {
    std::vector<Scalar> remaining(m + k);
    for (std::size_t i = 0; i < m; ++i) remaining[i] = mu.masses()[i].second;
    for (std::size_t j = 0; j < k; ++j) remaining[m + j] = nu.masses()[j].second;
    std::vector<std::size_t> degree(m + k, 0);
    for (auto c : chosen) {
      ++degree[c / k];
      ++degree[m + c % k];
    }
    for (auto d : degree)
      if (d == 0) return std::nullopt;
    std::vector<bool> done(chosen.size(), false);
    std::vector<Distribution::Entry> flow;
    for (std::size_t settled = 0; settled < chosen.size(); ++settled) {
      bool progress = false;
      for (std::size_t e = 0; e < chosen.size() && !progress; ++e) {
        if (done[e]) continue;
        const std::size_t r = chosen[e] / k, c = m + chosen[e] % k;
        std::size_t leaf, other;
        if (degree[r] == 1) leaf = r, other = c;
        else if (degree[c] == 1) leaf = c, other = r;
        else continue;
        const Scalar f = remaining[leaf];
        if (f.sign() <= 0) return std::nullopt;
        remaining[leaf] = Scalar();
        remaining[other] -= f;
        --degree[leaf];
        --degree[other];
        done[e] = true;
        flow.emplace_back(mu.masses()[chosen[e] / k].first * n + nu.masses()[chosen[e] % k].first, f);
        progress = true;
      }
      if (!progress) return std::nullopt;
    }
    for (const auto& rem : remaining)
      if (!rem.is_zero()) return std::nullopt;
    return Distribution::make(flow);
  };

  auto recurse = [&](auto&& self, std::size_t cell, std::vector<std::size_t> parent) -> void {
    if (stop) return;
    if (cell == cells) {
      if (chosen.empty()) return;
      if (auto plan = solve())
        if (!visit(*plan)) stop = true;
      return;
    }
    if (chosen.size() < max_edges) {
      std::vector<std::size_t> p2 = parent;
      const std::size_t a = find(p2, cell / k), b = find(p2, m + cell % k);
      if (a != b) {
        p2[a] = b;
        chosen.push_back(cell);
        self(self, cell + 1, std::move(p2));
        chosen.pop_back();
      }
    }
    self(self, cell + 1, std::move(parent));
  };
  std::vector<std::size_t> parent(m + k);
  std::iota(parent.begin(), parent.end(), 0);
  recurse(recurse, 0, std::move(parent));
}

// Composition through the middle marginal: λ_ikj = η1_ik η2_kj / ν_k, projected to (i,j).
inline TransportPlan glue_plans(const TransportPlan& first, const TransportPlan& second, std::size_t n) {
  const Distribution middle = plan_marginal(first, 2, n);
  if (!(middle == plan_marginal(second, 1, n))) throw InputError("glue_plans: middle marginals differ");
  std::vector<Distribution::Entry> out;
  for (const auto& [ik, w1] : first.masses())
    for (const auto& [kj, w2] : second.masses()) {
      if (ik % n != kj / n) continue;
      const Scalar nk = middle.mass_at(ik % n);
      if (nk.is_zero()) throw std::logic_error("glue_plans: zero middle mass on a used point");
      out.emplace_back((ik / n) * n + kj % n, w1 * w2 / nk);
    }
  return Distribution::make(out);
}

// Every distribution on n points whose weights are multiples of 1/q for some
// q <= max_denominator, in a canonical order without repeats.
inline std::vector<Distribution> all_distributions(std::size_t n, unsigned max_denominator) {
  std::vector<Distribution> out;
  auto seen = [&](const Distribution& d) { return std::find(out.begin(), out.end(), d) != out.end(); };
  for (unsigned q = 1; q <= max_denominator; ++q) {
    std::vector<unsigned> parts(n, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i + 1 == n) {
        parts[i] = left;
        std::vector<Distribution::Entry> w;
        for (std::size_t t = 0; t < n; ++t) w.emplace_back(t, Scalar(static_cast<long>(parts[t]), q));
        auto d = Distribution::make(w);
        if (!seen(d)) out.push_back(std::move(d));
        return;
      }
      for (unsigned v = 0; v <= left; ++v) {
        parts[i] = v;
        self(self, i + 1, left - v);
      }
    };
    if (n > 0) rec(rec, 0, q);
  }
  return out;
}

struct TransportFunctor {
  using element_type = Distribution;
  using coupling_type = TransportPlan;

  std::size_t vertex_cap = kDefaultVertexCap;

  std::string name() const { return "transport"; }
  Distribution embed(std::size_t x) const { return Distribution::point_mass(x); }
  bool valid(const Distribution& d, std::size_t n) const {
    return !d.masses().empty() && d.masses().back().first < n;
  }
  Distribution apply_map(const PointMap& m, const Distribution& d) const { return push_forward(m, d); }
  Scalar lift(const PointFunction& phi, const Distribution& d) const { return integrate(phi, d); }
  Scalar lift_coupling(const PointFunction& p, const TransportPlan& c, std::size_t) const { return integrate(p, c); }
  Distribution marginal(const TransportPlan& c, int side, std::size_t n) const { return plan_marginal(c, side, n); }
  TransportPlan swap(const TransportPlan& c, std::size_t n) const { return push_forward(product_space(n).swap, c); }
  TransportPlan diagonal_lift(const Distribution& a, std::size_t n) const {
    return push_forward(product_space(n).diagonal, a);
  }

  template <class Visitor>
  void fiber(const Distribution& a, const Distribution& b, std::size_t n, Visitor&& visit) const {
    fiber_vertices(a, b, n, std::forward<Visitor>(visit), vertex_cap);
  }

  std::string describe(const Distribution& d) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [i, w] : d.masses()) {
      out += (first ? "" : ",") + std::to_string(i) + ":" + w.str();
      first = false;
    }
    return out + "}";
  }
};

static_assert(FunctorInstance<TransportFunctor>);

}  // namespace metext
