#pragma once

// Property and coincidence suites over random finite spaces. The CLI selftest
// runs them at a small scale; the acceptance binary at full scale.

#include <cstdint>
#include <string>
#include <vector>

#include "metext/extension.hpp"
#include "metext/hyperspace.hpp"
#include "metext/naive_words.hpp"
#include "metext/power.hpp"
#include "metext/sampling.hpp"
#include "metext/transport.hpp"
#include "metext/words.hpp"

namespace metext::suites {

struct Scale {
  std::uint64_t seed = 20001212;

  std::size_t extension_spaces = 50;
  std::size_t extension_max_points = 5;

  std::size_t hausdorff_spaces = 100;
  long hausdorff_max_denominator = 4;

  std::size_t power_spaces_per_size = 3;

  std::size_t transport_instances = 200;
  std::size_t transport_dual_instances = 20;
  std::size_t transport_max_points = 4;
  std::size_t transport_max_support = 4;
  long transport_max_denominator = 6;

  std::size_t words_max_points = 4;
  std::size_t words_order_max_length = 3;  // d1 >= d2 over all reduced words up to this length
  std::size_t words_naive_pairs = 50;
  std::size_t words_naive_max_total_length = 3;

  std::size_t triples_per_functor = 200;
  std::size_t lipschitz_pairs = 50;
  std::size_t naturality_maps = 50;

  KantorovichOptions solver{};

  // Restrict to instances meeting each statement's hypotheses: extension only
  // for lifts that are extension operators, naturality for words only along
  // injective maps.
  bool hypotheses_only = false;

  static Scale small() {
    Scale s;
    s.extension_spaces = 6;
    s.extension_max_points = 4;
    s.hausdorff_spaces = 10;
    s.power_spaces_per_size = 1;
    s.transport_instances = 25;
    s.transport_dual_instances = 5;
    s.words_max_points = 3;
    s.words_order_max_length = 2;
    s.words_naive_pairs = 8;
    s.words_naive_max_total_length = 2;
    s.triples_per_functor = 60;
    s.lipschitz_pairs = 6;
    s.naturality_maps = 10;
    s.hypotheses_only = true;
    return s;
  }
};

// All functor instances exercised by the suites, for a pointed space whose
// basepoint is point 0.
inline std::vector<PowerFunctor> power_instances() {
  std::vector<PowerFunctor> out;
  for (std::size_t len = 1; len <= 3; ++len)
    for (auto norm : {PNorm::max(), PNorm::finite(1u), PNorm::finite(2u), PNorm::finite(3u)})
      out.push_back(PowerFunctor{len, norm});
  return out;
}

inline std::vector<WordsFunctor> word_instances(std::size_t basepoint) {
  std::vector<WordsFunctor> out;
  for (bool commutative : {false, true})
    for (auto v : {WordVariant::graev, WordVariant::swierczkowski}) out.push_back(WordsFunctor{basepoint, v, commutative});
  return out;
}

// p~(embed x, embed y) = d(x, y) for every pair, every instance, via the
// generic fiber minimum. Also records which lifts are extension operators.
inline std::vector<Report> extension(const Scale& sc) {
  Sampler rng(sc.seed + 1);
  const auto powers = power_instances();
  Report hyper{"hyperspace"}, transport{"transport"}, words{"words"};
  std::vector<Report> power;
  for (const auto& f : powers) power.emplace_back(f.name());
  Report operators{"extension-operator hypothesis"};
  for (std::size_t s = 0; s < sc.extension_spaces; ++s) {
    const std::size_t n = rng.index(1, sc.extension_max_points);
    const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8, MetricMode::metric, true);
    const auto pairs = all_pairs(n);
    PointFunction phi = rng.function(n, 1, 5);
    for (auto& v : phi) v += Scalar(1);  // positive, so scaling by n^(1/p) is visible
    hyper.absorb(check_extension_property(HyperspaceFunctor{}, X, pairs));
    for (std::size_t k = 0; k < powers.size(); ++k) {
      const bool extends = check_extension_operator(powers[k], phi).ok();
      if (!extends && s == 0) operators.notes.push_back(powers[k].name() + " is not an extension operator");
      if (extends || !sc.hypotheses_only) power[k].absorb(check_extension_property(powers[k], X, pairs));
    }
    transport.absorb(check_extension_property(TransportFunctor{}, X, pairs));
    for (const auto& f : word_instances(0)) words.absorb(check_extension_property(f, X, pairs));
  }
  std::vector<Report> out{hyper};
  for (auto& r : power)
    if (r.checks) out.push_back(std::move(r));
  out.insert(out.end(), {transport, words, operators});
  return out;
}

// Generic sup-lift fiber minimum equals the direct Hausdorff formula, and the
// nearest-point coupling is a valid coupling attaining it.
inline std::vector<Report> hausdorff(const Scale& sc) {
  Sampler rng(sc.seed + 2);
  Report coincide{"generic = hausdorff"}, coupling{"optimal coupling"};
  const HyperspaceFunctor F;
  for (std::size_t s = 0; s < sc.hausdorff_spaces; ++s) {
    const std::size_t n = rng.index(1, 3);
    const auto X = rng.space(n, static_cast<long>(rng.index(1, static_cast<std::size_t>(sc.hausdorff_max_denominator))),
                             8);
    const auto subsets = all_subsets(n);
    for (const auto& A : subsets)
      for (const auto& B : subsets) {
        const Scalar direct = metext::hausdorff(X, A, B);
        const auto generic = extend_generic(F, n, X.pair_table(), A, B);
        ++coincide.checks;
        if (generic.value != direct)
          coincide.fail(F.describe(A) + " vs " + F.describe(B) + ": generic " + generic.value.str() + ", direct " +
                        direct.str());
        const auto C = optimal_coupling(X, A, B);
        ++coupling.checks;
        if (!(F.marginal(C, 1, n) == A) || !(F.marginal(C, 2, n) == B) || sup_lift(X.pair_table(), C) != direct)
          coupling.fail("nearest-point coupling invalid for " + F.describe(A) + ", " + F.describe(B));
      }
  }
  return {coincide, coupling};
}

// Closed-form power distance equals the generic value through the singleton
// fiber, for every tuple pair with n <= 3 over spaces with at most 3 points.
inline std::vector<Report> power(const Scale& sc) {
  Sampler rng(sc.seed + 3);
  Report r{"closed form = generic"};
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t s = 0; s < sc.power_spaces_per_size; ++s) {
      const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8);
      for (const auto& f : power_instances()) {
        const auto tuples = all_tuples(n, f.length);
        for (const auto& a : tuples)
          for (const auto& b : tuples) {
            ++r.checks;
            const auto g = extend_generic(f, n, X.pair_table(), a, b);
            const Scalar c = power_distance(X, a, b, f.norm);
            if (g.value != c || g.fiber_size_enumerated != 1)
              r.fail(f.name() + " " + f.describe(a) + " " + f.describe(b) + ": generic " + g.value.str() +
                     ", closed form " + c.str());
          }
      }
    }
  return {r};
}

// Min-cost-flow value equals the minimum over all transportation-polytope
// vertices; the optimal plan is basic, feasible and re-integrates to the value.
inline std::vector<Report> transport(const Scale& sc) {
  Sampler rng(sc.seed + 4);
  Report oracle{"solver = vertex oracle"}, basic{"basic plan"}, duality{"duality certificate"};
  for (std::size_t t = 0; t < sc.transport_instances; ++t) {
    const std::size_t n = rng.index(1, sc.transport_max_points);
    const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8);
    const auto mu = rng.distribution(n, sc.transport_max_support, sc.transport_max_denominator);
    const auto nu = rng.distribution(n, sc.transport_max_support, sc.transport_max_denominator);
    const auto solved = kantorovich(X, mu, nu, sc.solver);
    std::optional<Scalar> vertex_min;
    fiber_vertices(mu, nu, n, [&](const TransportPlan& p) {
      const Scalar v = integrate(X.pair_table(), p);
      if (!vertex_min || v < *vertex_min) vertex_min = v;
      return true;
    });
    ++oracle.checks;
    if (!vertex_min || *vertex_min != solved.value)
      oracle.fail("instance " + std::to_string(t) + ": solver " + solved.value.str() + ", vertex minimum " +
                  (vertex_min ? vertex_min->str() : "none"));
    ++basic.checks;
    if (solved.plan.support_size() > mu.support_size() + nu.support_size() - 1)
      basic.fail("instance " + std::to_string(t) + ": plan support " + std::to_string(solved.plan.support_size()));
    ++basic.checks;
    if (!(plan_marginal(solved.plan, 1, n) == mu) || !(plan_marginal(solved.plan, 2, n) == nu) ||
        integrate(X.pair_table(), solved.plan) != solved.value)
      basic.fail("instance " + std::to_string(t) + ": plan marginals or value inconsistent");
    if (t < sc.transport_dual_instances) {
      try {
        duality.absorb(certify_optimality(X, mu, nu, solved.plan, kantorovich_dual(X, mu, nu, solved.plan)));
      } catch (const ComputationError& e) {
        duality.fail(e.what());
      }
    }
  }
  return {oracle, basic, duality};
}

// (a) single letters recover d; (b) Graev >= Swierczkowski; (c) the pruned
// searcher agrees with a caller-supplied unpruned oracle.
template <class NaiveOracle>
std::vector<Report> words(const Scale& sc, NaiveOracle&& naive) {
  Sampler rng(sc.seed + 5);
  Report single{"single letters"}, order{"graev >= swierczkowski"}, agree{"searcher = naive oracle"};
  for (std::size_t n = 1; n <= sc.words_max_points; ++n)
    for (int s = 0; s < 3; ++s) {
      const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8, MetricMode::metric, true);
      for (bool commutative : {false, true})
        for (auto v : {WordVariant::graev, WordVariant::swierczkowski})
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
              const auto A = GroupWord::reduce({{x, 1}}, 0, commutative);
              const auto B = GroupWord::reduce({{y, 1}}, 0, commutative);
              ++single.checks;
              const Scalar got = graev_distance(X, A, B, v).value;
              if (got != X(x, y))
                single.fail(std::string(to_string(v)) + (commutative ? " abelian" : "") + " d(" + X.label(x) + "," +
                            X.label(y) + ") = " + got.str() + ", expected " + X(x, y).str());
            }
    }
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8, MetricMode::metric, true);
    for (bool commutative : {false, true}) {
      const auto ws = all_words(n, 0, sc.words_order_max_length, commutative);
      for (const auto& A : ws)
        for (const auto& B : ws) {
          ++order.checks;
          const Scalar d1 = graev_distance(X, A, B, WordVariant::graev).value;
          const Scalar d2 = graev_distance(X, A, B, WordVariant::swierczkowski).value;
          if (d1 < d2) order.fail("d1 = " + d1.str() + " < d2 = " + d2.str());
        }
    }
  }
  for (std::size_t t = 0; t < sc.words_naive_pairs; ++t) {
    const std::size_t n = rng.index(2, 3);
    const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8, MetricMode::metric, true);
    const bool commutative = t % 4 == 3;
    const std::size_t la = rng.index(0, sc.words_naive_max_total_length);
    const std::size_t lb = rng.index(0, sc.words_naive_max_total_length - la);
    const auto A = rng.word(n, 0, la, commutative), B = rng.word(n, 0, lb, commutative);
    for (auto v : {WordVariant::graev, WordVariant::swierczkowski}) {
      const std::size_t cap = default_word_cap(A, B);
      ++agree.checks;
      const Scalar fast = graev_distance(X, A, B, v, cap).value;
      const auto slow = naive(X, A, B, v, cap);
      if (!slow || *slow != fast)
        agree.fail("pair " + std::to_string(t) + " " + to_string(v) + ": searcher " + fast.str() + ", naive " +
                   (slow ? slow->str() : "none"));
    }
  }
  return {single, order, agree};
}

inline std::vector<Report> words(const Scale& sc) {
  return words(sc, [](const FiniteMetricSpace& X, const GroupWord& A, const GroupWord& B, WordVariant v,
                      std::size_t cap) -> std::optional<Scalar> {
    const auto r = oracle::naive_word_distance(X, A, B, v, cap);
    if (!r) return std::nullopt;
    return r->value;
  });
}

// Identity, symmetry and triangle inequality on sampled triples per functor.
inline std::vector<Report> pseudometric(const Scale& sc) {
  Sampler rng(sc.seed + 6);
  std::vector<Report> out;

  {  // hyperspace: all subsets of random 3-point spaces
    Report r{"hyperspace"};
    for (std::size_t done = 0; done < sc.triples_per_functor;) {
      const auto X = rng.space(3, static_cast<long>(rng.index(1, 4)), 8);
      const auto elems = all_subsets(3);
      r.absorb(check_pseudometric_axioms(HyperspaceFunctor{}, 3, X.pair_table(), elems));
      done += elems.size() * elems.size() * elems.size();
    }
    out.push_back(r);
  }
  {  // powers: all pairs-length tuples, every norm
    Report r{"power"};
    const auto X = rng.space(3, static_cast<long>(rng.index(1, 4)), 8);
    for (const auto& f : power_instances()) {
      if (f.length > 2) continue;
      r.absorb(check_pseudometric_axioms(f, 3, X.pair_table(), all_tuples(3, f.length)));
    }
    out.push_back(r);
  }
  {  // transport: random distributions, Kantorovich values, glued witnesses
    Report r{"transport"};
    Report glue{"glued plans"};
    for (std::size_t done = 0; done < sc.triples_per_functor;) {
      const std::size_t n = rng.index(2, 4);
      const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8);
      std::vector<Distribution> elems;
      for (int i = 0; i < 6; ++i) elems.push_back(rng.distribution(n, 4, 6));
      r.absorb(check_pseudometric_axioms(TransportFunctor{}, elems, [&](const Distribution& a, const Distribution& b) {
        return kantorovich(X, a, b, sc.solver).value;
      }));
      for (const auto& a : elems)
        for (const auto& b : elems)
          for (const auto& c : elems) {
            const auto ab = kantorovich(X, a, b, sc.solver), bc = kantorovich(X, b, c, sc.solver);
            const auto glued = glue_plans(ab.plan, bc.plan, n);
            ++glue.checks;
            if (!(plan_marginal(glued, 1, n) == a) || !(plan_marginal(glued, 2, n) == c) ||
                integrate(X.pair_table(), glued) > ab.value + bc.value)
              glue.fail("glued plan invalid or too expensive");
          }
      done += elems.size() * elems.size() * elems.size();
    }
    out.push_back(r);
    out.push_back(glue);
  }
  for (bool commutative : {false, true})
    for (auto v : {WordVariant::graev, WordVariant::swierczkowski}) {
      Report r{std::string(commutative ? "abelian-words[" : "words[") + to_string(v) + "]"};
      for (std::size_t t = 0; t < sc.triples_per_functor; ++t) {
        const std::size_t n = rng.index(2, 3);
        const auto X = rng.space(n, static_cast<long>(rng.index(1, 4)), 8, MetricMode::metric, true);
        const auto A = rng.word(n, 0, rng.index(0, 3), commutative);
        const auto B = rng.word(n, 0, rng.index(0, 3), commutative);
        const auto C = rng.word(n, 0, rng.index(0, 3), commutative);
        const WordsFunctor F{0, v, commutative};
        const auto tri = word_triangle(X, A, B, C, v);
        r.checks += 3;
        if (tri.verdict != Verdict::holds)
          r.fail("triangle violated at cap " + std::to_string(tri.cap) + ": d(A,C) = " + tri.ac.str() +
                 " > " + tri.ab.str() + " + " + tri.bc.str() + " for A = " + F.describe(A) + ", B = " +
                 F.describe(B) + ", C = " + F.describe(C));
        if (!graev_distance(X, A, A, v).value.is_zero()) r.fail("d(A,A) != 0 for A = " + F.describe(A));
        if (graev_distance(X, A, B, v).value != graev_distance(X, B, A, v).value)
          r.fail("asymmetric on " + F.describe(A) + ", " + F.describe(B));
      }
      out.push_back(r);
    }
  return out;
}

// Finite-space uniform continuity bound for random pairs of pseudometric tables.
inline std::vector<Report> lipschitz(const Scale& sc) {
  Sampler rng(sc.seed + 7);
  Report hyper{"hyperspace"}, power{"power"}, transport{"transport"}, words{"words"};
  for (std::size_t t = 0; t < sc.lipschitz_pairs; ++t) {
    const std::size_t n = rng.index(2, 3);
    const auto p1 = rng.pseudometric_table(n, static_cast<long>(rng.index(1, 4)));
    PointFunction p2;
    switch (t % 3) {
      case 0: p2 = rng.pseudometric_table(n, static_cast<long>(rng.index(1, 4))); break;
      case 1:
        p2 = p1;
        for (auto& v : p2) v *= Scalar(2);
        break;
      default: {  // perturb one pair upward, then restore the triangle inequality
        const auto i = rng.index(0, n - 1), j = (i + 1) % n;
        p2 = p1;
        p2[i * n + j] += Scalar(1, 3);
        p2[j * n + i] = p2[i * n + j];
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
              if (p2[a * n + k] + p2[k * n + b] < p2[a * n + b]) p2[a * n + b] = p2[a * n + k] + p2[k * n + b];
      }
    }
    hyper.absorb(check_lipschitz(HyperspaceFunctor{}, n, p1, p2, all_subsets(n)));
    for (auto norm : {PNorm::max(), PNorm::finite(1u), PNorm::finite(2u)})
      power.absorb(check_lipschitz(PowerFunctor{2, norm}, n, p1, p2, all_tuples(n, 2)));
    std::vector<Distribution> ds;
    for (int i = 0; i < 4; ++i) ds.push_back(rng.distribution(n, 3, 4));
    transport.absorb(check_lipschitz(TransportFunctor{}, n, p1, p2, ds));
    for (const auto& f : word_instances(0)) words.absorb(check_lipschitz(f, n, p1, p2, all_words(n, 0, 1, f.commutative)));
  }
  return {hyper, power, transport, words};
}

// u_Y(φ∘i) = u_X(φ)∘F(i) on all enumerated elements of FY, for random maps.
// Word elements use Y's point 0 as basepoint and i(0) as X's basepoint.
inline std::vector<Report> naturality(const Scale& sc) {
  Sampler rng(sc.seed + 8);
  Report hyper{"hyperspace"}, power{"power"}, transport{"transport"};
  std::vector<Report> words;
  for (const auto& f : word_instances(0)) words.push_back(Report{f.name()});
  Report words_injective{"words on injective maps"};
  for (std::size_t t = 0; t < sc.naturality_maps; ++t) {
    const std::size_t ny = rng.index(1, 3), nx = rng.index(1, 3);
    const PointMap i = rng.point_map(ny, nx);
    const PointFunction phi = rng.function(nx, static_cast<long>(rng.index(1, 4)), 6);
    const PointFunction signed_phi = rng.function(nx, static_cast<long>(rng.index(1, 4)), 6, true);
    hyper.absorb(check_naturality(HyperspaceFunctor{}, i, signed_phi, all_subsets(ny)));
    for (std::size_t len = 1; len <= 2; ++len)
      for (auto norm : {PNorm::max(), PNorm::finite(1u), PNorm::finite(2u), PNorm::finite(3u)})
        power.absorb(check_naturality(PowerFunctor{len, norm}, i, phi, all_tuples(ny, len)));
    transport.absorb(check_naturality(TransportFunctor{}, i, signed_phi, all_distributions(ny, 4)));
    const auto fs = word_instances(0);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (sc.hypotheses_only && !i.injective()) continue;
      const auto r = check_naturality(fs[k], i, phi, all_words(ny, 0, 2, fs[k].commutative));
      words[k].absorb(r);
      if (i.injective()) words_injective.absorb(r);
    }
  }
  std::vector<Report> out{hyper, power, transport};
  out.insert(out.end(), words.begin(), words.end());
  out.push_back(words_injective);
  return out;
}

// Positivity, monotonicity and semiadditivity of each lift on sampled functions.
inline std::vector<Report> operator_axioms(const Scale& sc) {
  Sampler rng(sc.seed + 9);
  Report r{"operator axioms"};
  for (std::size_t t = 0; t < 20; ++t) {
    const std::size_t n = rng.index(1, 3);
    PointFunction psi = rng.function(n, 2, 6), phi = psi;
    for (auto& v : phi) v += Scalar(rng.integer(0, 4), 3);
    r.absorb(check_operator_axioms(HyperspaceFunctor{}, phi, psi, all_subsets(n)));
    for (const auto& f : power_instances())
      if (f.length <= 2) r.absorb(check_operator_axioms(f, phi, psi, all_tuples(n, f.length)));
    r.absorb(check_operator_axioms(TransportFunctor{}, phi, psi, all_distributions(n, 3)));
    for (const auto& f : word_instances(0)) r.absorb(check_operator_axioms(f, phi, psi, all_words(n, 0, 2, f.commutative)));
  }
  (void)sc;
  return {r};
}

inline bool all_ok(const std::vector<Report>& parts) {
  for (const auto& p : parts)
    if (!p.ok()) return false;
  return true;
}

struct Suite {
  std::string name;
  std::vector<Report> (*run)(const Scale&);
};

inline const std::vector<Suite>& registry() {
  static const std::vector<Suite> all = {
      {"extension", extension},
      {"hausdorff", hausdorff},
      {"power", power},
      {"transport", transport},
      {"words", [](const Scale& sc) { return words(sc); }},
      {"pseudometric", pseudometric},
      {"lipschitz", lipschitz},
      {"naturality", naturality},
      {"operator-axioms", operator_axioms},
  };
  return all;
}

}  // namespace metext::suites
