#pragma once

// Generic metric extension engine.
//
// A functor instance F supplies: elements of FY for finite index spaces Y, the
// action F(i) of point maps, the lifted operator u_Y(φ) on elements, and the
// fiber <a,b> ⊂ F(X×X) as a finite stream of couplings. The extended value is
//
//     p~(a, b) = min { u_{X×X}(p)(c) : c in <a,b> }
//
// where each instance guarantees its stream contains a minimizer.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "metext/errors.hpp"
#include "metext/scalar.hpp"
#include "metext/space.hpp"

namespace metext {

enum class Verdict { holds, violated, indeterminate };

template <class F>
concept FunctorInstance = requires(const F& f, const typename F::element_type& e, const typename F::coupling_type& c,
                                   const PointMap& m, const PointFunction& phi, std::size_t n) {
  typename F::element_type;
  typename F::coupling_type;
  { f.name() } -> std::convertible_to<std::string>;
  { f.embed(n) } -> std::same_as<typename F::element_type>;
  { f.valid(e, n) } -> std::same_as<bool>;
  { f.apply_map(m, e) } -> std::same_as<typename F::element_type>;
  { f.lift(phi, e) } -> std::same_as<Scalar>;
  { f.lift_coupling(phi, c, n) } -> std::same_as<Scalar>;
  { f.marginal(c, 1, n) } -> std::same_as<typename F::element_type>;
  { f.swap(c, n) } -> std::same_as<typename F::coupling_type>;
  { f.diagonal_lift(e, n) } -> std::same_as<typename F::coupling_type>;
  { f.describe(e) } -> std::convertible_to<std::string>;
  f.fiber(e, e, n, [](const typename F::coupling_type&) { return true; });
  { e == e } -> std::convertible_to<bool>;
  { c == c } -> std::convertible_to<bool>;
};

template <class Coupling>
struct ExtensionResult {
  Scalar value;
  Coupling witness;
  std::size_t fiber_size_enumerated = 0;
};

// Is `value_ac <= value_ab + value_bc` for values in the instance's native form?
// Instances whose values are not additive (p-th powers) provide `triangle`.
template <class F>
Verdict triangle_verdict(const F& f, const Scalar& ac, const Scalar& ab, const Scalar& bc) {
  if constexpr (requires { { f.triangle(ac, ab, bc) } -> std::same_as<Verdict>; }) {
    return f.triangle(ac, ab, bc);
  } else {
    return ac <= ab + bc ? Verdict::holds : Verdict::violated;
  }
}

// A base distance in the form the functor reports values (identity unless the
// instance stores a monotone transform, e.g. p-th powers).
template <class F>
Scalar value_form(const F& f, const Scalar& d) {
  if constexpr (requires { { f.value_form(d) } -> std::same_as<Scalar>; }) {
    return f.value_form(d);
  } else {
    return d;
  }
}

struct ExtendOptions {
  // Stop at the first zero-valued coupling. Only used when p is nonnegative,
  // where u is positive and no coupling can go below zero.
  bool early_exit_on_zero = true;
};

template <FunctorInstance F>
ExtensionResult<typename F::coupling_type> extend_generic(const F& f, std::size_t n, const PointFunction& p,
                                                          const typename F::element_type& a,
                                                          const typename F::element_type& b,
                                                          ExtendOptions opts = {}) {
  if (p.size() != n * n) throw std::invalid_argument("extend_generic: table is not over X×X");
  if (!f.valid(a, n) || !f.valid(b, n)) throw InputError(f.name() + ": element is not over X");
  const bool nonnegative = std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.sign() >= 0; });
  const bool early_exit = opts.early_exit_on_zero && nonnegative;

  std::optional<Scalar> best;
  std::optional<typename F::coupling_type> witness;
  std::size_t count = 0;
  f.fiber(a, b, n, [&](const typename F::coupling_type& c) {
    ++count;
    Scalar v = f.lift_coupling(p, c, n);
    if (!best || v < *best) {
      best = std::move(v);
      witness = c;
    }
    return !(early_exit && best->is_zero());
  });
  if (!best) throw std::logic_error(f.name() + ": empty fiber (broken functor instance)");
  return {std::move(*best), std::move(*witness), count};
}

struct Report {
  Report(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t checks = 0;
  std::size_t indeterminate = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool ok() const { return failures.empty() && indeterminate == 0; }

  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
    else if (failures.size() == 20) failures.push_back("... further failures suppressed");
  }

  void absorb(const Report& other) {
    checks += other.checks;
    indeterminate += other.indeterminate;
    for (const auto& f : other.failures) fail(other.name + ": " + f);
    for (const auto& n : other.notes) notes.push_back(other.name + ": " + n);
  }

  std::string summary() const {
    std::ostringstream os;
    os << (ok() ? "PASS " : "FAIL ") << name << " (" << checks << " checks";
    if (indeterminate) os << ", " << indeterminate << " indeterminate";
    if (!failures.empty()) os << ", " << failures.size() << " failures";
    os << ")";
    return os.str();
  }
};

// Default evaluator: the generic fiber minimum.
template <FunctorInstance F>
auto generic_evaluator(const F& f, std::size_t n, const PointFunction& p) {
  return [&f, n, &p](const typename F::element_type& a, const typename F::element_type& b) {
    return extend_generic(f, n, p, a, b).value;
  };
}

// p~(embed x, embed y) == p(x, y) for the sampled pairs.
template <FunctorInstance F, class Eval>
Report check_extension_property(const F& f, const FiniteMetricSpace& X,
                                const std::vector<std::pair<std::size_t, std::size_t>>& samples, Eval&& eval) {
  Report r{"extension[" + f.name() + "]"};
  for (auto [x, y] : samples) {
    ++r.checks;
    const Scalar got = eval(f.embed(x), f.embed(y));
    const Scalar want = value_form(f, X(x, y));
    if (got != want)
      r.fail("d~(" + X.label(x) + "," + X.label(y) + ") = " + got.str() + ", expected " + want.str());
  }
  return r;
}

template <FunctorInstance F>
Report check_extension_property(const F& f, const FiniteMetricSpace& X,
                                const std::vector<std::pair<std::size_t, std::size_t>>& samples) {
  return check_extension_property(f, X, samples, generic_evaluator(f, X.size(), X.pair_table()));
}

// All pairs of X, for samples.
inline std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Identity, symmetry and triangle inequality of the extended function on all
// ordered triples drawn from `elements`.
template <FunctorInstance F, class Eval>
Report check_pseudometric_axioms(const F& f, const std::vector<typename F::element_type>& elements, Eval&& eval) {
  Report r{"pseudometric[" + f.name() + "]"};
  const std::size_t k = elements.size();
  std::vector<Scalar> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = eval(elements[i], elements[j]);
  auto at = [&](std::size_t i, std::size_t j) -> const Scalar& { return table[i * k + j]; };
  for (std::size_t i = 0; i < k; ++i) {
    ++r.checks;
    if (!at(i, i).is_zero()) r.fail("d~(a,a) = " + at(i, i).str() + " for a = " + f.describe(elements[i]));
    for (std::size_t j = 0; j < k; ++j) {
      ++r.checks;
      if (at(i, j) != at(j, i))
        r.fail("asymmetric on " + f.describe(elements[i]) + ", " + f.describe(elements[j]) + ": " + at(i, j).str() +
               " vs " + at(j, i).str());
      for (std::size_t m = 0; m < k; ++m) {
        ++r.checks;
        switch (triangle_verdict(f, at(i, m), at(i, j), at(j, m))) {
          case Verdict::holds: break;
          case Verdict::indeterminate:
            ++r.indeterminate;
            r.notes.push_back("indeterminate triangle on " + f.describe(elements[i]) + ", " +
                              f.describe(elements[j]) + ", " + f.describe(elements[m]));
            break;
          case Verdict::violated:
            r.fail("triangle violated: d~(a,c) = " + at(i, m).str() + ", d~(a,b) = " + at(i, j).str() +
                   ", d~(b,c) = " + at(j, m).str() + " for a = " + f.describe(elements[i]) +
                   ", b = " + f.describe(elements[j]) + ", c = " + f.describe(elements[m]));
        }
      }
    }
  }
  return r;
}

template <FunctorInstance F>
Report check_pseudometric_axioms(const F& f, std::size_t n, const PointFunction& p,
                                 const std::vector<typename F::element_type>& elements) {
  return check_pseudometric_axioms(f, elements, generic_evaluator(f, n, p));
}

// Finite-space uniform continuity bound:
//   max |p1~(a,b) - p2~(a,b)|  <=  max over enumerated couplings |u(p1)(c) - u(p2)(c)|.
// Checked pairwise (which implies the global form) and globally.
template <FunctorInstance F>
Report check_lipschitz(const F& f, std::size_t n, const PointFunction& p1, const PointFunction& p2,
                       const std::vector<typename F::element_type>& elements) {
  Report r{"lipschitz[" + f.name() + "]"};
  Scalar lhs_max, rhs_max;
  for (const auto& a : elements)
    for (const auto& b : elements) {
      const Scalar v1 = extend_generic(f, n, p1, a, b, {.early_exit_on_zero = false}).value;
      const Scalar v2 = extend_generic(f, n, p2, a, b, {.early_exit_on_zero = false}).value;
      Scalar fiber_max;
      f.fiber(a, b, n, [&](const typename F::coupling_type& c) {
        fiber_max = std::max(fiber_max, abs(f.lift_coupling(p1, c, n) - f.lift_coupling(p2, c, n)));
        return true;
      });
      const Scalar diff = abs(v1 - v2);
      ++r.checks;
      if (diff > fiber_max)
        r.fail("|d1~ - d2~| = " + diff.str() + " exceeds fiber sup " + fiber_max.str() + " on " + f.describe(a) +
               ", " + f.describe(b));
      lhs_max = std::max(lhs_max, diff);
      rhs_max = std::max(rhs_max, fiber_max);
    }
  ++r.checks;
  if (lhs_max > rhs_max) r.fail("global bound violated: " + lhs_max.str() + " > " + rhs_max.str());
  return r;
}

// u_Y(φ∘i)(e) == u_X(φ)(F(i)(e)) for every e in `elements` ⊂ FY.
template <FunctorInstance F>
Report check_naturality(const F& f, const PointMap& i, const PointFunction& phi,
                        const std::vector<typename F::element_type>& elements) {
  Report r{"naturality[" + f.name() + "]"};
  const PointFunction pulled = i.pull_back(phi);
  for (const auto& e : elements) {
    ++r.checks;
    const Scalar lhs = f.lift(pulled, e);
    const auto image = f.apply_map(i, e);
    const Scalar rhs = f.lift(phi, image);
    if (lhs != rhs)
      r.fail("u_Y(phi o i)(" + f.describe(e) + ") = " + lhs.str() + " but u_X(phi)(F(i)(e)) = " + rhs.str() +
             " with F(i)(e) = " + f.describe(image));
  }
  return r;
}

// Structural fiber invariants for one pair (a,b): marginal soundness of every
// coupling, swap as a bijection <a,b> -> <b,a> preserving the swapped lift,
// swap involution, and F(Δ)(a) ∈ <a,a>.
template <FunctorInstance F>
Report check_fiber_invariants(const F& f, std::size_t n, const PointFunction& p, const typename F::element_type& a,
                              const typename F::element_type& b) {
  using C = typename F::coupling_type;
  Report r{"fiber[" + f.name() + "]"};
  const PointFunction p_swapped = swapped(p, n);
  std::vector<C> forward, backward;
  f.fiber(a, b, n, [&](const C& c) { forward.push_back(c); return true; });
  f.fiber(b, a, n, [&](const C& c) { backward.push_back(c); return true; });
  for (const auto& c : forward) {
    ++r.checks;
    if (!(f.marginal(c, 1, n) == a) || !(f.marginal(c, 2, n) == b))
      r.fail("coupling with wrong marginals in <" + f.describe(a) + "," + f.describe(b) + ">");
    const C s = f.swap(c, n);
    ++r.checks;
    if (!(f.swap(s, n) == c)) r.fail("swap is not an involution");
    ++r.checks;
    if (std::find(backward.begin(), backward.end(), s) == backward.end())
      r.fail("swap of a coupling is missing from <b,a>");
    ++r.checks;
    if (f.lift_coupling(p, s, n) != f.lift_coupling(p_swapped, c, n)) r.fail("u(p)(swap c) != u(swap_* p)(c)");
  }
  ++r.checks;
  if (forward.size() != backward.size())
    r.fail("|<a,b>| = " + std::to_string(forward.size()) + " but |<b,a>| = " + std::to_string(backward.size()));
  const C diag = f.diagonal_lift(a, n);
  bool found = false;
  f.fiber(a, a, n, [&](const C& c) {
    if (c == diag) found = true;
    return !found;
  });
  ++r.checks;
  if (!found) r.fail("F(diagonal)(a) not in <a,a> for a = " + f.describe(a));
  return r;
}

// Operator axioms on sampled functions: positivity (φ >= 0 ⇒ u(φ) >= 0),
// monotonicity (φ >= ψ ⇒ u(φ) >= u(ψ)) and semiadditivity
// (u(φ+ψ) <= u(φ) + u(ψ), compared through triangle_verdict).
template <FunctorInstance F>
Report check_operator_axioms(const F& f, const PointFunction& phi, const PointFunction& psi,
                             const std::vector<typename F::element_type>& elements) {
  Report r{"operator-axioms[" + f.name() + "]"};
  bool dominates = true, phi_pos = true;
  PointFunction sum(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    dominates = dominates && phi[i] >= psi[i];
    phi_pos = phi_pos && phi[i].sign() >= 0;
    sum[i] = phi[i] + psi[i];
  }
  for (const auto& e : elements) {
    const Scalar up = f.lift(phi, e), uq = f.lift(psi, e), us = f.lift(sum, e);
    if (phi_pos) {
      ++r.checks;
      if (up.sign() < 0) r.fail("u(phi) < 0 on " + f.describe(e));
    }
    if (dominates) {
      ++r.checks;
      if (up < uq) r.fail("monotonicity fails on " + f.describe(e));
    }
    ++r.checks;
    switch (triangle_verdict(f, us, up, uq)) {
      case Verdict::holds: break;
      case Verdict::indeterminate: ++r.indeterminate; break;
      case Verdict::violated: r.fail("semiadditivity fails on " + f.describe(e));
    }
  }
  return r;
}

// u_X(φ)(embed x) == φ(x): whether u is an extension operator.
template <FunctorInstance F>
Report check_extension_operator(const F& f, const PointFunction& phi) {
  Report r{"extension-operator[" + f.name() + "]"};
  for (std::size_t x = 0; x < phi.size(); ++x) {
    ++r.checks;
    const Scalar got = f.lift(phi, f.embed(x));
    const Scalar want = value_form(f, phi[x]);
    if (got != want) r.fail("u(phi)(embed " + std::to_string(x) + ") = " + got.str() + " != " + want.str());
  }
  return r;
}

}  // namespace metext
