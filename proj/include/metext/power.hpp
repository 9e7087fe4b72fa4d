#pragma once

// F = (-)^n: n-tuples with the l^p-sum lift (Σ φ(x_i)^p)^(1/p) or the max lift.
//
// Finite-p values are kept as exact p-th powers Σ φ(x_i)^p. Comparisons between
// p-th powers are order-equivalent to comparisons between roots; sums of roots
// are compared with rational enclosures of width 10^-30 and, when the enclosure
// cannot decide, exactly through commensurable radicals.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "metext/errors.hpp"
#include "metext/extension.hpp"
#include "metext/space.hpp"

namespace metext {

struct Tuple {
  std::vector<std::size_t> coords;

  std::size_t size() const { return coords.size(); }
  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

class PNorm {
 public:
  static PNorm max() { return PNorm(0); }
  static PNorm finite(unsigned p) {
    if (p < 1) throw InputError("norm: p must be >= 1");
    return PNorm(p);
  }
  // Rejects non-integer p; those have no exact representation here.
  static PNorm finite(const Scalar& p) {
    if (!p.is_integer()) throw InputError("norm: non-integer p = " + p.str() + " is not supported");
    if (p < Scalar(1)) throw InputError("norm: p must be >= 1, got " + p.str());
    if (p > Scalar(64)) throw InputError("norm: p = " + p.str() + " is too large");
    return PNorm(static_cast<unsigned>(p.numerator().get_ui()));
  }

  bool is_max() const { return p_ == 0; }
  unsigned p() const { return p_; }
  std::string str() const { return is_max() ? "max" : "p:" + std::to_string(p_); }

  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  explicit PNorm(unsigned p) : p_(p) {}
  unsigned p_;
};

// max φ(t_i), or Σ φ(t_i)^p in p-th-power form.
inline Scalar power_lift(const PointFunction& phi, const Tuple& t, const PNorm& norm) {
  if (t.coords.empty()) throw InputError("power_lift: empty tuple");
  Scalar acc;
  bool first = true;
  for (auto i : t.coords) {
    const Scalar& v = phi.at(i);
    if (v.sign() < 0) throw InputError("power_lift: negative function value " + v.str());
    if (norm.is_max()) {
      acc = first ? v : std::max(acc, v);
    } else {
      acc += pow(v, norm.p());
    }
    first = false;
  }
  return acc;
}

inline void require_same_length(const Tuple& s, const Tuple& t) {
  if (s.size() != t.size())
    throw InputError("tuple length mismatch: " + std::to_string(s.size()) + " vs " + std::to_string(t.size()));
}

// Closed form: max_i d(s_i,t_i) or Σ d(s_i,t_i)^p.
inline Scalar power_distance(const FiniteMetricSpace& X, const Tuple& s, const Tuple& t, const PNorm& norm) {
  require_same_length(s, t);
  if (s.coords.empty()) throw InputError("power_distance: empty tuples");
  Scalar acc;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Scalar& d = X(s.coords.at(i), t.coords.at(i));
    acc = norm.is_max() ? (i == 0 ? d : std::max(acc, d)) : acc + pow(d, norm.p());
  }
  return acc;
}

// The single coupling ((s_1,t_1),...,(s_n,t_n)) in product indexing.
template <class Visitor>
void fiber_tuples(const Tuple& s, const Tuple& t, std::size_t n, Visitor&& visit) {
  require_same_length(s, t);
  Tuple c;
  for (std::size_t i = 0; i < s.size(); ++i) c.coords.push_back(s.coords[i] * n + t.coords[i]);
  visit(c);
}

inline std::vector<Tuple> all_tuples(std::size_t n, std::size_t length) {
  std::vector<Tuple> out;
  Tuple t{std::vector<std::size_t>(length, 0)};
  if (n == 0) return out;
  while (true) {
    out.push_back(t);
    std::size_t k = length;
    while (k > 0 && ++t.coords[k - 1] == n) t.coords[--k] = 0;
    if (k == 0) return out;
  }
}

// ---- roots of rationals ----------------------------------------------------

struct RootBounds {
  Scalar lower, upper;  // lower <= v^(1/p) <= upper
};

// Enclosure of v^(1/p) with endpoints on the grid 10^-digits.
inline RootBounds root_bounds(const Scalar& v, unsigned p, unsigned digits = 30) {
  if (v.sign() < 0) throw std::domain_error("root_bounds: negative radicand");
  mpz_class scale, scale_p;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_pow_ui(scale_p.get_mpz_t(), scale.get_mpz_t(), p);
  const mpz_class num = v.numerator() * scale_p;
  const mpz_class floor_val = num / v.denominator();
  mpz_class k;
  mpz_root(k.get_mpz_t(), floor_val.get_mpz_t(), p);
  mpz_class kp;
  mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), p);
  const bool exact = kp * v.denominator() == num;
  return {Scalar(k, scale), exact ? Scalar(k, scale) : Scalar(k + 1, scale)};
}

inline std::optional<Scalar> exact_root(const Scalar& v, unsigned p) {
  if (v.sign() < 0) return std::nullopt;
  mpz_class rn, rd;
  const mpz_class n = v.numerator(), d = v.denominator();
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), p)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), p)) return std::nullopt;
  return Scalar(rn, rd);
}

// Decides root_p(ac) <= root_p(ab) + root_p(bc).
inline Verdict root_triangle(const Scalar& ac, const Scalar& ab, const Scalar& bc, unsigned p) {
  if (p == 1) return ac <= ab + bc ? Verdict::holds : Verdict::violated;
  if (ac.is_zero()) return Verdict::holds;
  if (ab.is_zero()) return ac <= bc ? Verdict::holds : Verdict::violated;
  if (bc.is_zero()) return ac <= ab ? Verdict::holds : Verdict::violated;

  const RootBounds rac = root_bounds(ac, p), rab = root_bounds(ab, p), rbc = root_bounds(bc, p);
  if (rac.upper <= rab.lower + rbc.lower) return Verdict::holds;
  if (rac.lower > rab.upper + rbc.upper) return Verdict::violated;

  // Commensurable radicals reduce to exact rational comparisons.
  if (auto q = exact_root(ac / ab, p)) {  // root(ac) = q root(ab)
    if (*q <= Scalar(1)) return Verdict::holds;
    return pow(*q - Scalar(1), p) * ab <= bc ? Verdict::holds : Verdict::violated;
  }
  if (auto q = exact_root(ac / bc, p)) {
    if (*q <= Scalar(1)) return Verdict::holds;
    return pow(*q - Scalar(1), p) * bc <= ab ? Verdict::holds : Verdict::violated;
  }
  if (auto s = exact_root(bc / ab, p))  // root(bc) = s root(ab)
    return ac <= pow(Scalar(1) + *s, p) * ab ? Verdict::holds : Verdict::violated;
  return Verdict::indeterminate;
}

// Decimal rendering of the value a norm produces: the root for finite p.
inline std::string render_power_value(const Scalar& v, const PNorm& norm, unsigned digits = 12) {
  if (norm.is_max() || norm.p() == 1) return v.decimal(digits);
  return root_bounds(v, norm.p(), digits).lower.decimal(digits);
}

struct PowerFunctor {
  using element_type = Tuple;
  using coupling_type = Tuple;

  std::size_t length = 1;
  PNorm norm = PNorm::max();

  std::string name() const { return "power[n=" + std::to_string(length) + "," + norm.str() + "]"; }
  Tuple embed(std::size_t x) const { return Tuple{std::vector<std::size_t>(length, x)}; }
  bool valid(const Tuple& t, std::size_t n) const {
    return t.size() == length && std::all_of(t.coords.begin(), t.coords.end(), [n](auto i) { return i < n; });
  }
  Tuple apply_map(const PointMap& m, const Tuple& t) const {
    Tuple out;
    for (auto i : t.coords) out.coords.push_back(m(i));
    return out;
  }
  Scalar lift(const PointFunction& phi, const Tuple& t) const { return power_lift(phi, t, norm); }
  Scalar lift_coupling(const PointFunction& p, const Tuple& c, std::size_t) const { return power_lift(p, c, norm); }
  Tuple marginal(const Tuple& c, int side, std::size_t n) const {
    const auto P = product_space(n);
    return apply_map(side == 1 ? P.pr1 : P.pr2, c);
  }
  Tuple swap(const Tuple& c, std::size_t n) const { return apply_map(product_space(n).swap, c); }
  Tuple diagonal_lift(const Tuple& a, std::size_t n) const { return apply_map(product_space(n).diagonal, a); }

  template <class Visitor>
  void fiber(const Tuple& s, const Tuple& t, std::size_t n, Visitor&& visit) const {
    fiber_tuples(s, t, n, std::forward<Visitor>(visit));
  }

  Scalar value_form(const Scalar& d) const { return norm.is_max() ? d : pow(d, norm.p()); }

  Verdict triangle(const Scalar& ac, const Scalar& ab, const Scalar& bc) const {
    if (norm.is_max()) return ac <= ab + bc ? Verdict::holds : Verdict::violated;
    return root_triangle(ac, ab, bc, norm.p());
  }

  std::string describe(const Tuple& t) const {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t.coords[i]);
    return out + ")";
  }
};

static_assert(FunctorInstance<PowerFunctor>);

}  // namespace metext
