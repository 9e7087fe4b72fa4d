#pragma once

// F = G (free group) and F = A (free abelian group) over a pointed finite
// space. The basepoint is the group identity. A coupling of words A, B is a
// proper representation: rows (a_i, b_i, ε_i) such that Π a_i^ε_i reduces to A
// and Π b_i^ε_i reduces to B. The lifted operator sums φ over letters, either
// over every position (Graev) or over distinct letters (Swierczkowski).
//
// The infimum over representations has no a-priori length bound, so every
// search runs under an explicit length cap and results carry that cap.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "metext/errors.hpp"
#include "metext/extension.hpp"
#include "metext/space.hpp"

namespace metext {

struct Letter {
  std::size_t point = 0;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {point, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

enum class WordVariant { graev, swierczkowski };

inline const char* to_string(WordVariant v) { return v == WordVariant::graev ? "graev" : "swierczkowski"; }

class GroupWord {
 public:
  GroupWord() = default;

  // Canonical reduced form: basepoint letters deleted, adjacent inverse pairs
  // cancelled; in commutative mode exponents are summed per point and letters
  // sorted by point.
  static GroupWord reduce(const std::vector<Letter>& letters, std::size_t basepoint, bool commutative) {
    GroupWord w;
    w.basepoint_ = basepoint;
    w.commutative_ = commutative;
    for (const auto& l : letters)
      if (l.sign != 1 && l.sign != -1) throw InputError("word: exponent must be +1 or -1");
    if (commutative) {
      std::map<std::size_t, long> net;
      for (const auto& l : letters)
        if (l.point != basepoint) net[l.point] += l.sign;
      for (const auto& [p, c] : net)
        for (long i = 0; i < (c < 0 ? -c : c); ++i) w.letters_.push_back({p, c < 0 ? -1 : 1});
    } else {
      for (const auto& l : letters) {
        if (l.point == basepoint) continue;
        if (!w.letters_.empty() && w.letters_.back() == l.inverse())
          w.letters_.pop_back();
        else
          w.letters_.push_back(l);
      }
    }
    return w;
  }

  static GroupWord identity(std::size_t basepoint, bool commutative) { return reduce({}, basepoint, commutative); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::size_t basepoint() const { return basepoint_; }
  bool commutative() const { return commutative_; }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
  std::size_t basepoint_ = 0;
  bool commutative_ = false;
};

struct RepresentationRow {
  std::size_t a = 0;
  std::size_t b = 0;
  int sign = 1;

  friend bool operator==(const RepresentationRow&, const RepresentationRow&) = default;
  friend auto operator<=>(const RepresentationRow&, const RepresentationRow&) = default;
};

// Pair of equal-length, equal-signature words; sides need not be reduced.
struct ProperRepresentationPair {
  std::vector<RepresentationRow> rows;
  std::size_t basepoint = 0;
  bool commutative = false;

  std::size_t length() const { return rows.size(); }

  std::vector<Letter> side_letters(int side) const {
    std::vector<Letter> out;
    for (const auto& r : rows) out.push_back({side == 1 ? r.a : r.b, r.sign});
    return out;
  }
  GroupWord side(int side_index) const {
    return GroupWord::reduce(side_letters(side_index), basepoint, commutative);
  }

  friend bool operator==(const ProperRepresentationPair&, const ProperRepresentationPair&) = default;
};

inline Scalar letter_sum_lift(const PointFunction& phi, const GroupWord& w, WordVariant variant) {
  Scalar s;
  if (variant == WordVariant::graev) {
    for (const auto& l : w.letters()) s += phi.at(l.point);
  } else {
    std::set<std::size_t> distinct;
    for (const auto& l : w.letters()) distinct.insert(l.point);
    for (auto p : distinct) s += phi.at(p);
  }
  return s;
}

// p is a function on X×X in product indexing; Swierczkowski counts each
// distinct pair (a_i, b_i) once.
inline Scalar letter_sum_lift(const PointFunction& p, const ProperRepresentationPair& r, std::size_t n,
                              WordVariant variant) {
  Scalar s;
  if (variant == WordVariant::graev) {
    for (const auto& row : r.rows) s += p.at(row.a * n + row.b);
  } else {
    std::set<std::size_t> distinct;
    for (const auto& row : r.rows) distinct.insert(row.a * n + row.b);
    for (auto k : distinct) s += p.at(k);
  }
  return s;
}

inline std::size_t default_word_cap(const GroupWord& a, const GroupWord& b) { return a.size() + b.size() + 2; }

namespace detail {

inline void require_compatible(const GroupWord& a, const GroupWord& b, std::size_t n) {
  if (a.basepoint() != b.basepoint() || a.commutative() != b.commutative())
    throw InputError("words are over different pointed spaces");
  if (a.basepoint() >= n) throw InputError("word basepoint out of range");
  for (const auto* w : {&a, &b})
    for (const auto& l : w->letters())
      if (l.point >= n) throw InputError("word letter out of range");
}

// Reduced prefix of a word read left to right.
class FreeState {
 public:
  FreeState(std::size_t basepoint, const GroupWord& target) : basepoint_(basepoint), target_(target.letters()) {}

  // Returns an undo token: 0 no-op, 1 popped, 2 pushed.
  int push(Letter l) {
    if (l.point == basepoint_) return 0;
    if (!stack_.empty() && stack_.back() == l.inverse()) {
      stack_.pop_back();
      if (lcp_ > stack_.size()) lcp_ = stack_.size();
      return 1;
    }
    const bool extends = lcp_ == stack_.size() && lcp_ < target_.size() && target_[lcp_] == l;
    stack_.push_back(l);
    if (extends) ++lcp_;
    return 2;
  }
  void undo(int token, Letter l) {
    if (token == 0) return;
    if (token == 2) {
      stack_.pop_back();
      if (lcp_ > stack_.size()) lcp_ = stack_.size();
    } else {
      stack_.push_back(l.inverse());
      recompute_lcp();
    }
  }
  // Letters still needed to reach the target: |S| + |T| - 2 lcp(S, T).
  std::size_t distance() const { return stack_.size() + target_.size() - 2 * lcp_; }
  void append_key(std::string& key) const {
    for (const auto& l : stack_) key.push_back(static_cast<char>(l.point * 2 + (l.sign > 0 ? 0 : 1)));
    key.push_back('\xff');
  }

 private:
  void recompute_lcp() {
    lcp_ = 0;
    while (lcp_ < stack_.size() && lcp_ < target_.size() && stack_[lcp_] == target_[lcp_]) ++lcp_;
  }

  std::size_t basepoint_;
  std::vector<Letter> target_;
  std::vector<Letter> stack_;
  std::size_t lcp_ = 0;
};

// Exponent vector of a prefix in the free abelian group.
class AbelianState {
 public:
  AbelianState(std::size_t basepoint, const GroupWord& target, std::size_t n)
      : basepoint_(basepoint), counts_(n, 0), target_(n, 0) {
    for (const auto& l : target.letters()) target_[l.point] += l.sign;
    for (std::size_t i = 0; i < n; ++i) distance_ += static_cast<std::size_t>(std::abs(target_[i]));
  }
  int push(Letter l) {
    if (l.point == basepoint_) return 0;
    move(l.point, l.sign);
    return 1;
  }
  void undo(int token, Letter l) {
    if (token) move(l.point, -l.sign);
  }
  std::size_t distance() const { return distance_; }
  void append_key(std::string& key) const {
    for (auto c : counts_) key.push_back(static_cast<char>(c));
    key.push_back('\x7f');
  }

 private:
  void move(std::size_t p, int by) {
    distance_ -= static_cast<std::size_t>(std::abs(target_[p] - counts_[p]));
    counts_[p] += by;
    distance_ += static_cast<std::size_t>(std::abs(target_[p] - counts_[p]));
  }

  std::size_t basepoint_;
  std::vector<int> counts_, target_;
  std::size_t distance_ = 0;
};

template <class State, class Visitor>
void enumerate_representations_impl(State sa, State sb, std::size_t n, std::size_t cap, std::size_t basepoint,
                                    bool commutative, Visitor&& visit) {
  ProperRepresentationPair rep{{}, basepoint, commutative};
  bool stop = false;
  auto rec = [&](auto&& self) -> void {
    if (sa.distance() == 0 && sb.distance() == 0) {
      if (!visit(static_cast<const ProperRepresentationPair&>(rep))) {
        stop = true;
        return;
      }
    }
    const std::size_t depth = rep.rows.size();
    if (depth == cap) return;
    const std::size_t left = cap - depth - 1;
    for (int sign : {1, -1})
      for (std::size_t a = 0; a < n; ++a) {
        const Letter la{a, sign};
        const int ta = sa.push(la);
        if (sa.distance() <= left) {
          for (std::size_t b = 0; b < n && !stop; ++b) {
            const Letter lb{b, sign};
            const int tb = sb.push(lb);
            if (sb.distance() <= left) {
              rep.rows.push_back({a, b, sign});
              self(self);
              rep.rows.pop_back();
            }
            sb.undo(tb, lb);
          }
        }
        sa.undo(ta, la);
        if (stop) return;
      }
  };
  rec(rec);
}

}  // namespace detail

// Every proper representation of (A, B) with at most `cap` rows, in
// lexicographic row order (sign +1 first, then a, then b). Branches whose
// reduced prefixes are farther from A or B than the remaining rows are cut.
template <class Visitor>
void enumerate_proper_representations(const GroupWord& A, const GroupWord& B, std::size_t n, std::size_t cap,
                                      Visitor&& visit) {
  detail::require_compatible(A, B, n);
  const std::size_t e = A.basepoint();
  if (A.commutative())
    detail::enumerate_representations_impl(detail::AbelianState(e, A, n), detail::AbelianState(e, B, n), n, cap, e,
                                           true, std::forward<Visitor>(visit));
  else
    detail::enumerate_representations_impl(detail::FreeState(e, A), detail::FreeState(e, B), n, cap, e, false,
                                           std::forward<Visitor>(visit));
}

struct WordDistanceResult {
  Scalar value;
  ProperRepresentationPair witness;
  std::size_t cap = 0;
  // The value is the exact minimum over representations of length <= cap, an
  // upper bound for the unrestricted infimum.
  bool cap_limited = true;
  std::size_t nodes = 0;
};

namespace detail {

// Branch and bound over representations. Exact within the cap: the only
// branches skipped are rows (e,e,±), rows inverting the previous row, and
// prefixes that cannot beat the incumbent, none of which can hold a strictly
// better representation of length <= cap.
template <class State>
WordDistanceResult search_min_representation(State sa, State sb, const FiniteMetricSpace& X, const GroupWord& A,
                                              const GroupWord& B, WordVariant variant, std::size_t cap) {
  const std::size_t n = X.size(), e = A.basepoint();
  const bool commutative = A.commutative();
  WordDistanceResult result;
  result.cap = cap;

  std::optional<Scalar> best;
  ProperRepresentationPair rep{{}, e, commutative};

  // Seed: A padded against the identity, followed by the identity against B.
  if (A.size() + B.size() <= cap) {
    ProperRepresentationPair seed{{}, e, commutative};
    for (const auto& l : A.letters()) seed.rows.push_back({l.point, e, l.sign});
    for (const auto& l : B.letters()) seed.rows.push_back({e, l.point, l.sign});
    best = letter_sum_lift(X.pair_table(), seed, n, variant);
    result.witness = seed;
  }

  // Swierczkowski charges a pair once; track which positive-cost pairs are used.
  std::vector<int> used(n * n, 0);
  std::string used_key(n * n, '0');

  // Transposition table: state -> (rows left, cost) pairs already explored.
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, Scalar>>> seen;

  auto rec = [&](auto&& self, const Scalar& cost) -> void {
    ++result.nodes;
    if (sa.distance() == 0 && sb.distance() == 0 && (!best || cost < *best)) {
      best = cost;
      result.witness = rep;
    }
    if (best && best->is_zero()) return;
    const std::size_t depth = rep.rows.size();
    if (depth == cap) return;
    const std::size_t left = cap - depth - 1;

    std::string key;
    sa.append_key(key);
    sb.append_key(key);
    if (variant == WordVariant::swierczkowski) key += used_key;
    auto& entries = seen[key];
    for (const auto& [rows_left, c] : entries)
      if (rows_left >= cap - depth && c <= cost) return;
    entries.emplace_back(cap - depth, cost);

    for (int sign : {1, -1})
      for (std::size_t a = 0; a < n; ++a) {
        const Letter la{a, sign};
        const int ta = sa.push(la);
        if (sa.distance() <= left) {
          for (std::size_t b = 0; b < n; ++b) {
            if (a == e && b == e) continue;
            if (depth > 0) {
              const auto& prev = rep.rows.back();
              if (prev.a == a && prev.b == b && prev.sign == -sign) continue;
            }
            const Letter lb{b, sign};
            const int tb = sb.push(lb);
            if (sb.distance() <= left) {
              const std::size_t k = a * n + b;
              const Scalar& d = X(a, b);
              const bool charge = variant == WordVariant::graev || used[k] == 0;
              Scalar next = charge ? cost + d : cost;
              if (!best || next < *best) {
                if (variant == WordVariant::swierczkowski && !d.is_zero() && used[k]++ == 0) used_key[k] = '1';
                rep.rows.push_back({a, b, sign});
                self(self, next);
                rep.rows.pop_back();
                if (variant == WordVariant::swierczkowski && !d.is_zero() && --used[k] == 0) used_key[k] = '0';
              }
            }
            sb.undo(tb, lb);
          }
        }
        sa.undo(ta, la);
      }
  };
  rec(rec, Scalar());
  if (!best)
    throw CapExceeded("no proper representation of length <= " + std::to_string(cap) + " exists for these words");
  result.value = *best;
  return result;
}

}  // namespace detail

// Graev (d1) or Swierczkowski (d2) distance under a representation-length cap.
// cap = 0 selects the default |A| + |B| + 2.
inline WordDistanceResult graev_distance(const FiniteMetricSpace& X, const GroupWord& A, const GroupWord& B,
                                         WordVariant variant, std::size_t cap = 0) {
  const std::size_t n = X.size();
  detail::require_compatible(A, B, n);
  if (cap == 0) cap = default_word_cap(A, B);
  if (cap < std::max(A.size(), B.size()))
    throw CapExceeded("cap " + std::to_string(cap) + " is below the word length " +
                      std::to_string(std::max(A.size(), B.size())));
  const std::size_t e = A.basepoint();
  if (A.commutative())
    return detail::search_min_representation(detail::AbelianState(e, A, n), detail::AbelianState(e, B, n), X, A, B,
                                             variant, cap);
  return detail::search_min_representation(detail::FreeState(e, A), detail::FreeState(e, B), X, A, B, variant, cap);
}

// Free abelian variant: identical search with commutative reduction.
inline WordDistanceResult abelian_distance(const FiniteMetricSpace& X, const GroupWord& A, const GroupWord& B,
                                           WordVariant variant, std::size_t cap = 0) {
  if (!A.commutative() || !B.commutative()) throw InputError("abelian_distance: words must be commutative");
  return graev_distance(X, A, B, variant, cap);
}

// Triangle inequality d(A,C) <= d(A,B) + d(B,C) with all three values computed
// at the shared cap |A|+|B|+|C|+2; a violation is retried once at cap + 2.
struct WordTriangle {
  Verdict verdict = Verdict::holds;
  std::size_t cap = 0;
  Scalar ab, bc, ac;
};

inline WordTriangle word_triangle(const FiniteMetricSpace& X, const GroupWord& A, const GroupWord& B,
                                  const GroupWord& C, WordVariant variant) {
  WordTriangle t;
  t.cap = A.size() + B.size() + C.size() + 2;
  for (int attempt = 0; attempt < 2; ++attempt, t.cap += 2) {
    t.ab = graev_distance(X, A, B, variant, t.cap).value;
    t.bc = graev_distance(X, B, C, variant, t.cap).value;
    t.ac = graev_distance(X, A, C, variant, t.cap).value;
    t.verdict = t.ac <= t.ab + t.bc ? Verdict::holds : Verdict::violated;
    if (t.verdict == Verdict::holds) return t;
  }
  t.cap -= 2;
  return t;
}

// Reduced words over an n-point pointed space with at most max_length letters.
inline std::vector<GroupWord> all_words(std::size_t n, std::size_t basepoint, std::size_t max_length,
                                        bool commutative) {
  std::vector<GroupWord> out;
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    const GroupWord w = GroupWord::reduce(cur, basepoint, commutative);
    if (w.letters() == cur && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    if (cur.size() == max_length) return;
    for (std::size_t p = 0; p < n; ++p) {
      if (p == basepoint) continue;
      for (int s : {1, -1}) {
        cur.push_back({p, s});
        self(self);
        cur.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

struct WordsFunctor {
  using element_type = GroupWord;
  using coupling_type = ProperRepresentationPair;

  std::size_t basepoint = 0;
  WordVariant variant = WordVariant::graev;
  bool commutative = false;
  std::size_t cap = 0;  // 0: |A| + |B| + 2 per pair

  std::string name() const {
    return std::string(commutative ? "abelian-words[" : "words[") + to_string(variant) + "]";
  }
  GroupWord embed(std::size_t x) const { return GroupWord::reduce({{x, 1}}, basepoint, commutative); }
  bool valid(const GroupWord& w, std::size_t n) const {
    if (w.commutative() != commutative || w.basepoint() >= n) return false;
    for (const auto& l : w.letters())
      if (l.point >= n) return false;
    return GroupWord::reduce(w.letters(), w.basepoint(), commutative) == w;
  }
  GroupWord apply_map(const PointMap& m, const GroupWord& w) const {
    std::vector<Letter> image;
    for (const auto& l : w.letters()) image.push_back({m(l.point), l.sign});
    return GroupWord::reduce(image, m(w.basepoint()), w.commutative());
  }
  Scalar lift(const PointFunction& phi, const GroupWord& w) const { return letter_sum_lift(phi, w, variant); }
  Scalar lift_coupling(const PointFunction& p, const ProperRepresentationPair& r, std::size_t n) const {
    return letter_sum_lift(p, r, n, variant);
  }
  GroupWord marginal(const ProperRepresentationPair& r, int side, std::size_t) const { return r.side(side); }
  ProperRepresentationPair swap(const ProperRepresentationPair& r, std::size_t) const {
    ProperRepresentationPair s = r;
    for (auto& row : s.rows) std::swap(row.a, row.b);
    return s;
  }
  ProperRepresentationPair diagonal_lift(const GroupWord& w, std::size_t) const {
    ProperRepresentationPair r{{}, w.basepoint(), w.commutative()};
    for (const auto& l : w.letters()) r.rows.push_back({l.point, l.point, l.sign});
    return r;
  }

  template <class Visitor>
  void fiber(const GroupWord& a, const GroupWord& b, std::size_t n, Visitor&& visit) const {
    enumerate_proper_representations(a, b, n, cap ? cap : default_word_cap(a, b), std::forward<Visitor>(visit));
  }

  std::string describe(const GroupWord& w) const {
    if (w.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      out += (i ? " " : "") + std::to_string(w.letters()[i].point);
      if (w.letters()[i].sign < 0) out += "^-1";
    }
    return out;
  }
};

static_assert(FunctorInstance<WordsFunctor>);

}  // namespace metext
