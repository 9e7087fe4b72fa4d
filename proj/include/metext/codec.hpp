#pragma once

// JSON syntax for functor elements and witnesses, in terms of point labels.
//   subset        ["x", "y"]
//   tuple         ["x", "x", "y"]
//   distribution  {"x": "1/2", "y": "1/2"}
//   word          ["x", "y^-1"]   (basepoint taken from the space file)
// Witnesses:
//   subset coupling / tuple coupling   [["x","y"], ...]
//   transport plan                     [{"from": "x", "to": "y", "mass": "1/2"}, ...]
//   representation                     [{"a": "x", "b": "y", "sign": 1}, ...]

#include <string>
#include <vector>

#include <json.hpp>

#include "metext/errors.hpp"
#include "metext/hyperspace.hpp"
#include "metext/power.hpp"
#include "metext/space.hpp"
#include "metext/space_io.hpp"
#include "metext/transport.hpp"
#include "metext/words.hpp"

namespace metext::codec {

using nlohmann::json;

inline std::size_t point_from_json(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a point label");
  const auto label = j.get<std::string>();
  if (auto i = X.index_of(label)) return *i;
  throw InputError(where + ": unknown point \"" + label + "\"");
}

inline const json& require_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

// ---- elements -------------------------------------------------------------

inline Subset parse_subset(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  std::vector<std::size_t> pts;
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k)
    pts.push_back(point_from_json(X, j[k], where + "[" + std::to_string(k) + "]"));
  if (pts.empty()) throw InputError(where + ": subset must be nonempty");
  return Subset(pts);
}

inline json subset_json(const FiniteMetricSpace& X, const Subset& s) {
  json out = json::array();
  for (auto i : s.members()) out.push_back(X.label(i));
  return out;
}

inline Tuple parse_tuple(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  Tuple t;
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k)
    t.coords.push_back(point_from_json(X, j[k], where + "[" + std::to_string(k) + "]"));
  if (t.coords.empty()) throw InputError(where + ": tuple must be nonempty");
  return t;
}

inline json tuple_json(const FiniteMetricSpace& X, const Tuple& t) {
  json out = json::array();
  for (auto i : t.coords) out.push_back(X.label(i));
  return out;
}

inline Distribution parse_distribution(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object of point weights");
  std::vector<Distribution::Entry> entries;
  for (const auto& [label, w] : j.items())
    entries.emplace_back(point_from_json(X, json(label), where), scalar_from_json(w, where + "." + label));
  try {
    return Distribution::make(entries);
  } catch (const UnbalancedMass& e) {
    throw UnbalancedMass(where + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline json distribution_json(const FiniteMetricSpace& X, const Distribution& mu) {
  json out = json::object();
  for (const auto& [i, w] : mu.masses()) out[X.label(i)] = w.str();
  return out;
}

inline std::size_t require_basepoint(const FiniteMetricSpace& X) {
  if (!X.basepoint()) throw InputError("space.basepoint: words need a pointed space");
  return *X.basepoint();
}

inline Letter parse_letter(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a signed label such as \"x\" or \"x^-1\"");
  std::string text = j.get<std::string>();
  int sign = 1;
  static const std::string inv = "^-1";
  if (text.size() > inv.size() && text.compare(text.size() - inv.size(), inv.size(), inv) == 0) {
    sign = -1;
    text.resize(text.size() - inv.size());
  }
  return {point_from_json(X, json(text), where), sign};
}

// Reduced on parse: the word is the group element the letters spell.
inline GroupWord parse_word(const FiniteMetricSpace& X, const json& j, bool commutative, const std::string& where) {
  const std::size_t base = require_basepoint(X);
  std::vector<Letter> letters;
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k)
    letters.push_back(parse_letter(X, j[k], where + "[" + std::to_string(k) + "]"));
  return GroupWord::reduce(letters, base, commutative);
}

inline json word_json(const FiniteMetricSpace& X, const GroupWord& w) {
  json out = json::array();
  for (const auto& l : w.letters()) out.push_back(X.label(l.point) + (l.sign < 0 ? "^-1" : ""));
  return out;
}

// ---- witnesses ------------------------------------------------------------

// Subset and tuple couplings share the pair-list form.
inline json pair_list_json(const FiniteMetricSpace& X, const std::vector<std::size_t>& product_indices) {
  const std::size_t n = X.size();
  json out = json::array();
  for (auto c : product_indices) out.push_back(json::array({X.label(c / n), X.label(c % n)}));
  return out;
}

inline std::vector<std::size_t> parse_pair_list(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) throw InputError(at + ": expected a [from, to] pair");
    out.push_back(point_from_json(X, j[k][0], at) * X.size() + point_from_json(X, j[k][1], at));
  }
  return out;
}

inline json plan_json(const FiniteMetricSpace& X, const TransportPlan& plan) {
  const std::size_t n = X.size();
  json out = json::array();
  for (const auto& [c, w] : plan.masses())
    out.push_back(json{{"from", X.label(c / n)}, {"to", X.label(c % n)}, {"mass", w.str()}});
  return out;
}

inline TransportPlan parse_plan(const FiniteMetricSpace& X, const json& j, const std::string& where) {
  std::vector<Distribution::Entry> entries;
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const auto& e = j[k];
    if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("mass"))
      throw InputError(at + ": expected {\"from\", \"to\", \"mass\"}");
    entries.emplace_back(point_from_json(X, e["from"], at + ".from") * X.size() + point_from_json(X, e["to"], at + ".to"),
                         scalar_from_json(e["mass"], at + ".mass"));
  }
  return Distribution::make(entries);
}

inline json representation_json(const FiniteMetricSpace& X, const ProperRepresentationPair& r) {
  json out = json::array();
  for (const auto& row : r.rows) out.push_back(json{{"a", X.label(row.a)}, {"b", X.label(row.b)}, {"sign", row.sign}});
  return out;
}

inline ProperRepresentationPair parse_representation(const FiniteMetricSpace& X, const json& j, bool commutative,
                                                     const std::string& where) {
  ProperRepresentationPair r{{}, require_basepoint(X), commutative};
  for (std::size_t k = 0; k < require_array(j, where).size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const auto& e = j[k];
    if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("sign"))
      throw InputError(at + ": expected {\"a\", \"b\", \"sign\"}");
    if (!e["sign"].is_number_integer() || (e["sign"] != 1 && e["sign"] != -1))
      throw InputError(at + ".sign: expected 1 or -1");
    r.rows.push_back({point_from_json(X, e["a"], at + ".a"), point_from_json(X, e["b"], at + ".b"), e["sign"].get<int>()});
  }
  return r;
}

}  // namespace metext::codec
