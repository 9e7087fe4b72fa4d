#pragma once

// Command-line front end. Exit codes: 0 ok, 1 input or validation error,
// 2 computation error, 3 specialized/generic mismatch under --method both.

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metext/codec.hpp"
#include "metext/errors.hpp"
#include "metext/extension.hpp"
#include "metext/hyperspace.hpp"
#include "metext/power.hpp"
#include "metext/space_io.hpp"
#include "metext/suites.hpp"
#include "metext/transport.hpp"
#include "metext/words.hpp"

namespace metext::cli {

using nlohmann::json;

enum Exit : int { ok = 0, input_error = 1, computation_error = 2, mismatch = 3 };

struct DistRequest {
  std::string functor;
  std::string space;
  std::string a, b;
  std::string norm = "max";
  std::string variant = "graev";
  bool abelian = false;
  std::size_t cap = 0;
  std::string method = "specialized";
  bool fault_inject = false;
};

// One evaluation path's answer, with its witness already serialized.
struct Computed {
  Scalar value;
  json witness;
  std::optional<std::size_t> fiber_size;
  bool cap_limited = false;
  std::optional<std::size_t> cap;
};

inline json parse_element_text(const std::string& text, const char* field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(field) + ": not valid JSON (" + e.what() + ")");
  }
}

inline PNorm parse_norm(const std::string& text) {
  if (text == "max") return PNorm::max();
  if (text.rfind("p:", 0) == 0) {
    try {
      return PNorm::finite(Scalar::parse(text.substr(2)));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("norm: ") + e.what());
    }
  }
  throw InputError("norm: expected \"max\" or \"p:K\", got \"" + text + "\"");
}

inline WordVariant parse_variant(const std::string& text) {
  if (text == "graev") return WordVariant::graev;
  if (text == "swierczkowski") return WordVariant::swierczkowski;
  throw InputError("variant: expected graev or swierczkowski, got \"" + text + "\"");
}

// Value fields: exact value first, then a decimal; finite p adds the stored
// p-th power and reports the root exactly when it is rational.
inline json value_fields(const Scalar& v, const std::optional<PNorm>& norm) {
  json out;
  if (!norm || norm->is_max() || norm->p() == 1) {
    out["value"] = v.str();
    out["decimal"] = v.decimal();
  } else {
    const auto root = exact_root(v, norm->p());
    out["value"] = root ? root->str() : v.str() + "^(1/" + std::to_string(norm->p()) + ")";
    out["decimal"] = render_power_value(v, *norm);
  }
  if (norm && !norm->is_max()) out["pth_power"] = v.str();
  return out;
}

inline json computed_json(const Computed& c, const std::optional<PNorm>& norm) {
  json out = value_fields(c.value, norm);
  out["witness"] = c.witness;
  json flags;
  flags["cap_limited"] = c.cap_limited;
  flags["fiber_size"] = c.fiber_size ? json(*c.fiber_size) : json(nullptr);
  if (c.cap) flags["cap"] = *c.cap;
  out["flags"] = flags;
  return out;
}

inline void require_relift(bool same, const std::string& what) {
  if (!same) throw ComputationError("witness check failed: " + what);
}

// ---- per-functor evaluation ----------------------------------------------

inline Computed hyperspace_path(const FiniteMetricSpace& X, const Subset& A, const Subset& B, bool generic) {
  const HyperspaceFunctor F;
  const std::size_t n = X.size();
  Computed c;
  SubsetCoupling w;
  if (generic) {
    auto r = extend_generic(F, n, X.pair_table(), A, B, {.early_exit_on_zero = false});
    c.value = r.value;
    c.fiber_size = r.fiber_size_enumerated;
    w = r.witness;
  } else {
    c.value = hausdorff(X, A, B);
    w = optimal_coupling(X, A, B);
  }
  c.witness = codec::pair_list_json(X, w.members());
  const SubsetCoupling back(codec::parse_pair_list(X, c.witness, "witness"));
  require_relift(F.marginal(back, 1, n) == A && F.marginal(back, 2, n) == B, "coupling marginals");
  require_relift(F.lift_coupling(X.pair_table(), back, n) == c.value, "coupling re-lift");
  return c;
}

inline Computed power_path(const FiniteMetricSpace& X, const Tuple& s, const Tuple& t, const PNorm& norm,
                           bool generic) {
  if (s.size() != t.size())
    throw InputError("b: tuple length " + std::to_string(t.size()) + " differs from a's " + std::to_string(s.size()));
  const PowerFunctor F{s.size(), norm};
  const std::size_t n = X.size();
  Computed c;
  Tuple w;
  if (generic) {
    auto r = extend_generic(F, n, X.pair_table(), s, t, {.early_exit_on_zero = false});
    c.value = r.value;
    c.fiber_size = r.fiber_size_enumerated;
    w = r.witness;
  } else {
    c.value = power_distance(X, s, t, norm);
    fiber_tuples(s, t, n, [&](const Tuple& only) { w = only; });
  }
  c.witness = codec::pair_list_json(X, w.coords);
  const Tuple back{codec::parse_pair_list(X, c.witness, "witness")};
  require_relift(F.marginal(back, 1, n) == s && F.marginal(back, 2, n) == t, "coupling marginals");
  require_relift(F.lift_coupling(X.pair_table(), back, n) == c.value, "coupling re-lift");
  return c;
}

inline Computed transport_path(const FiniteMetricSpace& X, const Distribution& mu, const Distribution& nu,
                               bool generic, bool fault_inject) {
  const TransportFunctor F;
  const std::size_t n = X.size();
  Computed c;
  TransportPlan w;
  if (generic) {
    auto r = extend_generic(F, n, X.pair_table(), mu, nu, {.early_exit_on_zero = false});
    c.value = r.value;
    c.fiber_size = r.fiber_size_enumerated;
    w = r.witness;
  } else {
    auto r = kantorovich(X, mu, nu, KantorovichOptions{.corrupt_northwest_corner = fault_inject});
    c.value = r.value;
    w = r.plan;
  }
  c.witness = codec::plan_json(X, w);
  const TransportPlan back = codec::parse_plan(X, c.witness, "witness");
  require_relift(plan_marginal(back, 1, n) == mu && plan_marginal(back, 2, n) == nu, "plan marginals");
  require_relift(integrate(X.pair_table(), back) == c.value, "plan re-integration");
  return c;
}

inline Computed words_path(const FiniteMetricSpace& X, const GroupWord& A, const GroupWord& B, WordVariant variant,
                           std::size_t cap, bool generic) {
  const std::size_t n = X.size();
  const WordsFunctor F{A.basepoint(), variant, A.commutative(), cap};
  Computed c;
  ProperRepresentationPair w;
  c.cap_limited = true;
  if (generic) {
    const std::size_t used = cap ? cap : default_word_cap(A, B);
    if (used < std::max(A.size(), B.size()))
      throw CapExceeded("cap " + std::to_string(used) + " is below the word length");
    std::size_t count = 0;
    std::optional<Scalar> best;
    F.fiber(A, B, n, [&](const ProperRepresentationPair& r) {
      ++count;
      const Scalar v = F.lift_coupling(X.pair_table(), r, n);
      if (!best || v < *best) {
        best = v;
        w = r;
      }
      return true;
    });
    if (!best) throw CapExceeded("no proper representation of length <= " + std::to_string(used));
    c.value = *best;
    c.fiber_size = count;
    c.cap = used;
  } else {
    auto r = graev_distance(X, A, B, variant, cap);
    c.value = r.value;
    c.cap = r.cap;
    w = r.witness;
  }
  c.witness = codec::representation_json(X, w);
  const auto back = codec::parse_representation(X, c.witness, A.commutative(), "witness");
  require_relift(back.side(1) == A && back.side(2) == B, "representation sides");
  require_relift(letter_sum_lift(X.pair_table(), back, n, variant) == c.value, "representation re-lift");
  return c;
}

// Runs the requested method(s); returns the response body and exit code.
inline std::pair<json, int> run_dist(const DistRequest& rq) {
  if (rq.method != "specialized" && rq.method != "generic" && rq.method != "both")
    throw InputError("method: expected specialized, generic or both, got \"" + rq.method + "\"");
  const FiniteMetricSpace X = load_space(rq.space);
  const json ja = parse_element_text(rq.a, "a"), jb = parse_element_text(rq.b, "b");

  std::optional<PNorm> norm;
  std::function<Computed(bool)> path;
  if (rq.functor == "hyperspace") {
    const Subset A = codec::parse_subset(X, ja, "a"), B = codec::parse_subset(X, jb, "b");
    path = [&X, A, B](bool g) { return hyperspace_path(X, A, B, g); };
  } else if (rq.functor == "power") {
    norm = parse_norm(rq.norm);
    const Tuple s = codec::parse_tuple(X, ja, "a"), t = codec::parse_tuple(X, jb, "b");
    path = [&X, s, t, nv = *norm](bool g) { return power_path(X, s, t, nv, g); };
  } else if (rq.functor == "transport") {
    const Distribution mu = codec::parse_distribution(X, ja, "a"), nu = codec::parse_distribution(X, jb, "b");
    path = [&X, mu, nu, f = rq.fault_inject](bool g) { return transport_path(X, mu, nu, g, f); };
  } else if (rq.functor == "words") {
    const WordVariant v = parse_variant(rq.variant);
    const GroupWord A = codec::parse_word(X, ja, rq.abelian, "a"), B = codec::parse_word(X, jb, rq.abelian, "b");
    path = [&X, A, B, v, cap = rq.cap](bool g) { return words_path(X, A, B, v, cap, g); };
  } else {
    throw InputError("functor: expected hyperspace, power, transport or words, got \"" + rq.functor + "\"");
  }

  json out;
  out["functor"] = rq.functor;
  out["method"] = rq.method;
  if (norm) out["norm"] = norm->str();
  if (rq.functor == "words") {
    out["variant"] = rq.variant;
    out["abelian"] = rq.abelian;
  }
  if (rq.method != "both") {
    out.update(computed_json(path(rq.method == "generic"), norm));
    return {out, ok};
  }
  const Computed special = path(false), gen = path(true);
  const bool agree = special.value == gen.value;
  out["agree"] = agree;
  out.update(value_fields(special.value, norm));
  out["specialized"] = computed_json(special, norm);
  out["generic"] = computed_json(gen, norm);
  return {out, agree ? ok : mismatch};
}

inline int run_validate(const std::string& path, std::ostream& out) {
  const auto r = validate_document(parse_space_document(read_json_file(path)));
  if (const auto* v = std::get_if<Violation>(&r)) {
    json j{{"valid", false}, {"axiom", to_string(v->axiom)}, {"message", v->message}};
    j["indices"] = v->indices;
    out << j.dump(2) << "\n";
    return input_error;
  }
  const auto& X = std::get<FiniteMetricSpace>(r);
  json j{{"valid", true}, {"points", X.size()}, {"mode", to_string(X.mode())}};
  if (X.basepoint()) j["basepoint"] = X.label(*X.basepoint());
  out << j.dump(2) << "\n";
  return ok;
}

inline int run_selftest(bool fault_inject, std::ostream& out) {
  auto scale = suites::Scale::small();
  scale.solver.corrupt_northwest_corner = fault_inject;
  bool all = true;
  for (const auto& suite : suites::registry()) {
    const auto reports = suite.run(scale);
    const bool good = suites::all_ok(reports);
    all = all && good;
    out << (good ? "PASS " : "FAIL ") << suite.name << "\n";
    for (const auto& r : reports) {
      out << "  " << r.summary() << "\n";
      for (const auto& f : r.failures) out << "    " << f << "\n";
      for (const auto& nt : r.notes) out << "    note: " << nt << "\n";
    }
  }
  out << (all ? "selftest: all suites passed" : "selftest: FAILED") << "\n";
  return all ? ok : computation_error;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Each line of the batch file is a JSON array of arguments, e.g.
//   ["dist", "hyperspace", "--space", "s.json", "--a", "[\"x\"]", "--b", "[\"y\"]"]
// Entries run concurrently; results are printed in input order, one JSON object per line.
inline int run_batch(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw InputError("batch: cannot open " + path);
  std::vector<std::vector<std::string>> jobs;
  std::string line;
  for (std::size_t k = 1; std::getline(in, line); ++k) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "batch line " + std::to_string(k);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": not valid JSON");
    }
    if (!j.is_array() || j.empty()) throw InputError(where + ": expected a nonempty array of arguments");
    std::vector<std::string> args;
    for (const auto& a : j) {
      if (!a.is_string()) throw InputError(where + ": arguments must be strings");
      args.push_back(a.get<std::string>());
    }
    if (args.front() == "batch") throw InputError(where + ": nested batch is not allowed");
    jobs.push_back(std::move(args));
  }
  std::vector<std::future<std::tuple<int, std::string, std::string>>> running;
  for (const auto& args : jobs)
    running.push_back(std::async(std::launch::async, [args] {
      std::ostringstream o, e;
      const int code = run_cli(args, o, e);
      return std::tuple{code, o.str(), e.str()};
    }));
  int worst = ok;
  for (std::size_t k = 0; k < running.size(); ++k) {
    auto [code, o, e] = running[k].get();
    worst = std::max(worst, code);
    json entry{{"index", k}, {"exit", code}};
    const auto parsed = json::parse(o, nullptr, false);
    entry["output"] = parsed.is_discarded() ? json(o) : parsed;
    if (!e.empty()) entry["error"] = e;
    out << entry.dump() << "\n";
  }
  return worst;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact extension of finite metrics to hyperspaces, powers, measures and free groups", "metext"};
  app.require_subcommand(1);

  std::string space_path;
  auto* validate = app.add_subcommand("validate", "Check a space file against the (pseudo)metric axioms");
  validate->add_option("--space", space_path, "Space file")->required();

  auto* canon = app.add_subcommand("canon", "Re-emit a valid space file in canonical form");
  canon->add_option("--space", space_path, "Space file")->required();

  DistRequest rq;
  auto* dist = app.add_subcommand("dist", "Distance between two functor elements");
  dist->add_option("functor", rq.functor, "hyperspace | power | transport | words")->required();
  dist->add_option("--space", rq.space, "Space file")->required();
  dist->add_option("--a", rq.a, "First element (JSON)")->required();
  dist->add_option("--b", rq.b, "Second element (JSON)")->required();
  dist->add_option("--norm", rq.norm, "power: max or p:K");
  dist->add_option("--variant", rq.variant, "words: graev or swierczkowski");
  dist->add_flag("--abelian", rq.abelian, "words: free abelian group");
  dist->add_option("--cap", rq.cap, "words: representation length cap (default |A|+|B|+2)");
  dist->add_option("--method", rq.method, "specialized | generic | both");
  dist->add_flag("--fault-inject", rq.fault_inject, "Corrupt the transport solver (test hook)")->group("");

  bool fault_inject = false;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in property and coincidence suites");
  selftest->add_flag("--fault-inject", fault_inject, "Corrupt the transport solver (test hook)")->group("");

  std::string batch_path;
  auto* batch = app.add_subcommand("batch", "Run one command per line of a file");
  batch->add_option("file", batch_path, "File of JSON argument arrays")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*validate) return run_validate(space_path, out);
    if (*canon) {
      out << format_space(load_space(space_path));
      return ok;
    }
    if (*selftest) return run_selftest(fault_inject, out);
    if (*batch) return run_batch(batch_path, out);
    auto [body, code] = run_dist(rq);
    out << body.dump(2) << "\n";
    if (code == mismatch)
      err << "error: specialized value " << body["specialized"]["value"].get<std::string>()
          << " differs from generic value " << body["generic"]["value"].get<std::string>() << "\n";
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return computation_error;
  }
}

}  // namespace metext::cli
