#pragma once

// Space file format:
//   {"points": ["x","y"], "matrix": [["0","5/2"],["5/2","0"]], "mode": "metric", "basepoint": "x"}
// Scalars are "n" or "p/q" strings; "mode" defaults to metric; "basepoint" is optional.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "metext/errors.hpp"
#include "metext/space.hpp"

namespace metext {

struct SpaceDocument {
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> matrix;
  MetricMode mode = MetricMode::metric;
  std::optional<std::string> basepoint;
};

inline Scalar scalar_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw InputError(where + ": expected a rational string");
}

inline SpaceDocument parse_space_document(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("space: expected a JSON object");
  SpaceDocument doc;
  if (!j.contains("points") || !j["points"].is_array()) throw InputError("space.points: missing or not an array");
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw InputError("space.points: labels must be strings");
    doc.labels.push_back(p.get<std::string>());
  }
  if (!j.contains("matrix") || !j["matrix"].is_array()) throw InputError("space.matrix: missing or not an array");
  for (std::size_t r = 0; r < j["matrix"].size(); ++r) {
    const auto& row = j["matrix"][r];
    if (!row.is_array()) throw InputError("space.matrix[" + std::to_string(r) + "]: not an array");
    std::vector<Scalar> out;
    for (std::size_t c = 0; c < row.size(); ++c)
      out.push_back(scalar_from_json(row[c], "space.matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    doc.matrix.push_back(std::move(out));
  }
  if (j.contains("mode")) {
    const auto m = j["mode"].is_string() ? j["mode"].get<std::string>() : std::string();
    if (m == "metric")
      doc.mode = MetricMode::metric;
    else if (m == "pseudometric")
      doc.mode = MetricMode::pseudometric;
    else
      throw InputError("space.mode: expected \"metric\" or \"pseudometric\"");
  }
  if (j.contains("basepoint")) {
    if (!j["basepoint"].is_string()) throw InputError("space.basepoint: expected a label");
    doc.basepoint = j["basepoint"].get<std::string>();
  }
  return doc;
}

inline ValidationResult validate_document(SpaceDocument doc) {
  return validate_space(std::move(doc.labels), std::move(doc.matrix), doc.mode, std::move(doc.basepoint));
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

inline FiniteMetricSpace load_space(const std::string& path) {
  auto r = validate_document(parse_space_document(read_json_file(path)));
  if (auto* v = std::get_if<Violation>(&r)) throw InputError("space: " + v->message);
  return std::get<FiniteMetricSpace>(std::move(r));
}

// Canonical serialization; parse(format(s)) == s and format(parse(f)) == f for canonical files.
inline std::string format_space(const FiniteMetricSpace& s) {
  auto q = [](const std::string& text) { return nlohmann::json(text).dump(); };
  std::ostringstream out;
  out << "{\n  \"points\": [";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << q(s.label(i));
  out << "],\n  \"matrix\": [\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << "    [";
    for (std::size_t j = 0; j < s.size(); ++j) out << (j ? ", " : "") << q(s(i, j).str());
    out << "]" << (i + 1 < s.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"mode\": " << q(to_string(s.mode()));
  if (s.basepoint()) out << ",\n  \"basepoint\": " << q(s.label(*s.basepoint()));
  out << "\n}\n";
  return out.str();
}

}  // namespace metext
