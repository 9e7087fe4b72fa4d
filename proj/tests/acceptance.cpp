// Acceptance criteria, one PASS/FAIL line per criterion on stdout; details on stderr.
//
//   acceptance [--criterion N] [--cli PATH] [--samples DIR]
//
// Without --criterion all nine run. Exit status is 0 iff every selected criterion passes.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metext/space_io.hpp"
#include "metext/suites.hpp"

namespace {

using namespace metext;

struct Outcome {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> details;
};

Outcome from_reports(const std::vector<Report>& reports) {
  Outcome o;
  for (const auto& r : reports) {
    o.pass = o.pass && r.ok();
    o.checks += r.checks;
    o.details.push_back(r.summary());
    for (const auto& f : r.failures) o.details.push_back("  " + f);
    for (const auto& n : r.notes) o.details.push_back("  note: " + n);
  }
  return o;
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& command) {
  Shell s{-1, {}};
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return s;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) s.out.append(buf.data(), got);
  const int status = pclose(pipe);
  s.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Outcome cli_contract(const std::string& cli, const std::string& samples) {
  Outcome o;
  auto expect = [&](bool ok, const std::string& what) {
    ++o.checks;
    o.pass = o.pass && ok;
    o.details.push_back((ok ? "ok   " : "FAIL ") + what);
  };

  const auto self = shell(quote(cli) + " selftest");
  expect(self.code == 0, "selftest exits 0 (got " + std::to_string(self.code) + ")");

  const auto both = shell(quote(cli) + " dist transport --space " + quote(samples + "/rational.json") +
                          " --method both --fault-inject --a '{\"b\":\"1/2\",\"c\":\"1/2\"}'" +
                          " --b '{\"a\":\"1/2\",\"b\":\"1/2\"}'");
  expect(both.code == 3, "dist --method both under the corrupted solver exits 3 (got " + std::to_string(both.code) + ")");

  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(samples)) {
    const std::string path = entry.path().string();
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(path);
    const std::string original{std::istreambuf_iterator<char>(in), {}};
    auto doc = validate_document(parse_space_document(nlohmann::json::parse(original)));
    if (!std::holds_alternative<FiniteMetricSpace>(doc)) continue;
    if (format_space(std::get<FiniteMetricSpace>(doc)) != original) continue;  // not canonical
    ++files;
    const auto canon = shell(quote(cli) + " canon --space " + quote(path));
    expect(canon.code == 0 && canon.out == original, "canonical round trip is byte-identical: " + path);
  }
  expect(files > 0, "found canonical space files to round-trip (" + std::to_string(files) + ")");
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
};

const std::vector<Criterion> criteria = {
    {1, "extension: d~(embed x, embed y) = d(x, y), every instance", 30},
    {2, "hausdorff coincidence: generic fiber minimum = Hausdorff formula", 60},
    {3, "power coincidence: closed form = generic singleton fiber", 10},
    {4, "transport: min-cost flow = polytope vertex minimum, basic plans", 60},
    {5, "words: single letters, d1 >= d2, searcher = naive enumerator", 120},
    {6, "pseudometric axioms on sampled triples", 120},
    {7, "lipschitz bound for pairs of pseudometric tables", 60},
    {8, "naturality along random point maps", 30},
    {9, "cli contract: selftest, fault-injected mismatch, canonical round trip", 60},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string cli = "metext", samples = "samples";
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--cli", cli, "Path to the metext executable");
  app.add_option("--samples", samples, "Directory of sample space files");
  CLI11_PARSE(app, argc, argv);

  const suites::Scale scale;  // full scale, no hypothesis filtering
  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    switch (c.id) {
      case 1: o = from_reports(suites::extension(scale)); break;
      case 2: o = from_reports(suites::hausdorff(scale)); break;
      case 3: o = from_reports(suites::power(scale)); break;
      case 4: o = from_reports(suites::transport(scale)); break;
      case 5: o = from_reports(suites::words(scale)); break;
      case 6: o = from_reports(suites::pseudometric(scale)); break;
      case 7: o = from_reports(suites::lipschitz(scale)); break;
      case 8: o = from_reports(suites::naturality(scale)); break;
      case 9: o = cli_contract(cli, samples); break;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = o.pass && in_budget;
    all = all && pass;

    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << o.checks << " checks, "
         << seconds << " s, budget " << c.budget_seconds << " s" << (in_budget ? "" : ", OVER BUDGET") << ")";
    std::cout << line.str() << std::endl;
    for (const auto& d : o.details) std::cerr << "    " << d << "\n";
  }
  return all ? 0 : 1;
}
