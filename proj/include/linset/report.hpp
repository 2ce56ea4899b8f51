#pragma once

/**
 * @file report.hpp
 * @brief Structured verification reports: per-check records with statement
 *        anchors, JSON and text emission, deterministic given (config, seed).
 */

#include <chrono>
#include <functional>
#include <future>
#include <map>

#include <json.hpp>

#include "gf.hpp"

namespace linset {

struct Scenario {
  long long p = 2;
  int h = 1, t = 3, n = 2;

  long long q() const { return ipow(p, h); }
};

struct Budgets {
  long long enum_cap = 1LL << 22;
  long long line_cap = 1LL << 29;
  long long pair_cap = 1LL << 25;
};

struct Config {
  Scenario sc;
  Budgets budgets;
  uint64_t seed = 1;
  int workers = 1;
  bool deterministic_output = false;  // zero the runtime field for byte-stable reports
};

/// Registry of statement anchors; every check record must reference one.
inline const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> reg = {
      {"eq1", "Equation (1)"},
      {"eq2", "Equation (2)"},
      {"thm22", "Theorem 2.2"},
      {"thm24", "Theorem 2.4"},
      {"rem21", "Remark 2.1"},
      {"def31", "Definition 3.1"},
      {"prop32", "Proposition 3.2"},
      {"cor33", "Corollary 3.3"},
      {"rem34", "Remark 3.4"},
      {"thm35", "Theorem 3.5"},
      {"eq3", "Equation (3)"},
      {"rem36", "Remark 3.6"},
      {"thm37", "Theorem 3.7"},
      {"cor38", "Corollary 3.8"},
      {"thm39", "Theorem 3.9"},
      {"rem310", "Remark 3.10"},
      {"thm311", "Theorem 3.11"},
      {"eq8", "Equation (8)"},
      {"thm312", "Theorem 3.12"},
      {"thm313", "Theorem 3.13"},
      {"rem42", "Remark 4.2"},
      {"prop43", "Proposition 4.3"},
      {"rem44", "Remark 4.4"},
      {"rem45", "Remark 4.5"},
      {"ex46", "Example 4.6"},
      {"prop51", "Proposition 5.1"},
      {"eq14", "Equation (14)"},
      {"eq15", "Equation (15)"},
      {"eq16", "Equation (16)"},
      {"eq17", "Equation (17)"},
      {"eq18", "Equation (18)"},
      {"eq19", "Equation (19)"},
      {"thm52", "Theorem 5.2"},
      {"def53", "Definition 5.3"},
      {"rem54", "Remark 5.4"},
      {"prop55", "Proposition 5.5"},
      {"thm56", "Theorem 5.6"},
      {"cor57", "Corollary 5.7"},
      {"rem58", "Remark 5.8"},
      {"prop59", "Proposition 5.9"},
      {"thm510", "Theorem 5.10"},
      {"eq20", "Equation (20)"},
      {"eq21", "Equation (21)"},
      {"eq22", "Equation (22)"},
      {"zech", "Zech table consistency"},
      {"unit-order", "Multiplicative group order"},
  };
  return reg;
}

inline std::string anchor(const std::string& key) {
  auto it = anchor_registry().find(key);
  if (it == anchor_registry().end()) throw Error("unknown anchor key '" + key + "'");
  return it->second;
}

struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string expected;
  std::string observed;
  bool pass = false;
  bool skipped = false;  // surfaced in `observed`, never a silent pass
  long long ms = 0;
};

/// A pending check: expected string plus a closure computing the observed
/// string.  Pass = string equality.
struct Check {
  std::string id;
  std::string anchor_key;
  std::string expected;
  std::function<std::string()> run;
};

struct Report {
  std::string suite;
  Scenario sc;
  uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::string verdict;  // "pass", "fail", "vacuous"

  int exit_code() const {
    if (verdict == "pass") return 0;
    for (const auto& c : checks)
      if (c.skipped) return 3;
    return 1;
  }
};

/// Executes checks (optionally with a small worker pool), preserving order.
/// Budget violations become skipped records with the reason, never silent.
inline std::vector<CheckRecord> run_checks(const std::vector<Check>& checks, int workers,
                                           bool deterministic_output) {
  auto run_one = [&](const Check& c) {
    CheckRecord rec;
    rec.id = c.id;
    rec.anchor = anchor(c.anchor_key);
    rec.expected = c.expected;
    auto start = std::chrono::steady_clock::now();
    try {
      rec.observed = c.run();
      rec.pass = rec.observed == rec.expected;
    } catch (const BudgetError& e) {
      rec.observed = std::string("skipped: ") + e.what();
      rec.skipped = true;
      rec.pass = false;
    } catch (const std::exception& e) {
      rec.observed = std::string("error: ") + e.what();
      rec.pass = false;
    }
    auto stop = std::chrono::steady_clock::now();
    rec.ms = deterministic_output
                 ? 0
                 : std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return rec;
  };
  std::vector<CheckRecord> out(checks.size());
  if (workers <= 1) {
    for (size_t i = 0; i < checks.size(); ++i) out[i] = run_one(checks[i]);
    return out;
  }
  std::vector<std::future<CheckRecord>> futs(checks.size());
  size_t next = 0;
  while (next < checks.size()) {
    size_t batch = std::min<size_t>(workers, checks.size() - next);
    for (size_t k = 0; k < batch; ++k)
      futs[next + k] = std::async(std::launch::async, run_one, std::cref(checks[next + k]));
    for (size_t k = 0; k < batch; ++k) out[next + k] = futs[next + k].get();
    next += batch;
  }
  return out;
}

inline Report assemble_report(const std::string& suite, const Config& cfg,
                              const std::vector<Check>& checks) {
  Report rep;
  rep.suite = suite;
  rep.sc = cfg.sc;
  rep.seed = cfg.seed;
  rep.checks = run_checks(checks, cfg.workers, cfg.deterministic_output);
  if (rep.checks.empty()) {
    rep.verdict = "vacuous";
  } else {
    bool all = true;
    for (const auto& c : rep.checks) all = all && c.pass;
    rep.verdict = all ? "pass" : "fail";
  }
  return rep;
}

inline nlohmann::ordered_json report_to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["scenario"] = {{"p", rep.sc.p}, {"h", rep.sc.h}, {"t", rep.sc.t}, {"n", rep.sc.n}};
  j["seed"] = rep.seed;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["anchor"] = c.anchor;
    rec["expected"] = c.expected;
    rec["observed"] = c.observed;
    rec["pass"] = c.pass;
    rec["ms"] = c.ms;
    checks.push_back(rec);
  }
  j["checks"] = checks;
  j["verdict"] = rep.verdict;
  return j;
}

inline std::string report_to_text(const Report& rep) {
  std::ostringstream os;
  os << "suite " << rep.suite << "  scenario p=" << rep.sc.p << " h=" << rep.sc.h
     << " t=" << rep.sc.t << " n=" << rep.sc.n << "  seed=" << rep.seed << "\n";
  size_t idw = 2, anw = 6;
  for (const auto& c : rep.checks) {
    idw = std::max(idw, c.id.size());
    anw = std::max(anw, c.anchor.size());
  }
  for (const auto& c : rep.checks) {
    os << (c.pass ? "  ok   " : (c.skipped ? "  skip " : "  FAIL "));
    os << c.id << std::string(idw - c.id.size() + 2, ' ');
    os << c.anchor << std::string(anw - c.anchor.size() + 2, ' ');
    if (c.pass)
      os << "= " << c.observed;
    else
      os << "expected [" << c.expected << "] observed [" << c.observed << "]";
    os << "  (" << c.ms << " ms)\n";
  }
  os << "verdict: " << rep.verdict << "\n";
  return os.str();
}

}  // namespace linset
