// linset command-line front end: construction, detection, recognition, and
// the statement-verification suites with structured reports.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 budget exceeded.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "linset/suites.hpp"

using namespace linset;

namespace {

struct CliState {
  long long q = 0;
  int t = 0, n = 0;
  long long budget = 0, line_budget = 0, pair_budget = 0;
  uint64_t seed = 1;
  int workers = 1;
  bool deterministic = false;
  std::string format = "json";
  std::string out_path;
  std::string config_path;
};

std::pair<long long, int> factor_prime_power(long long q) {
  long long p = q;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int h = 0;
  long long v = q;
  while (v > 1 && v % p == 0) {
    v /= p;
    ++h;
  }
  if (v != 1) throw Error("q = " + std::to_string(q) + " is not a prime power");
  return {p, h};
}

// flat key=value file; command-line flags override
void apply_config_file(CliState& st) {
  if (st.config_path.empty()) return;
  std::ifstream in(st.config_path);
  if (!in) throw Error("cannot open config file " + st.config_path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "q" && st.q == 0) st.q = std::stoll(val);
    if (key == "t" && st.t == 0) st.t = std::stoi(val);
    if (key == "n" && st.n == 0) st.n = std::stoi(val);
    if (key == "budget" && st.budget == 0) st.budget = std::stoll(val);
    if (key == "line_budget" && st.line_budget == 0) st.line_budget = std::stoll(val);
    if (key == "pair_budget" && st.pair_budget == 0) st.pair_budget = std::stoll(val);
    if (key == "seed" && st.seed == 1) st.seed = std::stoull(val);
    if (key == "workers" && st.workers == 1) st.workers = std::stoi(val);
    if (key == "format" && st.format == "json") st.format = val;
  }
}

Config make_config(const CliState& st, const Scenario& fallback) {
  Config cfg;
  cfg.sc = fallback;
  if (st.q > 0) {
    auto [p, h] = factor_prime_power(st.q);
    cfg.sc.p = p;
    cfg.sc.h = h;
  }
  if (st.t > 0) cfg.sc.t = st.t;
  if (st.n > 0) cfg.sc.n = st.n;
  if (st.budget > 0) cfg.budgets.enum_cap = st.budget;
  if (st.line_budget > 0) cfg.budgets.line_cap = st.line_budget;
  if (st.pair_budget > 0) cfg.budgets.pair_cap = st.pair_budget;
  cfg.seed = st.seed;
  cfg.workers = st.workers;
  cfg.deterministic_output = st.deterministic;
  return cfg;
}

void write_output(const CliState& st, const std::string& text) {
  if (st.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(st.out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + st.out_path);
  out << text;
}

int emit_report(const CliState& st, const Report& rep) {
  if (st.format == "json")
    write_output(st, report_to_json(rep).dump(2) + "\n");
  else if (st.format == "text")
    write_output(st, report_to_text(rep));
  else
    throw Error("unknown format '" + st.format + "'");
  return rep.exit_code();
}

Tower make_tower(const Config& cfg) { return Tower(cfg.sc.p, cfg.sc.h, cfg.sc.t, cfg.sc.n); }

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scattered linear sets of pseudoregulus type, Desarguesian spreads, and "
               "semifield spread sets over small Galois fields"};
  app.require_subcommand(1);
  app.fallthrough();
  CliState st;

  app.add_option("--q", st.q, "field order q (prime power)");
  app.add_option("--t", st.t, "extension degree t");
  app.add_option("--n", st.n, "dimension parameter n");
  app.add_option("--budget", st.budget, "enumeration budget (combinations)");
  app.add_option("--line-budget", st.line_budget, "weight-t line search budget");
  app.add_option("--pair-budget", st.pair_budget, "transversal pair search budget");
  app.add_option("--seed", st.seed, "seed for randomized property checks");
  app.add_option("--workers", st.workers, "concurrent checks per suite");
  app.add_option("--format", st.format, "report format: json or text");
  app.add_option("--out", st.out_path, "write output to a file");
  app.add_option("--config", st.config_path, "flat key=value config file");
  app.add_flag("--deterministic", st.deterministic,
               "zero volatile fields for byte-identical reports");

  // verify <suite>
  std::string suite_name;
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite_name, "suite id, e.g. thm35")->required();

  // construct pr|linepr
  auto* construct = app.add_subcommand("construct", "build a linear set");
  std::string construct_kind;
  int sigma_exp = 1;
  long long rho_exp = 0;
  construct->add_option("kind", construct_kind, "pr or linepr")->required();
  construct->add_option("--sigma-exp", sigma_exp, "companion automorphism exponent");
  construct->add_option("--rho-exp", rho_exp, "generator exponent of rho");

  // detect pr|linepr --input
  auto* detect = app.add_subcommand("detect", "detect pseudoregulus structure in a set file");
  std::string detect_kind, detect_input;
  detect->add_option("kind", detect_kind, "pr or linepr")->required();
  detect->add_option("--input", detect_input, "linear set JSON file")->required();

  // equiv pr
  auto* equiv = app.add_subcommand("equiv", "constructive equivalence of two constructions");
  std::string equiv_kind;
  int sigma_exp2 = 1;
  long long rho_exp2 = 0;
  equiv->add_option("kind", equiv_kind, "pr")->required();
  equiv->add_option("--sigma-exp", sigma_exp, "first companion exponent");
  equiv->add_option("--sigma-exp2", sigma_exp2, "second companion exponent");
  equiv->add_option("--rho-exp", rho_exp, "first rho exponent");
  equiv->add_option("--rho-exp2", rho_exp2, "second rho exponent");

  // project / recover-spread
  auto* project_cmd = app.add_subcommand("project", "project the canonical subgeometry");
  int i1 = 0, i2 = 1;
  project_cmd->add_option("--i1", i1, "first director conjugate index");
  project_cmd->add_option("--i2", i2, "second director conjugate index");
  auto* recover_cmd =
      app.add_subcommand("recover-spread", "recover the spread behind a projected set");
  recover_cmd->add_option("--i1", i1, "first director conjugate index");
  recover_cmd->add_option("--i2", i2, "second director conjugate index");

  // segre build
  auto* segre = app.add_subcommand("segre", "Segre variety utilities");
  auto* segre_build = segre->add_subcommand("build", "build the variety and its systems");

  // semifield gtf|knuth|recognize
  auto* semifield = app.add_subcommand("semifield", "semifield spread sets");
  auto* sf_gtf = semifield->add_subcommand("gtf", "build a twisted-field spread set");
  int gtf_l = 1, gtf_m = 1;
  long long gtf_c_exp = -1;
  sf_gtf->add_option("--l", gtf_l, "left twist index");
  sf_gtf->add_option("--m", gtf_m, "right twist index");
  sf_gtf->add_option("--c-exp", gtf_c_exp, "generator exponent of c (default: first valid)");
  auto* sf_knuth = semifield->add_subcommand("knuth", "build a Knuth spread set");
  int kn_family = 17, kn_sigma = 1;
  long long kn_f_exp = 0, kn_g_exp = 0;
  sf_knuth->add_option("--family", kn_family, "17 or 19");
  sf_knuth->add_option("--sigma-exp", kn_sigma, "companion exponent");
  sf_knuth->add_option("--f-exp", kn_f_exp, "generator exponent of f");
  sf_knuth->add_option("--g-exp", kn_g_exp, "generator exponent of g");
  auto* sf_rec = semifield->add_subcommand("recognize", "recognize a spread set file");
  std::string sf_input;
  sf_rec->add_option("--input", sf_input, "spread set JSON file")->required();

  // field dump|check|info
  auto* field = app.add_subcommand("field", "field table utilities");
  auto* field_dump = field->add_subcommand("dump", "write the versioned binary table dump");
  auto* field_check = field->add_subcommand("check", "load a table dump and cross-check it");
  auto* field_info = field->add_subcommand("info", "print field parameters");
  std::string field_spec, field_in;
  field_dump->add_option("--field", field_spec, "field spec GF(p^e)")->required();
  field_info->add_option("--field", field_spec, "field spec GF(p^e)")->required();
  field_check->add_option("--input", field_in, "table dump file")->required();

  try {
    app.parse(argc, argv);
    apply_config_file(st);

    if (*verify) {
      auto it = suites::registry().find(suite_name);
      if (it == suites::registry().end()) {
        std::cerr << "unknown suite '" << suite_name << "'; available:";
        for (auto& [k, v] : suites::registry()) std::cerr << " " << k;
        std::cerr << "\n";
        return 2;
      }
      Config cfg = make_config(st, it->second.default_scenario);
      return emit_report(st, suites::run_suite(suite_name, cfg));
    }

    if (*construct) {
      if (construct_kind == "pr") {
        Config cfg = make_config(st, {2, 1, 3, 2});
        Tower tw = make_tower(cfg);
        ProjSpace sp{&tw, tw.d_qt(), 2 * tw.n()};
        auto spec = standard_pr_spec(sp, tw.h(), sigma_exp,
                                     tw.F().pow(tw.Fqt().gen, rho_exp));
        FqLinearSet L = build_pr_linear_set(spec);
        auto P = pseudoregulus_of_spec(spec);
        nlohmann::ordered_json j = linear_set_to_json(tw, L);
        j["points"] = enumerate_points(L, cfg.budgets.enum_cap).size();
        j["lines"] = nlohmann::ordered_json::array();
        for (const auto& s : P.lines) j["lines"].push_back(subspace_to_json(s));
        j["transversals"] = {subspace_to_json(P.t1), subspace_to_json(P.t2)};
        write_output(st, j.dump(2) + "\n");
        return 0;
      }
      if (construct_kind == "linepr") {
        Config cfg = make_config(st, {2, 1, 3, 1});
        cfg.sc.n = 1;
        Tower tw = make_tower(cfg);
        ProjSpace sp{&tw, tw.d_qt(), 2};
        const GaloisField& F = tw.F();
        LinePRSpec spec{sp, tw.h(), Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, sigma_exp,
                        F.pow(tw.Fqt().gen, rho_exp)};
        FqLinearSet L = build_line_pr(spec);
        nlohmann::ordered_json j = linear_set_to_json(tw, L);
        j["points"] = enumerate_points(L, cfg.budgets.enum_cap).size();
        write_output(st, j.dump(2) + "\n");
        return 0;
      }
      std::cerr << "construct: kind must be pr or linepr\n";
      return 2;
    }

    if (*detect) {
      auto loaded = linear_set_from_json(read_json_file(detect_input));
      nlohmann::ordered_json j;
      if (detect_kind == "pr") {
        auto res = detect_pseudoregulus(loaded.set,
                                        st.line_budget > 0 ? st.line_budget : kDefaultLineBudget);
        j["status"] = res.status == PrStatus::pr
                          ? "pr"
                          : (res.status == PrStatus::t2_nonunique ? "t2_nonunique" : "not_pr");
        if (res.pseudoregulus) {
          j["lines"] = nlohmann::ordered_json::array();
          for (const auto& s : res.pseudoregulus->lines) j["lines"].push_back(subspace_to_json(s));
          j["transversals"] = {subspace_to_json(res.pseudoregulus->t1),
                               subspace_to_json(res.pseudoregulus->t2)};
          if (loaded.set.sp.r / 2 >= 2 && res.status == PrStatus::pr) {
            auto rec = recover_sigma(loaded.set, *res.pseudoregulus);
            j["sigma_class"] = rec.cls;
          }
        }
        if (!res.reason.empty()) j["reason"] = res.reason;
      } else if (detect_kind == "linepr") {
        auto res = detect_line_pr(loaded.set, st.pair_budget > 0 ? st.pair_budget : kDefaultPairBudget);
        j["status"] = res.status == PrStatus::pr
                          ? "pr"
                          : (res.status == PrStatus::t2_nonunique ? "t2_nonunique" : "not_pr");
        j["pairs"] = nlohmann::ordered_json::array();
        for (auto& [a, b] : res.pairs)
          j["pairs"].push_back({vec_to_string(a.v), vec_to_string(b.v)});
        j["trials"] = res.trials;
      } else {
        std::cerr << "detect: kind must be pr or linepr\n";
        return 2;
      }
      write_output(st, j.dump(2) + "\n");
      return 0;
    }

    if (*equiv) {
      if (equiv_kind != "pr") {
        std::cerr << "equiv: kind must be pr\n";
        return 2;
      }
      Config cfg = make_config(st, {2, 1, 5, 2});
      Tower tw = make_tower(cfg);
      ProjSpace sp{&tw, tw.d_qt(), 2 * tw.n()};
      auto f = standard_pr_spec(sp, tw.h(), sigma_exp, tw.F().pow(tw.Fqt().gen, rho_exp));
      auto g = standard_pr_spec(sp, tw.h(), sigma_exp2, tw.F().pow(tw.Fqt().gen, rho_exp2));
      auto m = build_equivalence(f, g);
      nlohmann::ordered_json j;
      if (!m) {
        j["result"] = "no_map";
      } else {
        bool carried = enumerate_points(apply_map(*m, build_pr_linear_set(f))) ==
                       enumerate_points(build_pr_linear_set(g));
        j["result"] = "map";
        j["companion_exponent"] = m->frob_j;
        j["verified"] = carried;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int r = 0; r < m->A.rows; ++r) rows.push_back(vec_to_string(m->A.row(r)));
        j["matrix"] = rows;
      }
      write_output(st, j.dump(2) + "\n");
      return 0;
    }

    if (*project_cmd || *recover_cmd) {
      Config cfg = make_config(st, {2, 1, 3, 2});
      Tower tw = make_tower(cfg);
      auto G = canonical_subgeometry(tw);
      auto theta = default_director(G);
      auto pc = construct_by_projection(G, theta, i1, i2);
      nlohmann::ordered_json j = linear_set_to_json(tw, pc.projected.set);
      j["pr_type"] = pc.pr_type;
      j["linearity"] = pc.linearity;
      j["points"] = enumerate_points(pc.projected.set, cfg.budgets.enum_cap).size();
      if (*recover_cmd) {
        if (!pc.pr_type) throw Error("recover-spread: projection is not of pseudoregulus type");
        auto det = detect_pseudoregulus(pc.projected.set, cfg.budgets.line_cap);
        if (det.status != PrStatus::pr) throw Error("recover-spread: detection failed");
        auto rec = recover_spread(G, pc.projected, *det.pseudoregulus);
        j["spread"] = nlohmann::ordered_json::array();
        for (const auto& el : rec.spread.elems) j["spread"].push_back(subspace_to_json(el.ext));
        j["directors"] = nlohmann::ordered_json::array();
        for (const auto& d : rec.spread.directors) j["directors"].push_back(subspace_to_json(d));
        j["theta_bar"] = subspace_to_json(rec.theta_bar);
        j["m"] = rec.m;
      }
      write_output(st, j.dump(2) + "\n");
      return 0;
    }

    if (*segre) {
      if (!*segre_build) {
        std::cerr << "segre: expected subcommand build\n";
        return 2;
      }
      Config cfg = make_config(st, {3, 1, 1, 2});
      cfg.sc.t = 1;
      Tower tw = make_tower(cfg);
      EndoSpace E = endo_space(tw, tw.h(), tw.d_qnt());
      auto S = build_segre(E, cfg.budgets.enum_cap);
      nlohmann::ordered_json j;
      j["q"] = tw.q();
      j["n"] = tw.n();
      j["points"] = S.points.size();
      j["secant_points"] = S.omega.size();
      j["system_size"] = S.sys1.size();
      j["systems"] = nlohmann::ordered_json::array();
      for (auto* sys : {&S.sys1, &S.sys2}) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& X : *sys) arr.push_back(subspace_to_json(X));
        j["systems"].push_back(arr);
      }
      write_output(st, j.dump(2) + "\n");
      return 0;
    }

    if (*semifield) {
      if (*sf_gtf) {
        Config cfg = make_config(st, {3, 1, 2, 2});
        Tower tw = make_tower(cfg);
        GTFParams params{gtf_l, gtf_m, fe_zero()};
        if (gtf_c_exp >= 0) {
          params.c = tw.F().pow(tw.Fqnt().gen, gtf_c_exp);
        } else {
          auto excluded = gtf_excluded_set(tw, gtf_l, gtf_m);
          for (Fe c : tw.Fqnt().units)
            if (!excluded.count(c)) {
              params.c = c;
              break;
            }
        }
        auto C = gtf_spread_set(tw, params);
        write_output(st, spread_set_to_json(tw, C, "twisted-field").dump(2) + "\n");
        return 0;
      }
      if (*sf_knuth) {
        Config cfg = make_config(st, {2, 1, 2, 2});
        cfg.sc.n = 2;
        Tower tw = make_tower(cfg);
        KnuthParams params{kn_family, kn_sigma, tw.F().pow(tw.Fqt().gen, kn_f_exp),
                           tw.F().pow(tw.Fqt().gen, kn_g_exp)};
        auto C = knuth_spread_set(tw, params);
        write_output(st, spread_set_to_json(tw, C, "knuth-" + std::to_string(kn_family)).dump(2) +
                             "\n");
        return 0;
      }
      if (*sf_rec) {
        auto loaded = spread_set_from_json(read_json_file(sf_input));
        nlohmann::ordered_json j;
        auto grec = recognize_gtf(loaded.set);
        if (grec.status == GtfRecognition::Status::gtf) {
          j["family"] = "twisted-field";
          j["l"] = grec.params.l;
          j["m"] = grec.params.m;
          j["c"] = fe_to_string(grec.params.c);
        } else if (grec.status == GtfRecognition::Status::degenerate) {
          j["family"] = "field";
          j["reason"] = grec.reason;
        } else if (loaded.tower->n() == 2) {
          auto krec = recognize_knuth(loaded.set);
          if (krec.ok) {
            j["family"] = "knuth-" + std::to_string(krec.params.family);
            j["sigma_exp"] = krec.params.sigma_s;
            j["f"] = fe_to_string(krec.params.f);
            j["g"] = fe_to_string(krec.params.g);
          } else {
            j["family"] = "unrecognized";
            j["twisted_field_reason"] = grec.reason;
            j["knuth_reason"] = krec.reason;
          }
        } else {
          j["family"] = "unrecognized";
          j["twisted_field_reason"] = grec.reason;
        }
        write_output(st, j.dump(2) + "\n");
        return 0;
      }
      std::cerr << "semifield: expected gtf, knuth, or recognize\n";
      return 2;
    }

    if (*field) {
      if (*field_check) {
        std::ifstream in(field_in, std::ios::binary);
        if (!in) throw Error("cannot open input file " + field_in);
        GaloisField f = GaloisField::load(in);  // cross-checks against a fresh build
        nlohmann::ordered_json j;
        j["p"] = f.p();
        j["e"] = f.e();
        j["consistent"] = true;
        write_output(st, j.dump(2) + "\n");
        return 0;
      }
      auto [p, e] = parse_field_spec(field_spec);
      GaloisField f(p, e);
      if (*field_dump) {
        if (st.out_path.empty()) throw Error("field dump requires --out");
        std::ofstream out(st.out_path, std::ios::binary);
        if (!out) throw Error("cannot open output file " + st.out_path);
        f.dump(out);
        return 0;
      }
      nlohmann::ordered_json j;
      j["p"] = f.p();
      j["e"] = f.e();
      j["q"] = f.q();
      j["defining_polynomial"] = f.poly();
      write_output(st, j.dump(2) + "\n");
      return 0;
    }

    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
