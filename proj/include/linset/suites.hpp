#pragma once

/**
 * @file suites.hpp
 * @brief Named verification suites, one per re-verified statement, each
 *        expanding to exact-value checks against the library's constructions
 *        and detectors at configurable desk scales.
 */

#include <set>
#include "format.hpp"
#include "report.hpp"
#include "subgeometry.hpp"

namespace linset::suites {

using linset::Check;

namespace detail {

inline std::string yn(bool b) { return b ? "true" : "false"; }

inline Fe first_norm_not_one(const Tower& tw) {
  for (Fe u : tw.Fqt().units)
    if (tw.F().rel_norm(u, tw.h(), tw.d_qt()) != tw.F().one()) return u;
  throw Error("no element of relative norm != 1 (q = 2?)");
}

inline GTFParams first_gtf_params(const Tower& tw) {
  auto all = gtf_find_params(tw, true);
  if (all.empty()) throw Error("no valid twisted-field parameters at this scale");
  return all[0];
}

inline KnuthParams first_knuth_params(const Tower& tw) {
  for (Fe f : tw.Fqt().units)
    for (Fe g : tw.Fqt().units)
      if (!knuth_polynomial_root(tw, f, g)) return KnuthParams{17, 1, f, g};
  throw Error("no valid Knuth parameters at this scale");
}

inline KnuthParams transpose_params(const Tower& tw, const KnuthParams& p17) {
  const GaloisField& F = tw.F();
  long long sinv = positive_mod(-static_cast<long long>(tw.h()) * p17.sigma_s,
                                static_cast<long long>(tw.h()) * tw.t());
  return KnuthParams{19, p17.sigma_s, F.inv(F.frob(p17.f, sinv)), F.div(p17.g, p17.f)};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<Check> suite_thm35(const Config& cfg) {
  struct Ctx {
    Tower tw;
    ProjSpace sp;
    PseudoregulusSpec spec;
    FqLinearSet L;
    PointSet pts;
    Pseudoregulus P;
    Ctx(const Scenario& sc)
        : tw(sc.p, sc.h, sc.t, sc.n),
          sp{&tw, sc.h * sc.t, 2 * sc.n},
          spec(standard_pr_spec(sp, sc.h, 1, tw.F().one())),
          L(build_pr_linear_set(spec)),
          pts(enumerate_points(L)),
          P(pseudoregulus_of_spec(spec)) {}
  };
  auto ctx = std::make_shared<Ctx>(cfg.sc);
  const Scenario& sc = cfg.sc;
  long long q = sc.q();
  long long size_expected = (ipow(q, sc.t * sc.n) - 1) / (q - 1);
  long long m_expected = (ipow(q, sc.t * sc.n) - 1) / (ipow(q, sc.t) - 1);
  long long per_line = (ipow(q, sc.t) - 1) / (q - 1);

  std::vector<Check> out;
  out.push_back({"construction-size", "thm35", std::to_string(size_expected),
                 [ctx] { return std::to_string(ctx->pts.size()); }});
  out.push_back({"scattered", "thm35", "true",
                 [ctx] { return detail::yn(is_scattered(ctx->L)); }});
  out.push_back({"line-count", "thm35", std::to_string(m_expected),
                 [ctx] { return std::to_string(ctx->P.m()); }});
  out.push_back({"per-line-points", "thm35",
                 std::to_string(per_line) + " on every line",
                 [ctx, per_line] {
                   for (const auto& s : ctx->P.lines) {
                     auto on = point_set_intersect(
                         ctx->pts, to_point_set(subspace_points(ctx->sp, s)));
                     if (static_cast<long long>(on.size()) != per_line)
                       return std::string("a line meets L in ") + std::to_string(on.size());
                   }
                   return std::to_string(per_line) + " on every line";
                 }});
  out.push_back({"family-axioms", "def31", "valid", [ctx] {
                   auto fail = check_pseudoregulus_axioms(ctx->L, ctx->P);
                   return fail.empty() ? std::string("valid") : fail;
                 }});
  out.push_back({"per-line-trace", "eq3", "parametrization matches on every line", [ctx] {
                   for (const auto& pt : subspace_points(ctx->sp, ctx->P.t1)) {
                     Vec fu = apply_f(ctx->spec, pt.v);
                     auto line = make_subspace(ctx->tw.F(), {pt.v, fu});
                     auto on = point_set_intersect(
                         ctx->pts, to_point_set(subspace_points(ctx->sp, line)));
                     if (line_trace(ctx->spec, pt.v) != on)
                       return std::string("trace mismatch");
                   }
                   return std::string("parametrization matches on every line");
                 }});
  out.push_back({"weight-t-lines-unique", "cor33", "the line family", [ctx] {
                   return weight_t_lines(ctx->L) == ctx->P.lines
                              ? std::string("the line family")
                              : std::string("different line set");
                 }});
  return out;
}

inline std::vector<Check> suite_rem36(const Config& cfg) {
  struct Ctx {
    Tower tw;
    ProjSpace sp;
    Ctx(const Scenario& sc) : tw(sc.p, sc.h, sc.t, sc.n), sp{&tw, sc.h * sc.t, 2 * sc.n} {}
  };
  auto ctx = std::make_shared<Ctx>(cfg.sc);
  const Scenario sc = cfg.sc;
  long long q = sc.q();
  long long cls_size = (ipow(q, sc.t * sc.n) - 1) / (q - 1);
  long long feet = (ipow(q, sc.t * sc.n) - 1) / (ipow(q, sc.t) - 1);
  long long total = (q - 1) * cls_size + 2 * feet;

  std::vector<Check> out;
  out.push_back({"norm-class-identity", "rem36", "equal point sets", [ctx, sc, q] {
                   const GaloisField& F = ctx->tw.F();
                   auto s0 = standard_pr_spec(ctx->sp, sc.h, 1,
                                              F.pow(ctx->tw.Fqt().gen, 0));
                   auto s1 = standard_pr_spec(ctx->sp, sc.h, 1,
                                              F.pow(ctx->tw.Fqt().gen, q - 1));
                   if (F.rel_norm(s0.rho, sc.h, sc.h * sc.t) !=
                       F.rel_norm(s1.rho, sc.h, sc.h * sc.t))
                     return std::string("norms differ");
                   return enumerate_points(build_pr_linear_set(s0)) ==
                                  enumerate_points(build_pr_linear_set(s1))
                              ? std::string("equal point sets")
                              : std::string("point sets differ");
                 }});
  out.push_back({"norm-classes-disjoint", "rem36", "pairwise disjoint", [ctx, sc, q] {
                   std::vector<PointSet> sets;
                   for (long long j = 0; j < q - 1; ++j) {
                     auto s = standard_pr_spec(ctx->sp, sc.h, 1,
                                               ctx->tw.F().pow(ctx->tw.Fqt().gen, j));
                     sets.push_back(enumerate_points(build_pr_linear_set(s)));
                   }
                   for (size_t i = 0; i < sets.size(); ++i)
                     for (size_t j = i + 1; j < sets.size(); ++j)
                       if (!point_sets_disjoint(sets[i], sets[j]))
                         return std::string("classes intersect");
                   return std::string("pairwise disjoint");
                 }});
  out.push_back({"line-family-partition", "rem36",
                 std::to_string(total) + " points covered exactly", [ctx, sc, q, total] {
                   auto s0 = standard_pr_spec(ctx->sp, sc.h, 1, ctx->tw.F().one());
                   auto P = pseudoregulus_of_spec(s0);
                   PointSet covered;
                   for (const auto& line : P.lines)
                     covered = point_set_union(covered,
                                               to_point_set(subspace_points(ctx->sp, line)));
                   PointSet expected;
                   for (long long j = 0; j < q - 1; ++j) {
                     auto s = standard_pr_spec(ctx->sp, sc.h, 1,
                                               ctx->tw.F().pow(ctx->tw.Fqt().gen, j));
                     expected = point_set_union(expected,
                                                enumerate_points(build_pr_linear_set(s)));
                   }
                   expected = point_set_union(expected,
                                              to_point_set(subspace_points(ctx->sp, P.t1)));
                   expected = point_set_union(expected,
                                              to_point_set(subspace_points(ctx->sp, P.t2)));
                   if (covered != expected) return std::string("partition mismatch");
                   return std::to_string(covered.size()) + " points covered exactly";
                 }});
  return out;
}

inline std::vector<Check> suite_thm37(const Config& cfg) {
  struct Ctx {
    Tower tw;
    ProjSpace sp;
    Ctx(const Scenario& sc) : tw(sc.p, sc.h, sc.t, sc.n), sp{&tw, sc.h * sc.t, 2 * sc.n} {}
    PseudoregulusSpec spec(int i, long long rho_exp) const {
      return standard_pr_spec(sp, tw.h(), i, tw.F().pow(tw.Fqt().gen, rho_exp));
    }
  };
  auto ctx = std::make_shared<Ctx>(cfg.sc);
  int t = cfg.sc.t;

  std::vector<Check> out;
  out.push_back({"recovered-classes", "thm37", "each exponent in class min(i, t-i)", [ctx, t] {
                   for (int i = 1; i < t; ++i) {
                     if (std::gcd((long long)i, (long long)t) != 1) continue;
                     auto L = build_pr_linear_set(ctx->spec(i, 0));
                     auto det = detect_pseudoregulus(L);
                     if (det.status != PrStatus::pr) return std::string("detection failed");
                     if (recover_sigma(L, *det.pseudoregulus).cls != std::min(i, t - i))
                       return std::string("class mismatch at exponent ") + std::to_string(i);
                   }
                   return std::string("each exponent in class min(i, t-i)");
                 }});
  out.push_back({"equivalence-within-class", "thm37", "map carries the set", [ctx, t] {
                   auto f = ctx->spec(1, 0), g = ctx->spec(t - 1, 1);
                   auto m = build_equivalence(f, g);
                   if (!m) return std::string("no map");
                   return enumerate_points(apply_map(*m, build_pr_linear_set(f))) ==
                                  enumerate_points(build_pr_linear_set(g))
                              ? std::string("map carries the set")
                              : std::string("map does not carry the set");
                 }});
  out.push_back({"no-map-across-classes", "thm37", "no_map", [ctx] {
                   auto f = ctx->spec(1, 0), g = ctx->spec(2, 0);
                   return build_equivalence(f, g) ? std::string("unexpected map")
                                                  : std::string("no_map");
                 }});
  out.push_back({"class-invariance", "thm37", "1", [ctx, t] {
                   auto f = ctx->spec(1, 0), g = ctx->spec(t - 1, 0);
                   auto m = build_equivalence(f, g);
                   if (!m) return std::string("no map");
                   auto img = apply_map(*m, build_pr_linear_set(f));
                   auto det = detect_pseudoregulus(img);
                   if (det.status != PrStatus::pr) return std::string("detection failed");
                   return std::to_string(recover_sigma(img, *det.pseudoregulus).cls);
                 }});
  return out;
}

inline std::vector<Check> suite_cor38(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  int t = cfg.sc.t;
  long long expected = euler_phi(t) / 2;
  std::vector<Check> out;
  out.push_back({"orbit-count", "cor38", std::to_string(expected) + " classes", [ctx, t] {
                   Tower tw(ctx->sc.p, ctx->sc.h, t, ctx->sc.n);
                   ProjSpace sp{&tw, ctx->sc.h * t, 2 * ctx->sc.n};
                   std::set<int> classes;
                   for (int i = 1; i < t; ++i) {
                     if (std::gcd((long long)i, (long long)t) != 1) continue;
                     auto spec = standard_pr_spec(sp, ctx->sc.h, i, tw.F().one());
                     auto L = build_pr_linear_set(spec);
                     auto det = detect_pseudoregulus(L);
                     if (det.status != PrStatus::pr) return std::string("detection failed");
                     classes.insert(recover_sigma(L, *det.pseudoregulus).cls);
                   }
                   return std::to_string(classes.size()) + " classes";
                 }});
  out.push_back({"phi-count", "cor38", std::to_string(euler_phi(t)),
                 [t] { return std::to_string(euler_phi(t)); }});
  return out;
}

inline std::vector<Check> suite_rem42(const Config& cfg) {
  struct Ctx {
    Tower tw;
    ProjSpace sp;
    Ctx(const Scenario& sc) : tw(sc.p, sc.h, sc.t, 1), sp{&tw, sc.h * sc.t, 2} {}
  };
  auto ctx = std::make_shared<Ctx>(cfg.sc);
  const Scenario sc = cfg.sc;
  long long Q = ipow(sc.q(), sc.t);
  long long pgl_order = Q * (Q * Q - 1);

  std::vector<Check> out;
  out.push_back({"exponent-identity", "rem42", "all coprime exponents give one set", [ctx, sc] {
                   const GaloisField& F = ctx->tw.F();
                   std::optional<PointSet> first;
                   for (int i = 1; i < sc.t; ++i) {
                     if (std::gcd((long long)i, (long long)sc.t) != 1) continue;
                     LinePRSpec s{ctx->sp, sc.h, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()},
                                  i, F.one()};
                     auto pts = enumerate_points(build_line_pr(s));
                     if (!first)
                       first = pts;
                     else if (*first != pts)
                       return std::string("sets differ");
                   }
                   return std::string("all coprime exponents give one set");
                 }});
  out.push_back({"norm-one-form", "rem42", "all second coordinates have norm 1", [ctx, sc] {
                   const GaloisField& F = ctx->tw.F();
                   LinePRSpec s{ctx->sp, sc.h, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, 1,
                                F.one()};
                   for (const auto& p : enumerate_points(build_line_pr(s))) {
                     if (p.v[0] != F.one()) return std::string("unexpected representative");
                     if (F.rel_norm(p.v[1], sc.h, sc.h * sc.t) != F.one())
                       return std::string("norm != 1 appears");
                   }
                   return std::string("all second coordinates have norm 1");
                 }});
  out.push_back(
      {"full-group-orbit", "rem42",
       "group order " + std::to_string(pgl_order) + ", every construction in one orbit",
       [ctx, sc, pgl_order] {
         const GaloisField& F = ctx->tw.F();
         const auto& elems = ctx->tw.Fqt().elems;
         // orbit of the standard set under the full projectivity group
         LinePRSpec s0{ctx->sp, sc.h, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, 1, F.one()};
         PointSet base = enumerate_points(build_line_pr(s0));
         auto set_key = [](const PointSet& ps) {
           std::vector<int32_t> key;
           for (const auto& p : ps)
             for (Fe x : p.v) key.push_back(x.v);
           return key;
         };
         std::set<std::vector<int32_t>> orbit;
         long long group = 0;
         for (Fe a : elems)
           for (Fe b : elems)
             for (Fe c : elems)
               for (Fe d : elems) {
                 if (F.sub(F.mul(a, d), F.mul(b, c)).is_zero()) continue;
                 // scalar-normalize: first nonzero of (a, b, c, d) is one
                 Fe lead = !a.is_zero() ? a : (!b.is_zero() ? b : (!c.is_zero() ? c : d));
                 if (lead != F.one()) continue;
                 ++group;
                 Mat M(2, 2);
                 M.at(0, 0) = a;
                 M.at(0, 1) = b;
                 M.at(1, 0) = c;
                 M.at(1, 1) = d;
                 PointSet img;
                 img.reserve(base.size());
                 for (const auto& p : base)
                   img.push_back(normalize_point(F, mat_vec(F, M, p.v)));
                 orbit.insert(set_key(to_point_set(std::move(img))));
               }
         if (group != pgl_order)
           return std::string("group order ") + std::to_string(group) + ", orbit incomplete";
         // every construction: all ordered point pairs, coprime exponents,
         // one rho per norm class
         ProjSubspace whole{Mat::identity(2)};
         auto all_points = subspace_points(ctx->sp, whole);
         long long q = sc.q();
         for (const auto& P1 : all_points)
           for (const auto& P2 : all_points) {
             if (P1 == P2) continue;
             for (int i = 1; i < sc.t; ++i) {
               if (std::gcd((long long)i, (long long)sc.t) != 1) continue;
               for (long long rc = 0; rc < q - 1; ++rc) {
                 LinePRSpec s{ctx->sp, sc.h, P1.v, P2.v, i,
                              F.pow(ctx->tw.Fqt().gen, rc)};
                 if (!orbit.count(set_key(enumerate_points(build_line_pr(s)))))
                   return std::string("a construction escapes the orbit");
               }
             }
           }
         return std::string("group order ") + std::to_string(pgl_order) +
                ", every construction in one orbit";
       }});
  return out;
}

inline std::vector<Check> suite_prop43(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"unique-transversal-pair", "prop43", "exactly the coordinate point pair",
                 [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 1);
                   ProjSpace sp{&tw, ctx->sc.h * ctx->sc.t, 2};
                   const GaloisField& F = tw.F();
                   LinePRSpec s{sp, ctx->sc.h, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, 1,
                                F.one()};
                   auto det = detect_line_pr(build_line_pr(s));
                   if (det.status != PrStatus::pr || det.pairs.size() != 1)
                     return std::string("pair count ") + std::to_string(det.pairs.size());
                   PointSet got = to_point_set({det.pairs[0].first, det.pairs[0].second});
                   PointSet want = to_point_set({normalize_point(F, Vec{F.one(), F.zero()}),
                                                 normalize_point(F, Vec{F.zero(), F.one()})});
                   return got == want ? std::string("exactly the coordinate point pair")
                                      : std::string("different pair");
                 }});
  out.push_back({"baer-subline-pairs", "rem44",
                 "several pairs, each swapped by the fixing involution", [] {
                   Tower tw(3, 1, 2, 1);
                   ProjSpace sp{&tw, 2, 2};
                   const GaloisField& F = tw.F();
                   LinePRSpec s{sp, 1, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, 1, F.one()};
                   auto L = build_line_pr(s);
                   auto det = detect_line_pr(L);
                   if (det.status != PrStatus::t2_nonunique || det.pairs.size() < 2)
                     return std::string("pair count ") + std::to_string(det.pairs.size());
                   // (x0, x1) -> (x1^q, x0^q) fixes this subline pointwise
                   auto conj = [&](const ProjPoint& P) {
                     return normalize_point(F, Vec{F.frob(P.v[1], 1), F.frob(P.v[0], 1)});
                   };
                   for (auto& [P1, P2] : det.pairs) {
                     if (conj(P1) != P2 && conj(P2) != P1)
                       return std::string("a pair is not involution-conjugate");
                   }
                   return std::string("several pairs, each swapped by the fixing involution");
                 }});
  return out;
}

inline std::vector<Check> suite_ex46(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"line-family-size", "ex46", "scattered with the maximum point count", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 1);
                   auto ex = lp_example_set(tw, detail::first_norm_not_one(tw), 1);
                   long long want = ex.set.max_size();
                   auto pts = enumerate_points(ex.set);
                   if (static_cast<long long>(pts.size()) != want)
                     return std::string("size ") + std::to_string(pts.size());
                   return std::string("scattered with the maximum point count");
                 }});
  out.push_back({"line-family-not-pr", "ex46", "not_pr", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 1);
                   auto ex = lp_example_set(tw, detail::first_norm_not_one(tw), 1);
                   auto det = detect_line_pr(ex.set, ctx->budgets.pair_cap);
                   if (!ex.expected_non_pr) return std::string("scale gives no guarantee");
                   return det.status == PrStatus::not_pr ? std::string("not_pr")
                                                         : std::string("a pair was found");
                 }});
  out.push_back({"plane-family-weight", "ex46", "the first block line has weight t", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 2);
                   auto ex = lp_example_set(tw, detail::first_norm_not_one(tw), 2);
                   const GaloisField& F = tw.F();
                   ProjSubspace r = make_subspace(
                       F, {Vec{F.one(), F.zero(), F.zero(), F.zero()},
                           Vec{F.zero(), F.zero(), F.one(), F.zero()}});
                   return weight(ex.set, r) == ctx->sc.t
                              ? std::string("the first block line has weight t")
                              : std::string("weight ") + std::to_string(weight(ex.set, r));
                 }});
  out.push_back({"plane-family-not-pr", "ex46", "not_pr", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 2);
                   auto ex = lp_example_set(tw, detail::first_norm_not_one(tw), 2);
                   if (!is_scattered(ex.set)) return std::string("not scattered");
                   auto det = detect_pseudoregulus(ex.set, ctx->budgets.line_cap);
                   if (!ex.expected_non_pr) return std::string("scale gives no guarantee");
                   return det.status == PrStatus::not_pr ? std::string("not_pr")
                                                         : std::string("detected as pr");
                 }});
  return out;
}

inline std::vector<Check> suite_thm39(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"coprime-projection-pr", "thm39",
                 "pseudoregulus type with the director conjugates as transversals", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   auto G = canonical_subgeometry(tw);
                   auto pc = construct_by_projection(G, default_director(G), 0, 1);
                   if (!pc.pr_type) return std::string("not flagged pr");
                   auto det = detect_pseudoregulus(pc.projected.set);
                   if (det.status != PrStatus::pr) return std::string("not detected: ") + det.reason;
                   bool match =
                       (det.pseudoregulus->t1 == pc.t1_axis && det.pseudoregulus->t2 == pc.t2_axis) ||
                       (det.pseudoregulus->t1 == pc.t2_axis && det.pseudoregulus->t2 == pc.t1_axis);
                   return match ? std::string(
                                      "pseudoregulus type with the director conjugates as transversals")
                                : std::string("transversals differ");
                 }});
  out.push_back({"gcd2-linearity", "rem310", "size is 1 mod q^2", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, 4, ctx->sc.n);
                   auto G = canonical_subgeometry(tw);
                   auto pc = construct_by_projection(G, default_director(G), 0, 2);
                   if (pc.pr_type || pc.linearity != 2) return std::string("wrong linearity flag");
                   auto pts = enumerate_points(pc.projected.set);
                   long long q2 = ipow(ctx->sc.q(), 2);
                   return (static_cast<long long>(pts.size()) - 1) % q2 == 0
                              ? std::string("size is 1 mod q^2")
                              : std::string("congruence fails");
                 }});
  return out;
}

inline std::vector<Check> suite_thm312(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"every-coprime-projection-standard", "thm312",
                 "every projected set equals a direct construction", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   auto G = canonical_subgeometry(tw);
                   auto theta = default_director(G);
                   for (int i1 = 0; i1 < ctx->sc.t; ++i1)
                     for (int i2 = i1 + 1; i2 < ctx->sc.t; ++i2) {
                       if (std::gcd((long long)(i2 - i1), (long long)ctx->sc.t) != 1) continue;
                       auto pc = construct_by_projection(G, theta, i1, i2);
                       auto det = detect_pseudoregulus(pc.projected.set);
                       if (det.status != PrStatus::pr) return std::string("detection failed");
                       auto spec = recover_spec(pc.projected.set, *det.pseudoregulus);
                       if (enumerate_points(build_pr_linear_set(spec)) !=
                           enumerate_points(pc.projected.set))
                         return std::string("no matching direct construction");
                     }
                   return std::string("every projected set equals a direct construction");
                 }});
  return out;
}

inline std::vector<Check> suite_thm311(const Config& cfg) {
  struct Ctx {
    Tower tw;
    CanonicalSubgeometry G;
    ProjSubspace theta;
    DesarguesianSpread D0;
    ProjectionConstruction pc;
    DetectPrResult det;
    SpreadRecovery rec;
    Ctx(const Scenario& sc)
        : tw(sc.p, sc.h, sc.t, sc.n),
          G(canonical_subgeometry(tw)),
          theta(default_director(G)),
          D0(spread_from_director(G, theta)),
          pc(construct_by_projection(G, theta, 0, 1)),
          det(detect_pseudoregulus(pc.projected.set)),
          rec(recover_spread(G, pc.projected, *det.pseudoregulus)) {}
  };
  auto ctx = std::make_shared<Ctx>(cfg.sc);
  std::vector<Check> out;
  out.push_back({"recovered-spread-equality", "thm311", "element sets coincide", [ctx] {
                   if (ctx->rec.spread.elems.size() != ctx->D0.elems.size())
                     return std::string("element counts differ");
                   for (size_t i = 0; i < ctx->D0.elems.size(); ++i)
                     if (!(ctx->rec.spread.elems[i].ext == ctx->D0.elems[i].ext))
                       return std::string("an element differs");
                   return std::string("element sets coincide");
                 }});
  out.push_back({"desarguesian-certificate", "rem21", "director spaces found", [ctx] {
                   return ctx->rec.spread.directors.empty()
                              ? std::string("no director space")
                              : std::string("director spaces found");
                 }});
  out.push_back({"psi-stable-extensions", "thm311", "all extensions stable", [ctx] {
                   for (const auto& el : ctx->rec.spread.elems)
                     if (!(ctx->G.psi(el.ext) == el.ext)) return std::string("unstable extension");
                   return std::string("all extensions stable");
                 }});
  out.push_back({"center-decomposition", "eq8", "consecutive conjugates span the center",
                 [ctx] {
                   if (ctx->rec.all_decompositions.empty()) return std::string("no decomposition");
                   if (std::gcd((long long)ctx->rec.m, (long long)ctx->G.t) != 1)
                     return std::string("step not coprime");
                   return std::string("consecutive conjugates span the center");
                 }});
  return out;
}

inline std::vector<Check> suite_thm22(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"over-rank-exhaustion", "thm22", "all subspaces above the bound non-scattered",
                 [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 1);
                   ProjSpace sp{&tw, ctx->sc.h * ctx->sc.t, 2};
                   auto rep = max_scattered_bound_check(sp, ctx->sc.h, ctx->budgets.enum_cap);
                   if (rep.scattered_found != 0)
                     return std::to_string(rep.scattered_found) + " scattered found";
                   long long want = 0;  // Gaussian binomial [2t choose t+1]_q
                   {
                     long long m = 2 * ctx->sc.t, k = ctx->sc.t + 1, q = ctx->sc.q();
                     __int128 num = 1, den = 1;
                     for (long long i = 0; i < k; ++i) {
                       num *= ipow(q, static_cast<int>(m - i)) - 1;
                       den *= ipow(q, static_cast<int>(i + 1)) - 1;
                     }
                     want = static_cast<long long>(num / den);
                   }
                   if (rep.subspaces_checked != want)
                     return std::string("checked ") + std::to_string(rep.subspaces_checked) +
                            ", expected " + std::to_string(want);
                   return std::string("all subspaces above the bound non-scattered");
                 }});
  out.push_back({"max-rank-witness", "thm35", "a maximum-rank scattered set exists", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, 1);
                   ProjSpace sp{&tw, ctx->sc.h * ctx->sc.t, 2};
                   const GaloisField& F = tw.F();
                   LinePRSpec s{sp, ctx->sc.h, Vec{F.one(), F.zero()}, Vec{F.zero(), F.one()}, 1,
                                F.one()};
                   auto L = build_line_pr(s);
                   return L.rank() == ctx->sc.t && is_scattered(L)
                              ? std::string("a maximum-rank scattered set exists")
                              : std::string("witness failed");
                 }});
  return out;
}

inline std::vector<Check> suite_prop51(const Config& cfg) {
  auto variety_checks = [](long long p, int n, std::vector<Check>& out) {
    std::string tag = "(n=" + std::to_string(n) + ",q=" + std::to_string(p) + ")";
    long long members = (ipow(p, n) - 1) / (p - 1);
    long long size = members * members;
    out.push_back({"variety-size" + tag, "prop51", std::to_string(size), [p, n] {
                     Tower tw(p, 1, 1, n);
                     auto S = build_segre(endo_space(tw, 1, n));
                     return std::to_string(S.points.size());
                   }});
    out.push_back({"systems" + tag, "prop51",
                   std::to_string(members) + " per system, skew within, one point across",
                   [p, n, members] {
                     Tower tw(p, 1, 1, n);
                     EndoSpace E = endo_space(tw, 1, n);
                     auto S = build_segre(E);
                     const GaloisField& F = tw.F();
                     if (static_cast<long long>(S.sys1.size()) != members ||
                         static_cast<long long>(S.sys2.size()) != members)
                       return std::string("wrong system sizes");
                     for (size_t i = 0; i < S.sys1.size(); ++i)
                       for (size_t j = 0; j < S.sys1.size(); ++j) {
                         if (i != j && (subspaces_meet(F, S.sys1[i], S.sys1[j]) ||
                                        subspaces_meet(F, S.sys2[i], S.sys2[j])))
                           return std::string("not skew within a system");
                         if (intersect(F, S.sys1[i], S.sys2[j]).vdim() != 1)
                           return std::string("cross intersection is not a point");
                       }
                     PointSet covered;
                     for (auto& X : S.sys1)
                       covered = point_set_union(covered,
                                                 to_point_set(subspace_points(E.proj(), X)));
                     if (covered != S.points) return std::string("system does not partition");
                     return std::to_string(members) +
                            " per system, skew within, one point across";
                   }});
  };
  std::vector<Check> out;
  variety_checks(3, 2, out);
  variety_checks(2, 3, out);
  out.push_back({"adjoint-identities(n=2,q=3)", "eq15", "all identities hold on all pairs", [] {
                   Tower tw(3, 1, 1, 2);
                   EndoSpace E = endo_space(tw, 1, 2);
                   const GaloisField& F = tw.F();
                   auto S = build_segre(E);
                   // exhaustive over all endomorphism pairs
                   ProjSpace P = E.proj();
                   std::vector<QPoly> all;
                   for (const ProjPoint& pt :
                        subspace_points(P, ProjSubspace{Mat::identity(P.r)}))
                     all.push_back(qp_from_coords(E, pt.v));
                   for (const auto& a : all) {
                     if (!(qp_adjoint(E, qp_adjoint(E, a)) == a)) return std::string("not involutory");
                     if (qp_rank(E, a) != qp_rank(E, qp_adjoint(E, a)))
                       return std::string("rank changes");
                     for (const auto& b : all)
                       if (!(qp_adjoint(E, qp_compose(E, a, b)) ==
                             qp_compose(E, qp_adjoint(E, b), qp_adjoint(E, a))))
                         return std::string("anti-homomorphism fails");
                   }
                   for (Fe lam : tw.Fqnt().elems)
                     if (!(qp_adjoint(E, t_map(E, lam)) == t_map(E, lam)))
                       return std::string("scalar map moves");
                   for (Fe x : tw.Fqnt().elems)
                     for (Fe y : tw.Fqnt().elems) {
                       QPoly f = all[5];
                       if (trace_form(E, qp_eval(E, f, x), y) !=
                           trace_form(E, x, qp_eval(E, qp_adjoint(E, f), y)))
                         return std::string("bilinear adjointness fails");
                     }
                   for (auto& X : S.sys1) {
                     std::vector<Vec> rows;
                     for (int i = 0; i < X.basis.rows; ++i)
                       rows.push_back(
                           qp_coords(E, qp_adjoint(E, qp_from_coords(E, X.basis.row(i)))));
                     auto img = make_subspace(F, rows);
                     if (std::find(S.sys2.begin(), S.sys2.end(), img) == S.sys2.end())
                       return std::string("systems not swapped");
                   }
                   return std::string("all identities hold on all pairs");
                 }});
  out.push_back({"adjoint-identities(n=3,q=2)", "eq16", "identities hold on 100 random maps",
                 [seed = cfg.seed] {
                   Tower tw(2, 1, 1, 3);
                   EndoSpace E = endo_space(tw, 1, 3);
                   std::mt19937_64 rng(seed);
                   const auto& elems = tw.Fqnt().elems;
                   std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
                   for (int trial = 0; trial < 100; ++trial) {
                     QPoly a = qp_zero(E), b = qp_zero(E);
                     for (int i = 0; i < 3; ++i) {
                       a.c[i] = elems[pick(rng)];
                       b.c[i] = elems[pick(rng)];
                     }
                     if (!(qp_adjoint(E, qp_adjoint(E, a)) == a)) return std::string("not involutory");
                     if (!(qp_adjoint(E, qp_compose(E, a, b)) ==
                           qp_compose(E, qp_adjoint(E, b), qp_adjoint(E, a))))
                       return std::string("anti-homomorphism fails");
                     if (qp_rank(E, a) != qp_rank(E, qp_adjoint(E, a)))
                       return std::string("rank changes");
                     Fe x = elems[pick(rng)], y = elems[pick(rng)];
                     if (trace_form(E, qp_eval(E, a, x), y) !=
                         trace_form(E, x, qp_eval(E, qp_adjoint(E, a), y)))
                       return std::string("bilinear adjointness fails");
                   }
                   return std::string("identities hold on 100 random maps");
                 }});
  out.push_back({"shift-span", "eq19", "conjugate shifts span the space and fix the spread", [] {
                   Tower tw(2, 1, 1, 3);
                   EndoSpace E = endo_space(tw, 1, 3);
                   const GaloisField& F = tw.F();
                   ProjSubspace acc = identity_subspace(E);
                   for (int j = 1; j < E.n; ++j)
                     acc = span(F, acc, shifted_identity_subspace(E, j));
                   if (acc.vdim() != E.n * E.n) return std::string("span too small");
                   auto d1 = d_spread(E, true);
                   for (const auto& el : d1) {
                     std::vector<Vec> rows;
                     for (int i = 0; i < el.basis.rows; ++i)
                       rows.push_back(
                           qp_coords(E, qp_upsilon1(E, qp_from_coords(E, el.basis.row(i)), 1)));
                     if (!std::binary_search(d1.begin(), d1.end(), make_subspace(F, rows)))
                       return std::string("shift moves the spread");
                   }
                   for (int i = 0; i < E.n; ++i) {
                     std::vector<Vec> rows;
                     for (int b = 0; b < E.n; ++b)
                       rows.push_back(qp_coords(E, qp_upsilon2(E, t_map(E, E.dec().basis()[b]), i)));
                     if (!(make_subspace(F, rows) ==
                           shifted_identity_subspace(E, (E.n - i) % E.n)))
                       return std::string("conjugate shift relation fails");
                   }
                   return std::string("conjugate shifts span the space and fix the spread");
                 }});
  return out;
}

inline std::vector<Check> suite_thm52(const Config& cfg) {
  std::vector<Check> out;
  out.push_back({"transported-spreads", "thm52", "all four properties hold",
                 [seed = cfg.seed] {
                   Tower tw(3, 1, 1, 2);
                   EndoSpace E = endo_space(tw, 1, 2);
                   const GaloisField& F = tw.F();
                   auto S = build_segre(E);
                   auto d1 = d_spread(E, true), d2 = d_spread(E, false);
                   std::mt19937_64 rng(seed);
                   const auto& elems = tw.Fqnt().elems;
                   std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
                   auto rnd_inv = [&] {
                     while (true) {
                       QPoly f = qp_zero(E);
                       for (int i = 0; i < E.n; ++i) f.c[i] = elems[pick(rng)];
                       if (!f.is_zero() && qp_invertible(E, f)) return f;
                     }
                   };
                   for (int trial = 0; trial < 3; ++trial) {
                     HElement h{rnd_inv(), rnd_inv(), false};
                     HElement hinv = h_inverse(E, h);
                     ProjSubspace X = h_act(E, h, identity_subspace(E));
                     auto transport = [&](const std::vector<ProjSubspace>& d) {
                       std::vector<ProjSubspace> outv;
                       for (auto& el : d) outv.push_back(h_act(E, h, el));
                       std::sort(outv.begin(), outv.end());
                       return outv;
                     };
                     auto dx1 = transport(d1), dx2 = transport(d2);
                     // X in both spreads, systems inside
                     if (!std::binary_search(dx1.begin(), dx1.end(), X) ||
                         !std::binary_search(dx2.begin(), dx2.end(), X))
                       return std::string("X missing from a spread");
                     for (auto& Y : S.sys1)
                       if (!std::binary_search(dx1.begin(), dx1.end(), Y))
                         return std::string("first system escapes");
                     for (auto& Y : S.sys2)
                       if (!std::binary_search(dx2.begin(), dx2.end(), Y))
                         return std::string("second system escapes");
                     // conjugated shift fixes the spread with the system as
                     // fixed elements
                     std::vector<ProjSubspace> fixed;
                     for (auto& el : dx1) {
                       std::vector<Vec> rows;
                       for (int i = 0; i < el.basis.rows; ++i) {
                         QPoly g = qp_from_coords(E, el.basis.row(i));
                         g = h_act(E, h, qp_upsilon1(E, h_act(E, hinv, g), 1));
                         rows.push_back(qp_coords(E, g));
                       }
                       auto img = make_subspace(F, rows);
                       if (!std::binary_search(dx1.begin(), dx1.end(), img))
                         return std::string("conjugated shift moves the spread");
                       if (img == el) fixed.push_back(el);
                     }
                     auto sys1s = S.sys1;
                     std::sort(sys1s.begin(), sys1s.end());
                     std::sort(fixed.begin(), fixed.end());
                     if (fixed != sys1s) return std::string("fixed elements are not the system");
                     // conjugated transpose: fixes X pointwise, swaps spreads
                     auto phi = [&](const QPoly& g) {
                       return h_act(E, h, qp_adjoint(E, h_act(E, hinv, g)));
                     };
                     for (const ProjPoint& p : subspace_points(E.proj(), X))
                       if (!(qp_point(E, phi(qp_from_coords(E, p.v))) == p))
                         return std::string("involution moves a point of X");
                     std::vector<ProjSubspace> moved;
                     for (auto& el : dx1) {
                       std::vector<Vec> rows;
                       for (int i = 0; i < el.basis.rows; ++i)
                         rows.push_back(qp_coords(E, phi(qp_from_coords(E, el.basis.row(i)))));
                       moved.push_back(make_subspace(F, rows));
                     }
                     std::sort(moved.begin(), moved.end());
                     if (moved != dx2) return std::string("involution does not swap the spreads");
                   }
                   return std::string("all four properties hold");
                 }});
  return out;
}

inline std::vector<Check> suite_rem54(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  out.push_back({"quadric-form", "rem54", "zero set matches, 16 points", [] {
                   Tower tw(3, 1, 1, 2);
                   auto rep = quadric_form_check(endo_space(tw, 1, 2));
                   if (!rep.zero_set_matches) return std::string("zero set differs");
                   return std::string("zero set matches, ") + std::to_string(rep.zero_set_size) +
                          " points";
                 }});
  out.push_back({"identity-line-external", "rem54", "external", [] {
                   Tower tw(3, 1, 1, 2);
                   auto rep = quadric_form_check(endo_space(tw, 1, 2));
                   return rep.identity_line_external ? std::string("external")
                                                     : std::string("meets quadric");
                 }});
  out.push_back({"conjugate-polar", "rem54", "the conjugate is the polar line", [] {
                   Tower tw(3, 1, 1, 2);
                   auto rep = quadric_form_check(endo_space(tw, 1, 2));
                   return rep.conjugate_is_polar ? std::string("the conjugate is the polar line")
                                                 : std::string("polarity fails");
                 }});
  return out;
}

inline std::vector<Check> suite_prop55(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  out.push_back({"nucleus-square", "prop55",
                 "pseudoregulus type with the identity conjugates as transversals", [] {
                   Tower tw(3, 1, 2, 2);
                   EndoSpace E = endo_space(tw, tw.d_qt(), tw.d_qnt());
                   auto C = gtf_spread_set(tw, detail::first_gtf_params(tw));
                   FqLinearSet L = spreadset_linear_set(C);
                   if (!is_scattered(L)) return std::string("not scattered");
                   auto pr = detect_with_hint(L, identity_subspace(E),
                                              shifted_identity_subspace(E, 1));
                   if (!pr) return std::string("hint pair is not transversal");
                   auto fail = check_pseudoregulus_axioms(L, *pr);
                   if (!fail.empty()) return fail;
                   return std::string(
                       "pseudoregulus type with the identity conjugates as transversals");
                 }});
  out.push_back({"nucleus-cube-induced-line", "prop55",
                 "induced line set has the identity conjugates as transversal points", [] {
                   Tower tw(3, 1, 1, 3);
                   auto params = detail::first_gtf_params(tw);
                   auto C = gtf_spread_set(tw, params);
                   // induced set on the spread line: coefficient pairs
                   ProjSpace line_sp{&tw, tw.d_qnt(), 2};
                   std::vector<Vec> rows;
                   for (const auto& f : C.basis) rows.push_back(Vec{f.c[0], f.c[params.l]});
                   FqLinearSet induced = make_linear_set(line_sp, tw.h(), rows);
                   auto det = detect_line_pr(induced);
                   if (det.status != PrStatus::pr) return std::string("not of pseudoregulus type");
                   const GaloisField& F = tw.F();
                   PointSet want = to_point_set({normalize_point(F, Vec{F.one(), F.zero()}),
                                                 normalize_point(F, Vec{F.zero(), F.one()})});
                   PointSet got = to_point_set({det.pairs[0].first, det.pairs[0].second});
                   return got == want ? std::string(
                                            "induced line set has the identity conjugates as "
                                            "transversal points")
                                      : std::string("different transversal points");
                 }});
  return out;
}

inline std::vector<Check> suite_thm56(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  out.push_back({"round-trip", "thm56", "parameters recovered and carried onto the input", [] {
                   Tower tw(3, 1, 2, 2);
                   auto params = detail::first_gtf_params(tw);
                   auto C = gtf_spread_set(tw, params);
                   auto rec = recognize_gtf(C);
                   if (rec.status != GtfRecognition::Status::gtf)
                     return std::string("not recognized: ") + rec.reason;
                   std::vector<QPoly> moved;
                   for (const auto& f : C.basis) moved.push_back(h_act(C.E, *rec.normalizer, f));
                   auto moved_set = make_spread_set(C.E, C.center_d, moved);
                   auto rebuilt = gtf_spread_set(tw, rec.params);
                   return enumerate_points(spreadset_linear_set(moved_set)) ==
                                  enumerate_points(spreadset_linear_set(rebuilt))
                              ? std::string("parameters recovered and carried onto the input")
                              : std::string("normalizer does not carry the set");
                 }});
  out.push_back({"nucleus-cube-round-trip", "thm56", "parameters recovered exactly", [] {
                   Tower tw(3, 1, 1, 3);
                   auto params = detail::first_gtf_params(tw);
                   auto rec = recognize_gtf(gtf_spread_set(tw, params));
                   if (rec.status != GtfRecognition::Status::gtf)
                     return std::string("not recognized: ") + rec.reason;
                   return rec.params.l == params.l && rec.params.m == params.m &&
                                  rec.params.c == params.c
                              ? std::string("parameters recovered exactly")
                              : std::string("different parameters");
                 }});
  out.push_back({"rejects-quadric-family", "cor57", "not_gtf", [] {
                   Tower tw(3, 1, 2, 2);
                   auto K = knuth_spread_set(tw, detail::first_knuth_params(tw));
                   auto rec = recognize_gtf(K);
                   return rec.status == GtfRecognition::Status::not_gtf ? std::string("not_gtf")
                                                                        : std::string("accepted");
                 }});
  out.push_back({"field-degenerate", "thm56", "degenerate", [] {
                   Tower tw(3, 1, 2, 2);
                   EndoSpace E = endo_space(tw, tw.d_qt(), tw.d_qnt());
                   auto rec = recognize_gtf(field_spread_set(E, tw.h()));
                   return rec.status == GtfRecognition::Status::degenerate
                              ? std::string("degenerate")
                              : std::string("not flagged");
                 }});
  return out;
}

inline std::vector<Check> suite_rem58(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  for (long long p : {2LL, 3LL}) {
    out.push_back({"transpose-exchanges-families(q=" + std::to_string(p) + ")", "rem58",
                   "adjoint image equals the transpose-family set", [p] {
                     Tower tw(p, 1, 2, 2);
                     auto p17 = detail::first_knuth_params(tw);
                     auto K17 = knuth_spread_set(tw, p17);
                     auto K19 = knuth_spread_set(tw, detail::transpose_params(tw, p17));
                     ProjSpace sp{&tw, tw.d_qt(), 4};
                     auto T = transpose_map(sp);
                     return enumerate_points(apply_map(T, matrix_linear_set(K17))) ==
                                    enumerate_points(matrix_linear_set(K19))
                                ? std::string("adjoint image equals the transpose-family set")
                                : std::string("sets differ");
                   }});
  }
  return out;
}

inline std::vector<Check> suite_prop59(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  for (long long p : {2LL, 3LL}) {
    std::string tag = "(q=" + std::to_string(p) + ")";
    out.push_back({"first-family-regulus" + tag, "prop59",
                   "transversal pair inside the first regulus", [p] {
                     Tower tw(p, 1, 2, 2);
                     auto K = knuth_spread_set(tw, detail::first_knuth_params(tw));
                     FqLinearSet L = matrix_linear_set(K);
                     const GaloisField& F = tw.F();
                     ProjSubspace r = make_subspace(
                         F, {Vec{fe_one(), fe_zero(), fe_zero(), fe_zero()},
                             Vec{fe_zero(), fe_one(), fe_zero(), fe_zero()}});
                     ProjSubspace rp = make_subspace(
                         F, {Vec{fe_zero(), fe_zero(), fe_one(), fe_zero()},
                             Vec{fe_zero(), fe_zero(), fe_zero(), fe_one()}});
                     auto reg = quadric_regulus(L.sp, true);
                     if (std::find(reg.begin(), reg.end(), r) == reg.end() ||
                         std::find(reg.begin(), reg.end(), rp) == reg.end())
                       return std::string("coordinate lines missing from the regulus");
                     auto pr = detect_with_hint(L, r, rp);
                     if (!pr) return std::string("hint pair is not transversal");
                     return check_pseudoregulus_axioms(L, *pr).empty()
                                ? std::string("transversal pair inside the first regulus")
                                : std::string("family axioms fail");
                   }});
    out.push_back({"second-family-regulus" + tag, "prop59",
                   "transversal pair inside the second regulus", [p] {
                     Tower tw(p, 1, 2, 2);
                     auto p19 = detail::transpose_params(tw, detail::first_knuth_params(tw));
                     auto K = knuth_spread_set(tw, p19);
                     FqLinearSet L = matrix_linear_set(K);
                     auto reg2 = quadric_regulus(L.sp, false);
                     for (size_t i = 0; i < reg2.size(); ++i)
                       for (size_t j = 0; j < reg2.size(); ++j) {
                         if (i == j) continue;
                         if (auto pr = detect_with_hint(L, reg2[i], reg2[j]))
                           return std::string("transversal pair inside the second regulus");
                       }
                     return std::string("no pair found");
                   }});
  }
  return out;
}

inline std::vector<Check> suite_thm510(const Config& cfg) {
  (void)cfg;
  std::vector<Check> out;
  for (long long p : {2LL, 3LL}) {
    std::string tag = "(q=" + std::to_string(p) + ")";
    out.push_back({"first-family-round-trip" + tag, "thm510", "family 17 recovered and verified",
                   [p] {
                     Tower tw(p, 1, 2, 2);
                     auto K = knuth_spread_set(tw, detail::first_knuth_params(tw));
                     auto rec = recognize_knuth(K);
                     if (!rec.ok) return std::string("not recognized: ") + rec.reason;
                     return rec.params.family == 17
                                ? std::string("family 17 recovered and verified")
                                : std::string("wrong family");
                   }});
    out.push_back({"second-family-round-trip" + tag, "thm510", "family 19 recovered and verified",
                   [p] {
                     Tower tw(p, 1, 2, 2);
                     auto p19 = detail::transpose_params(tw, detail::first_knuth_params(tw));
                     auto rec = recognize_knuth(knuth_spread_set(tw, p19));
                     if (!rec.ok) return std::string("not recognized: ") + rec.reason;
                     return rec.params.family == 19
                                ? std::string("family 19 recovered and verified")
                                : std::string("wrong family");
                   }});
  }
  out.push_back({"rejects-twisted-field", "thm510", "not_knuth", [] {
                   Tower tw(3, 1, 2, 2);
                   auto C = gtf_spread_set(tw, detail::first_gtf_params(tw));
                   auto rec = recognize_knuth(C);
                   return rec.ok ? std::string("accepted") : std::string("not_knuth");
                 }});
  return out;
}

inline std::vector<Check> suite_axioms(const Config& cfg) {
  auto ctx = std::make_shared<Config>(cfg);
  std::vector<Check> out;
  out.push_back({"unit-group-order", "unit-order", "a^(q-1) = 1 for all units", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   const GaloisField& F = tw.F();
                   if (F.q() > (1 << 12))
                     throw BudgetError("field larger than 2^12; exhaustive order check skipped");
                   for (long long k = 0; k < F.units(); ++k)
                     if (!(F.pow(F.from_exp(k), F.units()) == F.one()))
                       return std::string("order violation");
                   return std::string("a^(q-1) = 1 for all units");
                 }});
  out.push_back({"zech-consistency", "zech", "g^Z(k) = 1 + g^k throughout", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   const GaloisField& F = tw.F();
                   if (F.q() > (1 << 12))
                     throw BudgetError("field larger than 2^12; exhaustive table check skipped");
                   // table addition against the polynomial encoding: adding one
                   // bumps the constant digit mod p
                   for (long long k = 0; k < F.units(); ++k) {
                     Fe a = F.from_exp(k);
                     long long enc = F.encode(a);
                     long long c0 = enc % F.p();
                     long long bumped = enc - c0 + (c0 + 1) % F.p();
                     if (F.encode(F.add(F.one(), a)) != bumped)
                       return std::string("table inconsistency at exponent ") + std::to_string(k);
                   }
                   return std::string("g^Z(k) = 1 + g^k throughout");
                 }});
  out.push_back({"field-laws-random", "zech", "laws hold on 1000 random triples", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   const GaloisField& F = tw.F();
                   std::mt19937_64 rng(ctx->seed);
                   std::uniform_int_distribution<long long> d(-1, F.units() - 1);
                   auto rnd = [&] {
                     long long v = d(rng);
                     return v < 0 ? F.zero() : F.from_exp(v);
                   };
                   for (int trial = 0; trial < 1000; ++trial) {
                     Fe a = rnd(), b = rnd(), c = rnd();
                     if (!(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))))
                       return std::string("distributivity fails");
                     if (!(F.add(F.add(a, b), c) == F.add(a, F.add(b, c))))
                       return std::string("associativity fails");
                   }
                   return std::string("laws hold on 1000 random triples");
                 }});
  out.push_back({"size-congruence-random-subspaces", "eq1",
                 "1000 subspaces within the bound and 1 mod q", [ctx] {
                   Tower tw(ctx->sc.p, ctx->sc.h, ctx->sc.t, ctx->sc.n);
                   ProjSpace sp{&tw, ctx->sc.h * ctx->sc.t, 2 * ctx->sc.n};
                   std::mt19937_64 rng(ctx->seed);
                   long long q = ctx->sc.q();
                   int max_rank = 1;
                   while (ipow(q, max_rank + 1) <= (1 << 16) && max_rank + 1 <= sp.r * ctx->sc.t)
                     ++max_rank;
                   std::uniform_int_distribution<int> rk(1, max_rank);
                   for (int trial = 0; trial < 1000; ++trial) {
                     FqLinearSet L = random_linear_set(rng, sp, ctx->sc.h, rk(rng));
                     auto pts = enumerate_points(L, ctx->budgets.enum_cap);
                     if (static_cast<long long>(pts.size()) > L.max_size())
                       return std::string("bound violated");
                     if ((static_cast<long long>(pts.size()) - 1) % q != 0)
                       return std::string("congruence violated");
                   }
                   return std::string("1000 subspaces within the bound and 1 mod q");
                 }});
  return out;
}

// ---------------------------------------------------------------------------

using SuiteFn = std::vector<Check> (*)(const Config&);

struct SuiteInfo {
  SuiteFn fn;
  Scenario default_scenario;
};

inline const std::map<std::string, SuiteInfo>& registry() {
  static const std::map<std::string, SuiteInfo> reg = {
      {"thm22", {suite_thm22, {2, 1, 3, 1}}},
      {"thm35", {suite_thm35, {2, 1, 3, 2}}},
      {"rem36", {suite_rem36, {3, 1, 3, 2}}},
      {"thm37", {suite_thm37, {2, 1, 5, 2}}},
      {"cor38", {suite_cor38, {2, 1, 5, 2}}},
      {"thm39", {suite_thm39, {2, 1, 3, 2}}},
      {"thm311", {suite_thm311, {2, 1, 3, 2}}},
      {"thm312", {suite_thm312, {2, 1, 3, 2}}},
      {"rem42", {suite_rem42, {2, 1, 4, 1}}},
      {"prop43", {suite_prop43, {2, 1, 3, 1}}},
      {"ex46", {suite_ex46, {2, 2, 4, 2}}},
      {"prop51", {suite_prop51, {3, 1, 1, 2}}},
      {"thm52", {suite_thm52, {3, 1, 1, 2}}},
      {"rem54", {suite_rem54, {3, 1, 1, 2}}},
      {"prop55", {suite_prop55, {3, 1, 2, 2}}},
      {"thm56", {suite_thm56, {3, 1, 2, 2}}},
      {"rem58", {suite_rem58, {2, 1, 2, 2}}},
      {"prop59", {suite_prop59, {2, 1, 2, 2}}},
      {"thm510", {suite_thm510, {2, 1, 2, 2}}},
      {"axioms", {suite_axioms, {2, 1, 3, 2}}},
  };
  return reg;
}

inline Report run_suite(const std::string& name, const Config& cfg) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error("unknown suite '" + name + "'");
  return assemble_report(name, cfg, it->second.fn(cfg));
}

}  // namespace linset::suites
