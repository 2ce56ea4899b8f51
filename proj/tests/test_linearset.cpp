#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "linset/linearset.hpp"
#include "linset/pseudoregulus.hpp"
#include "oracles.hpp"

using namespace linset;

namespace {

// Direct enumeration oracle: distinct normalized points of all nonzero
// F_q-combinations, without the library's budget/postcondition machinery.
PointSet naive_points(const FqLinearSet& L) {
  const GaloisField& F = L.sp.F();
  const auto& coeffs = L.sp.tw->sub(L.base_d).elems;
  std::vector<ProjPoint> pts;
  std::vector<size_t> idx(L.rank(), 0);
  while (true) {
    Vec v(L.sp.r, fe_zero());
    bool nz = false;
    for (int i = 0; i < L.rank(); ++i) {
      if (coeffs[idx[i]].is_zero()) continue;
      nz = true;
      for (int c = 0; c < L.sp.r; ++c) v[c] = F.add(v[c], F.mul(coeffs[idx[i]], L.basis.at(i, c)));
    }
    if (nz) pts.push_back(normalize_point(F, v));
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return to_point_set(std::move(pts));
}

}  // namespace

TEST_CASE("row reduction, span and meet") {
  Tower tw(2, 1, 3, 2);
  const GaloisField& F = tw.F();

  // span of two distinct points is a line
  Vec a{F.one(), F.zero(), F.zero(), F.zero()};
  Vec b{F.zero(), F.one(), F.gen(), F.zero()};
  auto line = make_subspace(F, {a, b});
  CHECK(line.pdim() == 1);

  // two distinct hyperplanes of PG(3) meet in a line
  auto h1 = make_subspace(F, {a, b, Vec{F.zero(), F.zero(), F.one(), F.zero()}});
  auto h2 = make_subspace(F, {a, b, Vec{F.zero(), F.zero(), F.zero(), F.one()}});
  CHECK(h1.pdim() == 2);
  CHECK(intersect(F, h1, h2).pdim() == 1);
  CHECK(intersect(F, h1, h2) == line);

  // Grassmann identity on random subspace pairs
  std::mt19937_64 rng(3);
  const auto& elems = tw.Fqt().elems;
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    auto rnd_space = [&](int rows) {
      std::vector<Vec> vs(rows, Vec(4));
      for (auto& v : vs)
        for (Fe& x : v) x = elems[pick(rng)];
      return make_subspace(F, vs);
    };
    auto S1 = rnd_space(2), S2 = rnd_space(3);
    auto sp_ = span(F, S1, S2);
    auto mt = intersect(F, S1, S2);
    CHECK(sp_.vdim() + mt.vdim() == S1.vdim() + S2.vdim());
    CHECK(subspace_contains(F, S1, mt));
    CHECK(subspace_contains(F, S2, mt));
    CHECK(subspace_contains(F, sp_, S1));
  }
}

TEST_CASE("point enumeration sizes and congruences") {
  Tower tw(2, 1, 3, 1);
  ProjSpace sp{&tw, 3, 2};  // PG(1, 8)

  // rank 1: a single point
  FqLinearSet one = make_linear_set(sp, 1, {Vec{tw.F().one(), tw.F().gen()}});
  CHECK(enumerate_points(one).size() == 1);

  // 1000 random F_2-subspaces of V(2, F_8): size bound and 1 mod q
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> rk(1, 4);
    int k = rk(rng);
    FqLinearSet L = random_linear_set(rng, sp, 1, k);
    auto pts = enumerate_points(L);  // postconditions asserted inside
    CHECK(static_cast<long long>(pts.size()) <= L.max_size());
    CHECK((static_cast<long long>(pts.size()) - 1) % 2 == 0);
    CHECK(pts == naive_points(L));
  }
}

TEST_CASE("weights") {
  Tower tw(2, 1, 3, 2);
  const GaloisField& F = tw.F();
  ProjSpace sp{&tw, 3, 4};
  std::mt19937_64 rng(5);
  FqLinearSet L = random_linear_set(rng, sp, 1, 5);

  // whole space has weight = rank
  CHECK(weight(L, ProjSubspace{Mat::identity(4)}) == 5);

  // vector counting: sum over points of (q^w - 1) equals q^k - 1
  auto mult = enumerate_with_multiplicity(L);
  long long total = 0;
  for (auto& [pt, count] : mult) {
    int w = weight(L, pt);
    CHECK(count == ipow(2, w) - 1);
    total += count;
  }
  CHECK(total == ipow(2, 5) - 1);

  // a subspace disjoint from the span of U has weight 0
  FqLinearSet small = make_linear_set(sp, 1, {Vec{F.one(), F.zero(), F.zero(), F.zero()}});
  auto far = make_subspace(F, {Vec{F.zero(), F.one(), F.zero(), F.zero()}});
  CHECK(weight(small, far) == 0);
}

TEST_CASE("single coordinate-field point has full weight, not scattered") {
  Tower tw(2, 1, 3, 1);
  ProjSpace sp{&tw, 3, 2};
  const GaloisField& F = tw.F();
  // U = F_{q^t} * v viewed as rank-t F_q-space: one point of weight t
  const auto& dec = tw.dec(1, 3);
  Vec v{F.one(), F.gen()};
  std::vector<Vec> rows;
  for (Fe b : dec.basis()) rows.push_back(vec_scale(F, b, v));
  FqLinearSet L = make_linear_set(sp, 1, rows);
  CHECK(enumerate_points(L).size() == 1);
  CHECK_FALSE(is_scattered(L));
  CHECK(weight(L, normalize_point(F, v)) == 3);
}

TEST_CASE("semilinear maps act pointwise and compose") {
  Tower tw(2, 1, 3, 1);
  ProjSpace sp{&tw, 3, 2};
  const GaloisField& F = tw.F();
  std::mt19937_64 rng(17);
  const auto& elems = tw.Fqt().elems;
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  auto random_map = [&](int j) {
    while (true) {
      Mat A(2, 2);
      for (Fe& x : A.a) x = elems[pick(rng)];
      try {
        return SemilinearMap::make(sp, A, j);
      } catch (const Error&) {
      }
    }
  };

  auto id = SemilinearMap::make(sp, Mat::identity(2), 0);
  FqLinearSet L = random_linear_set(rng, sp, 1, 3);
  CHECK(enumerate_points(apply_map(id, L)) == enumerate_points(L));

  for (int trial = 0; trial < 20; ++trial) {
    auto M1 = random_map(1), M2 = random_map(2);
    // image of the point set is the point set of the image
    PointSet lhs;
    for (const ProjPoint& P : enumerate_points(L)) lhs.push_back(M1.apply(P));
    lhs = to_point_set(std::move(lhs));
    CHECK(lhs == enumerate_points(apply_map(M1, L)));

    // composition with added companion exponents
    auto C = M1.compose(M2);
    CHECK(C.frob_j == (M1.frob_j + M2.frob_j) % F.e());
    for (int k = 0; k < 10; ++k) {
      Vec v{elems[pick(rng)], elems[pick(rng)]};
      if (vec_is_zero(v)) continue;
      CHECK(M1.apply_vec(M2.apply_vec(v)) == C.apply_vec(v));
    }
    // inverse
    auto Minv = M1.inverse();
    for (int k = 0; k < 10; ++k) {
      Vec v{elems[pick(rng)], elems[pick(rng)]};
      if (vec_is_zero(v)) continue;
      CHECK(normalize_point(F, Minv.apply_vec(M1.apply_vec(v))) == normalize_point(F, v));
    }
    // weights are preserved
    auto S = make_subspace(F, {Vec{F.one(), elems[pick(rng)]}});
    CHECK(weight(L, S) == weight(apply_map(M1, L), M1.apply(S)));
  }
}

TEST_CASE("rank bound for scattered sets, exhaustive") {
  // every rank-4 F_2-subspace of V(2, F_8) fails to be scattered
  Tower tw(2, 1, 3, 1);
  ProjSpace sp{&tw, 3, 2};
  auto rep = max_scattered_bound_check(sp, 1);
  CHECK(rep.rank_checked == 4);
  CHECK(rep.subspaces_checked == oracle::gauss_binom(6, 4, 2));  // 651
  CHECK(rep.subspaces_checked == 651);
  CHECK(rep.scattered_found == 0);

  // r = 1: no rank-3 scattered subspace of V(1, F_16) over F_2
  Tower tw2(2, 1, 4, 1);
  ProjSpace pt{&tw2, 4, 1};
  auto rep2 = max_scattered_bound_check(pt, 1);
  CHECK(rep2.rank_checked == 3);
  CHECK(rep2.scattered_found == 0);
}

TEST_CASE("enumeration budget is enforced") {
  Tower tw(2, 1, 3, 2);
  ProjSpace sp{&tw, 3, 4};
  auto spec = standard_pr_spec(sp, 1, 1, tw.F().one());
  FqLinearSet L = build_pr_linear_set(spec);
  CHECK_THROWS_AS(enumerate_points(L, 7), BudgetError);
}

TEST_CASE("the plane construction rejects n = 1") {
  Tower tw(2, 1, 3, 1);
  ProjSpace sp{&tw, 3, 2};
  CHECK_THROWS_WITH(standard_pr_spec(sp, 1, 1, tw.F().one()),
                    Catch::Matchers::ContainsSubstring("line construction"));
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
  Tower tw(3, 1, 2, 1);
  long long count = 0;
  for_each_subspace(tw, 1, 4, 2, 1 << 22, [&](const Mat&) { ++count; });
  CHECK(count == oracle::gauss_binom(4, 2, 3));
}
