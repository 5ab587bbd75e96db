#include <catch2/catch_amalgamated.hpp>

#include "curvecount/harness.hpp"
#include "curvecount/incidence.hpp"
#include "curvecount/oracle.hpp"

using namespace curvecount;

namespace {
Curve parabola() { return Curve::poly(Polynomial::from_ints({0, 0, 1})); }
Curve cubic() { return Curve::poly(Polynomial::from_ints({0, 0, 0, 1})); }

GroundSet gs(std::initializer_list<long> v) {
  std::vector<Rational> e;
  for (long x : v) e.emplace_back(x);
  return GroundSet::of(std::move(e));
}

ExactKey key(long a, long b) { return ExactKey{Rational(a), Rational(b)}; }

WeightedCurveFamily translates(const Curve& base,
                               std::vector<ExactKey> shifts) {
  std::vector<std::pair<ExactKey, mpz_class>> w;
  for (auto& s : shifts) w.emplace_back(std::move(s), 1);
  return WeightedCurveFamily::of(base, std::move(w));
}
}  // namespace

TEST_CASE("incidence counting basics") {
  auto pset = WeightedPointSet::of({{key(0, 0), 1}, {key(1, 1), 1}});
  auto fam = translates(parabola(), {key(0, 0)});
  CHECK(count_incidences(pset, fam).exact_count == 2);
  auto off = WeightedPointSet::of({{key(0, 5), 1}});
  CHECK(count_incidences(off, fam).exact_count == 0);
}

TEST_CASE("incidences reproduce the energy correspondence") {
  // P = 2A unweighted, L = translates by lifted A with unit weights:
  // count = sum over 2A of r_2 = |A|^2 = 9
  const auto a = gs({1, 2, 3});
  auto pts = lift(a, parabola());
  auto p2 = build_profile(pts, 2);
  std::vector<std::pair<ExactKey, mpz_class>> pw;
  for (const auto& [k, r] : p2.entries()) pw.emplace_back(k, 1);
  auto pset = WeightedPointSet::of(std::move(pw));
  auto fam = translates(parabola(), pts);
  CHECK(count_incidences(pset, fam).exact_count == 9);
}

TEST_CASE("weighted energy correspondence at s = 3") {
  // P = supp(profile_3) weighted r_3, L = translates by 2A weighted r_2,
  // base graph restricted to the hull of A so that every incidence abscissa
  // is an element of A: exact_count = E_{3,2}(A).
  const auto a = gs({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const Curve base = Curve::poly(Polynomial::from_ints({0, 0, 1}),
                                 Interval::closed(Rational(1), Rational(10)));
  auto pts = lift(a, base);
  auto p3 = build_profile(pts, 3);
  auto p2 = build_profile(pts, 2);
  std::vector<std::pair<ExactKey, mpz_class>> pw;
  for (const auto& [k, r] : p3.entries()) pw.emplace_back(k, r);
  std::vector<std::pair<ExactKey, mpz_class>> lw;
  for (const auto& [k, r] : p2.entries()) lw.emplace_back(k, r);
  auto rep = count_incidences(WeightedPointSet::of(std::move(pw)),
                              WeightedCurveFamily::of(base, std::move(lw)));
  CHECK(rep.exact_count == moment(p3, 2));
  CHECK(rep.ratio > 0.0L);
}

TEST_CASE("rich points") {
  const auto a = gs({1, 2, 3});
  auto pts = lift(a, parabola());
  auto p2 = build_profile(pts, 2);
  auto fam = translates(parabola(), pts);
  PlaneSet p = support(p2);
  // t = 1: every key of 2A lies on at least one translate
  CHECK(rich_points(p, fam, 1).size() == p.size());
  // t above the total curve mass: empty
  CHECK(rich_points(p, fam, mpz_class(4)).size() == 0);
  // t = 2 picks exactly the multiplicity-2 keys
  auto rich = rich_points(p, fam, 2);
  REQUIRE(rich.size() == 3);
  CHECK(rich.keys[0] == key(3, 5));
  CHECK(rich.keys[1] == key(4, 10));
  CHECK(rich.keys[2] == key(5, 13));
}

TEST_CASE("validity of parabola translates") {
  auto fam = translates(parabola(),
                        {key(0, 0), key(1, 5), key(2, -1), key(-3, 2)});
  auto stats = validity_check(fam);
  CHECK(stats.max_pairwise_intersections == 1);
  CHECK(stats.max_curves_through_pair == 1);
}

TEST_CASE("validity of cubic translates") {
  auto fam = translates(
      cubic(), {key(0, 0), key(1, 5), key(3, -7), key(-2, 4), key(5, 1)});
  auto stats = validity_check(fam);
  CHECK(stats.max_pairwise_intersections <= 2);
  CHECK(stats.max_pairwise_intersections >= 1);
}

TEST_CASE("cubic translates sharing two rational points") {
  // translates of x^3 by (0,0) and (1,1) meet at (0,0) and (1,1); the
  // difference 3x(x-1) has both roots rational, and no further translate
  // passes through both points
  auto fam = translates(cubic(), {key(0, 0), key(1, 1), key(2, 8), key(5, 1)});
  auto stats = validity_check(fam);
  CHECK(stats.max_pairwise_intersections == 2);
  CHECK(stats.max_curves_through_pair == 2);
}

TEST_CASE("cubic translates sharing two irrational points") {
  // shifts (0,0) and (1, 3/4): the difference 3x^2 - 3x + 1/4 has two
  // irrational roots, so the shared pair is certified through the gcd path
  std::vector<std::pair<ExactKey, mpz_class>> shifts;
  shifts.emplace_back(key(0, 0), 1);
  shifts.emplace_back(ExactKey{Rational(1), Rational(3, 4)}, 1);
  shifts.emplace_back(key(3, 2), 1);
  auto stats = validity_check(WeightedCurveFamily::of(cubic(), shifts));
  CHECK(stats.max_pairwise_intersections == 2);
  CHECK(stats.max_curves_through_pair == 2);
}

TEST_CASE("validity corner cases") {
  auto single = translates(parabola(), {key(0, 0)});
  auto stats = validity_check(single);
  CHECK(stats.max_pairwise_intersections == 0);
  CHECK(stats.max_curves_through_pair == 0);
  CHECK_FALSE(stats.note.empty());
  // purely vertical shifts never intersect
  auto vertical = translates(parabola(), {key(0, 0), key(0, 1), key(0, 2)});
  auto vs = validity_check(vertical);
  CHECK(vs.max_pairwise_intersections == 0);
}

TEST_CASE("random parabola families stay (1,1)-valid") {
  XorShift64Star rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ExactKey> shifts;
    while (shifts.size() < 6) {
      ExactKey k{Rational(rng.next_range(-40, 40), 1 + rng.next_range(0, 3)),
                 Rational(rng.next_range(-40, 40), 1 + rng.next_range(0, 2))};
      bool dup = false, same_x = false;
      for (const auto& s : shifts) {
        if (s == k) dup = true;
        if (s.x == k.x) same_x = true;  // keep abscissas distinct
      }
      if (!dup && !same_x) shifts.push_back(k);
    }
    auto stats = validity_check(translates(parabola(), std::move(shifts)));
    CHECK(stats.max_pairwise_intersections == 1);
    CHECK(stats.max_curves_through_pair == 1);
  }
}

TEST_CASE("dyadic decomposition") {
  const auto a = gs({1, 2, 3, 4});
  auto pts = lift(a, parabola());
  auto p2 = build_profile(pts, 2);
  std::vector<std::pair<ExactKey, mpz_class>> pw;
  for (const auto& [k, r] : p2.entries()) pw.emplace_back(k, r);
  auto pset = WeightedPointSet::of(std::move(pw));
  auto fam = translates(parabola(), pts);

  auto cells = dyadic_decompose_incidences(pset, fam);
  mpz_class total(0);
  for (const auto& c : cells) total += c.weighted_count;
  CHECK(total == count_incidences(pset, fam).exact_count);

  // all weights 1: single class (0,0) with the unweighted count
  std::vector<std::pair<ExactKey, mpz_class>> unit;
  for (const auto& [k, r] : p2.entries()) unit.emplace_back(k, 1);
  auto ucells =
      dyadic_decompose_incidences(WeightedPointSet::of(std::move(unit)), fam);
  REQUIRE(ucells.size() == 1);
  CHECK(ucells[0].point_class == 0);
  CHECK(ucells[0].curve_class == 0);

  // weights 1,2,3 land in classes 0 and 1
  auto mixed = WeightedPointSet::of(
      {{key(0, 0), 1}, {key(1, 1), 2}, {key(2, 4), 3}});
  auto mcells = dyadic_decompose_incidences(
      mixed, translates(parabola(), {key(0, 0)}));
  for (const auto& c : mcells) CHECK(c.point_class <= 1);
}

TEST_CASE("dyadic decomposition cross-check on random instances") {
  XorShift64Star rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<ExactKey, mpz_class>> pw;
    std::vector<ExactKey> locs;
    while (locs.size() < 8) {
      ExactKey k{Rational(rng.next_range(-10, 10)),
                 Rational(rng.next_range(-10, 10))};
      bool dup = false;
      for (const auto& s : locs) dup = dup || s == k;
      if (!dup) locs.push_back(k);
    }
    for (const auto& k : locs)
      pw.emplace_back(k, mpz_class(1 + rng.next_range(0, 8)));
    std::vector<std::pair<ExactKey, mpz_class>> lw;
    std::vector<ExactKey> shifts;
    while (shifts.size() < 5) {
      ExactKey k{Rational(rng.next_range(-6, 6)),
                 Rational(rng.next_range(-6, 6))};
      bool dup = false;
      for (const auto& s : shifts) dup = dup || s == k;
      if (!dup) shifts.push_back(k);
    }
    for (const auto& k : shifts)
      lw.emplace_back(k, mpz_class(1 + rng.next_range(0, 5)));
    auto pset = WeightedPointSet::of(std::move(pw));
    auto fam = WeightedCurveFamily::of(parabola(), std::move(lw));
    auto cells = dyadic_decompose_incidences(pset, fam);
    mpz_class total(0);
    for (const auto& c : cells) total += c.weighted_count;
    CHECK(total == count_incidences(pset, fam).exact_count);
  }
}

TEST_CASE("bound terms are monotone under adding a point") {
  auto base = WeightedPointSet::of({{key(0, 0), 1}, {key(1, 1), 1}});
  auto more = WeightedPointSet::of(
      {{key(0, 0), 1}, {key(1, 1), 1}, {key(2, 4), 1}});
  auto fam = translates(parabola(), {key(0, 0), key(1, 1)});
  auto r1 = count_incidences(base, fam);
  auto r2 = count_incidences(more, fam);
  CHECK(r2.term_geometric >= r1.term_geometric);
  CHECK(r2.term_linf_p1 >= r1.term_linf_p1);
  CHECK(r2.term_pinf_l1 >= r1.term_pinf_l1);
}

TEST_CASE("engine and oracle agree on incidences") {
  XorShift64Star rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<ExactKey, mpz_class>> pw;
    std::vector<std::pair<oracle::detail::Pt, mpz_class>> opw;
    for (int i = 0; i < 12; ++i) {
      ExactKey k{Rational(rng.next_range(-8, 8), 1 + rng.next_range(0, 2)),
                 Rational(rng.next_range(-8, 8))};
      bool dup = false;
      for (const auto& [s, w] : pw) dup = dup || s == k;
      if (dup) continue;
      mpz_class w(1 + rng.next_range(0, 6));
      pw.emplace_back(k, w);
      opw.emplace_back(std::make_pair(k.x, k.y), w);
    }
    std::vector<std::pair<ExactKey, mpz_class>> lw;
    std::vector<std::pair<oracle::detail::Pt, mpz_class>> olw;
    for (int i = 0; i < 6; ++i) {
      ExactKey k{Rational(rng.next_range(-5, 5)),
                 Rational(rng.next_range(-5, 5))};
      bool dup = false;
      for (const auto& [s, w] : lw) dup = dup || s == k;
      if (dup) continue;
      mpz_class w(1 + rng.next_range(0, 4));
      lw.emplace_back(k, w);
      olw.emplace_back(std::make_pair(k.x, k.y), w);
    }
    auto pset = WeightedPointSet::of(pw);
    auto fam = WeightedCurveFamily::of(parabola(), lw);
    CHECK(count_incidences(pset, fam).exact_count ==
          oracle::brute_incidences(opw, parabola(), olw));
  }
}
