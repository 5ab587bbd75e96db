#include <catch2/catch_amalgamated.hpp>

#include "curvecount/curve.hpp"

using namespace curvecount;

namespace {
Curve parabola() { return Curve::poly(Polynomial::from_ints({0, 0, 1})); }
Curve cubic() { return Curve::poly(Polynomial::from_ints({0, 0, 0, 1})); }
Curve cubic_half() {
  // x^3 + x/2
  return Curve::poly(Polynomial(std::vector<Rational>{
      Rational(0), Rational(1, 2), Rational(0), Rational(1)}));
}
GroundSet gs(std::initializer_list<long> v) {
  std::vector<Rational> e;
  for (long x : v) e.emplace_back(x);
  return GroundSet::of(std::move(e));
}
}  // namespace

TEST_CASE("curve evaluation") {
  CHECK(parabola().eval(Rational(3)) == Rational(9));
  CHECK(cubic_half().eval(Rational(2)) == Rational(9));
  const Curve lg = Curve::analytic(AnalyticTag::Log);
  CHECK_THROWS_AS(lg.eval_double(-1.0), DomainError);
  CHECK(lg.eval_double(1.0) == 0.0);
  CHECK(lg.eval_double(4.0) == Catch::Approx(1.3862943611));
  CHECK_THROWS_AS(lg.eval(Rational(2)), UnsupportedCurve);
}

TEST_CASE("curve construction guards") {
  CHECK_THROWS_AS(Curve::poly(Polynomial::from_ints({0, 1})), InputError);
  CHECK_THROWS_AS(Curve::pair(Polynomial::from_ints({0, 0, 1}),
                              Polynomial::from_ints({0, 1})),
                  InputError);
  CHECK_THROWS_AS(Curve::analytic(AnalyticTag::Power, {}, 0.5), InputError);
  CHECK_THROWS_AS(
      Curve::analytic(AnalyticTag::Log,
                      Interval::open(Rational(-1), Rational(1))),
      InputError);
}

TEST_CASE("critical sets") {
  {
    RootSet rs = parabola().critical_roots();  // psi' psi'' = 4x
    REQUIRE(rs.size() == 1);
    CHECK(rs.roots()[0].value() == Rational(0));
  }
  {
    RootSet rs = cubic().critical_roots();  // 18x^3
    REQUIRE(rs.size() == 1);
    CHECK(rs.roots()[0].value() == Rational(0));
  }
  {
    const Curve pear = Curve::pair(Polynomial::from_ints({0, 0, 1}),
                                   Polynomial::from_ints({0, 0, 0, 1}));
    RootSet rs = pear.critical_roots();
    REQUIRE(rs.size() == 1);
    CHECK(rs.roots()[0].value() == Rational(0));
  }
  CHECK_THROWS_AS(Curve::analytic(AnalyticTag::Log).critical_roots(),
                  UnsupportedCurve);
  // critical roots really are zeroes of the product polynomial
  const auto prod = cubic_half().critical_product();
  RootSet rs(prod);
  for (const auto& r : rs.roots())
    if (r.is_exact()) CHECK(prod.eval(r.value()).is_zero());
}

TEST_CASE("check_validity") {
  const auto pos = Interval::greater_than(Rational(0));
  {
    auto cert = parabola().check_validity(pos);
    CHECK(cert.pass);
    CHECK(cert.method == "convexity");
    CHECK(cert.solution_cap == 2);
  }
  {
    auto cert = cubic().check_validity(Interval::open(Rational(-1), Rational(1)));
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.witness.has_value());
    CHECK(cert.witness->is_exact());
    CHECK(cert.witness->value() == Rational(0));
  }
  {
    auto cert = Curve::analytic(AnalyticTag::Log).check_validity(pos);
    CHECK(cert.pass);
    CHECK(cert.method == "closed-form");
  }
  {
    auto cert = Curve::analytic(AnalyticTag::Log)
                    .check_validity(Interval::open(Rational(-2), Rational(2)));
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.witness.has_value());
  }
  // parabola is fine on all of R away from 0:
  CHECK(parabola().check_validity(Interval::less_than(Rational(0))).pass);
  CHECK_FALSE(parabola().check_validity(Interval::all()).pass);
}

TEST_CASE("decompose splits along the critical set") {
  {
    auto d = parabola().decompose(gs({-2, -1, 1, 2}));
    REQUIRE(d.pieces.size() == 3);  // two intervals + critical piece
    CHECK(d.pieces[0].elements == std::vector<Rational>{Rational(-2), Rational(-1)});
    CHECK(d.pieces[1].elements == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(d.pieces[2].elements.empty());
    CHECK(d.pieces[2].label == "E");
    REQUIRE(d.pieces[0].interval.has_value());
    CHECK_FALSE(d.pieces[0].interval->lower().has_value());
    CHECK(*d.pieces[0].interval->upper() == Rational(0));
    CHECK(*d.pieces[1].interval->lower() == Rational(0));
  }
  {
    auto d = parabola().decompose(gs({1, 2, 3}));
    REQUIRE(d.pieces.size() == 3);
    CHECK(d.pieces[0].elements.empty());
    CHECK(d.pieces[1].elements.size() == 3);
  }
  {
    auto d = cubic().decompose(gs({0}));
    REQUIRE(d.pieces.size() == 3);
    CHECK(d.pieces[0].elements.empty());
    CHECK(d.pieces[1].elements.empty());
    CHECK(d.pieces[2].elements == std::vector<Rational>{Rational(0)});
  }
}

TEST_CASE("decompose pieces partition and sit strictly inside intervals") {
  // curve with irrational critical points: psi = x^4 - 2x^2 has
  // psi' psi'' = 4x(x^2-1) * (12x^2 - 4), critical at 0, +-1, +-1/sqrt(3)
  const Curve c = Curve::poly(Polynomial::from_ints({0, 0, -2, 0, 1}));
  const auto a = gs({-3, -1, 0, 1, 2, 5});
  auto d = c.decompose(a);
  std::size_t total = 0;
  for (const auto& piece : d.pieces) {
    total += piece.elements.size();
    if (!piece.interval) continue;
    for (const auto& e : piece.elements) {
      CHECK(piece.interval->contains(e));
      if (piece.interval->lower()) CHECK(*piece.interval->lower() < e);
      if (piece.interval->upper()) CHECK(e < *piece.interval->upper());
    }
  }
  CHECK(total == a.size());

  // every emitted interval passes check_validity
  for (const auto& piece : d.pieces) {
    if (!piece.interval) continue;
    CHECK(c.check_validity(*piece.interval).pass);
  }
}

TEST_CASE("single-element set decomposes totally") {
  auto d = parabola().decompose(gs({7}));
  std::size_t total = 0;
  for (const auto& p : d.pieces) total += p.elements.size();
  CHECK(total == 1);
}

TEST_CASE("pair curve decomposition uses the pair nondegeneracy product") {
  const Curve pear = Curve::pair(Polynomial::from_ints({0, 0, 1}),
                                 Polynomial::from_ints({0, 0, 0, 1}));
  auto d = pear.decompose(gs({-2, -1, 1, 2}));
  REQUIRE(d.critical.size() == 1);
  CHECK(d.critical[0].value() == Rational(0));
  CHECK(d.pieces[0].elements.size() == 2);
  CHECK(d.pieces[1].elements.size() == 2);
  for (const auto& piece : d.pieces) {
    if (!piece.interval) continue;
    CHECK(pear.check_validity(*piece.interval).pass);
  }
}

TEST_CASE("pair curve with a richer critical set") {
  // f = x^2 + x, g = x^3: the product g g' f f' (g''f' - f''g') vanishes at
  // 0 (from g, g'), -1 (from f), -1/2 (from f') and the wronskian roots
  const Curve c = Curve::pair(Polynomial::from_ints({0, 1, 1}),
                              Polynomial::from_ints({0, 0, 0, 1}));
  RootSet roots = c.critical_roots();
  CHECK(roots.size() >= 3);
  bool has_zero = false, has_minus_one = false, has_minus_half = false;
  for (const auto& r : roots.roots()) {
    if (r.is_exact() && r.value() == Rational(0)) has_zero = true;
    if (r.is_exact() && r.value() == Rational(-1)) has_minus_one = true;
    if (r.is_exact() && r.value() == Rational(-1, 2)) has_minus_half = true;
  }
  CHECK(has_zero);
  CHECK(has_minus_one);
  CHECK(has_minus_half);
  auto d = c.decompose(gs({-3, -1, 1, 2, 7}));
  std::size_t total = 0;
  for (const auto& piece : d.pieces) {
    total += piece.elements.size();
    if (piece.interval) CHECK(c.check_validity(*piece.interval).pass);
  }
  CHECK(total == 5);
  // -1 is critical (root of f), so it lands in the critical piece
  CHECK(d.pieces.back().elements == std::vector<Rational>{Rational(-1)});
}

TEST_CASE("exact polynomial evaluation round-trips integer horner") {
  // Clearing denominators reproduces integer evaluation: for p/q and
  // poly sum c_i x^i with integer c_i, q^d * psi(p/q) = sum c_i p^i q^{d-i}.
  const auto psi = Polynomial::from_ints({3, -1, 0, 2});  // 2x^3 - x + 3
  const Rational x(7, 5);
  const Rational lhs = psi.eval(x) * Rational::pow(Rational(5), 3);
  mpz_class rhs = 0;
  const long c[4] = {3, -1, 0, 2};
  for (int i = 0; i <= 3; ++i) {
    rhs += mpz_class(c[i]) * ipow(mpz_class(7), i) * ipow(mpz_class(5), 3 - i);
  }
  CHECK(lhs == Rational(rhs));
}
