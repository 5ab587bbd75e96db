#include <catch2/catch_amalgamated.hpp>

#include <unordered_set>

#include "curvecount/interval.hpp"
#include "curvecount/quantized.hpp"
#include "curvecount/rational.hpp"

using namespace curvecount;

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-4/8").str() == "-1/2");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("0/5") == Rational(0));
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("abc"), InputError);
  CHECK_THROWS_AS(Rational::parse(""), InputError);
}

TEST_CASE("rational arithmetic") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), InputError);
  CHECK(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(Rational::pow(Rational(5), 0) == Rational(1));
}

TEST_CASE("rational order and hash agree with value") {
  const Rational a = Rational::parse("2/4");
  const Rational b(1, 2);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(Rational(-3, 2) < Rational(1, 7));
  CHECK(Rational(1, 3) < Rational(1, 2));
  // hash distributes reasonably: distinct small rationals get distinct slots
  std::unordered_set<std::size_t> seen;
  for (long n = -20; n <= 20; ++n)
    for (long d = 1; d <= 7; ++d) seen.insert(Rational(n, d).hash());
  CHECK(seen.size() > 150);
}

TEST_CASE("rational arithmetic agrees with a plain GMP reference") {
  // Exercise the inline fast path, the overflow fallback, and the
  // boundary between them against mpq_class computed directly.
  std::vector<Rational> pool;
  std::vector<mpq_class> ref;
  auto push = [&](const std::string& s) {
    pool.push_back(Rational::parse(s));
    mpq_class q(s);
    q.canonicalize();
    ref.push_back(q);
  };
  push("0");
  push("1");
  push("-1");
  push("7/3");
  push("-22/7");
  push("9223372036854775807");            // LONG_MAX
  push("-9223372036854775808");           // LONG_MIN
  push("9223372036854775806/9223372036854775807");
  push("170141183460469231731687303715884105727");  // > 64 bits
  push("-1/170141183460469231731687303715884105727");
  push("4611686018427387904/3");          // 2^62 / 3
  push("-4611686018427387903/4611686018427387904");
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const mpq_class sum = ref[i] + ref[j];
      const mpq_class dif = ref[i] - ref[j];
      const mpq_class prd = ref[i] * ref[j];
      CHECK((pool[i] + pool[j]).str() == sum.get_str());
      CHECK((pool[i] - pool[j]).str() == dif.get_str());
      CHECK((pool[i] * pool[j]).str() == prd.get_str());
      if (sgn(ref[j]) != 0) {
        const mpq_class quo = ref[i] / ref[j];
        CHECK((pool[i] / pool[j]).str() == quo.get_str());
      }
      CHECK((pool[i] < pool[j]) == (ref[i] < ref[j]));
      CHECK((pool[i] == pool[j]) == (ref[i] == ref[j]));
      if (pool[i] == pool[j]) CHECK(pool[i].hash() == pool[j].hash());
    }
    CHECK((-pool[i]).str() == mpq_class(-ref[i]).get_str());
    CHECK(pool[i].abs().str() == mpq_class(::abs(ref[i])).get_str());
    CHECK(pool[i].sign() == sgn(ref[i]));
  }
  // values crossing the inline boundary through arithmetic keep hashing
  // consistent with equal values built directly
  const Rational big = Rational::parse("9223372036854775807");
  const Rational crossed = (big + Rational(1)) - Rational(1);
  CHECK(crossed == big);
  CHECK(crossed.hash() == big.hash());
  const Rational shrunk =
      Rational::parse("170141183460469231731687303715884105728") -
      Rational::parse("170141183460469231731687303715884105727");
  CHECK(shrunk == Rational(1));
  CHECK(shrunk.hash() == Rational(1).hash());
}

TEST_CASE("rational floor ceil") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("quantized equality is grid equality") {
  const double q = 1.0 / (1ull << 20);
  Quantized a(0.5, q), b(0.5 + q / 4, q), c(0.5 + 3 * q, q);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a != c);
  CHECK(a < c);
  Quantized sum = a + c;  // re-snapped onto the grid
  CHECK(sum == Quantized(1.0 + 3 * q, q));
  CHECK_THROWS_AS(Quantized(1.0, q) + Quantized(1.0, q / 2), InvariantError);
  CHECK_THROWS_AS(Quantized(1.0, -1.0), InputError);
}

TEST_CASE("interval membership") {
  const auto iv = Interval::open(Rational(0), Rational(1));
  CHECK(iv.contains(Rational(1, 2)));
  CHECK_FALSE(iv.contains(Rational(0)));
  CHECK_FALSE(iv.contains(Rational(1)));
  const auto half = Interval(Rational(0), false, Rational(1), true);
  CHECK(half.contains(Rational(0)));
  CHECK(Interval::all().contains(Rational(-1000000)));
  CHECK(Interval::greater_than(Rational(0)).contains(Interval::open(Rational(1), Rational(2))));
  CHECK_FALSE(Interval::greater_than(Rational(0)).contains(Interval::all()));
  CHECK_THROWS_AS(Interval::open(Rational(1), Rational(1)), InputError);
}
