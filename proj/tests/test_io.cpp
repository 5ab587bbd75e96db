#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "curvecount/io.hpp"

using namespace curvecount;
using io::json;

TEST_CASE("set parsing") {
  auto a = io::parse_set(json::parse(R"(["1/2", 3, "-7/3", "1/2"])"));
  REQUIRE(a.size() == 3);  // duplicate collapsed
  CHECK(a[0] == Rational(-7, 3));
  CHECK(a[2] == Rational(3));
  CHECK_THROWS_AS(io::parse_set(json::parse("{}")), InputError);
  CHECK_THROWS_AS(io::parse_set(json::parse("[]")), InputError);
  CHECK_THROWS_AS(io::parse_set(json::parse(R"(["x"])")), InputError);
}

TEST_CASE("curve parsing") {
  auto c = io::parse_curve(json::parse(R"({"kind":"poly","coeffs":["0","0","1"]})"));
  CHECK(c.kind() == Curve::Kind::Poly);
  CHECK(c.eval(Rational(3)) == Rational(9));

  auto pair = io::parse_curve(
      json::parse(R"({"kind":"pair","f":["0","0","1"],"g":["0","0","0","1"]})"));
  CHECK(pair.kind() == Curve::Kind::Pair);

  auto lg = io::parse_curve(json::parse(R"({"kind":"analytic","tag":"log"})"));
  CHECK(lg.kind() == Curve::Kind::Analytic);

  auto pw = io::parse_curve(
      json::parse(R"({"kind":"analytic","tag":"power","lambda":"3/2"})"));
  CHECK(pw.lambda() == Catch::Approx(1.5));

  auto dom = io::parse_curve(json::parse(
      R"({"kind":"poly","coeffs":["0","0","1"],"domain":{"lo":"0","hi":null}})"));
  CHECK_THROWS_AS(dom.eval(Rational(-1)), DomainError);

  CHECK_THROWS_AS(io::parse_curve(json::parse(R"({"kind":"wat"})")), InputError);
  CHECK_THROWS_AS(io::parse_curve(json::parse(R"({"kind":"poly","coeffs":["1","1"]})")),
                  InputError);
  // round trip
  auto j = io::curve_to_json(c);
  auto c2 = io::parse_curve(j);
  CHECK(c2.psi() == c.psi());
}

TEST_CASE("plane set lines round trip") {
  auto pts = lift(io::parse_set(json::parse("[1,2,3]")),
                  io::parse_curve(json::parse(R"({"kind":"poly","coeffs":[0,0,1]})")));
  auto p2 = build_profile(pts, 2);
  PlaneSet s = support(p2);
  std::ostringstream out;
  io::write_plane_set_lines(out, s);
  std::istringstream in(out.str());
  PlaneSet back = io::parse_plane_set_lines(in);
  CHECK(back.keys == s.keys);
  // lines arrive sorted
  std::istringstream lines(out.str());
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first < second);  // "{"n1":"2"... < {"n1":"3"... lexicographic here
}

TEST_CASE("profile dump is sorted and exact") {
  auto pts = lift(io::parse_set(json::parse("[1,2]")),
                  io::parse_curve(json::parse(R"({"kind":"poly","coeffs":[0,0,1]})")));
  auto p3 = build_profile(pts, 3);
  std::ostringstream out;
  io::write_profile_lines(out, p3);
  std::istringstream in(out.str());
  std::string line;
  std::vector<json> rows;
  while (std::getline(in, line)) rows.push_back(json::parse(line));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["n1"] == "3");
  CHECK(rows[0]["r"] == "1");
  CHECK(rows[1]["n1"] == "4");
  CHECK(rows[1]["r"] == "3");
}

TEST_CASE("instance parsing") {
  auto inst = io::parse_instance(json::parse(R"({
    "points": [{"n1":"0","n2":"0","w":1},{"n1":"1","n2":"1"}],
    "curve": {"kind":"poly","coeffs":["0","0","1"]},
    "shifts": [{"n1":"0","n2":"0","w":2}]
  })"));
  CHECK(inst.points.points.size() == 2);
  CHECK(inst.family.translates.size() == 1);
  CHECK(inst.family.translates[0].second == 2);
  CHECK_THROWS_AS(io::parse_instance(json::parse(R"({"points":[]})")),
                  InputError);
}

TEST_CASE("coefficient parsing") {
  auto coeffs = io::parse_coefficients(json::parse(
      R"([{"x":"1","re":1},{"x":"2","re":-1,"im":"1/2"}])"));
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[1].second == std::complex<double>(-1.0, 0.5));
}

TEST_CASE("comparison report serialization") {
  std::vector<SeriesPoint> s{{16, mpz_class(496), "interval"},
                             {32, mpz_class(2016), "interval"},
                             {64, mpz_class(8128), "interval"}};
  auto rep = compare(s, find_bound("thm-main"), 3);
  auto j = io::comparison_to_json(rep);
  CHECK(j["bound_id"] == "thm-main");
  CHECK(j["bound_exponent"] == "7/2");
  CHECK(j["points"].size() == 3);
  CHECK(j["points"][0]["value"] == "496");
  auto csv = io::comparison_to_csv(rep);
  CHECK(csv.rfind("N,value,ratio", 0) == 0);
}

TEST_CASE("missing file is an input error") {
  CHECK_THROWS_AS(io::read_set("/no/such/file.json"), InputError);
}
