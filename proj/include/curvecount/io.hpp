#pragma once

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvecount/curve.hpp"
#include "curvecount/harness.hpp"
#include "curvecount/incidence.hpp"
#include "curvecount/profile.hpp"
#include "curvecount/sumsets.hpp"

namespace curvecount::io {

using json = nlohmann::json;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_long_double(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15Lg", v);
  return buf;
}

inline Rational parse_rational(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("expected a rational ('p/q' string or integer)");
}

// ----- set files: JSON array of "p/q" strings or integers ------------------

inline GroundSet parse_set(const json& j) {
  if (!j.is_array()) throw InputError("set file must be a JSON array");
  std::vector<Rational> elems;
  elems.reserve(j.size());
  for (const auto& v : j) elems.push_back(parse_rational(v));
  return GroundSet::of(std::move(elems));
}

inline json set_to_json(const GroundSet& a) {
  json j = json::array();
  for (const auto& x : a) j.push_back(x.str());
  return j;
}

// ----- curve files ----------------------------------------------------------

inline Interval parse_interval(const json& j) {
  std::optional<Rational> lo, hi;
  if (j.contains("lo") && !j["lo"].is_null()) lo = parse_rational(j["lo"]);
  if (j.contains("hi") && !j["hi"].is_null()) hi = parse_rational(j["hi"]);
  const bool lo_open = j.value("lo_open", true);
  const bool hi_open = j.value("hi_open", true);
  return Interval(lo, lo_open, hi, hi_open);
}

inline json interval_to_json(const Interval& iv) {
  json j;
  j["lo"] = iv.lower() ? json(iv.lower()->str()) : json(nullptr);
  j["hi"] = iv.upper() ? json(iv.upper()->str()) : json(nullptr);
  j["lo_open"] = iv.lower_open();
  j["hi_open"] = iv.upper_open();
  return j;
}

inline Polynomial parse_coeffs(const json& j) {
  if (!j.is_array()) throw InputError("polynomial coefficients must be an array");
  std::vector<Rational> c;
  c.reserve(j.size());
  for (const auto& v : j) c.push_back(parse_rational(v));
  return Polynomial(std::move(c));
}

inline Curve parse_curve(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("curve file must be an object with a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  std::optional<Interval> domain;
  if (j.contains("domain")) domain = parse_interval(j["domain"]);
  if (kind == "poly") {
    if (!j.contains("coeffs")) throw InputError("poly curve needs 'coeffs'");
    return Curve::poly(parse_coeffs(j["coeffs"]),
                       domain ? *domain : Interval::all());
  }
  if (kind == "pair") {
    if (!j.contains("f") || !j.contains("g"))
      throw InputError("pair curve needs 'f' and 'g'");
    return Curve::pair(parse_coeffs(j["f"]), parse_coeffs(j["g"]),
                       domain ? *domain : Interval::all());
  }
  if (kind == "analytic") {
    const std::string tag = j.value("tag", "");
    double lambda = 0.0;
    if (j.contains("lambda")) {
      if (j["lambda"].is_string())
        lambda = Rational::parse(j["lambda"].get<std::string>()).to_double();
      else
        lambda = j["lambda"].get<double>();
    }
    if (tag == "log") return Curve::analytic(AnalyticTag::Log, domain);
    if (tag == "power")
      return Curve::analytic(AnalyticTag::Power, domain, lambda);
    if (tag == "reciprocal")
      return Curve::analytic(AnalyticTag::Reciprocal, domain);
    throw InputError("unknown analytic tag: '" + tag + "'");
  }
  throw InputError("unknown curve kind: '" + kind + "'");
}

inline json curve_to_json(const Curve& c) {
  json j;
  switch (c.kind()) {
    case Curve::Kind::Poly: {
      j["kind"] = "poly";
      json coeffs = json::array();
      for (const auto& v : c.psi().coeffs()) coeffs.push_back(v.str());
      j["coeffs"] = coeffs;
      break;
    }
    case Curve::Kind::Pair: {
      j["kind"] = "pair";
      json f = json::array(), g = json::array();
      for (const auto& v : c.f().coeffs()) f.push_back(v.str());
      for (const auto& v : c.g().coeffs()) g.push_back(v.str());
      j["f"] = f;
      j["g"] = g;
      break;
    }
    case Curve::Kind::Analytic: {
      j["kind"] = "analytic";
      j["tag"] = analytic_tag_name(c.tag());
      if (c.tag() == AnalyticTag::Power) j["lambda"] = format_double(c.lambda());
      break;
    }
  }
  j["domain"] = interval_to_json(c.domain());
  return j;
}

// ----- plane-set files: JSON lines {"n1":..,"n2":..}, sorted ----------------

inline PlaneSet parse_plane_set_lines(std::istream& in) {
  std::vector<ExactKey> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    keys.push_back(
        ExactKey{parse_rational(j.at("n1")), parse_rational(j.at("n2"))});
  }
  if (keys.empty()) throw InputError("empty plane-set file");
  return PlaneSet::of(std::move(keys));
}

inline void write_plane_set_lines(std::ostream& out, const PlaneSet& p) {
  for (const auto& k : p.keys) {
    json j;
    j["n1"] = k.x.str();
    j["n2"] = k.y.str();
    out << j.dump() << '\n';
  }
}

// ----- profile dumps: JSON lines {"n1":..,"n2":..,"r":..}, sorted -----------

inline void write_profile_lines(std::ostream& out,
                                const SumProfile<Rational>& p) {
  for (const auto* e : p.sorted_entries()) {
    json j;
    j["n1"] = e->first.x.str();
    j["n2"] = e->first.y.str();
    j["r"] = e->second.get_str();
    out << j.dump() << '\n';
  }
}

// ----- incidence instance files ---------------------------------------------

struct Instance {
  WeightedPointSet points;
  WeightedCurveFamily family;
};

inline mpz_class parse_weight(const json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer())
    return mpz_class(static_cast<long>(j.get<long long>()));
  throw InputError("expected an integer weight");
}

inline Instance parse_instance(const json& j) {
  if (!j.is_object()) throw InputError("instance file must be a JSON object");
  if (!j.contains("points") || !j.contains("curve") || !j.contains("shifts"))
    throw InputError("instance file needs 'points', 'curve' and 'shifts'");
  std::vector<std::pair<ExactKey, mpz_class>> pts;
  for (const auto& p : j["points"])
    pts.emplace_back(
        ExactKey{parse_rational(p.at("n1")), parse_rational(p.at("n2"))},
        p.contains("w") ? parse_weight(p["w"]) : mpz_class(1));
  Curve base = parse_curve(j["curve"]);
  std::vector<std::pair<ExactKey, mpz_class>> shifts;
  for (const auto& s : j["shifts"])
    shifts.emplace_back(
        ExactKey{parse_rational(s.at("n1")), parse_rational(s.at("n2"))},
        s.contains("w") ? parse_weight(s["w"]) : mpz_class(1));
  return Instance{WeightedPointSet::of(std::move(pts)),
                  WeightedCurveFamily::of(std::move(base), std::move(shifts))};
}

// ----- restriction coefficient files ----------------------------------------

inline std::vector<std::pair<Rational, std::complex<double>>> parse_coefficients(
    const json& j) {
  if (!j.is_array()) throw InputError("coefficient file must be a JSON array");
  std::vector<std::pair<Rational, std::complex<double>>> out;
  for (const auto& e : j) {
    const Rational x = parse_rational(e.at("x"));
    auto num = [&](const char* field) -> double {
      if (!e.contains(field)) return 0.0;
      if (e[field].is_string())
        return Rational::parse(e[field].get<std::string>()).to_double();
      return e[field].get<double>();
    };
    out.emplace_back(x, std::complex<double>(num("re"), num("im")));
  }
  if (out.empty()) throw InputError("empty coefficient file");
  return out;
}

// ----- reports ----------------------------------------------------------------

inline json comparison_to_json(const ComparisonReport& rep) {
  json j;
  j["bound_id"] = rep.bound_id;
  j["family"] = rep.family;
  json pts = json::array();
  for (const auto& p : rep.points) {
    json e;
    e["N"] = std::to_string(p.n);
    e["value"] = p.value.get_str();
    pts.push_back(e);
  }
  j["points"] = pts;
  j["fitted_slope"] = format_double(rep.fitted_slope);
  j["r2"] = format_double(rep.r2);
  j["bound_exponent"] = rep.bound_exponent.str();
  j["log_power"] = rep.log_power.str();
  json ratios = json::array();
  for (double r : rep.ratio_series) ratios.push_back(format_double(r));
  j["ratio_series"] = ratios;
  json adj = json::array();
  for (double r : rep.ratio_log_adjusted) adj.push_back(format_double(r));
  j["ratio_log_adjusted"] = adj;
  j["implied_constant"] = format_double(rep.implied_constant);
  j["ratio_monotone"] = rep.ratio_monotone;
  j["verdict"] = rep.verdict;
  j["note"] = rep.note;
  return j;
}

inline std::string comparison_to_csv(const ComparisonReport& rep) {
  std::ostringstream out;
  out << "N,value,ratio,ratio_log_adjusted\n";
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    out << rep.points[i].n << ',' << rep.points[i].value.get_str() << ','
        << format_double(rep.ratio_series[i]) << ','
        << format_double(rep.ratio_log_adjusted[i]) << '\n';
  }
  return out.str();
}

// ----- file helpers -----------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline GroundSet read_set(const std::string& path) {
  return parse_set(read_json_file(path));
}

inline Curve read_curve(const std::string& path) {
  return parse_curve(read_json_file(path));
}

inline Instance read_instance(const std::string& path) {
  return parse_instance(read_json_file(path));
}

inline PlaneSet read_plane_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return parse_plane_set_lines(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON lines in " + path + ": " + e.what());
  }
}

}  // namespace curvecount::io
