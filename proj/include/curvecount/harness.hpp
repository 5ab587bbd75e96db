#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/curve.hpp"
#include "curvecount/errors.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

// xorshift64* generator (Vigna). Deterministic across platforms; every
// report records the seed it was produced with.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ULL;
  }

  // uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw InvariantError("next_below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // uniform integer in [lo, hi]
  long next_range(long lo, long hi) {
    return lo + static_cast<long>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// ----- dataset generators -----------------------------------------------

inline GroundSet generate_interval(unsigned long long n) {
  if (n < 1) throw InputError("interval family needs n >= 1");
  std::vector<Rational> e;
  e.reserve(n);
  for (unsigned long long i = 1; i <= n; ++i)
    e.emplace_back(static_cast<long>(i));
  return GroundSet::of(std::move(e));
}

inline GroundSet generate_ap(const Rational& a, const Rational& d,
                             unsigned long long n) {
  if (n < 1) throw InputError("ap family needs n >= 1");
  if (d.is_zero()) throw InputError("ap family needs nonzero step");
  std::vector<Rational> e;
  e.reserve(n);
  Rational x = a;
  for (unsigned long long i = 0; i < n; ++i) {
    e.push_back(x);
    x += d;
  }
  return GroundSet::of(std::move(e));
}

inline GroundSet generate_geometric(unsigned long long base,
                                    unsigned long long n) {
  if (n < 1) throw InputError("geometric family needs n >= 1");
  if (base < 2) throw InputError("geometric family needs base >= 2");
  std::vector<Rational> e;
  e.reserve(n);
  mpz_class v(1);
  for (unsigned long long i = 0; i < n; ++i) {
    e.emplace_back(v);
    v *= static_cast<unsigned long>(base);
  }
  return GroundSet::of(std::move(e));
}

inline GroundSet generate_squares(unsigned long long n) {
  if (n < 1) throw InputError("squares family needs n >= 1");
  std::vector<Rational> e;
  e.reserve(n);
  for (unsigned long long i = 1; i <= n; ++i)
    e.emplace_back(static_cast<long>(i * i));
  return GroundSet::of(std::move(e));
}

// n distinct integers drawn uniformly from [1, range].
inline GroundSet generate_random(unsigned long long range,
                                 unsigned long long n, std::uint64_t seed) {
  if (n < 1) throw InputError("random family needs n >= 1");
  if (range < n) throw InputError("random family needs range >= n");
  XorShift64Star rng(seed);
  std::vector<Rational> e;
  std::vector<long> drawn;
  while (drawn.size() < n) {
    const long v = 1 + static_cast<long>(rng.next_below(range));
    if (std::find(drawn.begin(), drawn.end(), v) == drawn.end())
      drawn.push_back(v);
  }
  for (long v : drawn) e.emplace_back(v);
  return GroundSet::of(std::move(e));
}

// ----- set descriptors ----------------------------------------------------

struct SetDescriptor {
  Rational diameter;
  double density_m;   // smallest m with diameter <= |A|^m, 3 decimals, rounded up
  bool well_spaced;   // every unit half-open interval holds at most 1 element
};

inline SetDescriptor classify(const GroundSet& a) {
  if (a.size() < 2) throw SizeError("classify needs at least 2 elements");
  SetDescriptor d;
  d.diameter = a.diameter();
  // log of the diameter through the integer parts so huge diameters
  // (e.g. geometric sets) never overflow a double
  const double lx = log_mpz(d.diameter.num()) - log_mpz(d.diameter.den());
  const double ln = std::log(static_cast<double>(a.size()));
  d.density_m = std::ceil(lx / ln * 1000.0) / 1000.0;
  d.well_spaced = true;
  // x lies in (j, j+1] with j+1 = ceil(x); collisions are equal ceilings.
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i].ceil() == a[i + 1].ceil()) {
      d.well_spaced = false;
      break;
    }
  return d;
}

// ----- theorem exponent registry ------------------------------------------

enum class BoundQuantity { Energy2, Energy3, SumsetSS, SupR, EnergyFG };
enum class BoundDirection { Upper, Lower };

inline Rational pow2(long e) { return Rational::pow(Rational(2), e); }
inline Rational pow4(long e) { return Rational::pow(Rational(4), e); }

// The refinement constant appearing in the final exponents.
inline const Rational& bound_constant_c() {
  static const Rational c(1, 7246);
  return c;
}

struct BoundSpec {
  std::string id;
  BoundQuantity quantity;
  BoundDirection direction;
  int min_index;
  std::string statement;
  std::function<Rational(int)> exponent;   // full exponent of |A|
  std::function<Rational(int)> log_power;  // exponent of the log factor
};

inline Rational eta_final(int s) {
  if (s < 3) throw OutOfRange("eta defined for s >= 3");
  if (s == 3) return Rational(1, 2);
  return (Rational(1, 4) - bound_constant_c()) * pow2(-s + 4);
}

inline Rational sup_sigma_odd(int p) {
  if (p < 2) throw OutOfRange("odd sup exponent defined for p >= 2");
  if (p == 2) return Rational(2, 3);
  if (p == 3) return Rational(1, 3);
  return (Rational(1, 4) - bound_constant_c()) * pow2(-p + 5) / Rational(3);
}

inline Rational sup_sigma_even(int p) {
  if (p < 3) throw OutOfRange("even sup exponent defined for p >= 3");
  if (p == 3) return Rational(1, 2);
  if (p == 4) return Rational(1, 4) - bound_constant_c() / Rational(3);
  return (Rational(1, 4) - bound_constant_c()) * pow2(-p + 4);
}

inline const std::vector<BoundSpec>& bound_registry() {
  static const std::vector<BoundSpec> registry = [] {
    const Rational c = bound_constant_c();
    std::vector<BoundSpec> v;
    v.push_back({"thm-main", BoundQuantity::Energy2, BoundDirection::Upper, 3,
                 "E_{s,2}(A) << |A|^{2s-3+2^{-s+2}}",
                 [](int s) {
                   if (s < 3) throw OutOfRange("thm-main needs s >= 3");
                   return Rational(2 * s - 3) + pow2(-s + 2);
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"thm-energy", BoundQuantity::Energy2, BoundDirection::Upper, 3,
                 "E_{s,2}(A) << |A|^{2s-3+eta_s}, eta_3 = 1/2, "
                 "eta_s = (1/4 - 1/7246) 2^{-s+4}",
                 [](int s) {
                   if (s < 3) throw OutOfRange("thm-energy needs s >= 3");
                   return Rational(2 * s - 3) + eta_final(s);
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"thm-energy-4", BoundQuantity::Energy2, BoundDirection::Upper,
                 4, "E_{4,2}(A) <= |A|^{5+1/4-c}",
                 [c](int s) {
                   if (s != 4) throw OutOfRange("thm-energy-4 is for s = 4");
                   return Rational(5) + Rational(1, 4) - c;
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"thm-energy-refined", BoundQuantity::Energy2,
                 BoundDirection::Upper, 4,
                 "E_{s,2}(A) << |A|^{2s-3+(1/4-c) 2^{-s+4}}, s >= 4",
                 [c](int s) {
                   if (s < 4) throw OutOfRange("thm-energy-refined needs s >= 4");
                   return Rational(2 * s - 3) + (Rational(1, 4) - c) * pow2(-s + 4);
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"thm-third", BoundQuantity::Energy3, BoundDirection::Upper, 3,
                 "E_{s,3}(A) << |A|^{3s-6+2^{-s+3}} log|A|",
                 [](int s) {
                   if (s < 3) throw OutOfRange("thm-third needs s >= 3");
                   return Rational(3 * s - 6) + pow2(-s + 3);
                 },
                 [](int) { return Rational(1); }});
    v.push_back({"thm-third-refined", BoundQuantity::Energy3,
                 BoundDirection::Upper, 5,
                 "E_{s,3}(A) << |A|^{3s-6+(1/4-c) 2^{-s+5}} log|A|, s >= 5",
                 [c](int s) {
                   if (s < 5) throw OutOfRange("thm-third-refined needs s >= 5");
                   return Rational(3 * s - 6) + (Rational(1, 4) - c) * pow2(-s + 5);
                 },
                 [](int) { return Rational(1); }});
    v.push_back({"thm-sumset-22", BoundQuantity::SumsetSS,
                 BoundDirection::Lower, 2,
                 "|2A-2A| >> |A|^{3-2/11} (log|A|)^{-18/11}",
                 [](int s) {
                   if (s != 2) throw OutOfRange("thm-sumset-22 is for s = 2");
                   return Rational(3) - Rational(2, 11);
                 },
                 [](int) { return Rational(-18, 11); }});
    v.push_back({"thm-sumset-33", BoundQuantity::SumsetSS,
                 BoundDirection::Lower, 3,
                 "|3A-3A| >> |A|^{3-1/23} (log|A|)^{-36/23}",
                 [](int s) {
                   if (s != 3) throw OutOfRange("thm-sumset-33 is for s = 3");
                   return Rational(3) - Rational(1, 23);
                 },
                 [](int) { return Rational(-36, 23); }});
    v.push_back({"thm-sumset-ss", BoundQuantity::SumsetSS,
                 BoundDirection::Lower, 3,
                 "|sA-sA| >> |A|^{3 - delta 4^{-s+3}} (log|A|)^{-C 4^{-s+3}}, "
                 "delta = (1-16c)/23, C = 36/23",
                 [c](int s) {
                   if (s < 3) throw OutOfRange("thm-sumset-ss needs s >= 3");
                   const Rational delta = (Rational(1) - Rational(16) * c) / Rational(23);
                   return Rational(3) - delta * pow4(-s + 3);
                 },
                 [](int s) {
                   if (s < 3) throw OutOfRange("thm-sumset-ss needs s >= 3");
                   return -Rational(36, 23) * pow4(-s + 3);
                 }});
    v.push_back({"thm-sup", BoundQuantity::SupR, BoundDirection::Upper, 5,
                 "r_m(A) << |A|^{m-3+sigma} (odd m = 2p+1, p >= 2) and "
                 "|A|^{m-3+sigma'} (even m = 2p, p >= 3)",
                 [](int m) {
                   if (m >= 5 && m % 2 == 1)
                     return Rational(m - 3) + sup_sigma_odd((m - 1) / 2);
                   if (m >= 6 && m % 2 == 0)
                     return Rational(m - 3) + sup_sigma_even(m / 2);
                   throw OutOfRange("thm-sup needs fold >= 5");
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"thm-energy-fg", BoundQuantity::EnergyFG,
                 BoundDirection::Upper, 3,
                 "E_{f,g,s,2}(A) << |A|^{2s-3+eta_s}",
                 [](int s) {
                   if (s < 3) throw OutOfRange("thm-energy-fg needs s >= 3");
                   return Rational(2 * s - 3) + eta_final(s);
                 },
                 [](int) { return Rational(0); }});
    v.push_back({"conjecture-optimal", BoundQuantity::Energy2,
                 BoundDirection::Upper, 3,
                 "conjectured E_{s,2}(A) << |A|^{2s-3+eps}; only consistency "
                 "at computed scales can be reported, never sharpness",
                 [](int s) {
                   if (s < 3) throw OutOfRange("conjecture-optimal needs s >= 3");
                   return Rational(2 * s - 3);
                 },
                 [](int) { return Rational(0); }});
    return v;
  }();
  return registry;
}

inline const BoundSpec& find_bound(const std::string& id) {
  for (const auto& b : bound_registry())
    if (b.id == id) return b;
  throw InputError("unknown bound id: " + id);
}

inline Rational exponent_of(const BoundSpec& bound, int index) {
  return bound.exponent(index);
}

// ----- series fitting and comparison ---------------------------------------

struct SeriesPoint {
  unsigned long long n;
  mpz_class value;
  std::string family;
};

struct FitResult {
  double slope;
  double r2;
};

// Ordinary least squares of log(value) against log(n).
inline FitResult fit_exponent(const std::vector<SeriesPoint>& series) {
  if (series.size() < 3)
    throw DegenerateSeries("exponent fit needs at least 3 points");
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].value <= 0)
      throw DegenerateSeries("exponent fit needs positive values");
    for (std::size_t j = i + 1; j < series.size(); ++j)
      if (series[i].n == series[j].n)
        throw DegenerateSeries("exponent fit needs distinct n");
  }
  const std::size_t n = series.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(series[i].n));
    ys[i] = log_mpz(series[i].value);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  FitResult f;
  f.slope = sxy / sxx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

struct ComparisonReport {
  std::string bound_id;
  std::string family;
  std::vector<SeriesPoint> points;
  double fitted_slope = 0;
  double r2 = 0;
  Rational bound_exponent;
  Rational log_power;
  std::vector<double> ratio_series;        // value / n^exponent
  std::vector<double> ratio_log_adjusted;  // log factor folded in
  double implied_constant = 0;  // max (upper bounds) or min (lower bounds)
  bool ratio_monotone = false;  // nonincreasing (upper) / nondecreasing (lower)
  std::string verdict;
  std::string note;
};

// Evaluate a series against a registered bound. Ratios carry the implicit
// constant; log-power factors fold into the adjusted ratio, never into the
// fitted slope.
inline ComparisonReport compare(const std::vector<SeriesPoint>& series,
                                const BoundSpec& bound, int index) {
  ComparisonReport rep;
  rep.bound_id = bound.id;
  rep.family = series.empty() ? "" : series.front().family;
  rep.points = series;
  const FitResult fit = fit_exponent(series);
  rep.fitted_slope = fit.slope;
  rep.r2 = fit.r2;
  rep.bound_exponent = bound.exponent(index);
  rep.log_power = bound.log_power(index);
  const double e = rep.bound_exponent.to_double();
  const double lp = rep.log_power.to_double();
  for (const auto& pt : series) {
    const double ln = std::log(static_cast<double>(pt.n));
    const double raw = std::exp(log_mpz(pt.value) - e * ln);
    rep.ratio_series.push_back(raw);
    rep.ratio_log_adjusted.push_back(
        lp == 0.0 ? raw : raw / std::pow(ln, lp));
  }
  const bool upper = bound.direction == BoundDirection::Upper;
  rep.ratio_monotone = true;
  for (std::size_t i = 0; i + 1 < rep.ratio_log_adjusted.size(); ++i) {
    const double a = rep.ratio_log_adjusted[i];
    const double b = rep.ratio_log_adjusted[i + 1];
    if (upper ? b > a : b < a) rep.ratio_monotone = false;
  }
  rep.implied_constant = rep.ratio_log_adjusted.front();
  for (double r : rep.ratio_log_adjusted)
    rep.implied_constant = upper ? std::max(rep.implied_constant, r)
                                 : std::min(rep.implied_constant, r);
  if (upper)
    rep.verdict = rep.ratio_monotone ? "consistent-ratio-decreasing"
                                     : "consistent-ratio-bounded";
  else
    rep.verdict = rep.ratio_monotone ? "consistent-ratio-increasing"
                                     : "consistent-ratio-bounded-below";
  rep.note =
      "asymptotic bound with implicit constant; desk-scale consistency only, "
      "sharpness is not verifiable from finite data";
  return rep;
}

}  // namespace curvecount
