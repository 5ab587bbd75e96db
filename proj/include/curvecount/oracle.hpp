#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "curvecount/curve.hpp"
#include "curvecount/errors.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

struct OracleBudget {
  unsigned long long max_tuples = 100'000'000ULL;
};

// Brute-force reference counts. Everything here enumerates tuples directly
// over exact rational sums; there are no sparse maps and no shared counting
// code with the profile engine, so agreement is meaningful evidence.
namespace oracle {

namespace detail {

using Pt = std::pair<Rational, Rational>;

// Self-contained Horner evaluation; deliberately not Polynomial::eval.
inline Rational horner(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs[i];
  }
  return acc;
}

inline Pt lift_one(const Curve& curve, const Rational& x) {
  if (curve.kind() == Curve::Kind::Poly)
    return {x, horner(curve.psi().coeffs(), x)};
  if (curve.kind() == Curve::Kind::Pair)
    return {horner(curve.f().coeffs(), x), horner(curve.g().coeffs(), x)};
  throw UnsupportedCurve("oracle needs an exact curve");
}

inline std::vector<Pt> lift_all(const std::vector<Rational>& a,
                                const Curve& curve) {
  std::vector<Pt> pts;
  pts.reserve(a.size());
  for (const auto& x : a) pts.push_back(lift_one(curve, x));
  return pts;
}

inline void check_budget(std::size_t base, unsigned exponent,
                         const OracleBudget& budget) {
  const mpz_class need = ipow(static_cast<unsigned long>(base), exponent);
  if (need > mpz_class(static_cast<unsigned long>(budget.max_tuples)))
    throw BudgetExceeded(need.get_str(), budget.max_tuples);
}

// Enumerate every signed tuple sum: the plane sum of the first `plus`
// points minus the last `minus` points, one callback per ordered tuple.
template <class Fn>
void enumerate_signed(const std::vector<Pt>& pts, unsigned plus,
                      unsigned minus, Fn&& fn) {
  const unsigned depth = plus + minus;
  auto rec = [&](auto&& self, unsigned level, const Pt& acc) -> void {
    if (level == depth) {
      fn(acc);
      return;
    }
    const bool neg = level >= plus;
    for (const Pt& p : pts) {
      Pt next{neg ? acc.first - p.first : acc.first + p.first,
              neg ? acc.second - p.second : acc.second + p.second};
      self(self, level + 1, next);
    }
  };
  rec(rec, 0, Pt{Rational(0), Rational(0)});
}

// Multiplicity spectrum of the signed sums: sort the enumerated keys and
// run-length encode.
inline std::vector<std::pair<Pt, unsigned long long>> spectrum(
    const std::vector<Pt>& pts, unsigned plus, unsigned minus) {
  std::vector<Pt> keys;
  enumerate_signed(pts, plus, minus, [&](const Pt& p) { keys.push_back(p); });
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<Pt, unsigned long long>> runs;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    runs.emplace_back(keys[i], j - i);
    i = j;
  }
  return runs;
}

}  // namespace detail

// E_{s,k}(A) for k = 2 by literal 2s-deep enumeration of the defining
// system, for k = 3 via the multiplicity spectrum of s-fold sums.
inline mpz_class brute_energy(const std::vector<Rational>& a,
                              const Curve& curve, unsigned s, int k,
                              const OracleBudget& budget = {}) {
  if (a.empty()) throw InputError("empty set");
  if (k != 2 && k != 3) throw InputError("oracle energy order must be 2 or 3");
  detail::check_budget(a.size(), s * static_cast<unsigned>(k), budget);
  const auto pts = detail::lift_all(a, curve);
  if (k == 2) {
    // count 2s-tuples with sum(first s) = sum(last s), both coordinates
    mpz_class count(0);
    const detail::Pt zero{Rational(0), Rational(0)};
    detail::enumerate_signed(pts, s, s, [&](const detail::Pt& key) {
      if (key == zero) ++count;
    });
    return count;
  }
  mpz_class acc(0);
  for (const auto& [key, r] : detail::spectrum(pts, s, 0)) {
    const mpz_class m(static_cast<unsigned long>(r));
    acc += m * m * m;
  }
  return acc;
}

// Third moment of the signed representation function r'_{2s}.
inline mpz_class brute_correlation_energy3(const std::vector<Rational>& a,
                                           const Curve& curve, unsigned s,
                                           const OracleBudget& budget = {}) {
  if (a.empty()) throw InputError("empty set");
  detail::check_budget(a.size(), 3 * s, budget);
  const auto pts = detail::lift_all(a, curve);
  mpz_class acc(0);
  for (const auto& [key, r] : detail::spectrum(pts, s, s)) {
    const mpz_class m(static_cast<unsigned long>(r));
    acc += m * m * m;
  }
  return acc;
}

// |sA - tA| by enumeration of signed (s+t)-tuples.
inline std::size_t brute_sumset(const std::vector<Rational>& a,
                                const Curve& curve, unsigned s, unsigned t,
                                const OracleBudget& budget = {}) {
  if (a.empty()) throw InputError("empty set");
  detail::check_budget(a.size(), s + t, budget);
  const auto pts = detail::lift_all(a, curve);
  return detail::spectrum(pts, s, t).size();
}

// sup_n r_s(n) by enumeration.
inline mpz_class brute_sup(const std::vector<Rational>& a, const Curve& curve,
                           unsigned s, const OracleBudget& budget = {}) {
  if (a.empty()) throw InputError("empty set");
  detail::check_budget(a.size(), s, budget);
  const auto pts = detail::lift_all(a, curve);
  unsigned long long best = 0;
  for (const auto& [key, r] : detail::spectrum(pts, s, 0))
    best = std::max(best, r);
  return mpz_class(static_cast<unsigned long>(best));
}

// Weighted incidences by the naive double loop with its own membership test.
inline mpz_class brute_incidences(
    const std::vector<std::pair<detail::Pt, mpz_class>>& points,
    const Curve& base,
    const std::vector<std::pair<detail::Pt, mpz_class>>& shifts) {
  if (base.kind() != Curve::Kind::Poly)
    throw UnsupportedCurve("oracle incidences need a polynomial base");
  const auto& coeffs = base.psi().coeffs();
  mpz_class acc(0);
  for (const auto& [p, wp] : points) {
    for (const auto& [u, wl] : shifts) {
      const Rational t = p.first - u.first;
      if (!base.domain().contains(t)) continue;
      if (detail::horner(coeffs, t) == p.second - u.second) acc += wp * wl;
    }
  }
  return acc;
}

}  // namespace oracle
}  // namespace curvecount
