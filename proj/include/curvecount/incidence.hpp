#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "curvecount/curve.hpp"
#include "curvecount/profile.hpp"
#include "curvecount/sumsets.hpp"

namespace curvecount {

// Weighted plane points with distinct locations.
struct WeightedPointSet {
  std::vector<std::pair<ExactKey, mpz_class>> points;

  static WeightedPointSet of(std::vector<std::pair<ExactKey, mpz_class>> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i].first == v[i + 1].first)
        throw InputError("duplicate point location in weighted point set");
    for (const auto& [k, w] : v)
      if (w <= 0) throw InputError("point weights must be positive");
    return WeightedPointSet{std::move(v)};
  }

  mpz_class norm1() const {
    mpz_class s(0);
    for (const auto& [k, w] : points) s += w;
    return s;
  }
  mpz_class norm2_sq() const {
    mpz_class s(0);
    for (const auto& [k, w] : points) s += w * w;
    return s;
  }
  mpz_class norm_inf() const {
    mpz_class m(0);
    for (const auto& [k, w] : points)
      if (w > m) m = w;
    return m;
  }
};

// Translates of one base curve, each with a positive integer weight.
struct WeightedCurveFamily {
  Curve base;
  std::vector<std::pair<ExactKey, mpz_class>> translates;

  static WeightedCurveFamily of(
      Curve base, std::vector<std::pair<ExactKey, mpz_class>> shifts) {
    std::sort(shifts.begin(), shifts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < shifts.size(); ++i)
      if (shifts[i].first == shifts[i + 1].first)
        throw InputError("duplicate translate in curve family");
    for (const auto& [k, w] : shifts)
      if (w <= 0) throw InputError("curve weights must be positive");
    return WeightedCurveFamily{std::move(base), std::move(shifts)};
  }

  mpz_class norm1() const {
    mpz_class s(0);
    for (const auto& [k, w] : translates) s += w;
    return s;
  }
  mpz_class norm2_sq() const {
    mpz_class s(0);
    for (const auto& [k, w] : translates) s += w * w;
    return s;
  }
  mpz_class norm_inf() const {
    mpz_class m(0);
    for (const auto& [k, w] : translates)
      if (w > m) m = w;
    return m;
  }
};

struct IncidenceReport {
  mpz_class exact_count;
  long double term_geometric;   // (|P|_1 |P|_2^2 |L|_1 |L|_2^2)^{1/3}
  long double term_linf_p1;     // |L|_inf |P|_1
  long double term_pinf_l1;     // |P|_inf |L|_1
  long double ratio;            // exact / (sum of the three terms)
};

namespace detail {

inline long double to_long_double(const mpz_class& z) {
  if (mpz_fits_ulong_p(z.get_mpz_t()))
    return static_cast<long double>(mpz_get_ui(z.get_mpz_t()));
  signed long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return ldexpl(static_cast<long double>(m), static_cast<int>(e));
}

// Membership of a plane point on one translate of the base graph:
// p - u = (t, psi(t)) for some t in the base domain.
inline bool on_translate(const Polynomial& psi, const Interval& domain,
                         const ExactKey& p, const ExactKey& u) {
  const Rational t = p.x - u.x;
  if (!domain.contains(t)) return false;
  return psi.eval(t) == p.y - u.y;
}

inline const Polynomial& require_poly_base(const Curve& base) {
  if (base.kind() != Curve::Kind::Poly)
    throw UnsupportedCurve("incidence counting needs a polynomial base curve");
  return base.psi();
}

}  // namespace detail

// Exact weighted incidence count plus the three diagnostic bound terms.
inline IncidenceReport count_incidences(const WeightedPointSet& pset,
                                        const WeightedCurveFamily& family,
                                        const EngineConfig& cfg = {}) {
  const Polynomial& psi = detail::require_poly_base(family.base);
  const Interval& domain = family.base.domain();

  const std::size_t n = pset.points.size();
  unsigned threads = cfg.threads;
  if (threads < 1) threads = 1;
  threads = std::min<unsigned>(threads, n == 0 ? 1 : n);
  std::vector<mpz_class> partial(threads, mpz_class(0));
  auto work = [&](unsigned t) {
    mpz_class acc(0);
    for (std::size_t i = t; i < n; i += threads) {
      const auto& [p, wp] = pset.points[i];
      for (const auto& [u, wl] : family.translates)
        if (detail::on_translate(psi, domain, p, u)) acc += wp * wl;
    }
    partial[t] = std::move(acc);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  IncidenceReport rep;
  rep.exact_count = 0;
  for (auto& p : partial) rep.exact_count += p;

  const long double p1 = detail::to_long_double(pset.norm1());
  const long double p2 = detail::to_long_double(pset.norm2_sq());
  const long double l1 = detail::to_long_double(family.norm1());
  const long double l2 = detail::to_long_double(family.norm2_sq());
  rep.term_geometric = powl(p1 * p2 * l1 * l2, 1.0L / 3.0L);
  rep.term_linf_p1 = detail::to_long_double(family.norm_inf()) * p1;
  rep.term_pinf_l1 = detail::to_long_double(pset.norm_inf()) * l1;
  const long double denom =
      rep.term_geometric + rep.term_linf_p1 + rep.term_pinf_l1;
  rep.ratio = denom > 0 ? detail::to_long_double(rep.exact_count) / denom : 0;
  return rep;
}

// Points of P whose weighted count of incident curves is at least t.
inline PlaneSet rich_points(const PlaneSet& pts,
                            const WeightedCurveFamily& family,
                            const mpz_class& threshold) {
  const Polynomial& psi = detail::require_poly_base(family.base);
  const Interval& domain = family.base.domain();
  std::vector<ExactKey> rich;
  for (const auto& p : pts.keys) {
    mpz_class acc(0);
    for (const auto& [u, w] : family.translates)
      if (detail::on_translate(psi, domain, p, u)) acc += w;
    if (acc >= threshold) rich.push_back(p);
  }
  return PlaneSet{std::move(rich)};  // pts.keys sorted, subsequence stays sorted
}

struct ValidityStats {
  std::size_t max_pairwise_intersections = 0;
  std::size_t max_curves_through_pair = 0;
  std::string note;
};

namespace detail {

// Curve through translate u meets the one through v where
// G_uv(x) = psi(x - u1) + u2 - psi(x - v1) - v2 vanishes (x is the plane
// abscissa of the intersection).
inline Polynomial translate_difference(const Polynomial& psi,
                                       const ExactKey& u, const ExactKey& v) {
  Polynomial g = psi.shifted(-u.x) - psi.shifted(-v.x);
  return g + Polynomial::constant(u.y - v.y);
}

// Abscissa domain of points of translate u: base domain shifted by u1.
inline Interval translate_domain(const Interval& base, const ExactKey& u) {
  std::optional<Rational> lo, hi;
  if (base.lower()) lo = *base.lower() + u.x;
  if (base.upper()) hi = *base.upper() + u.x;
  return Interval(lo, base.lower_open(), hi, base.upper_open());
}

// Is the isolated root shared with polynomial g? Exact via gcd: the
// isolating interval of `root` (over rs's squarefree polynomial) contains a
// root of gcd(sf, g) iff the underlying algebraic number is a root of g.
inline bool shares_root(RootSet& rs, std::size_t idx, const Polynomial& g) {
  if (g.is_zero()) return true;
  const RealRoot& r = rs.roots()[idx];
  if (r.is_exact()) return g.eval(r.value()).is_zero();
  const Polynomial common = Polynomial::gcd(rs.isolating_polynomial(),
                                            g.squarefree_part());
  if (common.degree() < 1) return false;
  return count_distinct_roots(common, Interval::open(r.lo(), r.hi())) > 0;
}

}  // namespace detail

// Exact family validity statistics by pairwise elimination: the maximum
// number of intersection points over curve pairs, and the maximum number of
// family curves passing through a common pair of points. Brute force over
// all pairs; intended for families of at most a few hundred curves.
inline ValidityStats validity_check(const WeightedCurveFamily& family) {
  const Polynomial& psi = detail::require_poly_base(family.base);
  ValidityStats stats;
  if (family.translates.size() < 2) {
    stats.note = "family has fewer than 2 curves; counts not meaningful";
    return stats;
  }
  const auto& tr = family.translates;
  stats.max_curves_through_pair = 1;  // any single curve carries point pairs
  for (std::size_t i = 0; i < tr.size(); ++i) {
    for (std::size_t j = i + 1; j < tr.size(); ++j) {
      const ExactKey& u = tr[i].first;
      const ExactKey& v = tr[j].first;
      Polynomial g = detail::translate_difference(psi, u, v);
      if (g.is_zero())
        throw InvariantError("coincident translates in curve family");
      if (g.degree() < 1) continue;  // vertically shifted copies never meet
      // Intersection abscissas must be reachable from both domains.
      RootSet roots(g);
      std::vector<std::size_t> live;
      const Interval du = detail::translate_domain(family.base.domain(), u);
      const Interval dv = detail::translate_domain(family.base.domain(), v);
      for (std::size_t k = 0; k < roots.size(); ++k)
        if (roots.root_in(k, du) && roots.root_in(k, dv)) live.push_back(k);
      stats.max_pairwise_intersections =
          std::max(stats.max_pairwise_intersections, live.size());

      // A pair of common points can lie on further curves; count them.
      if (live.size() >= 2) {
        for (std::size_t a = 0; a < live.size(); ++a) {
          for (std::size_t b = a + 1; b < live.size(); ++b) {
            std::size_t through = 2;  // u and v themselves
            for (std::size_t w = 0; w < tr.size(); ++w) {
              if (w == i || w == j) continue;
              Polynomial gw =
                  detail::translate_difference(psi, u, tr[w].first);
              if (gw.is_zero() || gw.degree() < 1) continue;
              const Interval dw =
                  detail::translate_domain(family.base.domain(), tr[w].first);
              if (detail::shares_root(roots, live[a], gw) &&
                  detail::shares_root(roots, live[b], gw) &&
                  roots.root_in(live[a], dw) && roots.root_in(live[b], dw))
                ++through;
            }
            stats.max_curves_through_pair =
                std::max(stats.max_curves_through_pair, through);
          }
        }
      }
    }
  }
  return stats;
}

struct DyadicCell {
  unsigned point_class;    // j: points with 2^j <= w' < 2^{j+1}
  unsigned curve_class;    // k: curves with 2^k <= w < 2^{k+1}
  std::size_t incident_pairs;
  mpz_class weighted_count;  // sum of w'(p) w(l) over incident pairs in cell
};

// Partition points and curves into dyadic weight classes; the weighted
// per-cell counts sum to the exact incidence count (the classes partition
// the pairs, so there is no slack).
inline std::vector<DyadicCell> dyadic_decompose_incidences(
    const WeightedPointSet& pset, const WeightedCurveFamily& family) {
  const Polynomial& psi = detail::require_poly_base(family.base);
  const Interval& domain = family.base.domain();
  auto cls = [](const mpz_class& w) {
    return static_cast<unsigned>(mpz_sizeinbase(w.get_mpz_t(), 2)) - 1;
  };
  std::map<std::pair<unsigned, unsigned>, DyadicCell> cells;
  for (const auto& [p, wp] : pset.points) {
    for (const auto& [u, wl] : family.translates) {
      if (!detail::on_translate(psi, domain, p, u)) continue;
      const auto key = std::make_pair(cls(wp), cls(wl));
      auto& cell = cells[key];
      cell.point_class = key.first;
      cell.curve_class = key.second;
      cell.incident_pairs += 1;
      cell.weighted_count += wp * wl;
    }
  }
  std::vector<DyadicCell> out;
  out.reserve(cells.size());
  for (auto& [k, c] : cells) out.push_back(std::move(c));
  return out;
}

}  // namespace curvecount
