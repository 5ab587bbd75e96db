#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "curvecount/profile.hpp"

namespace curvecount {

// Sorted, deduplicated set of plane points.
struct PlaneSet {
  std::vector<ExactKey> keys;  // lexicographically sorted, unique

  static PlaneSet of(std::vector<ExactKey> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return PlaneSet{std::move(v)};
  }

  std::size_t size() const { return keys.size(); }
  bool contains(const ExactKey& k) const {
    return std::binary_search(keys.begin(), keys.end(), k);
  }
};

template <class S>
PlaneSet support(const SumProfile<S>& p);

template <>
inline PlaneSet support<Rational>(const SumProfile<Rational>& p) {
  std::vector<ExactKey> v;
  v.reserve(p.support_size());
  for (const auto& [k, r] : p.entries()) v.push_back(k);
  std::sort(v.begin(), v.end());
  return PlaneSet{std::move(v)};
}

// s-fold sumset of the lifted set.
inline PlaneSet sumset(const std::vector<ExactKey>& pts, unsigned s,
                       const EngineConfig& cfg = {}) {
  return support(build_profile(pts, s, cfg));
}

// sA - tA; for t = 0 this is the plain s-fold sumset.
inline PlaneSet mixed_sumset(const std::vector<ExactKey>& pts, unsigned s,
                             unsigned t, const EngineConfig& cfg = {}) {
  if (t == 0) return sumset(pts, s, cfg);
  const auto ps = build_profile(pts, s, cfg);
  const auto pt = s == t ? ps : build_profile(pts, t, cfg);
  return support(correlate(ps, pt, cfg));
}

// r_{s,X}(n): representations n = a_1 + ... + a_s + x with x in X.
struct ShiftedProfile {
  unsigned fold;            // s
  std::size_t shift_count;  // |X|
  SumProfile<Rational> profile;
};

inline ShiftedProfile shifted_profile(const std::vector<ExactKey>& pts,
                                      unsigned s, const PlaneSet& x,
                                      const EngineConfig& cfg = {}) {
  if (x.size() == 0) throw InputError("empty shift set");
  const auto ps = build_profile(pts, s, cfg);
  typename SumProfile<Rational>::Map xmap;
  xmap.reserve(x.size());
  for (const auto& k : x.keys) xmap[k] = 1;
  auto out =
      detail::combine_maps<Rational>(ps.entries(), xmap, +1, cfg);
  SumProfile<Rational> prof(s, ps.ground_size(), ps.fingerprint(),
                            std::move(out));
  return ShiftedProfile{s, x.size(), std::move(prof)};
}

// E_{s,X}(A) (k = 2) and E_{3,s,X}(A) (k = 3).
inline mpz_class shifted_energy(const std::vector<ExactKey>& pts, unsigned s,
                                const PlaneSet& x, int k,
                                const EngineConfig& cfg = {}) {
  if (k != 2 && k != 3) throw InputError("shifted energy order must be 2 or 3");
  return moment(shifted_profile(pts, s, x, cfg).profile, k);
}

// Cauchy-Schwarz lower-bound check: energy * support >= ground^{2(s+t)}.
struct CheckResult {
  bool pass;
  Rational slack;  // lhs / rhs, exact
  mpz_class lhs, rhs;
};

inline CheckResult cs_lower_bound(const mpz_class& energy,
                                  const mpz_class& support_size,
                                  std::size_t ground_size, unsigned s,
                                  unsigned t) {
  CheckResult r;
  r.lhs = energy * support_size;
  r.rhs = ipow(static_cast<unsigned long>(ground_size),
               2ul * (static_cast<unsigned long>(s) + t));
  r.pass = r.lhs >= r.rhs;
  r.slack = Rational(mpq_class(mpq_class(r.lhs) / mpq_class(r.rhs)));
  return r;
}

}  // namespace curvecount
