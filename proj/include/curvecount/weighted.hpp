#pragma once

#include <complex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curvecount/curve.hpp"
#include "curvecount/profile.hpp"

namespace curvecount {

// s-fold amplitude profile W_s(n) = sum over tuples summing to n of the
// product of per-element coefficients. With all coefficients equal to 1 the
// amplitudes coincide with the integer multiplicities of SumProfile.
class WeightedProfile {
 public:
  using Map = std::unordered_map<ExactKey, std::complex<double>,
                                 SumKeyHash<Rational>>;

  WeightedProfile(unsigned fold, Map entries)
      : fold_(fold), entries_(std::move(entries)) {}

  unsigned fold() const { return fold_; }
  const Map& entries() const { return entries_; }

  // sum over keys of |W|^2.
  double energy() const {
    double acc = 0.0;
    for (const auto& [k, w] : entries_) acc += std::norm(w);
    return acc;
  }

 private:
  unsigned fold_;
  Map entries_;
};

// Build W_s for coefficients given per ground element. Elements with zero
// coefficient still contribute keys (with zero amplitude folded in).
inline WeightedProfile build_weighted_profile(
    const std::vector<std::pair<Rational, std::complex<double>>>& coeffs,
    const Curve& curve, unsigned s, const EngineConfig& cfg = {}) {
  if (s < 1) throw InputError("fold count must be >= 1");
  if (coeffs.empty()) throw InputError("empty coefficient list");
  WeightedProfile::Map base;
  for (const auto& [x, amp] : coeffs) {
    auto [px, py] = curve.lift_exact(x);
    base[ExactKey{std::move(px), std::move(py)}] += amp;
  }
  WeightedProfile::Map acc = base;
  for (unsigned k = 2; k <= s; ++k) {
    WeightedProfile::Map next;
    next.reserve(std::min<std::size_t>(
        {cfg.capacity_cap, std::size_t{1} << 22, acc.size() * base.size()}));
    for (const auto& [ka, wa] : acc)
      for (const auto& [kb, wb] : base) {
        next[ka + kb] += wa * wb;
        if (next.size() > cfg.capacity_cap)
          throw CapacityExceeded(next.size(), cfg.capacity_cap);
      }
    acc = std::move(next);
  }
  return WeightedProfile(s, std::move(acc));
}

// Moment of the exponential-sum side computed through the counting
// identity: sum_n |W_s(n)|^2. When the lift is integer-valued this equals
// the 2s-th moment of the torus exponential sum with the given
// coefficients; for non-integer rational lifts it is the counting-measure
// analogue (the two readings coincide only in the integer case).
inline double weighted_energy(
    const std::vector<std::pair<Rational, std::complex<double>>>& coeffs,
    const Curve& curve, unsigned s, const EngineConfig& cfg = {}) {
  return build_weighted_profile(coeffs, curve, s, cfg).energy();
}

}  // namespace curvecount
