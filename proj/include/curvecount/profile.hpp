#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curvecount/curve.hpp"
#include "curvecount/errors.hpp"
#include "curvecount/quantized.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

struct EngineConfig {
  std::size_t capacity_cap = 50'000'000;  // max sparse keys per profile
  unsigned threads = 1;
};

// 2D plane vector over a scalar type; used both for lifted points and for
// the sum keys n = (n1, n2). Ordered lexicographically.
template <class S>
struct SumKey {
  S x, y;

  friend bool operator==(const SumKey& a, const SumKey& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const SumKey& a, const SumKey& b) { return !(a == b); }
  friend bool operator<(const SumKey& a, const SumKey& b) {
    if (a.x < b.x) return true;
    if (b.x < a.x) return false;
    return a.y < b.y;
  }
  friend SumKey operator+(const SumKey& a, const SumKey& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend SumKey operator-(const SumKey& a, const SumKey& b) {
    return {a.x - b.x, a.y - b.y};
  }
  SumKey operator-() const { return {-x, -y}; }
};

template <class S>
struct SumKeyHash {
  std::size_t operator()(const SumKey<S>& k) const {
    std::size_t h = k.x.hash();
    h ^= k.y.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using ExactKey = SumKey<Rational>;
using FloatKey = SumKey<Quantized>;

// Exact lift of a ground set: a -> (a, psi(a)) or a -> (f(a), g(a)).
inline std::vector<ExactKey> lift(const GroundSet& a, const Curve& curve) {
  std::vector<ExactKey> pts;
  pts.reserve(a.size());
  for (const Rational& x : a) {
    auto [px, py] = curve.lift_exact(x);
    pts.push_back({std::move(px), std::move(py)});
  }
  return pts;
}

// Float-mode lift: values are snapped to a grid whose step is
// `relative_quantum` scaled by the magnitude of the data.
inline std::vector<FloatKey> lift_quantized(
    const GroundSet& a, const Curve& curve,
    double relative_quantum = Quantized::kDefaultRelativeQuantum) {
  std::vector<std::pair<double, double>> raw;
  raw.reserve(a.size());
  double scale = 1.0;
  for (const Rational& x : a) {
    const double xd = x.to_double();
    const double yd = curve.eval_double(xd);
    raw.emplace_back(xd, yd);
    scale = std::max({scale, std::fabs(xd), std::fabs(yd)});
  }
  const double quantum = relative_quantum * scale;
  std::vector<FloatKey> pts;
  pts.reserve(raw.size());
  for (auto [xd, yd] : raw)
    pts.push_back({Quantized(xd, quantum), Quantized(yd, quantum)});
  return pts;
}

// Fingerprint of a lifted point list; profiles over different ground sets
// refuse to combine.
template <class S>
std::uint64_t ground_fingerprint(const std::vector<SumKey<S>>& pts) {
  SumKeyHash<S> h;
  std::uint64_t fp = 0x243f6a8885a308d3ULL ^ pts.size();
  for (const auto& p : pts) {
    fp ^= h(p);
    fp *= 0x100000001b3ULL;
  }
  return fp;
}

// Sparse s-fold sum profile: key n = (n1, n2) -> number of ordered s-tuples
// of lifted points summing to n. Multiplicities are arbitrary-precision.
template <class S>
class SumProfile {
 public:
  using Key = SumKey<S>;
  using Map = std::unordered_map<Key, mpz_class, SumKeyHash<S>>;

  SumProfile() = default;
  SumProfile(unsigned fold, std::size_t ground_size, std::uint64_t ground_fp,
             Map entries)
      : fold_(fold), ground_size_(ground_size), ground_fp_(ground_fp),
        entries_(std::move(entries)) {}

  unsigned fold() const { return fold_; }
  std::size_t ground_size() const { return ground_size_; }
  std::uint64_t fingerprint() const { return ground_fp_; }
  const Map& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  mpz_class mass() const {
    mpz_class m(0);
    for (const auto& [k, r] : entries_) m += r;
    return m;
  }

  // Entries in lexicographic key order (for reports and dumps).
  std::vector<const std::pair<const Key, mpz_class>*> sorted_entries() const {
    std::vector<const std::pair<const Key, mpz_class>*> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(&e);
    std::sort(v.begin(), v.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    return v;
  }

 private:
  unsigned fold_ = 0;
  std::size_t ground_size_ = 0;
  std::uint64_t ground_fp_ = 0;
  Map entries_;
};

namespace detail {

// Shared worker for convolve (sign = +1) and correlate (sign = -1):
// out[p + sign*q] += P(p) * Q(q). Partitions the outer loop across threads;
// partial maps merge by integer addition, so the result is identical for
// any thread count.
template <class S>
typename SumProfile<S>::Map combine_maps(const typename SumProfile<S>::Map& p,
                                         const typename SumProfile<S>::Map& q,
                                         int sign, const EngineConfig& cfg) {
  using Map = typename SumProfile<S>::Map;
  const std::size_t cap = cfg.capacity_cap;

  // Pre-flight: the product of support sizes bounds the result keys.
  const bool small_product =
      q.empty() || p.size() <= cap / (q.empty() ? 1 : q.size());

  auto accumulate = [&](Map& out, const auto& pe) {
    for (const auto& [kq, rq] : q) {
      SumKey<S> key = sign > 0 ? pe.first + kq : pe.first - kq;
      out[std::move(key)] += pe.second * rq;
    }
  };

  const std::size_t work = p.size() * (q.empty() ? 0 : q.size());
  unsigned threads = cfg.threads;
  if (threads <= 1 || work < (1u << 18) || p.size() < 2 * threads) {
    Map out;
    out.reserve(std::min<std::size_t>(
        {cap, std::size_t{1} << 22,
         small_product ? p.size() * std::max<std::size_t>(q.size(), 1)
                       : p.size()}));
    std::size_t check = 0;
    for (const auto& pe : p) {
      accumulate(out, pe);
      if (!small_product && ++check % 1024 == 0 && out.size() > cap)
        throw CapacityExceeded(out.size(), cap);
    }
    if (out.size() > cap) throw CapacityExceeded(out.size(), cap);
    return out;
  }

  std::vector<const typename Map::value_type*> outer;
  outer.reserve(p.size());
  for (const auto& e : p) outer.push_back(&e);
  threads = std::min<unsigned>(threads, (outer.size() + 1) / 2);
  std::vector<Map> partial(threads);
  std::vector<std::thread> pool;
  std::atomic<bool> overflow{false};
  const std::size_t chunk = (outer.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(outer.size(), lo + chunk);
      Map& mine = partial[t];
      std::size_t check = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        accumulate(mine, *outer[i]);
        if (!small_product && ++check % 1024 == 0 && mine.size() > cap) {
          overflow = true;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (overflow) throw CapacityExceeded(cap + 1, cap);

  Map out = std::move(partial[0]);
  for (unsigned t = 1; t < threads; ++t) {
    for (auto& [k, r] : partial[t]) {
      out[k] += r;
      if (out.size() > cap) throw CapacityExceeded(out.size(), cap);
    }
    partial[t].clear();
  }
  if (out.size() > cap) throw CapacityExceeded(out.size(), cap);
  return out;
}

}  // namespace detail

// Fold-1 profile of a lifted point list. Coincident lifted points (possible
// in pair mode) accumulate multiplicity.
template <class S>
SumProfile<S> base_profile(const std::vector<SumKey<S>>& pts,
                           const EngineConfig& cfg = {}) {
  if (pts.empty()) throw InputError("empty lifted set");
  typename SumProfile<S>::Map m;
  m.reserve(pts.size());
  for (const auto& p : pts) m[p] += 1;
  if (m.size() > cfg.capacity_cap)
    throw CapacityExceeded(m.size(), cfg.capacity_cap);
  return SumProfile<S>(1, pts.size(), ground_fingerprint(pts), std::move(m));
}

// r_{s+t}(n) = sum_m r_s(m) r_t(n - m).
template <class S>
SumProfile<S> convolve(const SumProfile<S>& p, const SumProfile<S>& q,
                       const EngineConfig& cfg = {}) {
  if (p.fingerprint() != q.fingerprint())
    throw MismatchedGround("convolving profiles over different ground sets");
  auto out = detail::combine_maps<S>(p.entries(), q.entries(), +1, cfg);
  return SumProfile<S>(p.fold() + q.fold(), p.ground_size(), p.fingerprint(),
                       std::move(out));
}

// Difference profile: entries[n] = sum_m P(m) Q(m - n); with P = Q =
// profile_s this is the signed-sum representation count r'_{2s}, whose key 0
// carries E_{s,2}.
template <class S>
SumProfile<S> correlate(const SumProfile<S>& p, const SumProfile<S>& q,
                        const EngineConfig& cfg = {}) {
  if (p.fingerprint() != q.fingerprint())
    throw MismatchedGround("correlating profiles over different ground sets");
  auto out = detail::combine_maps<S>(p.entries(), q.entries(), -1, cfg);
  return SumProfile<S>(p.fold() + q.fold(), p.ground_size(), p.fingerprint(),
                       std::move(out));
}

// Iterated construction: profile_{k+1} = convolve(profile_k, profile_1).
template <class S>
SumProfile<S> build_profile(const std::vector<SumKey<S>>& pts, unsigned s,
                            const EngineConfig& cfg = {}) {
  if (s < 1) throw InputError("fold count must be >= 1");
  SumProfile<S> p1 = base_profile(pts, cfg);
  SumProfile<S> acc = p1;
  for (unsigned k = 2; k <= s; ++k) acc = convolve(acc, p1, cfg);
  return acc;
}

// k-th moment of the multiplicities; k = 1 gives |A|^s.
template <class S>
mpz_class moment(const SumProfile<S>& p, int k) {
  if (k < 1 || k > 3) throw InputError("moment order must be 1, 2 or 3");
  mpz_class acc(0);
  for (const auto& [key, r] : p.entries()) {
    if (k == 1)
      acc += r;
    else if (k == 2)
      acc += r * r;
    else
      acc += r * r * r;
  }
  return acc;
}

// Maximal multiplicity and the lexicographically smallest key attaining it.
template <class S>
std::pair<SumKey<S>, mpz_class> sup_multiplicity(const SumProfile<S>& p) {
  if (p.empty()) throw InputError("sup of an empty profile");
  const SumKey<S>* best = nullptr;
  const mpz_class* best_r = nullptr;
  for (const auto& [key, r] : p.entries()) {
    if (!best || r > *best_r || (r == *best_r && key < *best)) {
      best = &key;
      best_r = &r;
    }
  }
  return {*best, *best_r};
}

// Dyadic multiplicity classes: (j, #keys with 2^j <= r < 2^{j+1}), ascending,
// empty classes omitted.
template <class S>
std::vector<std::pair<unsigned, std::size_t>> level_histogram(
    const SumProfile<S>& p) {
  std::vector<std::size_t> counts;
  for (const auto& [key, r] : p.entries()) {
    const unsigned j =
        static_cast<unsigned>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 1;
    if (counts.size() <= j) counts.resize(j + 1, 0);
    ++counts[j];
  }
  std::vector<std::pair<unsigned, std::size_t>> out;
  for (unsigned j = 0; j < counts.size(); ++j)
    if (counts[j]) out.emplace_back(j, counts[j]);
  return out;
}

// E_{s,2}(A): second moment of the s-fold profile.
inline mpz_class energy2(const GroundSet& a, const Curve& curve, unsigned s,
                         const EngineConfig& cfg = {}) {
  return moment(build_profile(lift(a, curve), s, cfg), 2);
}

// E_{s,3}(A): third moment of the s-fold profile.
inline mpz_class energy3(const GroundSet& a, const Curve& curve, unsigned s,
                         const EngineConfig& cfg = {}) {
  return moment(build_profile(lift(a, curve), s, cfg), 3);
}

// Third moment of the difference profile r'_{2s}.
inline mpz_class correlation_energy3(const GroundSet& a, const Curve& curve,
                                     unsigned s, const EngineConfig& cfg = {}) {
  const auto ps = build_profile(lift(a, curve), s, cfg);
  return moment(correlate(ps, ps, cfg), 3);
}

// E_{f,g,s,2}(A): the two-polynomial system, by lifting a -> (f(a), g(a)).
inline mpz_class general_energy2(const GroundSet& a, const Polynomial& f,
                                 const Polynomial& g, unsigned s,
                                 const EngineConfig& cfg = {}) {
  return energy2(a, Curve::pair(f, g), s, cfg);
}

}  // namespace curvecount
