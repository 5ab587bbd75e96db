#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/errors.hpp"
#include "curvecount/interval.hpp"
#include "curvecount/polynomial.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

// One real root of a polynomial: either an exact rational value, or a simple
// root isolated in an open interval (lo, hi) with rational endpoints that are
// themselves not roots.
class RealRoot {
 public:
  static RealRoot exact(Rational v) {
    RealRoot r;
    r.exact_ = true;
    r.lo_ = r.hi_ = std::move(v);
    return r;
  }
  static RealRoot isolated(Rational lo, Rational hi) {
    if (!(lo < hi)) throw InvariantError("empty isolating interval");
    RealRoot r;
    r.exact_ = false;
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    return r;
  }

  bool is_exact() const { return exact_; }
  const Rational& value() const {
    if (!exact_) throw InvariantError("isolated root has no exact value");
    return lo_;
  }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  // Rational bounds with root in [lower_bound, upper_bound]; for exact
  // roots both equal the value.
  const Rational& lower_bound() const { return lo_; }
  const Rational& upper_bound() const { return hi_; }

  std::string str() const {
    if (exact_) return lo_.str();
    return "(" + lo_.str() + ", " + hi_.str() + ")";
  }

 private:
  friend class RootSet;
  bool exact_ = true;
  Rational lo_, hi_;
};

namespace detail {

// Sturm chain of a squarefree polynomial.
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq;
  seq.push_back(p);
  if (p.degree() >= 1) {
    seq.push_back(p.derivative());
    while (seq.back().degree() >= 1) {
      Polynomial r = Polynomial::divmod(seq[seq.size() - 2], seq.back()).second;
      if (r.is_zero()) break;
      seq.push_back(-r);
    }
  }
  return seq;
}

inline int sign_variations(const std::vector<int>& signs) {
  int v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

inline int variations_at(const std::vector<Polynomial>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(p.eval(x).sign());
  return sign_variations(signs);
}

// Number of distinct roots of the (squarefree) chain owner in (a, b];
// requires p(a) != 0 and p(b) != 0 for the exact half-open semantics used
// by the isolator, which always bisects at non-root points.
inline int roots_in(const std::vector<Polynomial>& seq, const Rational& a,
                    const Rational& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

// Strict upper bound on the absolute value of every root.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational m(0);
  const Rational& lead = p.leading();
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
    Rational q = (p.coeffs()[i] / lead).abs();
    if (m < q) m = q;
  }
  return m + Rational(1);
}

// Divisors of |z| by trial division; gives up (returns incomplete = true)
// once the count budget is hit or an unfactored cofactor remains. Missing
// divisors only demote exact rational roots to isolated ones.
inline std::vector<mpz_class> divisors_of(mpz_class z, std::size_t budget,
                                          bool* incomplete) {
  *incomplete = false;
  z = abs(z);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  mpz_class d(2);
  while (mpz_cmp_ui(z.get_mpz_t(), 1) > 0) {
    if (mpz_cmp_ui(d.get_mpz_t(), 1000000) > 0) {
      if (mpz_probab_prime_p(z.get_mpz_t(), 30) != 0) {
        factors.emplace_back(z, 1);
        z = 1;
      } else {
        *incomplete = true;
        factors.emplace_back(z, 1);  // keep the cofactor itself as a divisor
        z = 1;
      }
      break;
    }
    if (mpz_divisible_p(z.get_mpz_t(), d.get_mpz_t())) {
      unsigned e = 0;
      while (mpz_divisible_p(z.get_mpz_t(), d.get_mpz_t())) {
        mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), d.get_mpz_t());
        ++e;
      }
      factors.emplace_back(d, e);
    }
    mpz_add_ui(d.get_mpz_t(), d.get_mpz_t(), mpz_cmp_ui(d.get_mpz_t(), 2) == 0 ? 1 : 2);
    if (d * d > z && mpz_cmp_ui(z.get_mpz_t(), 1) > 0) {
      factors.emplace_back(z, 1);
      z = 1;
    }
  }
  std::vector<mpz_class> divs{mpz_class(1)};
  for (const auto& [prime, mult] : factors) {
    const std::size_t base = divs.size();
    mpz_class pw(1);
    for (unsigned e = 1; e <= mult; ++e) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pw);
        if (divs.size() > budget) {
          *incomplete = true;
          return divs;
        }
      }
    }
  }
  return divs;
}

}  // namespace detail

// Complete real-root isolation for a nonzero rational polynomial.
//
// Rational roots are found by the rational-root theorem on the primitive
// integer form and reported exactly; the remaining roots are isolated by
// Sturm bisection into pairwise disjoint open intervals with non-root
// rational endpoints. Isolating intervals can be refined on demand, which
// is how set elements are placed relative to irrational roots using exact
// sign evaluations only.
class RootSet {
 public:
  explicit RootSet(Polynomial p) : original_(std::move(p)) {
    if (original_.is_zero())
      throw InvariantError("root isolation of the zero polynomial");
    isolate();
  }

  const Polynomial& polynomial() const { return original_; }
  const std::vector<RealRoot>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }

  // Polynomial whose simple roots the isolated (non-exact) roots refer to.
  const Polynomial& isolating_polynomial() const { return sf_; }

  // Refine every isolating interval until x lies strictly outside its
  // closed hull [lo, hi]. Precondition: x is not one of the isolated roots.
  void exclude(const Rational& x) {
    for (auto& r : roots_) {
      int guard = 0;
      while (!r.exact_ && r.lo_ <= x && x <= r.hi_) {
        bisect(r);
        if (++guard > 4096)
          throw InvariantError("isolating interval refinement diverged");
      }
    }
  }

  // Number of roots strictly below x. Precondition: original(x) != 0.
  std::size_t piece_index(const Rational& x) {
    exclude(x);
    std::size_t idx = 0;
    for (const auto& r : roots_) {
      if (r.upper_bound() < x) ++idx;
    }
    return idx;
  }

  // Refine until consecutive roots have strictly separated rational bounds,
  // so that open intervals between them are non-degenerate.
  void ensure_gaps() {
    for (std::size_t i = 0; i + 1 < roots_.size(); ++i) {
      int guard = 0;
      while (!(roots_[i].upper_bound() < roots_[i + 1].lower_bound())) {
        RealRoot& a = roots_[i];
        RealRoot& b = roots_[i + 1];
        if (a.exact_ && b.exact_)
          throw InvariantError("coincident exact roots");
        if (!a.exact_ && (b.exact_ || (a.hi_ - a.lo_) >= (b.hi_ - b.lo_)))
          bisect(a);
        else
          bisect(b);
        if (++guard > 4096)
          throw InvariantError("root gap refinement diverged");
      }
    }
  }

  // Does the root lie inside the interval? Refines as needed; exact for
  // rational interval endpoints. The root is strictly interior to its
  // isolating interval, so openness of iv's endpoints only matters for
  // exact roots.
  bool root_in(std::size_t i, const Interval& iv) {
    RealRoot& r = roots_[i];
    int guard = 0;
    for (;;) {
      if (r.exact_) return iv.contains(r.value());
      const bool lower_ok = !iv.lower() || *iv.lower() <= r.lo_;
      const bool upper_ok = !iv.upper() || r.hi_ <= *iv.upper();
      if (lower_ok && upper_ok) return true;
      if (iv.upper() && *iv.upper() <= r.lo_) return false;
      if (iv.lower() && r.hi_ <= *iv.lower()) return false;
      // an iv bound lies strictly inside (lo, hi): shrink and retry
      bisect(r);
      if (++guard > 4096)
        throw InvariantError("root-in-interval refinement diverged");
    }
  }

  // Count roots inside an interval (refining as needed).
  std::size_t count_in(const Interval& iv) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (root_in(i, iv)) ++n;
    return n;
  }

 private:
  void bisect(RealRoot& r) {
    if (r.exact_) return;
    Rational mid = (r.lo_ + r.hi_) / Rational(2);
    const int sm = sf_.eval(mid).sign();
    if (sm == 0) {
      // A rational root the divisor search missed; promote to exact.
      r.exact_ = true;
      r.lo_ = r.hi_ = std::move(mid);
      return;
    }
    const int sl = sf_.eval(r.lo_).sign();
    if (sl != sm)
      r.hi_ = std::move(mid);
    else
      r.lo_ = std::move(mid);
  }

  void isolate() {
    Polynomial work = original_;
    std::vector<RealRoot> exact_roots;

    // Roots at zero.
    {
      std::size_t k = 0;
      const auto& c = work.coeffs();
      while (k < c.size() && c[k].is_zero()) ++k;
      if (k > 0) {
        exact_roots.push_back(RealRoot::exact(Rational(0)));
        std::vector<Rational> reduced(c.begin() + k, c.end());
        work = Polynomial(std::move(reduced));
      }
    }

    // Degree one: the root is rational, read it off directly.
    if (work.degree() == 1) {
      exact_roots.push_back(
          RealRoot::exact(-work.coeff(0) / work.coeff(1)));
      work = Polynomial::constant(Rational(1));
    }

    // Rational roots: candidates p/q with p | c0, q | cd on the primitive
    // integer form. An incomplete divisor search only means some rational
    // root may be reported as an isolated interval instead.
    if (work.degree() >= 2) {
      mpz_class lcm_den(1);
      for (const auto& c : work.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
      std::vector<mpz_class> ic;
      ic.reserve(work.coeffs().size());
      for (const auto& c : work.coeffs())
        ic.push_back(c.num() * (lcm_den / c.den()));
      bool inc0 = false, incd = false;
      const auto num_divs = detail::divisors_of(ic.front(), 4096, &inc0);
      const auto den_divs = detail::divisors_of(ic.back(), 4096, &incd);
      if (num_divs.size() * den_divs.size() <= 100000) {
        for (const auto& p : num_divs) {
          for (const auto& q : den_divs) {
            Rational cand{mpq_class(p) / mpq_class(q)};
            for (int sgn = 0; sgn < 2; ++sgn) {
              const Rational c = sgn ? -cand : cand;
              while (work.degree() >= 1 && work.eval(c).is_zero()) {
                exact_roots.push_back(RealRoot::exact(c));
                const Polynomial lin(std::vector<Rational>{-c, Rational(1)});
                work = Polynomial::divmod(work, lin).first;
              }
            }
          }
        }
      }
      if (work.degree() == 1) {
        exact_roots.push_back(
            RealRoot::exact(-work.coeff(0) / work.coeff(1)));
        work = Polynomial::constant(Rational(1));
      }
    }

    // Remaining factor: Sturm bisection on the squarefree part.
    std::vector<RealRoot> isolated;
    if (work.degree() >= 1) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > work.degree() + 2)
          throw InvariantError("root isolation failed to converge");
        sf_ = work.squarefree_part();
        isolated.clear();
        const auto seq = detail::sturm_sequence(sf_);
        const Rational bound = detail::cauchy_bound(sf_);
        std::optional<Rational> midpoint_root;
        std::vector<std::pair<Rational, Rational>> stack;
        stack.emplace_back(-bound, bound);
        while (!stack.empty() && !midpoint_root) {
          auto [a, b] = stack.back();
          stack.pop_back();
          const int n = detail::roots_in(seq, a, b);
          if (n == 0) continue;
          if (n == 1) {
            if (sf_.eval(b).is_zero())
              midpoint_root = b;  // rational root missed by the search
            else
              isolated.push_back(RealRoot::isolated(a, b));
            continue;
          }
          Rational mid = (a + b) / Rational(2);
          if (sf_.eval(mid).is_zero()) {
            midpoint_root = mid;
            continue;
          }
          stack.emplace_back(a, mid);
          stack.emplace_back(mid, b);
        }
        if (!midpoint_root) break;
        exact_roots.push_back(RealRoot::exact(*midpoint_root));
        const Polynomial lin(
            std::vector<Rational>{-*midpoint_root, Rational(1)});
        while (work.degree() >= 1 && work.eval(*midpoint_root).is_zero())
          work = Polynomial::divmod(work, lin).first;
      }
    } else {
      sf_ = Polynomial();
    }

    // Deduplicate rational roots (multiplicities collapse) and sort.
    std::sort(exact_roots.begin(), exact_roots.end(),
              [](const RealRoot& a, const RealRoot& b) {
                return a.value() < b.value();
              });
    exact_roots.erase(std::unique(exact_roots.begin(), exact_roots.end(),
                                  [](const RealRoot& a, const RealRoot& b) {
                                    return a.value() == b.value();
                                  }),
                      exact_roots.end());

    // Keep isolated intervals clear of every exact root, then merge sorted.
    roots_ = std::move(isolated);
    std::sort(roots_.begin(), roots_.end(),
              [](const RealRoot& a, const RealRoot& b) {
                return a.lo_ < b.lo_;
              });
    for (const auto& e : exact_roots) exclude(e.value());
    for (const auto& e : exact_roots) {
      auto pos = std::find_if(roots_.begin(), roots_.end(),
                              [&](const RealRoot& r) {
                                return e.value() < r.lower_bound();
                              });
      roots_.insert(pos, e);
    }
  }

  Polynomial original_;
  Polynomial sf_;  // squarefree remainder defining the isolated roots
  std::vector<RealRoot> roots_;
};

// Distinct real roots of p that lie inside `within`.
inline std::size_t count_distinct_roots(const Polynomial& p,
                                        const Interval& within) {
  if (p.is_zero()) throw InvariantError("counting roots of zero polynomial");
  if (p.degree() == 0) return 0;
  RootSet rs(p);
  return rs.count_in(within);
}

}  // namespace curvecount
