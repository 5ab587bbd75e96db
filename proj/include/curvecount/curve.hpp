#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvecount/errors.hpp"
#include "curvecount/interval.hpp"
#include "curvecount/polynomial.hpp"
#include "curvecount/rational.hpp"
#include "curvecount/roots.hpp"

namespace curvecount {

// Finite set of rationals, strictly increasing.
class GroundSet {
 public:
  static GroundSet of(std::vector<Rational> values) {
    if (values.empty()) throw InputError("ground set must be non-empty");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    GroundSet g;
    g.elems_ = std::move(values);
    return g;
  }

  std::size_t size() const { return elems_.size(); }
  const std::vector<Rational>& elements() const { return elems_; }
  const Rational& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  Rational diameter() const { return elems_.back() - elems_.front(); }

 private:
  GroundSet() = default;
  std::vector<Rational> elems_;
};

enum class AnalyticTag { Log, Power, Reciprocal };

inline std::string analytic_tag_name(AnalyticTag t) {
  switch (t) {
    case AnalyticTag::Log: return "log";
    case AnalyticTag::Power: return "power";
    case AnalyticTag::Reciprocal: return "reciprocal";
  }
  return "?";
}

struct ValidityCertificate {
  bool pass = false;
  std::string method;  // "convexity" for polynomial kinds, "closed-form" for analytic
  std::optional<RealRoot> witness;
  // On PASS, cap on the number of solutions to the difference- and
  // sum-constrained pair equations on the certified interval (Rolle).
  int solution_cap = 0;
};

struct DecompositionPiece {
  std::string label;
  std::vector<Rational> elements;               // ascending
  std::optional<Interval> interval;             // nullopt for the critical piece
};

struct Decomposition {
  std::vector<DecompositionPiece> pieces;       // interval pieces, then critical
  std::vector<RealRoot> critical;               // sorted critical set
};

// A plane curve used for lifting: the graph y = psi(x) of a polynomial, a
// named analytic function evaluated in quantized float mode, or the
// parametric pair x -> (f(x), g(x)) for two-polynomial systems.
class Curve {
 public:
  enum class Kind { Poly, Analytic, Pair };

  static Curve poly(Polynomial psi, Interval domain = Interval::all()) {
    if (psi.degree() < 2)
      throw InputError("curve polynomial must have degree >= 2");
    Curve c;
    c.kind_ = Kind::Poly;
    c.psi_ = std::move(psi);
    c.domain_ = std::move(domain);
    return c;
  }

  static Curve pair(Polynomial f, Polynomial g,
                    Interval domain = Interval::all()) {
    if (f.degree() < 1 || g.degree() <= f.degree())
      throw InputError("pair curve requires deg g > deg f >= 1");
    Curve c;
    c.kind_ = Kind::Pair;
    c.f_ = std::move(f);
    c.g_ = std::move(g);
    c.domain_ = std::move(domain);
    return c;
  }

  static Curve analytic(AnalyticTag tag, std::optional<Interval> domain = {},
                        double lambda = 0.0) {
    Curve c;
    c.kind_ = Kind::Analytic;
    c.tag_ = tag;
    c.lambda_ = lambda;
    c.domain_ = domain ? *domain : Interval::greater_than(Rational(0));
    if (tag == AnalyticTag::Power && !(lambda > 1.0))
      throw InputError("power curve requires lambda > 1");
    // Singularities must be outside the domain: all three named curves are
    // taken on a sub-interval of (0, inf).
    if (!Interval::greater_than(Rational(0)).contains(c.domain_))
      throw InputError("analytic curve domain must lie in (0, +inf)");
    return c;
  }

  Kind kind() const { return kind_; }
  bool exact() const { return kind_ != Kind::Analytic; }
  const Interval& domain() const { return domain_; }
  const Polynomial& psi() const {
    require(Kind::Poly);
    return psi_;
  }
  const Polynomial& f() const {
    require(Kind::Pair);
    return f_;
  }
  const Polynomial& g() const {
    require(Kind::Pair);
    return g_;
  }
  AnalyticTag tag() const {
    require(Kind::Analytic);
    return tag_;
  }
  double lambda() const { return lambda_; }

  // psi(x) for the graph kind.
  Rational eval(const Rational& x) const {
    if (kind_ == Kind::Analytic)
      throw UnsupportedCurve("exact evaluation of an analytic curve");
    if (!domain_.contains(x))
      throw DomainError("evaluation outside curve domain at x = " + x.str());
    if (kind_ == Kind::Poly) return psi_.eval(x);
    return g_.eval(x);
  }

  // The lifted plane point: (x, psi(x)) or (f(x), g(x)).
  std::pair<Rational, Rational> lift_exact(const Rational& x) const {
    if (kind_ == Kind::Analytic)
      throw UnsupportedCurve("exact lift of an analytic curve");
    if (!domain_.contains(x))
      throw DomainError("lift outside curve domain at x = " + x.str());
    if (kind_ == Kind::Poly) return {x, psi_.eval(x)};
    return {f_.eval(x), g_.eval(x)};
  }

  double eval_double(double x) const {
    if (!domain_.contains_double(x))
      throw DomainError("evaluation outside curve domain");
    switch (kind_) {
      case Kind::Poly:
        return psi_.eval_double(x);
      case Kind::Pair:
        return g_.eval_double(x);
      case Kind::Analytic:
        switch (tag_) {
          case AnalyticTag::Log:
            if (x <= 0.0) throw DomainError("log of non-positive value");
            return std::log(x);
          case AnalyticTag::Power:
            if (x < 0.0) throw DomainError("power of negative value");
            return std::pow(x, lambda_);
          case AnalyticTag::Reciprocal:
            if (x == 0.0) throw DomainError("reciprocal of zero");
            return 1.0 / x;
        }
    }
    throw InvariantError("unreachable curve kind");
  }

  // Product polynomial whose zeroes are the critical points that the
  // interval decomposition removes: psi' * psi'' for a graph,
  // g * g' * f * f' * (g'' f' - f'' g') for a pair.
  Polynomial critical_product() const {
    switch (kind_) {
      case Kind::Poly:
        return psi_.derivative() * psi_.derivative().derivative();
      case Kind::Pair: {
        const Polynomial fd = f_.derivative();
        const Polynomial gd = g_.derivative();
        const Polynomial wr =
            g_.derivative().derivative() * fd - f_.derivative().derivative() * gd;
        return g_ * gd * f_ * fd * wr;
      }
      case Kind::Analytic:
        throw UnsupportedCurve(
            "critical set of an analytic curve (handled by closed-form "
            "domains)");
    }
    throw InvariantError("unreachable curve kind");
  }

  RootSet critical_roots() const { return RootSet(critical_product()); }

  // Certify that the curve is nondegenerate on the interval: both relevant
  // derivative products are nonzero there, giving the Rolle cap of 2 on the
  // constrained pair equations. Analytic curves pass exactly on
  // sub-intervals of their domain.
  ValidityCertificate check_validity(const Interval& interval) const {
    ValidityCertificate cert;
    if (kind_ == Kind::Analytic) {
      cert.method = "closed-form";
      if (domain_.contains(interval)) {
        cert.pass = true;
        cert.solution_cap = 2;
      } else {
        cert.pass = false;
        cert.witness = RealRoot::exact(witness_outside(domain_, interval));
      }
      return cert;
    }
    cert.method = "convexity";
    RootSet roots = critical_roots();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (roots.root_in(i, interval)) {
        cert.pass = false;
        cert.witness = roots.roots()[i];
        return cert;
      }
    }
    cert.pass = true;
    cert.solution_cap = 2;
    return cert;
  }

  // Split A along the critical set: pieces A_0..A_r live in the open
  // intervals between consecutive critical points (unbounded at the ends),
  // and the final piece collects the elements that are themselves critical.
  // Interval endpoints are rational surrogates refined so that every
  // element is strictly inside its piece's interval.
  Decomposition decompose(const GroundSet& a) const {
    const Polynomial product = critical_product();
    RootSet roots = critical_roots();

    std::vector<Rational> critical_elems;
    std::vector<std::vector<Rational>> buckets(roots.size() + 1);
    for (const Rational& x : a) {
      if (product.eval(x).is_zero()) {
        critical_elems.push_back(x);
        continue;
      }
      buckets[roots.piece_index(x)].push_back(x);
    }
    roots.ensure_gaps();

    Decomposition out;
    out.critical = roots.roots();
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      DecompositionPiece piece;
      piece.label = "I" + std::to_string(i);
      piece.elements = std::move(buckets[i]);
      std::optional<Rational> lo, hi;
      if (i > 0) lo = roots.roots()[i - 1].upper_bound();
      if (i < roots.size()) hi = roots.roots()[i].lower_bound();
      piece.interval = Interval(lo, true, hi, true);
      out.pieces.push_back(std::move(piece));
    }
    DecompositionPiece crit;
    crit.label = "E";
    crit.elements = std::move(critical_elems);
    out.pieces.push_back(std::move(crit));
    return out;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Poly:
        return "poly[" + psi_.str() + "]";
      case Kind::Pair:
        return "pair[" + f_.str() + "; " + g_.str() + "]";
      case Kind::Analytic: {
        std::string s = "analytic[" + analytic_tag_name(tag_);
        if (tag_ == AnalyticTag::Power) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%g", lambda_);
          s += std::string("(") + buf + ")";
        }
        return s + "]";
      }
    }
    return "?";
  }

 private:
  void require(Kind k) const {
    if (kind_ != k) throw InvariantError("wrong curve kind accessed");
  }

  // Some rational in `outer`... outside `domain` but inside `interval`.
  static Rational witness_outside(const Interval& domain,
                                  const Interval& interval) {
    // The analytic domains are sub-intervals of (0, inf); a failing interval
    // therefore pokes out on at least one side. Probe a few candidates.
    std::vector<Rational> cands;
    if (interval.lower()) {
      cands.push_back(*interval.lower());
      cands.push_back(*interval.lower() + Rational(1, 1024));
    }
    if (interval.upper()) {
      cands.push_back(*interval.upper());
      cands.push_back(*interval.upper() - Rational(1, 1024));
    }
    if (interval.lower() && interval.upper())
      cands.push_back((*interval.lower() + *interval.upper()) / Rational(2));
    cands.push_back(Rational(0));
    cands.push_back(Rational(-1));
    for (const auto& c : cands)
      if (interval.contains(c) && !domain.contains(c)) return c;
    // Unbounded-below interval: walk left until outside the domain.
    Rational probe = interval.upper() ? *interval.upper() - Rational(1)
                                      : Rational(0);
    for (int i = 0; i < 64; ++i) {
      if (interval.contains(probe) && !domain.contains(probe)) return probe;
      probe -= Rational(1);
    }
    throw InvariantError("no witness found for failing interval");
  }

  Kind kind_ = Kind::Poly;
  Polynomial psi_, f_, g_;
  AnalyticTag tag_ = AnalyticTag::Log;
  double lambda_ = 0.0;
  Interval domain_;
};

}  // namespace curvecount
