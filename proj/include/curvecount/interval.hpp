#pragma once

#include <optional>
#include <string>

#include "curvecount/errors.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

// Real interval with rational or infinite endpoints. An absent endpoint
// means -inf (lower) or +inf (upper). Invariant: lower < upper whenever both
// are finite.
class Interval {
 public:
  Interval() : lo_open_(true), hi_open_(true) {}  // (-inf, +inf)

  Interval(std::optional<Rational> lo, bool lo_open, std::optional<Rational> hi,
           bool hi_open)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open),
        hi_open_(hi_open) {
    if (lo_ && hi_ && !(*lo_ < *hi_))
      throw InputError("interval bounds must satisfy lower < upper");
    if (!lo_) lo_open_ = true;
    if (!hi_) hi_open_ = true;
  }

  static Interval all() { return Interval(); }
  static Interval open(Rational lo, Rational hi) {
    return Interval(std::move(lo), true, std::move(hi), true);
  }
  static Interval closed(Rational lo, Rational hi) {
    return Interval(std::move(lo), false, std::move(hi), false);
  }
  static Interval greater_than(Rational lo) {
    return Interval(std::move(lo), true, std::nullopt, true);
  }
  static Interval at_least(Rational lo) {
    return Interval(std::move(lo), false, std::nullopt, true);
  }
  static Interval less_than(Rational hi) {
    return Interval(std::nullopt, true, std::move(hi), true);
  }

  const std::optional<Rational>& lower() const { return lo_; }
  const std::optional<Rational>& upper() const { return hi_; }
  bool lower_open() const { return lo_open_; }
  bool upper_open() const { return hi_open_; }
  bool bounded() const { return lo_ && hi_; }

  bool contains(const Rational& x) const {
    if (lo_) {
      if (x < *lo_) return false;
      if (lo_open_ && x == *lo_) return false;
    }
    if (hi_) {
      if (*hi_ < x) return false;
      if (hi_open_ && x == *hi_) return false;
    }
    return true;
  }

  bool contains_double(double x) const {
    if (lo_) {
      const double l = lo_->to_double();
      if (x < l || (lo_open_ && x == l)) return false;
    }
    if (hi_) {
      const double h = hi_->to_double();
      if (x > h || (hi_open_ && x == h)) return false;
    }
    return true;
  }

  // Superset test: does this interval contain every point of `inner`?
  bool contains(const Interval& inner) const {
    if (lo_) {
      if (!inner.lo_) return false;
      if (*inner.lo_ < *lo_) return false;
      if (*inner.lo_ == *lo_ && lo_open_ && !inner.lo_open_) return false;
    }
    if (hi_) {
      if (!inner.hi_) return false;
      if (*hi_ < *inner.hi_) return false;
      if (*inner.hi_ == *hi_ && hi_open_ && !inner.hi_open_) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s = lo_open_ ? "(" : "[";
    s += lo_ ? lo_->str() : "-inf";
    s += ", ";
    s += hi_ ? hi_->str() : "+inf";
    s += hi_open_ ? ")" : "]";
    return s;
  }

 private:
  std::optional<Rational> lo_;
  std::optional<Rational> hi_;
  bool lo_open_;
  bool hi_open_;
};

}  // namespace curvecount
