#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/errors.hpp"
#include "curvecount/rational.hpp"

namespace curvecount {

// Dense univariate polynomial with rational coefficients, stored in
// ascending order of degree. The zero polynomial has an empty coefficient
// vector and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  static Polynomial from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return Polynomial(std::move(c));
  }
  static Polynomial monomial(unsigned k, Rational coeff = Rational(1)) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = std::move(coeff);
    return Polynomial(std::move(c));
  }
  static Polynomial constant(Rational v) {
    return Polynomial(std::vector<Rational>{std::move(v)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const {
    if (is_zero()) throw InvariantError("leading coefficient of zero polynomial");
    return c_.back();
  }
  const Rational& coeff(std::size_t k) const {
    static const Rational zero(0);
    return k < c_.size() ? c_[k] : zero;
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= x;
      acc += c_[i];
    }
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> c(p.c_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }
  Polynomial operator-() const { return Rational(-1) * *this; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

  // Quotient and remainder over the rationals; b must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b) {
    if (b.is_zero()) throw InvariantError("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
    for (int k = a.degree(); k >= db; --k) {
      const Rational f = rem[k] / b.c_.back();
      if (f.is_zero()) continue;
      quot[k - db] = f;
      for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / leading()) * *this;
  }

  // Monic gcd over the rationals.
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // p / gcd(p, p'): same distinct real roots, all simple.
  Polynomial squarefree_part() const {
    if (degree() <= 1) return *this;
    const Polynomial g = gcd(*this, derivative());
    if (g.degree() <= 0) return *this;
    return divmod(*this, g).first;
  }

  // Taylor shift: returns q with q(x) = p(x + a).
  Polynomial shifted(const Rational& a) const {
    if (is_zero()) return *this;
    return taylor(a);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += c_[i].str();
      if (i > 0) s += "*x^" + std::to_string(i);
    }
    return s;
  }

 private:
  Polynomial taylor(const Rational& a) const {
    // b_k = sum_{i>=k} c_i * C(i,k) * a^{i-k}, computed by repeated
    // synthetic evaluation at a.
    std::vector<Rational> work = c_;
    std::vector<Rational> out;
    out.reserve(c_.size());
    while (!work.empty()) {
      Rational r(0);
      for (std::size_t i = work.size(); i-- > 0;) {
        r *= a;
        r += work[i];
      }
      out.push_back(r);
      // divide by (x - a): synthetic division, quotient in place
      std::vector<Rational> quot(work.size() > 1 ? work.size() - 1 : 0,
                                 Rational(0));
      Rational carry(0);
      for (std::size_t i = work.size(); i-- > 1;) {
        carry = work[i] + a * carry;
        quot[i - 1] = carry;
      }
      work = std::move(quot);
    }
    return Polynomial(std::move(out));
  }

  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace curvecount
