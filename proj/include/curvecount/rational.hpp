#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "curvecount/errors.hpp"

namespace curvecount {

namespace detail {

inline std::size_t hash_mpz(mpz_srcptr z) {
  // FNV-style mix over the limbs plus the signed size word.
  std::size_t h =
      static_cast<std::size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const int n = z->_mp_size < 0 ? -z->_mp_size : z->_mp_size;
  for (int i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(z->_mp_d[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 abs128(i128 v) {
  return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v);
}

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline mpz_class mpz_from_u128(u128 m) {
  mpz_class out(static_cast<unsigned long>(m >> 64));
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
  mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(),
             static_cast<unsigned long>(m & ~0ULL));
  return out;
}

inline mpz_class mpz_from_i128(i128 v) {
  mpz_class out = mpz_from_u128(abs128(v));
  if (v < 0) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
  return out;
}

}  // namespace detail

// Exact rational scalar. Canonical form is maintained at all times:
// gcd(|num|, den) = 1 and den >= 1, so equality, the total order and the
// hash all agree with the rational value.
//
// Values whose canonical numerator and denominator both fit in 64 bits are
// held inline and processed with 128-bit intermediates; anything larger
// falls back to GMP. A value is inline if and only if it fits, so equal
// values always share a representation and hashing stays consistent.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : n_(n) {}   // NOLINT: implicit by design
  Rational(long n) : n_(n) {}  // NOLINT
  Rational(long long n) : n_(static_cast<long>(n)) {
    static_assert(sizeof(long) == sizeof(long long));
  }
  explicit Rational(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) {
      n_ = mpz_get_si(z.get_mpz_t());
    } else {
      big_ = std::make_unique<mpq_class>(z);
    }
  }
  Rational(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    adopt(std::move(q));
  }
  explicit Rational(mpq_class q) {
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw InputError("rational with zero denominator");
    q.canonicalize();
    adopt(std::move(q));
  }

  Rational(const Rational& o)
      : n_(o.n_), d_(o.d_),
        big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "-p", "p/q" with optional sign on either part.
  static Rational parse(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
      throw InputError("bad rational literal: '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw InputError("zero denominator in literal: '" + text + "'");
    return Rational(std::move(q));
  }

  // "p" when the denominator is 1, otherwise "p/q".
  std::string str() const {
    if (big_) return big_->get_str();
    std::string s = std::to_string(n_);
    if (d_ != 1) s += "/" + std::to_string(d_);
    return s;
  }

  mpz_class num() const {
    if (big_) return big_->get_num();
    return mpz_class(n_);
  }
  mpz_class den() const {
    if (big_) return big_->get_den();
    mpz_class d;
    mpz_set_ui(d.get_mpz_t(), d_);
    return d;
  }
  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpq_set_si(q.get_mpq_t(), n_, d_);
    return q;  // canonical already
  }

  bool is_integer() const {
    if (big_) return mpz_cmp_ui(mpq_denref(big_->get_mpq_t()), 1) == 0;
    return d_ == 1;
  }
  int sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
  }
  bool is_zero() const { return !big_ && n_ == 0; }
  double to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
  }

  mpz_class floor() const {
    mpz_class r;
    const mpq_class q = to_mpq();
    mpz_fdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()),
               mpq_denref(q.get_mpq_t()));
    return r;
  }
  mpz_class ceil() const {
    mpz_class r;
    const mpq_class q = to_mpq();
    mpz_cdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()),
               mpq_denref(q.get_mpq_t()));
    return r;
  }

  Rational abs() const {
    if (!big_) {
      if (n_ != std::numeric_limits<long>::min()) {
        Rational r;
        r.n_ = n_ < 0 ? -n_ : n_;
        r.d_ = d_;
        return r;
      }
    }
    return Rational(mpq_class(::abs(to_mpq())));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (add_small(a, b, false, r)) return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (add_small(a, b, true, r)) return r;
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (mul_small(a.n_, a.d_, b.n_, b.d_, r)) return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InputError("rational division by zero");
    if (!a.big_ && !b.big_ && b.n_ != std::numeric_limits<long>::min()) {
      // a / (n2/d2) = a * (d2/n2), sign moved to the numerator
      const long inv_n = b.n_ < 0 ? -static_cast<long>(b.d_)
                                  : static_cast<long>(b.d_);
      const unsigned long inv_d =
          b.n_ < 0 ? static_cast<unsigned long>(-b.n_)
                   : static_cast<unsigned long>(b.n_);
      if (b.d_ <= static_cast<unsigned long>(std::numeric_limits<long>::max())) {
        Rational r;
        if (mul_small(a.n_, a.d_, inv_n, inv_d, r)) return r;
      }
    }
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  }
  Rational operator-() const {
    if (!big_ && n_ != std::numeric_limits<long>::min()) {
      Rational r;
      r.n_ = -n_;
      r.d_ = d_;
      return r;
    }
    return Rational(mpq_class(-to_mpq()));
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_))
      return false;  // inline iff it fits, so representations match
    return mpq_equal(a.big_->get_mpq_t(), b.big_->get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      // cross products stay within 126 bits
      return static_cast<detail::i128>(a.n_) * b.d_ <
             static_cast<detail::i128>(b.n_) * a.d_;
    }
    return mpq_cmp(a.to_mpq().get_mpq_t(), b.to_mpq().get_mpq_t()) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  std::size_t hash() const {
    if (!big_) {
      std::uint64_t h = static_cast<std::uint64_t>(n_) * 0x9e3779b97f4a7c15ULL;
      h ^= (static_cast<std::uint64_t>(d_) + 0x9e3779b97f4a7c15ULL +
            (h << 6) + (h >> 2));
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
    std::size_t h = detail::hash_mpz(mpq_numref(big_->get_mpq_t()));
    h ^= detail::hash_mpz(mpq_denref(big_->get_mpq_t())) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  // a^e for integer e (e may be negative; a must be nonzero then).
  static Rational pow(const Rational& a, long e) {
    if (e == 0) return Rational(1);
    const bool inv = e < 0;
    const unsigned long ue = inv ? static_cast<unsigned long>(-e)
                                 : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), a.num().get_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), a.den().get_mpz_t(), ue);
    if (inv) {
      if (a.is_zero()) throw InputError("zero to a negative power");
      std::swap(n, d);
    }
    mpq_class q(n);
    q /= mpq_class(d);
    return Rational(std::move(q));
  }

 private:
  // Demote to the inline form when the canonical parts fit in 64 bits.
  void adopt(mpq_class q) {
    if (mpz_fits_slong_p(mpq_numref(q.get_mpq_t())) &&
        mpz_fits_slong_p(mpq_denref(q.get_mpq_t()))) {
      n_ = mpz_get_si(mpq_numref(q.get_mpq_t()));
      d_ = static_cast<unsigned long>(mpz_get_si(mpq_denref(q.get_mpq_t())));
      big_.reset();
    } else {
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  // Build from 128-bit canonical parts (gcd already removed, den > 0).
  static Rational from_i128(detail::i128 num, detail::u128 den) {
    Rational r;
    if (num >= std::numeric_limits<long>::min() &&
        num <= std::numeric_limits<long>::max() &&
        den <= static_cast<detail::u128>(std::numeric_limits<long>::max())) {
      r.n_ = static_cast<long>(num);
      r.d_ = static_cast<unsigned long>(den);
      return r;
    }
    mpq_class q;
    mpq_set_num(q.get_mpq_t(), detail::mpz_from_i128(num).get_mpz_t());
    mpq_set_den(q.get_mpq_t(), detail::mpz_from_u128(den).get_mpz_t());
    r.big_ = std::make_unique<mpq_class>(std::move(q));
    return r;
  }

  // a +- b for two inline values; always succeeds (126-bit intermediates).
  static bool add_small(const Rational& a, const Rational& b, bool sub,
                        Rational& out) {
    using detail::i128;
    using detail::u128;
    const unsigned long g = std::gcd(a.d_, b.d_);
    const unsigned long bdg = b.d_ / g;
    const i128 lhs = static_cast<i128>(a.n_) * bdg;
    const i128 rhs = static_cast<i128>(b.n_) * (a.d_ / g);
    const i128 num = sub ? lhs - rhs : lhs + rhs;
    const u128 den = static_cast<u128>(a.d_) * bdg;
    const u128 g2 = detail::gcd128(detail::abs128(num), den);
    if (g2 <= 1) {
      out = from_i128(num, den);
    } else {
      out = from_i128(num / static_cast<i128>(g2), den / g2);
    }
    return true;
  }

  // (n1/d1) * (n2/d2) with cross-reduction; canonical inputs give a
  // canonical product directly.
  static bool mul_small(long n1, unsigned long d1, long n2, unsigned long d2,
                        Rational& out) {
    using detail::i128;
    using detail::u128;
    const unsigned long m1 =
        n1 == std::numeric_limits<long>::min()
            ? static_cast<unsigned long>(std::numeric_limits<long>::max()) + 1
            : static_cast<unsigned long>(n1 < 0 ? -n1 : n1);
    const unsigned long m2 =
        n2 == std::numeric_limits<long>::min()
            ? static_cast<unsigned long>(std::numeric_limits<long>::max()) + 1
            : static_cast<unsigned long>(n2 < 0 ? -n2 : n2);
    const unsigned long g1 = std::gcd(m1, d2);
    const unsigned long g2 = std::gcd(m2, d1);
    const i128 num = (static_cast<i128>(n1) / static_cast<long>(g1)) *
                     (static_cast<i128>(n2) / static_cast<long>(g2));
    const u128 den = static_cast<u128>(d1 / g2) * (d2 / g1);
    out = from_i128(num, den);
    return true;
  }

  long n_ = 0;
  unsigned long d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

// base^e for non-negative integer exponents.
inline mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline mpz_class ipow(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// Natural log of a positive big integer, stable for values far beyond
// double range.
inline double log_mpz(const mpz_class& z) {
  if (mpz_sgn(z.get_mpz_t()) <= 0)
    throw InvariantError("log of non-positive integer");
  signed long int e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * M_LN2;
}

}  // namespace curvecount
