#pragma once

// Exact non-negative integers, exact rationals and the valuation primitives
// used everywhere else. Backed by GMP; nothing here touches floating point.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "sigmadiv/detail/u64_prime.hpp"

namespace sigmadiv {

static_assert(sizeof(unsigned long) == 8, "sigmadiv assumes an LP64 platform");
static_assert(sizeof(long) == 8, "sigmadiv assumes an LP64 platform");

/// Raised when a computation would produce an integer wider than the
/// configured bit cap.
class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Upper bound on the width of any intermediate produced by exponentiation.
struct BitCap {
  std::uint64_t bits = 1'000'000;
};

inline constexpr BitCap kDefaultBitCap{};

/// Arbitrary-precision non-negative integer.
class Nat {
 public:
  Nat() = default;

  template <std::integral T>
  Nat(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (v < 0) throw std::domain_error("Nat: negative value");
      value_ = static_cast<long>(v);
    } else {
      value_ = static_cast<unsigned long>(v);
    }
  }

  explicit Nat(mpz_class v) : value_(std::move(v)) {
    if (sgn(value_) < 0) throw std::domain_error("Nat: negative value");
  }

  static Nat parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Nat: empty string");
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("Nat: not a decimal integer: " + std::string(text));
      }
    }
    return Nat(mpz_class(std::string(text), 10));
  }

  const mpz_class& mpz() const noexcept { return value_; }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_even() const noexcept { return mpz_even_p(value_.get_mpz_t()) != 0; }
  std::uint64_t bit_length() const noexcept {
    return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
  }
  bool fits_u64() const noexcept { return mpz_fits_ulong_p(value_.get_mpz_t()) != 0; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Nat: value exceeds 64 bits");
    return value_.get_ui();
  }
  std::string str() const { return value_.get_str(10); }

  Nat& operator+=(const Nat& o) {
    value_ += o.value_;
    return *this;
  }
  Nat& operator-=(const Nat& o) {
    if (value_ < o.value_) throw std::domain_error("Nat: subtraction underflow");
    value_ -= o.value_;
    return *this;
  }
  Nat& operator*=(const Nat& o) {
    value_ *= o.value_;
    return *this;
  }
  Nat& operator/=(const Nat& o) {
    if (o.is_zero()) throw std::domain_error("Nat: division by zero");
    mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
    return *this;
  }
  Nat& operator%=(const Nat& o) {
    if (o.is_zero()) throw std::domain_error("Nat: modulo by zero");
    mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
    return *this;
  }

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  friend Nat operator/(Nat a, const Nat& b) { return a /= b; }
  friend Nat operator%(Nat a, const Nat& b) { return a %= b; }

  friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.value_; }

 private:
  mpz_class value_{0};
};

/// d | x. Every d divides 0; 0 divides only 0.
inline bool divides(const Nat& d, const Nat& x) {
  if (d.is_zero()) return x.is_zero();
  return mpz_divisible_p(x.mpz().get_mpz_t(), d.mpz().get_mpz_t()) != 0;
}

inline Nat gcd(const Nat& a, const Nat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Nat(std::move(g));
}

/// base^exp, refusing to build results wider than `cap`.
inline Nat pow(const Nat& base, std::uint64_t exp, BitCap cap = kDefaultBitCap) {
  if (exp == 0) return Nat(1);
  if (base.bit_length() <= 1) return base;
  const std::uint64_t lower = (base.bit_length() - 1);
  if (lower > 0 && exp > cap.bits / lower) {
    throw SizeCapExceeded("pow: result exceeds bit cap of " + std::to_string(cap.bits));
  }
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), exp);
  Nat out(std::move(r));
  if (out.bit_length() > cap.bits) {
    throw SizeCapExceeded("pow: result exceeds bit cap of " + std::to_string(cap.bits));
  }
  return out;
}

inline Nat pow2(std::uint64_t exp, BitCap cap = kDefaultBitCap) {
  if (exp + 1 > cap.bits) {
    throw SizeCapExceeded("pow2: result exceeds bit cap of " + std::to_string(cap.bits));
  }
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exp);
  return Nat(std::move(r));
}

/// 2^k - 1.
inline Nat mersenne(std::uint64_t k, BitCap cap = kDefaultBitCap) { return pow2(k, cap) - Nat(1); }

/// 1 + b + ... + b^(m-1), i.e. (b^m - 1)/(b - 1).
inline Nat geometric_sum(const Nat& b, std::uint64_t m, BitCap cap = kDefaultBitCap) {
  if (b < Nat(2)) throw std::invalid_argument("geometric_sum: base must be >= 2");
  if (m < 1) throw std::invalid_argument("geometric_sum: term count must be >= 1");
  return (pow(b, m, cap) - Nat(1)) / (b - Nat(1));
}

/// b^e mod m.
inline Nat modpow(const Nat& b, const Nat& e, const Nat& m) {
  if (m < Nat(2)) throw std::invalid_argument("modpow: modulus must be >= 2");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.mpz().get_mpz_t(), e.mpz().get_mpz_t(), m.mpz().get_mpz_t());
  return Nat(std::move(r));
}

/// The statement base^exponent || subject.
struct Valuation {
  std::uint64_t base = 2;
  std::uint64_t exponent = 0;
  Nat subject{1};

  /// Re-establishes the defining relation by plain division.
  bool holds() const {
    const Nat q(base);
    Nat pe(1);
    for (std::uint64_t i = 0; i < exponent; ++i) pe *= q;
    return divides(pe, subject) && !divides(pe * q, subject);
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Number of times `base` divides `x` by repeated exact division. `base`
/// may be composite.
inline std::uint64_t multiplicity(const Nat& base, const Nat& x) {
  if (base < Nat(2)) throw std::invalid_argument("multiplicity: base must be >= 2");
  if (x.is_zero()) throw std::domain_error("multiplicity: undefined for zero");
  mpz_class rest = x.mpz();
  std::uint64_t e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), base.mpz().get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), base.mpz().get_mpz_t());
    ++e;
  }
  return e;
}

/// base^e || x for an arbitrary base >= 2.
inline bool exactly_divides(const Nat& base, std::uint64_t e, const Nat& x, BitCap cap = kDefaultBitCap) {
  const Nat be = pow(base, e, cap);
  return divides(be, x) && !divides(be * base, x);
}

/// The exact q-adic valuation of x >= 1 for prime q.
inline Valuation v_exact(std::uint64_t q, const Nat& x) {
  if (!detail::is_prime_u64(q)) throw std::invalid_argument("v_exact: base is not prime");
  if (x.is_zero()) throw std::domain_error("v_exact: valuation of zero is undefined");
  std::uint64_t e = 0;
  if (q == 2) {
    e = mpz_scan1(x.mpz().get_mpz_t(), 0);
  } else {
    mpz_class rest;
    const mpz_class qz(static_cast<unsigned long>(q));
    e = mpz_remove(rest.get_mpz_t(), x.mpz().get_mpz_t(), qz.get_mpz_t());
  }
  return Valuation{q, e, x};
}

inline std::uint64_t v2(const Nat& x) { return v_exact(2, x).exponent; }

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rational(const Nat& n) : value_(n.mpz()) {}  // NOLINT(google-explicit-constructor)

  Rational(mpz_class num, mpz_class den) {
    if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(std::move(num), std::move(den));
    value_.canonicalize();
  }

  static Rational parse(std::string_view text) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) {
      throw std::invalid_argument("Rational: cannot parse " + std::string(text));
    }
    if (sgn(q.get_den()) == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    Rational r;
    r.value_ = std::move(q);
    return r;
  }

  mpz_class num() const { return value_.get_num(); }
  Nat den() const { return Nat(value_.get_den()); }
  bool is_integer() const { return value_.get_den() == 1; }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  std::string str() const { return value_.get_str(10); }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }
  Rational operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.value_; }

 private:
  mpq_class value_{0};
};

/// base^exp for any signed exponent; base must be nonzero when exp < 0.
inline Rational pow(const Rational& base, std::int64_t exp, BitCap cap = kDefaultBitCap) {
  if (exp < 0) {
    if (base.is_zero()) throw std::domain_error("pow: zero to a negative power");
    return Rational(1) / pow(base, -exp, cap);
  }
  const auto e = static_cast<std::uint64_t>(exp);
  const mpz_class num = base.num();
  const Nat abs_num(num < 0 ? mpz_class(-num) : num);
  mpz_class pn = pow(abs_num, e, cap).mpz();
  if (num < 0 && (e & 1)) pn = -pn;
  return Rational(std::move(pn), pow(base.den(), e, cap).mpz());
}

}  // namespace sigmadiv
