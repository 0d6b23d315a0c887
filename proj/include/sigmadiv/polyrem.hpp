#pragma once

// Dense polynomials over Q and exact long division. Degrees stay tiny here,
// so the representation is a plain coefficient vector.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigmadiv/exactint.hpp"

namespace sigmadiv {

class RationalPoly {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  RationalPoly() = default;
  /// Coefficients in ascending degree.
  explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  RationalPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static RationalPoly constant(Rational c) { return RationalPoly(std::vector<Rational>{std::move(c)}); }
  static RationalPoly monomial(Rational c, std::size_t degree) {
    std::vector<Rational> cs(degree + 1, Rational(0));
    cs[degree] = std::move(c);
    return RationalPoly(std::move(cs));
  }

  /// 1 + x + ... + x^(k-1).
  static RationalPoly all_ones(std::size_t k) { return RationalPoly(std::vector<Rational>(k, Rational(1))); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return is_zero() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const {
    if (is_zero()) throw std::domain_error("RationalPoly: zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return RationalPoly(std::move(out));
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return RationalPoly(std::move(out));
  }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(out));
  }

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeffs_[i] << ")";
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalPoly& p) { return os << p.str(); }

struct DivisionResult {
  RationalPoly quotient;
  RationalPoly remainder;
};

/// f = g * quotient + remainder with deg(remainder) < deg(g).
inline DivisionResult divmod_poly(const RationalPoly& f, const RationalPoly& g) {
  if (g.is_zero()) throw std::domain_error("divmod_poly: division by the zero polynomial");
  std::vector<Rational> rem = f.coeffs();
  const int dg = g.degree();
  if (f.degree() < dg) return {RationalPoly{}, f};
  std::vector<Rational> quot(static_cast<std::size_t>(f.degree() - dg + 1), Rational(0));
  const Rational& lead = g.leading();
  for (int i = f.degree(); i >= dg; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] / lead;
    quot[static_cast<std::size_t>(i - dg)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dg; ++j) {
      rem[static_cast<std::size_t>(i - dg + j)] -= c * g.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dg));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

/// Horner evaluation.
inline Rational eval_poly(const RationalPoly& f, const Rational& x) {
  Rational acc(0);
  const auto& cs = f.coeffs();
  for (std::size_t i = cs.size(); i-- > 0;) acc = acc * x + cs[i];
  return acc;
}

/// Remainder of 1 + x + ... + x^(k-1) divided by x/2 - 1.
inline Rational remainder_at_half(std::uint32_t k) {
  if (k < 2) throw std::invalid_argument("remainder_at_half: k must be >= 2");
  const RationalPoly g{Rational(-1), Rational(mpz_class(1), mpz_class(2))};
  return divmod_poly(RationalPoly::all_ones(k), g).remainder.coeff(0);
}

/// x^4 + x^3 + x^2 + x + 1 divided by k1 x / 4 - 1, for 1 <= k1 <= 5.
inline DivisionResult quartic_division(std::uint32_t k1) {
  if (k1 < 1 || k1 > 5) throw std::invalid_argument("quartic_division: k1 must lie in 1..5");
  const RationalPoly g{Rational(-1), Rational(mpz_class(k1), mpz_class(4))};
  return divmod_poly(RationalPoly::all_ones(5), g);
}

inline Rational quartic_remainder(std::uint32_t k1) { return quartic_division(k1).remainder.coeff(0); }

/// scale * f = (integer quotient) * g + integer remainder, with scale the
/// least common denominator of the quotient and remainder.
struct ClearedDivision {
  Nat scale{1};
  RationalPoly quotient;
  mpz_class remainder;
};

inline ClearedDivision clear_denominators(const DivisionResult& d) {
  mpz_class lcm = 1;
  auto absorb = [&](const Rational& c) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().mpz().get_mpz_t()); };
  for (const auto& c : d.quotient.coeffs()) absorb(c);
  for (const auto& c : d.remainder.coeffs()) absorb(c);
  if (d.remainder.degree() > 0) throw std::domain_error("clear_denominators: remainder is not constant");
  const Rational scale{Nat(lcm)};
  std::vector<Rational> q;
  q.reserve(d.quotient.coeffs().size());
  for (const auto& c : d.quotient.coeffs()) q.push_back(c * scale);
  const Rational r = d.remainder.coeff(0) * scale;
  return {Nat(lcm), RationalPoly(std::move(q)), r.num()};
}

}  // namespace sigmadiv
