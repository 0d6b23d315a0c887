#pragma once

// Exact 2-adic (and (2^k-1)-adic) valuation identities, the decompositions
// they are stated in, and the size bounds derived from them. Every check_*
// function recomputes the valuation from scratch and compares it with the
// closed-form prediction.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmadiv/exactint.hpp"

namespace sigmadiv {

/// beta = 2^v * beta1 with beta1 odd and v >= 1.
struct BetaSplit {
  std::uint32_t v = 1;
  std::uint64_t beta1 = 1;

  std::uint64_t beta() const { return (std::uint64_t{1} << v) * beta1; }
  friend bool operator==(const BetaSplit&, const BetaSplit&) = default;
};

/// Power-of-two splits of p - 1, p^2 - 1 and p + 1. Only the fields that
/// belong to p's residue class mod 4 are populated.
struct PSplit {
  std::uint64_t p = 3;
  // p = 1 mod 4: p - 1 = 2^t * p1
  std::optional<std::uint32_t> t;
  // p = 3 mod 4: p^2 - 1 = 2^s * p2 and p + 1 = 2^lambda * p1
  std::optional<std::uint32_t> s;
  std::optional<std::uint32_t> lambda;
  std::uint64_t p1 = 1;
  std::optional<Nat> p2;

  friend bool operator==(const PSplit&, const PSplit&) = default;
};

/// alpha = (2^k-1)^u * alpha1 with gcd(alpha1, 2^k-1) = 1, plus the exponent
/// m with (2^k-1)^m || 2^((2^k-1)k) - 1.
struct AlphaSplit {
  std::uint64_t u = 0;
  Nat alpha1{1};
  std::uint64_t m = 2;

  friend bool operator==(const AlphaSplit&, const AlphaSplit&) = default;
};

/// Closed-form prediction next to the value found by direct computation.
struct ValuationCheck {
  std::uint64_t predicted = 0;
  std::uint64_t observed = 0;

  bool holds() const { return predicted == observed; }
  explicit operator bool() const { return holds(); }
};

namespace detail {

inline void require_odd_exponent(std::uint32_t k, const char* who) {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument(std::string(who) + ": k must be odd and >= 3");
}

// 2^v as a machine integer; anything wider is already past any sane cap.
inline std::uint64_t two_to(std::uint32_t v, BitCap cap) {
  if (v >= 62 || (std::uint64_t{1} << v) > cap.bits) {
    throw SizeCapExceeded("exponent 2^" + std::to_string(v) + " exceeds bit cap");
  }
  return std::uint64_t{1} << v;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw SizeCapExceeded("exponent overflows 64 bits");
  return a * b;
}

}  // namespace detail

inline BetaSplit split_beta(std::uint64_t beta) {
  if (beta < 2 || beta % 2 != 0) throw std::invalid_argument("split_beta: beta must be even and >= 2");
  BetaSplit out;
  out.v = static_cast<std::uint32_t>(__builtin_ctzll(beta));
  out.beta1 = beta >> out.v;
  return out;
}

inline PSplit split_p(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("split_p: p must be odd and >= 3");
  PSplit out;
  out.p = p;
  if (p % 4 == 1) {
    const auto t = static_cast<std::uint32_t>(__builtin_ctzll(p - 1));
    out.t = t;
    out.p1 = (p - 1) >> t;
  } else {
    const auto lambda = static_cast<std::uint32_t>(__builtin_ctzll(p + 1));
    out.lambda = lambda;
    out.p1 = (p + 1) >> lambda;
    const Nat sq = Nat(p) * Nat(p) - Nat(1);
    const auto s = static_cast<std::uint32_t>(v2(sq));
    out.s = s;
    out.p2 = sq / pow2(s);
  }
  return out;
}

/// m with (2^k-1)^m || 2^((2^k-1)k) - 1, by repeated division.
inline std::uint64_t appr_m(std::uint32_t k, BitCap cap = kDefaultBitCap) {
  const Nat base = mersenne(k, cap);
  const Nat exponent = base * Nat(k);
  if (!exponent.fits_u64() || exponent.to_u64() >= cap.bits) {
    throw SizeCapExceeded("appr_m: 2^((2^k-1)k) exceeds bit cap");
  }
  return multiplicity(base, mersenne(exponent.to_u64(), cap));
}

inline AlphaSplit split_alpha(std::uint64_t alpha, std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (alpha < 1) throw std::invalid_argument("split_alpha: alpha must be >= 1");
  const Nat base = mersenne(k, cap);
  AlphaSplit out;
  out.u = multiplicity(base, Nat(alpha));
  out.alpha1 = Nat(alpha) / pow(base, out.u, cap);
  out.m = appr_m(k, cap);
  return out;
}

/// 2^(k+1) || (2^k-1)^(2k) - 1 for odd k >= 3.
inline ValuationCheck check_vs1(std::uint32_t k, BitCap cap = kDefaultBitCap) {
  detail::require_odd_exponent(k, "check_vs1");
  const Nat x = pow(mersenne(k, cap), std::uint64_t{2} * k, cap) - Nat(1);
  return {std::uint64_t{k} + 1, v2(x)};
}

/// 2^(v+k) || (2^k-1)^(beta k) - 1 with beta = 2^v beta1.
inline ValuationCheck check_cando(std::uint32_t k, std::uint64_t beta, BitCap cap = kDefaultBitCap) {
  detail::require_odd_exponent(k, "check_cando");
  const BetaSplit split = split_beta(beta);
  const Nat x = pow(mersenne(k, cap), detail::checked_mul(beta, k), cap) - Nat(1);
  return {std::uint64_t{split.v} + k, v2(x)};
}

/// (2^k-1)^(u+m) || 2^((2^k-1)^(u+1) k alpha1) - 1 when gcd(alpha1, 2^k-1) = 1.
/// `observed` counts how often 2^k-1 itself divides, by plain division.
inline ValuationCheck check_appr(std::uint32_t k, std::uint64_t u, std::uint64_t alpha1,
                                 BitCap cap = kDefaultBitCap) {
  detail::require_odd_exponent(k, "check_appr");
  if (alpha1 < 1) throw std::invalid_argument("check_appr: alpha1 must be >= 1");
  const Nat base = mersenne(k, cap);
  if (gcd(base, Nat(alpha1)) != Nat(1)) {
    throw std::invalid_argument("check_appr: alpha1 must be coprime to 2^k - 1");
  }
  const std::uint64_t m = appr_m(k, cap);
  const Nat exponent = pow(base, u + 1, cap) * Nat(k) * Nat(alpha1);
  if (!exponent.fits_u64() || exponent.to_u64() >= cap.bits) {
    throw SizeCapExceeded("check_appr: 2^" + exponent.str() + " exceeds bit cap");
  }
  const Nat x = mersenne(exponent.to_u64(), cap);
  return {u + m, multiplicity(base, x)};
}

/// m < 2^k.
inline bool check_appr2_bound(std::uint32_t k, BitCap cap = kDefaultBitCap) {
  detail::require_odd_exponent(k, "check_appr2_bound");
  return Nat(appr_m(k, cap)) < pow2(k, cap);
}

/// 2^(t+v) || p^(2^v beta1 k) - 1 for p = 1 mod 4, where 2^t || p - 1.
inline ValuationCheck check_tv(std::uint64_t p, std::uint32_t k, std::uint32_t v, std::uint64_t beta1,
                               BitCap cap = kDefaultBitCap) {
  if (p % 4 != 1) throw std::invalid_argument("check_tv: p must be 1 mod 4");
  detail::require_odd_exponent(k, "check_tv");
  if (v < 1 || beta1 % 2 == 0) throw std::invalid_argument("check_tv: need v >= 1 and beta1 odd");
  const PSplit split = split_p(p);
  const std::uint64_t e = detail::checked_mul(detail::checked_mul(detail::two_to(v, cap), beta1), k);
  const Nat x = pow(Nat(p), e, cap) - Nat(1);
  return {std::uint64_t{*split.t} + v, v2(x)};
}

/// 2^(v+s-1) || p^(k 2^v beta1) - 1 for p = 3 mod 4, where 2^s || p^2 - 1.
inline ValuationCheck check_tv2(std::uint64_t p, std::uint32_t k, std::uint32_t v, std::uint64_t beta1,
                                BitCap cap = kDefaultBitCap) {
  if (p % 4 != 3) throw std::invalid_argument("check_tv2: p must be 3 mod 4");
  detail::require_odd_exponent(k, "check_tv2");
  if (v < 1 || beta1 % 2 == 0) throw std::invalid_argument("check_tv2: need v >= 1 and beta1 odd");
  const PSplit split = split_p(p);
  const std::uint64_t e = detail::checked_mul(detail::checked_mul(detail::two_to(v, cap), beta1), k);
  const Nat x = pow(Nat(p), e, cap) - Nat(1);
  return {std::uint64_t{v} + *split.s - 1, v2(x)};
}

/// 2^(lambda+v) || (2^lambda p1 - 1)^(2^v beta1) - 1. A binomial identity:
/// 2^lambda p1 - 1 need not be prime.
inline ValuationCheck check_sl3(std::uint32_t lambda, std::uint64_t p1, std::uint32_t v, std::uint64_t beta1,
                                BitCap cap = kDefaultBitCap) {
  if (lambda < 2) throw std::invalid_argument("check_sl3: lambda must be >= 2");
  if (p1 % 2 == 0 || beta1 % 2 == 0 || v < 1) {
    throw std::invalid_argument("check_sl3: need p1, beta1 odd and v >= 1");
  }
  const Nat base = pow2(lambda, cap) * Nat(p1) - Nat(1);
  const std::uint64_t e = detail::checked_mul(detail::two_to(v, cap), beta1);
  const Nat x = pow(base, e, cap) - Nat(1);
  return {std::uint64_t{lambda} + v, v2(x)};
}

/// p^(2^v - 1) <= (2^(k(v+1)) - 1)/(2^k - 1), for p = 1 mod 4.
inline bool bound_u1(std::uint64_t p, std::uint32_t k, std::uint32_t v, BitCap cap = kDefaultBitCap) {
  if (p % 4 != 1) throw std::invalid_argument("bound_u1: p must be 1 mod 4");
  const Nat lhs = pow(Nat(p), detail::two_to(v, cap) - 1, cap);
  return lhs <= geometric_sum(pow2(k, cap), std::uint64_t{v} + 1, cap);
}

/// bound_u1 by cross-multiplication instead of the quotient.
inline bool bound_u1_cross(std::uint64_t p, std::uint32_t k, std::uint32_t v, BitCap cap = kDefaultBitCap) {
  if (p % 4 != 1) throw std::invalid_argument("bound_u1: p must be 1 mod 4");
  const Nat lhs = pow(Nat(p), detail::two_to(v, cap) - 1, cap) * mersenne(k, cap);
  return lhs <= mersenne(detail::checked_mul(k, std::uint64_t{v} + 1), cap);
}

/// p^(2^v - 2k - 1) < 2^(k(v-1)) / (2^k - 1), for p = 3 mod 4, compared as
/// exact rationals (the exponent on p may be negative).
inline bool bound_v3(std::uint64_t p, std::uint32_t k, std::uint32_t v, BitCap cap = kDefaultBitCap) {
  if (p % 4 != 3) throw std::invalid_argument("bound_v3: p must be 3 mod 4");
  if (v < 1) throw std::invalid_argument("bound_v3: v must be >= 1");
  const auto e = static_cast<std::int64_t>(detail::two_to(v, cap)) - 2 * static_cast<std::int64_t>(k) - 1;
  const Rational lhs = pow(Rational(Nat(p)), e, cap);
  const Rational rhs = Rational(pow2(std::uint64_t{k} * (v - 1), cap)) / Rational(mersenne(k, cap));
  return lhs < rhs;
}

/// bound_v3 by integer cross-multiplication.
inline bool bound_v3_cross(std::uint64_t p, std::uint32_t k, std::uint32_t v, BitCap cap = kDefaultBitCap) {
  if (p % 4 != 3) throw std::invalid_argument("bound_v3: p must be 3 mod 4");
  if (v < 1) throw std::invalid_argument("bound_v3: v must be >= 1");
  const auto e = static_cast<std::int64_t>(detail::two_to(v, cap)) - 2 * static_cast<std::int64_t>(k) - 1;
  const Nat rhs_num = pow2(std::uint64_t{k} * (v - 1), cap);
  if (e >= 0) {
    return pow(Nat(p), static_cast<std::uint64_t>(e), cap) * mersenne(k, cap) < rhs_num;
  }
  return mersenne(k, cap) < rhs_num * pow(Nat(p), static_cast<std::uint64_t>(-e), cap);
}

enum class Scenario { PEqualsK, Scenario2, Scenario3, None };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::PEqualsK: return "P_EQUALS_K";
    case Scenario::Scenario2: return "SCENARIO_2";
    case Scenario::Scenario3: return "SCENARIO_3";
    case Scenario::None: return "NONE";
  }
  return "?";
}

/// Which of the three necessary conditions for p = 3 mod 4 hold.
struct Trichotomy {
  bool p_equals_k = false;
  bool scenario2 = false;
  bool scenario3 = false;

  bool none() const { return !p_equals_k && !scenario2 && !scenario3; }

  /// Every scenario that holds, or {None}.
  std::vector<Scenario> tags() const {
    std::vector<Scenario> out;
    if (p_equals_k) out.push_back(Scenario::PEqualsK);
    if (scenario2) out.push_back(Scenario::Scenario2);
    if (scenario3) out.push_back(Scenario::Scenario3);
    if (out.empty()) out.push_back(Scenario::None);
    return out;
  }
};

/// With p + 1 = 2^lambda p1 and beta = 2^v beta1:
///   (1) p = k
///   (2) (2^lambda - 1)^(beta-1) <= 2^(lambda+v) - 1
///   (3) (2^lambda - 1)^(beta-1) <= sum_{i<k} 2^(i(lambda+v))
/// None holding rules out n | sigma_k(n).
inline Trichotomy trichotomy_3mod4(std::uint64_t p, std::uint32_t k, std::uint64_t beta,
                                   BitCap cap = kDefaultBitCap) {
  if (p % 4 != 3) throw std::invalid_argument("trichotomy_3mod4: p must be 3 mod 4");
  const BetaSplit bs = split_beta(beta);
  const PSplit ps = split_p(p);
  const std::uint64_t lv = std::uint64_t{*ps.lambda} + bs.v;
  const Nat lhs = pow(mersenne(*ps.lambda, cap), beta - 1, cap);
  Trichotomy out;
  out.p_equals_k = (p == k);
  out.scenario2 = lhs <= mersenne(lv, cap);
  out.scenario3 = lhs <= geometric_sum(pow2(lv, cap), k, cap);
  return out;
}

}  // namespace sigmadiv
