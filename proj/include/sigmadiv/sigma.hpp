#pragma once

// Divisor-power sums and the factored shape n = 2^(alpha-1) * p^(beta-1).
//
// NOTE: `beta` follows the exponent-plus-one convention. The odd prime
// appears in n with exponent beta - 1, never beta. The same holds for
// alpha and the power of two.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sigmadiv/exactint.hpp"
#include "sigmadiv/primality.hpp"

namespace sigmadiv {

/// Marks a caller-side guarantee that p is already known to be an odd prime.
struct TrustedPrime {
  explicit TrustedPrime() = default;
};

class SpecialForm {
 public:
  SpecialForm(std::uint32_t alpha, std::uint64_t p, std::uint32_t beta, std::uint32_t k)
      : SpecialForm(alpha, p, beta, k, TrustedPrime{}) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("SpecialForm: p must be an odd prime");
  }

  SpecialForm(std::uint32_t alpha, std::uint64_t p, std::uint32_t beta, std::uint32_t k, TrustedPrime)
      : alpha_(alpha), p_(p), beta_(beta), k_(k) {
    if (alpha < 2) throw std::invalid_argument("SpecialForm: alpha must be > 1");
    if (beta < 2) throw std::invalid_argument("SpecialForm: beta must be >= 2");
    if (k < 1) throw std::invalid_argument("SpecialForm: k must be >= 1");
    if (p % 2 == 0) throw std::invalid_argument("SpecialForm: p must be odd");
  }

  std::uint32_t alpha() const noexcept { return alpha_; }
  std::uint64_t p() const noexcept { return p_; }
  std::uint32_t beta() const noexcept { return beta_; }
  std::uint32_t k() const noexcept { return k_; }

  /// 2^(alpha-1) * p^(beta-1).
  Nat n(BitCap cap = kDefaultBitCap) const { return two_part(cap) * odd_part(cap); }
  Nat two_part(BitCap cap = kDefaultBitCap) const { return pow2(alpha_ - 1, cap); }
  Nat odd_part(BitCap cap = kDefaultBitCap) const { return pow(Nat(p_), beta_ - 1, cap); }

  /// p < 3 * 2^(alpha-1) - 1.
  bool satisfies_p_bound() const {
    if (alpha_ >= 64) return true;
    return Nat(p_) + Nat(1) < Nat(3) * pow2(alpha_ - 1);
  }

  friend bool operator==(const SpecialForm&, const SpecialForm&) = default;

 private:
  std::uint32_t alpha_;
  std::uint64_t p_;
  std::uint32_t beta_;
  std::uint32_t k_;
};

/// n = 2^(q-1) * (2^q - 1) with 2^q - 1 prime.
struct PerfectWitness {
  std::uint32_t q = 2;
  Nat n{6};

  friend bool operator==(const PerfectWitness&, const PerfectWitness&) = default;
};

/// Throws unless 2^q - 1 is prime.
inline PerfectWitness make_perfect(std::uint32_t q, BitCap cap = kDefaultBitCap) {
  const MersenneCandidate m = mersenne_candidate(q, cap);
  if (!m.is_prime) throw std::invalid_argument("make_perfect: 2^q - 1 is not prime");
  return PerfectWitness{q, pow2(q - 1, cap) * m.value};
}

/// Even perfect numbers 2^(q-1)(2^q-1) for Mersenne exponents q <= q_max.
inline std::vector<PerfectWitness> even_perfect_numbers(std::uint32_t q_max, BitCap cap = kDefaultBitCap) {
  std::vector<PerfectWitness> out;
  if (q_max < 2) return out;
  for (std::uint32_t q : mersenne_exponents_upto(q_max, cap)) out.push_back(make_perfect(q, cap));
  return out;
}

/// Prime factorisation by trial division; intended for desk-scale inputs.
inline std::vector<std::pair<Nat, std::uint32_t>> factorize(const Nat& n) {
  if (n.is_zero()) throw std::domain_error("factorize: zero has no factorisation");
  std::vector<std::pair<Nat, std::uint32_t>> out;
  mpz_class rest = n.mpz();
  auto strip = [&](unsigned long d) {
    std::uint32_t e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++e;
    }
    if (e > 0) out.emplace_back(Nat(d), e);
  };
  strip(2);
  for (unsigned long d = 3; mpz_cmp_ui(rest.get_mpz_t(), d) >= 0; d += 2) {
    // Stop once d^2 exceeds the cofactor; what remains is prime.
    mpz_class dd(d);
    dd *= d;
    if (dd > rest) break;
    strip(d);
  }
  if (rest > 1) out.emplace_back(Nat(std::move(rest)), 1u);
  return out;
}

/// Sum of k-th powers of the divisors of n, via the prime factorisation.
inline Nat sigma_k(const Nat& n, std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (n.is_zero()) throw std::domain_error("sigma_k: n must be >= 1");
  Nat total(1);
  for (const auto& [q, e] : factorize(n)) {
    if (k == 0) {
      total *= Nat(e + 1);
    } else {
      total *= geometric_sum(pow(q, k, cap), e + 1, cap);
    }
  }
  return total;
}

/// sigma_k(2^(alpha-1)) * sigma_k(p^(beta-1)) as two geometric sums; never factors.
inline Nat sigma_k_special(const SpecialForm& f, BitCap cap = kDefaultBitCap) {
  const Nat two_k = pow2(f.k(), cap);
  const Nat p_k = pow(Nat(f.p()), f.k(), cap);
  return geometric_sum(two_k, f.alpha(), cap) * geometric_sum(p_k, f.beta(), cap);
}

/// n | sigma_k(n) for the special form.
inline bool divides_sigma(const SpecialForm& f, BitCap cap = kDefaultBitCap) {
  return divides(f.n(cap), sigma_k_special(f, cap));
}

/// Euclid-Euler: n = 2^(q-1)(2^q - 1) with 2^q - 1 prime.
inline bool is_even_perfect(const Nat& n) {
  if (n.is_zero() || !n.is_even()) return false;
  const std::uint64_t a = v2(n);
  const Nat odd = n / pow2(a);
  const std::uint64_t q = a + 1;
  if (q > UINT32_MAX || odd != mersenne(q, BitCap{q + 1})) return false;
  return mersenne_candidate(static_cast<std::uint32_t>(q)).is_prime;
}

}  // namespace sigmadiv
