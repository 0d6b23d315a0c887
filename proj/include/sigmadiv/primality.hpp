#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sigmadiv/detail/u64_prime.hpp"
#include "sigmadiv/exactint.hpp"

namespace sigmadiv {

/// 2^k - 1 together with its primality verdict.
struct MersenneCandidate {
  std::uint32_t k = 2;
  Nat value{3};
  bool is_prime = true;

  friend bool operator==(const MersenneCandidate&, const MersenneCandidate&) = default;
};

inline bool is_prime(std::uint64_t x) { return detail::is_prime_u64(x); }

/// Lucas-Lehmer test for an odd exponent k >= 3. The recurrence only ever
/// certifies primes, so an odd composite k correctly yields a composite verdict.
inline MersenneCandidate lucas_lehmer(std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (k < 3 || k % 2 == 0) {
    throw std::invalid_argument("lucas_lehmer: exponent must be odd and >= 3");
  }
  const Nat m = mersenne(k, cap);
  const mpz_class& mz = m.mpz();
  mpz_class s = 4;
  for (std::uint32_t i = 0; i < k - 2; ++i) {
    s = s * s - 2;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mz.get_mpz_t());
  }
  return MersenneCandidate{k, m, sgn(s) == 0};
}

/// Primality of 2^k - 1 for any k >= 2.
inline MersenneCandidate mersenne_candidate(std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (k < 2) throw std::invalid_argument("mersenne_candidate: exponent must be >= 2");
  if (k == 2) return MersenneCandidate{2, Nat(3), true};
  if (k % 2 == 0) return MersenneCandidate{k, mersenne(k, cap), false};
  return lucas_lehmer(k, cap);
}

/// Exact primality. Inputs wider than 64 bits are accepted only in the
/// form 2^k - 1, where Lucas-Lehmer decides them.
inline bool is_prime(const Nat& x) {
  if (x.fits_u64()) return detail::is_prime_u64(x.to_u64());
  const Nat next = x + Nat(1);
  const std::uint64_t bits = x.bit_length();
  if (next == pow2(bits, BitCap{bits + 1})) {
    if (bits > UINT32_MAX) throw std::domain_error("is_prime: Mersenne exponent too large");
    return mersenne_candidate(static_cast<std::uint32_t>(bits)).is_prime;
  }
  throw std::domain_error("is_prime: inputs above 64 bits must be of the form 2^k - 1");
}

/// Prime exponents k <= bound with 2^k - 1 prime, ascending.
inline std::vector<std::uint32_t> mersenne_exponents_upto(std::uint32_t bound, BitCap cap = kDefaultBitCap) {
  if (bound < 2) throw std::invalid_argument("mersenne_exponents_upto: bound must be >= 2");
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k <= bound; ++k) {
    if (!detail::is_prime_u64(k)) continue;
    if (mersenne_candidate(k, cap).is_prime) out.push_back(k);
  }
  return out;
}

/// Odd primes strictly below `limit` (sieve of Eratosthenes).
inline std::vector<std::uint64_t> odd_primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit <= 3) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 3; i * i < limit; i += 2) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j < limit; j += 2 * i) composite[j] = true;
  }
  for (std::uint64_t i = 3; i < limit; i += 2) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

}  // namespace sigmadiv
