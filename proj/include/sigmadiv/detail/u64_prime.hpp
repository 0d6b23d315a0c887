#pragma once

#include <cstdint>

namespace sigmadiv::detail {

inline constexpr std::uint64_t kTrialDivisionLimit = 1u << 20;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_trial(std::uint64_t x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (std::uint64_t d = 3; d * d <= x; d += 2) {
    if (x % d == 0) return false;
  }
  return true;
}

// Strong probable-prime test to base a; x odd, x > a.
inline bool strong_probable_prime(std::uint64_t x, std::uint64_t a) {
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t y = powmod(a, d, x);
  if (y == 1 || y == x - 1) return true;
  for (int i = 1; i < s; ++i) {
    y = mulmod(y, y, x);
    if (y == x - 1) return true;
  }
  return false;
}

// Deterministic for every 64-bit input: the first twelve primes form a
// complete witness set below 3.3e24.
inline bool is_prime_u64(std::uint64_t x) {
  if (x < kTrialDivisionLimit) return is_prime_trial(x);
  if (x % 2 == 0) return false;
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (x % a == 0) return false;
    if (!strong_probable_prime(x, a)) return false;
  }
  return true;
}

}  // namespace sigmadiv::detail
