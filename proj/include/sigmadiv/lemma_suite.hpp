#pragma once

// Runs a named valuation identity or non-divisibility statement over a
// parameter grid and collects one verdict per grid point.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmadiv/classify.hpp"
#include "sigmadiv/valuations.hpp"

namespace sigmadiv {

inline constexpr std::array<std::string_view, 12> kLemmaTags = {
    "vs1", "cando", "appr", "appr2", "tv", "tv2", "sl3", "f", "v10", "u1", "v3", "trichotomy"};

inline bool is_lemma_tag(std::string_view tag) {
  for (auto t : kLemmaTags) {
    if (t == tag) return true;
  }
  return false;
}

struct LemmaParams {
  std::vector<std::uint32_t> ks{3, 5, 7};
  std::optional<std::uint32_t> alpha_max;  // per-tag default when unset
  std::optional<std::uint32_t> beta_max;
  std::uint64_t p_max = 500;  // exclusive
  std::uint32_t v_max = 5;
  std::uint64_t beta1_max = 9;
  std::uint64_t u_max = 1;
  std::uint64_t alpha1_max = 9;
  BitCap cap = kDefaultBitCap;
};

enum class PointStatus { Pass, Fail, Skipped };

inline const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Pass: return "pass";
    case PointStatus::Fail: return "FAIL";
    case PointStatus::Skipped: return "skipped";
  }
  return "?";
}

struct LemmaPoint {
  std::string params;
  std::string expected;
  std::string observed;
  PointStatus status = PointStatus::Pass;
};

struct LemmaReport {
  std::string tag;
  std::vector<LemmaPoint> points;

  std::size_t count(PointStatus s) const {
    std::size_t n = 0;
    for (const auto& p : points) n += p.status == s;
    return n;
  }
  bool ok() const { return count(PointStatus::Fail) == 0 && count(PointStatus::Pass) > 0; }
};

namespace detail {

inline LemmaPoint from_check(std::string params, const ValuationCheck& c) {
  return {std::move(params), std::to_string(c.predicted), std::to_string(c.observed),
          c.holds() ? PointStatus::Pass : PointStatus::Fail};
}

inline LemmaPoint from_flag(std::string params, bool ok, std::string expected = "true") {
  return {std::move(params), std::move(expected), ok ? expected : std::string("false"),
          ok ? PointStatus::Pass : PointStatus::Fail};
}

// Runs `body`; a grid point that would exceed the bit cap is skipped, not failed.
inline void guarded(LemmaReport& rep, const std::string& params, const std::function<LemmaPoint()>& body) {
  try {
    rep.points.push_back(body());
  } catch (const SizeCapExceeded& e) {
    rep.points.push_back({params, "-", e.what(), PointStatus::Skipped});
  }
}

inline std::string kv(std::initializer_list<std::pair<const char*, std::string>> items) {
  std::string s;
  for (const auto& [k, v] : items) {
    if (!s.empty()) s += ' ';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

// Conditional bound over the (alpha, p, beta) search grid: whenever n | sigma_k(n),
// `holds` must be true. Points where n does not divide pass vacuously.
inline void conditional_grid(LemmaReport& rep, const LemmaParams& prm, std::uint32_t p_residue,
                             const std::function<bool(const SpecialForm&)>& holds) {
  const std::uint32_t alpha_max = prm.alpha_max.value_or(8);
  const std::uint32_t beta_max = prm.beta_max.value_or(6);
  const auto primes = odd_primes_below(3 * (std::uint64_t{1} << (alpha_max - 1)) - 1);
  for (std::uint32_t k : prm.ks) {
    if (!is_mersenne_exponent(k)) continue;
    for (std::uint32_t alpha = 2; alpha <= alpha_max; ++alpha) {
      for (std::uint64_t p : primes) {
        if (p % 4 != p_residue) continue;
        for (std::uint32_t beta = 2; beta <= beta_max; beta += 2) {
          const SpecialForm f(alpha, p, beta, k, TrustedPrime{});
          if (!f.satisfies_p_bound()) continue;
          const std::string params = kv({{"k", std::to_string(k)}, {"alpha", std::to_string(alpha)},
                                         {"p", std::to_string(p)}, {"beta", std::to_string(beta)}});
          guarded(rep, params, [&] {
            const bool d = divides_sigma(f, prm.cap);
            if (!d) return LemmaPoint{params, "n|sigma => bound", "n does not divide", PointStatus::Pass};
            return from_flag(params, holds(f), "bound holds");
          });
        }
      }
    }
  }
}

}  // namespace detail

/// Throws std::invalid_argument for an unknown tag.
inline LemmaReport run_lemma_suite(std::string_view tag, const LemmaParams& prm) {
  using detail::kv;
  LemmaReport rep{std::string(tag), {}};
  const BitCap cap = prm.cap;
  auto odd_ks = [&] {
    std::vector<std::uint32_t> out;
    for (auto k : prm.ks) {
      if (k >= 3 && k % 2 == 1) out.push_back(k);
    }
    return out;
  };
  auto s = [](auto x) { return std::to_string(x); };

  if (tag == "vs1") {
    for (auto k : odd_ks()) {
      const std::string params = kv({{"k", s(k)}});
      detail::guarded(rep, params, [&] { return detail::from_check(params, check_vs1(k, cap)); });
    }
  } else if (tag == "cando") {
    for (auto k : odd_ks()) {
      for (std::uint32_t v = 1; v <= prm.v_max; ++v) {
        for (std::uint64_t b1 = 1; b1 <= prm.beta1_max; b1 += 2) {
          const std::uint64_t beta = (std::uint64_t{1} << v) * b1;
          const std::string params = kv({{"k", s(k)}, {"beta", s(beta)}});
          detail::guarded(rep, params, [&] { return detail::from_check(params, check_cando(k, beta, cap)); });
        }
      }
    }
  } else if (tag == "appr") {
    for (auto k : odd_ks()) {
      const Nat base = mersenne(k, cap);
      for (std::uint64_t u = 0; u <= prm.u_max; ++u) {
        for (std::uint64_t a1 = 1; a1 <= prm.alpha1_max; ++a1) {
          if (gcd(base, Nat(a1)) != Nat(1)) continue;
          const std::string params = kv({{"k", s(k)}, {"u", s(u)}, {"alpha1", s(a1)}});
          detail::guarded(rep, params, [&] { return detail::from_check(params, check_appr(k, u, a1, cap)); });
        }
      }
    }
  } else if (tag == "appr2") {
    for (auto k : odd_ks()) {
      const std::string params = kv({{"k", s(k)}});
      detail::guarded(rep, params, [&] {
        const std::uint64_t m = appr_m(k, cap);
        return LemmaPoint{params, "m < " + pow2(k).str(), "m = " + s(m),
                          check_appr2_bound(k, cap) ? PointStatus::Pass : PointStatus::Fail};
      });
    }
  } else if (tag == "tv" || tag == "tv2") {
    const std::uint64_t residue = tag == "tv" ? 1 : 3;
    for (std::uint64_t p : odd_primes_below(prm.p_max)) {
      if (p % 4 != residue) continue;
      for (auto k : odd_ks()) {
        for (std::uint32_t v = 1; v <= prm.v_max; ++v) {
          for (std::uint64_t b1 = 1; b1 <= prm.beta1_max; b1 += 2) {
            const std::string params = kv({{"p", s(p)}, {"k", s(k)}, {"v", s(v)}, {"beta1", s(b1)}});
            detail::guarded(rep, params, [&] {
              return detail::from_check(params, residue == 1 ? check_tv(p, k, v, b1, cap) : check_tv2(p, k, v, b1, cap));
            });
          }
        }
      }
    }
  } else if (tag == "sl3") {
    // Every odd p = 3 mod 4 below p_max, prime or not: p + 1 = 2^lambda p1.
    for (std::uint64_t p = 3; p < prm.p_max; p += 4) {
      const auto lambda = static_cast<std::uint32_t>(__builtin_ctzll(p + 1));
      const std::uint64_t p1 = (p + 1) >> lambda;
      for (std::uint32_t v = 1; v <= prm.v_max; ++v) {
        for (std::uint64_t b1 = 1; b1 <= prm.beta1_max; b1 += 2) {
          const std::string params =
              kv({{"lambda", s(lambda)}, {"p1", s(p1)}, {"v", s(v)}, {"beta1", s(b1)}});
          detail::guarded(rep, params, [&] { return detail::from_check(params, check_sl3(lambda, p1, v, b1, cap)); });
        }
      }
    }
  } else if (tag == "f") {
    const std::uint32_t alpha_max = prm.alpha_max.value_or(8);
    const std::uint32_t beta_max = prm.beta_max.value_or(6);
    for (auto k : prm.ks) {
      if (!is_mersenne_exponent(k)) continue;
      for (std::uint32_t alpha = 2; alpha <= alpha_max; ++alpha) {
        for (std::uint32_t beta = 2; beta <= beta_max; ++beta) {
          const std::string params = kv({{"k", s(k)}, {"alpha", s(alpha)}, {"beta", s(beta)}});
          detail::guarded(rep, params, [&] {
            return detail::from_flag(params, check_lemma_f(k, alpha, beta, cap), "n does not divide");
          });
        }
      }
    }
  } else if (tag == "v10") {
    const CubicCaseResult r = verify_cubic_case(prm.alpha_max.value_or(10), cap);
    rep.points.push_back(detail::from_flag(kv({{"grid_points", s(r.grid_points)}}), r.hits.empty(), "0 hits"));
    for (const auto& [f, d] : r.spot_checks) {
      rep.points.push_back(detail::from_flag(kv({{"alpha", s(f.alpha())}, {"p", s(f.p())}, {"beta", "4"}}), !d,
                                             "n does not divide"));
    }
    for (const auto& c : r.candidates) {
      rep.points.push_back(detail::from_flag(
          kv({{"k1", s(c.k1)}, {"remainder", c.remainder.get_str()}, {"alpha", s(c.alpha)}, {"p", s(c.p)}}),
          !c.divides, "n does not divide"));
    }
  } else if (tag == "u1") {
    detail::conditional_grid(rep, prm, 1, [&](const SpecialForm& f) {
      const BetaSplit bs = split_beta(f.beta());
      return f.alpha() <= bs.v + 1 && bound_u1(f.p(), f.k(), bs.v, cap);
    });
  } else if (tag == "v3") {
    detail::conditional_grid(rep, prm, 3, [&](const SpecialForm& f) {
      const BetaSplit bs = split_beta(f.beta());
      const PSplit ps = split_p(f.p());
      return f.alpha() <= bs.v + *ps.s - 1 && bound_v3(f.p(), f.k(), bs.v, cap);
    });
  } else if (tag == "trichotomy") {
    detail::conditional_grid(rep, prm, 3, [&](const SpecialForm& f) {
      const BetaSplit bs = split_beta(f.beta());
      const PSplit ps = split_p(f.p());
      return f.alpha() <= *ps.lambda + bs.v && !trichotomy_3mod4(f.p(), f.k(), f.beta(), cap).none();
    });
  } else {
    throw std::invalid_argument("unknown lemma tag: " + std::string(tag));
  }
  return rep;
}

}  // namespace sigmadiv
