#pragma once

// The classification engine. Every grid point is decided twice: once by
// dividing sigma_k(n) by n outright, and once by the chain of necessary
// conditions and size bounds that rule points out without that division.
// The two must agree; any point where a pruner rejects a genuine solution
// is recorded as a disagreement and poisons the whole run.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sigmadiv/exactint.hpp"
#include "sigmadiv/polyrem.hpp"
#include "sigmadiv/primality.hpp"
#include "sigmadiv/sigma.hpp"
#include "sigmadiv/valuations.hpp"

namespace sigmadiv {

/// The two coprime halves of n | sigma_k(n) for n = 2^(alpha-1) p^(beta-1).
struct DivisibilityConditions {
  bool cond_k1_holds = false;  // 2^(alpha-1) | (p^(beta k) - 1)/(p^k - 1)
  bool cond_k2_holds = false;  // p^(beta-1) | (2^(alpha k) - 1)/(2^k - 1)
  bool beta_even = false;

  bool both() const { return cond_k1_holds && cond_k2_holds; }
};

inline DivisibilityConditions derive_conditions(const SpecialForm& f, BitCap cap = kDefaultBitCap) {
  DivisibilityConditions c;
  c.cond_k1_holds = divides(f.two_part(cap), geometric_sum(pow(Nat(f.p()), f.k(), cap), f.beta(), cap));
  c.cond_k2_holds = divides(f.odd_part(cap), geometric_sum(pow2(f.k(), cap), f.alpha(), cap));
  c.beta_even = f.beta() % 2 == 0;
  return c;
}

/// Reasons a grid point can be rejected without computing sigma_k(n).
enum class Pruner {
  Parity,       // beta odd: the odd-term sum has odd length
  LemmaF,       // p = 2^k - 1
  U2,           // p = 1 mod 4 and alpha > v + 1
  U1,           // p = 1 mod 4 and p^(2^v-1) exceeds its bound
  V4,           // p = 3 mod 4 and alpha > v + s - 1
  V3,           // p = 3 mod 4 and p^(2^v-2k-1) exceeds its bound
  Sl3,          // p = 3 mod 4 and alpha > lambda + v
  Trichotomy,   // p = 3 mod 4 and none of the three scenarios holds
  V10,          // k = 5, beta = 4, p = 3 mod 4 under the p-bound
  SinglePrime,  // beta = 2 under the p-bound and n is not a qualifying perfect number
};

inline const char* to_string(Pruner p) {
  switch (p) {
    case Pruner::Parity: return "parity";
    case Pruner::LemmaF: return "f";
    case Pruner::U2: return "u2";
    case Pruner::U1: return "u1";
    case Pruner::V4: return "v4";
    case Pruner::V3: return "v3";
    case Pruner::Sl3: return "sl3";
    case Pruner::Trichotomy: return "trichotomy";
    case Pruner::V10: return "v10";
    case Pruner::SinglePrime: return "single-prime";
  }
  return "?";
}

inline std::optional<Pruner> pruner_from_string(std::string_view s) {
  for (Pruner p : {Pruner::Parity, Pruner::LemmaF, Pruner::U2, Pruner::U1, Pruner::V4, Pruner::V3, Pruner::Sl3,
                   Pruner::Trichotomy, Pruner::V10, Pruner::SinglePrime}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

struct ClassificationReport {
  SpecialForm form;
  Nat n;
  bool divides = false;
  bool perfect = false;
  bool excluded_perfect = false;  // n = 2^(k-1)(2^k-1)
  std::optional<Pruner> pruned_by;
  std::chrono::nanoseconds timing{0};  // not part of equality

  friend bool operator==(const ClassificationReport& a, const ClassificationReport& b) {
    return a.form == b.form && a.n == b.n && a.divides == b.divides && a.perfect == b.perfect &&
           a.excluded_perfect == b.excluded_perfect && a.pruned_by == b.pruned_by;
  }
};

struct Disagreement {
  SpecialForm form;
  std::string what;

  friend bool operator==(const Disagreement&, const Disagreement&) = default;
};

/// True when k > 2 is prime and 2^k - 1 is prime.
inline bool is_mersenne_exponent(std::uint32_t k) {
  return k > 2 && is_prime(std::uint64_t{k}) && mersenne_candidate(k).is_prime;
}

inline bool is_excluded_perfect(const Nat& n, std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (k < 2) return false;
  return n == pow2(k - 1, cap) * mersenne(k, cap);
}

/// Pruners that reject `f`, in declaration order. Apart from parity, they
/// are only sound when k is a Mersenne exponent > 2.
inline std::vector<Pruner> firing_pruners(const SpecialForm& f, BitCap cap = kDefaultBitCap) {
  std::vector<Pruner> out;
  const std::uint64_t p = f.p();
  const std::uint32_t alpha = f.alpha();
  const std::uint32_t beta = f.beta();
  const std::uint32_t k = f.k();
  if (beta % 2 != 0) out.push_back(Pruner::Parity);
  if (!is_mersenne_exponent(k)) return out;

  if (k < 64 && Nat(p) == mersenne(k, cap)) out.push_back(Pruner::LemmaF);

  if (beta % 2 == 0) {
    const BetaSplit bs = split_beta(beta);
    const PSplit ps = split_p(p);
    if (p % 4 == 1) {
      if (alpha > bs.v + 1) out.push_back(Pruner::U2);
      if (!bound_u1(p, k, bs.v, cap)) out.push_back(Pruner::U1);
    } else {
      if (alpha > std::uint64_t{bs.v} + *ps.s - 1) out.push_back(Pruner::V4);
      if (!bound_v3(p, k, bs.v, cap)) out.push_back(Pruner::V3);
      if (alpha > std::uint64_t{*ps.lambda} + bs.v) out.push_back(Pruner::Sl3);
      if (trichotomy_3mod4(p, k, beta, cap).none()) out.push_back(Pruner::Trichotomy);
    }
  }

  const bool bounded = f.satisfies_p_bound();
  if (bounded && k == 5 && beta == 4 && p % 4 == 3) out.push_back(Pruner::V10);
  if (bounded && beta == 2) {
    const bool qualifying = alpha < 64 && Nat(p) == mersenne(alpha, cap) && alpha != k &&
                            mersenne_candidate(alpha, cap).is_prime;
    if (!qualifying) out.push_back(Pruner::SinglePrime);
  }
  return out;
}

struct PointOutcome {
  ClassificationReport report;
  DivisibilityConditions conditions;
  std::vector<Pruner> fired;
  std::vector<Disagreement> disagreements;
};

/// Decides one grid point by direct division and cross-checks every pruner.
inline PointOutcome classify_point(const SpecialForm& f, BitCap cap = kDefaultBitCap) {
  const auto start = std::chrono::steady_clock::now();
  PointOutcome out{ClassificationReport{f, f.n(cap)}, {}, {}, {}};
  ClassificationReport& r = out.report;
  r.divides = divides(r.n, sigma_k_special(f, cap));
  r.perfect = f.beta() == 2 && is_even_perfect(r.n);
  r.excluded_perfect = r.perfect && is_excluded_perfect(r.n, f.k(), cap);

  out.conditions = derive_conditions(f, cap);
  if (out.conditions.both() != r.divides) {
    out.disagreements.push_back({f, "conditions disagree with direct division"});
  }
  if (out.conditions.cond_k1_holds && !out.conditions.beta_even) {
    out.disagreements.push_back({f, "2-part condition holds with odd beta"});
  }

  out.fired = firing_pruners(f, cap);
  if (!out.fired.empty()) r.pruned_by = out.fired.front();
  if (r.divides) {
    for (Pruner p : out.fired) {
      out.disagreements.push_back({f, std::string("pruner ") + to_string(p) + " rejects a solution"});
    }
  }
  r.timing = std::chrono::steady_clock::now() - start;
  return out;
}

enum class SearchMode { SinglePrime, PrimePower, Conjecture };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::SinglePrime: return "single-prime";
    case SearchMode::PrimePower: return "prime-power";
    case SearchMode::Conjecture: return "conjecture";
  }
  return "?";
}

inline constexpr std::uint32_t kMaxAlpha = 26;

struct GridSpec {
  std::uint32_t k = 5;
  std::uint32_t alpha_max = 13;
  std::uint32_t beta_min = 2;
  std::uint32_t beta_max = 16;
  std::optional<std::uint32_t> p_mod4;  // restrict to p = 1 or p = 3 mod 4
};

struct SearchOptions {
  unsigned workers = 1;
  BitCap cap = kDefaultBitCap;
};

struct SearchResult {
  SearchMode mode = SearchMode::PrimePower;
  GridSpec grid;
  std::vector<ClassificationReport> solutions;  // ascending n
  std::vector<Nat> predicted;
  std::vector<Nat> unexpected;  // solutions outside the predicted set
  std::vector<Nat> missing;     // predicted but not found
  std::vector<Disagreement> disagreements;
  std::map<std::string, std::uint64_t> pruned;  // by first firing pruner
  std::uint64_t grid_points = 0;
  std::vector<SpecialForm> p_equals_k_solutions;
  std::chrono::nanoseconds elapsed{0};

  bool matches_prediction() const { return unexpected.empty() && missing.empty(); }
  bool ok() const { return matches_prediction() && disagreements.empty(); }

  std::vector<Nat> solution_values() const {
    std::vector<Nat> out;
    out.reserve(solutions.size());
    for (const auto& r : solutions) out.push_back(r.n);
    return out;
  }
};

/// Even perfect numbers a grid can contain: q <= alpha_max, beta = 2 in
/// range, p = 2^q - 1 in the residue filter, and q != k.
inline std::vector<Nat> predicted_solutions(const GridSpec& g, BitCap cap = kDefaultBitCap) {
  std::vector<Nat> out;
  if (g.beta_min > 2 || g.beta_max < 2) return out;
  for (const PerfectWitness& w : even_perfect_numbers(g.alpha_max, cap)) {
    if (w.q == g.k) continue;
    // 2^q - 1 = 3 mod 4 for q >= 2
    if (g.p_mod4 && *g.p_mod4 != 3) continue;
    out.push_back(w.n);
  }
  return out;
}

namespace detail {

struct GridTask {
  std::uint32_t alpha;
  std::size_t first;
  std::size_t last;
};

struct TaskResult {
  std::vector<ClassificationReport> solutions;
  std::vector<Disagreement> disagreements;
  std::map<std::string, std::uint64_t> pruned;
  std::uint64_t points = 0;
  std::vector<SpecialForm> p_equals_k;
};

inline void validate_grid(const GridSpec& g) {
  if (!is_mersenne_exponent(g.k)) {
    throw std::invalid_argument("k must be a prime > 2 with 2^k - 1 prime");
  }
  if (g.alpha_max < 2 || g.alpha_max > kMaxAlpha) {
    throw std::invalid_argument("alpha_max must lie in 2.." + std::to_string(kMaxAlpha));
  }
  if (g.beta_min < 2 || g.beta_max < g.beta_min) throw std::invalid_argument("need 2 <= beta_min <= beta_max");
  if (g.p_mod4 && *g.p_mod4 != 1 && *g.p_mod4 != 3) throw std::invalid_argument("p_mod4 must be 1 or 3");
}

}  // namespace detail

/// Exhaustive scan in (alpha, p, beta) order over p < 3 * 2^(alpha-1) - 1.
/// The output does not depend on the worker count.
inline SearchResult run_grid(const GridSpec& g, SearchMode mode, const SearchOptions& opt = {}) {
  detail::validate_grid(g);
  const auto start = std::chrono::steady_clock::now();
  const BitCap cap = opt.cap;
  const std::uint64_t p_limit = 3 * (std::uint64_t{1} << (g.alpha_max - 1)) - 1;
  const std::vector<std::uint64_t> primes = odd_primes_below(p_limit);

  constexpr std::size_t kChunk = 256;
  std::vector<detail::GridTask> tasks;
  for (std::uint32_t alpha = 2; alpha <= g.alpha_max; ++alpha) {
    const std::uint64_t bound = 3 * (std::uint64_t{1} << (alpha - 1)) - 1;
    const std::size_t end = static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), bound) - primes.begin());
    for (std::size_t i = 0; i < end; i += kChunk) tasks.push_back({alpha, i, std::min(end, i + kChunk)});
  }

  std::vector<detail::TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const detail::GridTask& task = tasks[t];
        detail::TaskResult& res = results[t];
        for (std::size_t i = task.first; i < task.last; ++i) {
          const std::uint64_t p = primes[i];
          if (g.p_mod4 && p % 4 != *g.p_mod4) continue;
          for (std::uint32_t beta = g.beta_min; beta <= g.beta_max; ++beta) {
            const SpecialForm f(task.alpha, p, beta, g.k, TrustedPrime{});
            PointOutcome o = classify_point(f, cap);
            ++res.points;
            if (o.report.pruned_by) ++res.pruned[to_string(*o.report.pruned_by)];
            for (auto& d : o.disagreements) res.disagreements.push_back(std::move(d));
            if (o.report.divides) {
              if (p == g.k) res.p_equals_k.push_back(f);
              res.solutions.push_back(std::move(o.report));
            }
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const unsigned n_workers = std::max(1u, opt.workers);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  SearchResult out;
  out.mode = mode;
  out.grid = g;
  for (auto& r : results) {
    out.grid_points += r.points;
    for (auto& s : r.solutions) out.solutions.push_back(std::move(s));
    for (auto& d : r.disagreements) out.disagreements.push_back(std::move(d));
    for (const auto& [tag, count] : r.pruned) out.pruned[tag] += count;
    for (auto& f : r.p_equals_k) out.p_equals_k_solutions.push_back(f);
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const ClassificationReport& a, const ClassificationReport& b) { return a.n < b.n; });

  out.predicted = predicted_solutions(g, cap);
  const std::vector<Nat> found = out.solution_values();
  std::set_difference(found.begin(), found.end(), out.predicted.begin(), out.predicted.end(),
                      std::back_inserter(out.unexpected));
  std::set_difference(out.predicted.begin(), out.predicted.end(), found.begin(), found.end(),
                      std::back_inserter(out.missing));
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

/// beta = 2 only: n = 2^(alpha-1) p.
inline SearchResult classify_single_prime(std::uint32_t k, std::uint32_t alpha_max, const SearchOptions& opt = {}) {
  return run_grid(GridSpec{k, alpha_max, 2, 2, std::nullopt}, SearchMode::SinglePrime, opt);
}

/// k = 5 over the full (alpha, p, beta) grid, odd beta included.
inline SearchResult classify_prime_power(std::uint32_t alpha_max, std::uint32_t beta_max,
                                         const SearchOptions& opt = {}) {
  return run_grid(GridSpec{5, alpha_max, 2, beta_max, std::nullopt}, SearchMode::PrimePower, opt);
}

/// Same grid for any Mersenne exponent k. Unexpected solutions are findings,
/// not failures of the engine; disagreements still are.
inline SearchResult explore_conjecture(std::uint32_t k, std::uint32_t alpha_max, std::uint32_t beta_max,
                                       const SearchOptions& opt = {}) {
  return run_grid(GridSpec{k, alpha_max, 2, beta_max, std::nullopt}, SearchMode::Conjecture, opt);
}

/// n = 2^(alpha-1) (2^k-1)^(beta-1) never divides sigma_k(n); true when it does not.
inline bool check_lemma_f(std::uint32_t k, std::uint32_t alpha, std::uint32_t beta, BitCap cap = kDefaultBitCap) {
  if (!is_mersenne_exponent(k) || k >= 64) throw std::invalid_argument("check_lemma_f: 2^k - 1 must be prime");
  const SpecialForm f(alpha, mersenne(k, cap).to_u64(), beta, k, TrustedPrime{});
  return !divides_sigma(f, cap);
}

/// 2^(q-1)(2^q-1) | sigma_k of itself, for distinct Mersenne exponents q and k.
inline bool forward_implication(std::uint32_t q, std::uint32_t k, BitCap cap = kDefaultBitCap) {
  if (q == k) throw std::invalid_argument("forward_implication: q must differ from k");
  if (q >= 64 || !mersenne_candidate(q, cap).is_prime) {
    throw std::invalid_argument("forward_implication: 2^q - 1 must be a prime below 2^64");
  }
  if (k < 2 || !mersenne_candidate(k, cap).is_prime) {
    throw std::invalid_argument("forward_implication: 2^k - 1 must be prime");
  }
  const SpecialForm f(q, mersenne(q, cap).to_u64(), 2, k, TrustedPrime{});
  return divides_sigma(f, cap);
}

/// A prime p | R that fits p = k1 * 2^(alpha-2) - 1, reconstructed from the
/// integer remainder R of a cleared polynomial division.
struct CubicCandidate {
  std::uint32_t k1 = 1;
  mpz_class remainder;
  std::uint64_t p = 3;
  std::uint32_t alpha = 2;
  bool divides = false;
};

struct CubicCaseResult {
  std::uint64_t grid_points = 0;
  std::vector<SpecialForm> hits;
  std::vector<std::pair<SpecialForm, bool>> spot_checks;
  std::vector<CubicCandidate> candidates;

  bool ok() const {
    if (!hits.empty()) return false;
    for (const auto& [f, d] : spot_checks) {
      if (d) return false;
    }
    for (const auto& c : candidates) {
      if (c.divides) return false;
    }
    return true;
  }
};

/// Candidates (alpha, p) for p^3 | (2^(5 alpha) - 1)/31 with p = 3 mod 4 and
/// p = k1 2^(alpha-2) - 1. p divides either 2^alpha - 1 (only k1 <= 2 can fit;
/// the remainder of x - 1 by k1 x/4 - 1 names p) or x^4 + ... + 1 at x = 2^alpha
/// (the remainder of that quartic names p).
inline std::vector<CubicCandidate> cubic_case_candidates(BitCap cap = kDefaultBitCap) {
  std::vector<CubicCandidate> out;
  auto collect = [&](std::uint32_t k1, const mpz_class& remainder) {
    const mpz_class r = abs(remainder);
    if (r == 0) return;
    for (const auto& [q, e] : factorize(Nat(r))) {
      if (!q.fits_u64()) continue;
      const std::uint64_t p = q.to_u64();
      if (p % 4 != 3 || (p + 1) % k1 != 0) continue;
      const std::uint64_t twos = (p + 1) / k1;
      if ((twos & (twos - 1)) != 0) continue;
      const auto alpha = static_cast<std::uint32_t>(__builtin_ctzll(twos)) + 2;
      const SpecialForm f(alpha, p, 4, 5, TrustedPrime{});
      if (!f.satisfies_p_bound()) continue;
      out.push_back({k1, remainder, p, alpha, divides_sigma(f, cap)});
    }
  };
  for (std::uint32_t k1 = 1; k1 <= 2; ++k1) {
    const RationalPoly g{Rational(-1), Rational(mpz_class(k1), mpz_class(4))};
    const DivisionResult d = divmod_poly(RationalPoly{Rational(-1), Rational(1)}, g);
    collect(k1, clear_denominators(d).remainder);
  }
  for (std::uint32_t k1 = 1; k1 <= 5; ++k1) collect(k1, clear_denominators(quartic_division(k1)).remainder);
  return out;
}

/// n = 2^(alpha-1) p^3 with p = 3 mod 4 under the p-bound never divides
/// sigma_5(n). Scans the grid and replays the named spot checks.
inline CubicCaseResult verify_cubic_case(std::uint32_t alpha_max, BitCap cap = kDefaultBitCap) {
  if (alpha_max < 2 || alpha_max > kMaxAlpha) throw std::invalid_argument("verify_cubic_case: bad alpha_max");
  CubicCaseResult out;
  const std::vector<std::uint64_t> primes = odd_primes_below(3 * (std::uint64_t{1} << (alpha_max - 1)) - 1);
  for (std::uint32_t alpha = 2; alpha <= alpha_max; ++alpha) {
    for (std::uint64_t p : primes) {
      const SpecialForm f(alpha, p, 4, 5, TrustedPrime{});
      if (!f.satisfies_p_bound()) break;
      if (p % 4 != 3) continue;
      ++out.grid_points;
      if (divides_sigma(f, cap)) out.hits.push_back(f);
    }
  }
  for (auto [alpha, p] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{4, 3}, {7, 31}, {6, 31}, {4, 11}}) {
    const SpecialForm f(alpha, p, 4, 5);
    out.spot_checks.emplace_back(f, divides_sigma(f, cap));
  }
  out.candidates = cubic_case_candidates(cap);
  return out;
}

/// Every n = 2^(alpha-1) p <= n_max with n | sigma_k(n), p-bound or not.
inline std::vector<ClassificationReport> scan_single_prime_solutions(std::uint32_t k, std::uint64_t n_max,
                                                                     BitCap cap = kDefaultBitCap) {
  std::vector<ClassificationReport> out;
  const std::vector<std::uint64_t> primes = odd_primes_below(n_max / 2 + 1);
  for (std::uint32_t alpha = 2; (std::uint64_t{1} << (alpha - 1)) * 3 <= n_max; ++alpha) {
    const std::uint64_t two = std::uint64_t{1} << (alpha - 1);
    for (std::uint64_t p : primes) {
      if (two * p > n_max) break;
      const SpecialForm f(alpha, p, 2, k, TrustedPrime{});
      if (!divides_sigma(f, cap)) continue;
      ClassificationReport r{f, f.n(cap), true};
      r.perfect = is_even_perfect(r.n);
      r.excluded_perfect = r.perfect && is_excluded_perfect(r.n, k, cap);
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ClassificationReport& a, const ClassificationReport& b) { return a.n < b.n; });
  return out;
}

}  // namespace sigmadiv
