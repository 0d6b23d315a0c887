#pragma once

// Command implementations behind the `sigmadiv` executable. Each takes its
// parsed arguments plus output streams and returns the process exit code:
//   0  everything matched
//   1  usage or input error
//   2  a discrepancy (unexpected/missing solution, pruner disagreement,
//      failed lemma point)

#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sigmadiv/classify.hpp"
#include "sigmadiv/lemma_suite.hpp"
#include "sigmadiv/records.hpp"

namespace sigmadiv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDiscrepancy = 2;

inline int cmd_sigma(const Nat& n, std::uint32_t k, std::ostream& out, BitCap cap = kDefaultBitCap) {
  if (n.is_zero()) throw std::invalid_argument("sigma: n must be >= 1");
  if (n.bit_length() > cap.bits) throw SizeCapExceeded("sigma: n exceeds bit cap");
  const Nat s = sigma_k(n, k, cap);
  const Nat r = s % n;
  out << "sigma_" << k << "(" << n << ") = " << s << "\n";
  out << "sigma_" << k << "(" << n << ") mod " << n << " = " << r << "\n";
  out << "verdict: " << (r.is_zero() ? "divisible" : "not divisible") << "\n";
  return kExitOk;
}

/// Mode for a single exponent: beta_max = 2 selects the single-prime
/// classification, k = 5 the proven prime-power case, anything else is an
/// exploration run.
inline SearchMode search_mode_for(std::uint32_t k, std::uint32_t beta_max) {
  if (beta_max == 2) return SearchMode::SinglePrime;
  if (k == 5) return SearchMode::PrimePower;
  return SearchMode::Conjecture;
}

inline RunRecord run_search_record(const SearchConfig& cfg, std::uint32_t k) {
  const auto started = std::chrono::system_clock::now();
  const SearchMode mode = search_mode_for(k, cfg.beta_max);
  const GridSpec grid{k, cfg.alpha_max, 2, mode == SearchMode::SinglePrime ? 2u : cfg.beta_max, std::nullopt};
  const SearchResult res = run_grid(grid, mode, SearchOptions{cfg.workers, BitCap{cfg.bit_cap}});
  const auto finished = std::chrono::system_clock::now();
  RunRecord rec;
  rec.config = cfg;
  rec.reports = res.solutions;
  rec.summary = summarize(res);
  rec.started = utc_timestamp(started);
  rec.finished = utc_timestamp(finished);
  rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(finished - started).count();
  return rec;
}

inline int cmd_search(const SearchConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const std::vector<std::uint32_t> ks = cfg.k.exponents();
  if (ks.empty()) throw std::invalid_argument("search: no Mersenne exponents selected");
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.output_path) {
    file.open(*cfg.output_path);
    if (!file) throw std::runtime_error("cannot open output file: " + *cfg.output_path);
    sink = &file;
  }
  bool all_ok = true;
  bool first = true;
  for (std::uint32_t k : ks) {
    const RunRecord rec = run_search_record(cfg, k);
    write_record(*sink, rec, cfg.format, first);
    first = false;
    if (cfg.format == OutputFormat::Csv || (cfg.output_path && cfg.format != OutputFormat::Human)) {
      err << "k=" << k << " ";
      write_summary_human(err, rec.summary, rec.reports.size());
    }
    if (!rec.summary.ok()) {
      all_ok = false;
      err << "k=" << k << ": "
          << (rec.summary.disagreements.empty() && rec.summary.mode == SearchMode::Conjecture
                  ? "solution set differs from the even-perfect prediction (reportable finding)"
                  : "discrepancy against a proven statement: this is an engine bug")
          << "\n";
    }
  }
  if (file.is_open()) {
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + *cfg.output_path);
  }
  return all_ok ? kExitOk : kExitDiscrepancy;
}

inline void write_lemma_report(std::ostream& out, const LemmaReport& rep, OutputFormat fmt) {
  if (fmt == OutputFormat::JsonLines) {
    for (const auto& p : rep.points) {
      nlohmann::ordered_json j{{"record", "lemma-point"}, {"tag", rep.tag},          {"params", p.params},
                               {"expected", p.expected},  {"observed", p.observed}, {"status", to_string(p.status)}};
      out << j.dump() << "\n";
    }
    nlohmann::ordered_json s{{"record", "lemma-summary"},
                             {"tag", rep.tag},
                             {"points", rep.points.size()},
                             {"passed", rep.count(PointStatus::Pass)},
                             {"failed", rep.count(PointStatus::Fail)},
                             {"skipped", rep.count(PointStatus::Skipped)},
                             {"status", rep.ok() ? "pass" : "fail"}};
    out << s.dump() << "\n";
    return;
  }
  if (fmt == OutputFormat::Csv) {
    out << "tag,params,expected,observed,status\n";
    for (const auto& p : rep.points) {
      out << rep.tag << ",\"" << p.params << "\",\"" << p.expected << "\",\"" << p.observed << "\","
          << to_string(p.status) << "\n";
    }
    return;
  }
  for (const auto& p : rep.points) {
    out << rep.tag << "  " << p.params << "  expected " << p.expected << "  observed " << p.observed << "  "
        << to_string(p.status) << "\n";
  }
  out << rep.tag << ": " << rep.count(PointStatus::Pass) << " passed, " << rep.count(PointStatus::Fail)
      << " failed, " << rep.count(PointStatus::Skipped) << " skipped -> " << (rep.ok() ? "PASS" : "FAIL") << "\n";
}

inline int cmd_check_lemma(std::string_view tag, const LemmaParams& prm, OutputFormat fmt, std::ostream& out) {
  if (!is_lemma_tag(tag)) throw std::invalid_argument("unknown lemma tag: " + std::string(tag));
  const LemmaReport rep = run_lemma_suite(tag, prm);
  write_lemma_report(out, rep, fmt);
  return rep.ok() ? kExitOk : kExitDiscrepancy;
}

inline int cmd_mersenne(std::uint32_t bound, std::ostream& out) {
  for (std::uint32_t k : mersenne_exponents_upto(bound)) {
    const Nat m = mersenne(k);
    out << k << "  " << (m.bit_length() <= 64 ? m.str() : "(" + std::to_string(m.bit_length()) + " bits)") << "\n";
  }
  return kExitOk;
}

/// Lists 2^(q-1)(2^q-1) for Mersenne exponents q <= q_max, or, given `check`,
/// decides whether that number is an even perfect number.
inline int cmd_perfect(std::optional<Nat> check, std::uint32_t q_max, std::ostream& out) {
  if (check) {
    const bool perfect = is_even_perfect(*check);
    out << *check << (perfect ? " is" : " is not") << " an even perfect number\n";
    if (perfect) {
      const std::uint64_t q = v2(*check) + 1;
      out << "q = " << q << ", 2^q - 1 = " << mersenne(q) << "\n";
    }
    return perfect ? kExitOk : kExitDiscrepancy;
  }
  for (const PerfectWitness& w : even_perfect_numbers(q_max)) {
    out << "q=" << w.q << "  n=" << w.n;
    if (w.q < 64) {
      const SpecialForm f(w.q, mersenne(w.q).to_u64(), 2, 1, TrustedPrime{});
      out << "  sigma(n)=2n: " << (sigma_k_special(f) == w.n * Nat(2) ? "yes" : "NO");
    }
    out << "\n";
  }
  return kExitOk;
}

struct TheoremParams {
  std::uint32_t k = 5;
  std::uint32_t alpha_max = 13;
  std::uint32_t beta_max = 16;
  std::uint64_t n_max = 100000;
  std::uint32_t q_max = 31;
  unsigned workers = 1;
  BitCap cap = kDefaultBitCap;
};

inline constexpr std::array<std::string_view, 5> kTheoremNames = {"single-prime", "prime-power", "conjecture",
                                                                  "forward", "localization"};

/// single-prime  beta = 2 classification for one k
/// prime-power   k = 5 over the full beta grid
/// conjecture    any Mersenne k over the full beta grid
/// forward       every even perfect number with q <= q_max divides sigma_k of itself, q != k
/// localization  every non-perfect n = 2^(alpha-1) p <= n_max with n | sigma_k(n) breaks the p-bound
inline int cmd_verify_theorem(std::string_view name, const TheoremParams& prm, std::ostream& out) {
  const SearchOptions opt{prm.workers, prm.cap};
  auto report = [&](const SearchResult& r) {
    out << name << ": k=" << r.grid.k << " alpha<=" << r.grid.alpha_max << " beta<=" << r.grid.beta_max
        << " solutions " << join_nats(r.solution_values()) << "\n";
    write_summary_human(out, summarize(r), r.solutions.size());
    return r.ok() ? kExitOk : kExitDiscrepancy;
  };
  if (name == "single-prime") return report(classify_single_prime(prm.k, prm.alpha_max, opt));
  if (name == "prime-power") return report(classify_prime_power(prm.alpha_max, prm.beta_max, opt));
  if (name == "conjecture") return report(explore_conjecture(prm.k, prm.alpha_max, prm.beta_max, opt));
  if (name == "forward") {
    bool ok = true;
    for (std::uint32_t q : mersenne_exponents_upto(prm.q_max)) {
      if (q == prm.k || q >= 64) continue;
      const bool d = forward_implication(q, prm.k, prm.cap);
      ok = ok && d;
      out << "q=" << q << " n=" << make_perfect(q).n << " divides sigma_" << prm.k << ": " << (d ? "yes" : "NO")
          << "\n";
    }
    out << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitDiscrepancy;
  }
  if (name == "localization") {
    bool ok = true;
    for (const auto& r : scan_single_prime_solutions(prm.k, prm.n_max, prm.cap)) {
      const bool bounded = r.form.satisfies_p_bound();
      const bool fine = r.perfect || !bounded;
      ok = ok && fine;
      out << "n=" << r.n << " alpha=" << r.form.alpha() << " p=" << r.form.p() << " perfect=" << (r.perfect ? "yes" : "no")
          << " p-bound=" << (bounded ? "yes" : "no") << (fine ? "" : "  VIOLATION") << "\n";
    }
    out << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitDiscrepancy;
  }
  throw std::invalid_argument("unknown theorem: " + std::string(name));
}

}  // namespace sigmadiv
