// sigmadiv: classify n = 2^(alpha-1) p^(beta-1) with n | sigma_k(n).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigmadiv/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sigmadiv;

  CLI::App app{"Exact classification of n = 2^(alpha-1) p^(beta-1) dividing sigma_k(n)"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // sigma
  auto* sigma = app.add_subcommand("sigma", "Print sigma_k(n), its residue mod n and the verdict");
  std::string sigma_n;
  std::uint32_t sigma_k_arg = 1;
  std::uint64_t sigma_cap = kDefaultBitCap.bits;
  sigma->add_option("n", sigma_n, "n >= 1 (decimal)")->required();
  sigma->add_option("k", sigma_k_arg, "power k")->required();
  sigma->add_option("--bit-cap", sigma_cap, "largest integer width in bits");

  // search
  auto* search = app.add_subcommand("search", "Exhaustive search over the (alpha, p, beta) grid");
  std::string s_k, s_format, s_out, s_config;
  std::uint32_t s_alpha = 0, s_beta = 0, s_workers = 0;
  std::uint64_t s_cap = 0;
  auto* o_k = search->add_option("--k", s_k, "Mersenne exponent, or all-mersenne-upto-K");
  auto* o_alpha = search->add_option("--alpha-max", s_alpha, "largest alpha (default 13)");
  auto* o_beta = search->add_option("--beta-max", s_beta, "largest beta (default 16; 2 = single prime)");
  auto* o_workers = search->add_option("--workers", s_workers, "worker threads (default 1)");
  auto* o_cap = search->add_option("--bit-cap", s_cap, "largest integer width in bits (default 1000000)");
  auto* o_out = search->add_option("--out", s_out, "write records to this file instead of stdout");
  auto* o_format = search->add_option("--format", s_format, "json-lines | csv | human (default human)");
  search->add_option("--config", s_config, std::string("key=value config file (default: $") + kConfigEnvVar + ")");

  // verify-theorem
  auto* verify = app.add_subcommand("verify-theorem", "Check a classification statement over a bounded range");
  std::string v_name;
  TheoremParams tp;
  std::uint64_t v_cap = kDefaultBitCap.bits;
  verify->add_option("name", v_name, "single-prime | prime-power | conjecture | forward | localization")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kTheoremNames.begin(), kTheoremNames.end())));
  verify->add_option("--k", tp.k, "Mersenne exponent (default 5)");
  verify->add_option("--alpha-max", tp.alpha_max, "largest alpha (default 13)");
  verify->add_option("--beta-max", tp.beta_max, "largest beta (default 16)");
  verify->add_option("--n-max", tp.n_max, "bound on n for localization (default 100000)");
  verify->add_option("--q-max", tp.q_max, "largest q for forward (default 31)");
  verify->add_option("--workers", tp.workers, "worker threads");
  verify->add_option("--bit-cap", v_cap, "largest integer width in bits");

  // check-lemma
  auto* lemma = app.add_subcommand("check-lemma", "Run a valuation identity or bound over its parameter grid");
  std::string l_tag, l_format = "human";
  LemmaParams lp;
  std::uint32_t l_alpha = 0, l_beta = 0;
  std::uint64_t l_cap = kDefaultBitCap.bits;
  lemma->add_option("tag", l_tag, "vs1 cando appr appr2 tv tv2 sl3 f v10 u1 v3 trichotomy")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kLemmaTags.begin(), kLemmaTags.end())));
  lemma->add_option("--k", lp.ks, "exponents, comma separated (default 3,5,7)")->delimiter(',');
  auto* l_o_alpha = lemma->add_option("--alpha-max", l_alpha, "largest alpha (f, u1, v3, trichotomy: 8; v10: 10)");
  auto* l_o_beta = lemma->add_option("--beta-max", l_beta, "largest beta (default 6)");
  lemma->add_option("--p-max", lp.p_max, "primes below this bound (default 500)");
  lemma->add_option("--v-max", lp.v_max, "largest v (default 5)");
  lemma->add_option("--beta1-max", lp.beta1_max, "largest odd beta1 (default 9)");
  lemma->add_option("--u-max", lp.u_max, "largest u for appr (default 1)");
  lemma->add_option("--alpha1-max", lp.alpha1_max, "largest alpha1 for appr (default 9)");
  lemma->add_option("--bit-cap", l_cap, "largest integer width in bits");
  lemma->add_option("--format", l_format, "json-lines | csv | human");

  // mersenne
  auto* mers = app.add_subcommand("mersenne", "List prime k <= K with 2^k - 1 prime");
  std::uint32_t m_bound = 127;
  mers->add_option("K", m_bound, "upper bound (default 127)");

  // perfect
  auto* perfect = app.add_subcommand("perfect", "List or verify even perfect numbers 2^(q-1)(2^q-1)");
  std::uint32_t p_qmax = 31;
  std::string p_check;
  perfect->add_option("--q-max", p_qmax, "largest q to list (default 31)");
  perfect->add_option("--check", p_check, "decide whether this n is an even perfect number");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sigma) return cmd_sigma(Nat::parse(sigma_n), sigma_k_arg, std::cout, BitCap{sigma_cap});

    if (*search) {
      SearchConfig cfg;
      std::string config_path = s_config;
      if (config_path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar); env != nullptr) config_path = env;
      }
      if (!config_path.empty()) cfg = parse_config(read_file(config_path), cfg);
      if (o_k->count()) cfg.k = KSelector::parse(s_k);
      if (o_alpha->count()) cfg.alpha_max = s_alpha;
      if (o_beta->count()) cfg.beta_max = s_beta;
      if (o_workers->count()) cfg.workers = s_workers;
      if (o_cap->count()) cfg.bit_cap = s_cap;
      if (o_out->count()) cfg.output_path = s_out;
      if (o_format->count()) cfg.format = parse_format(s_format);
      return cmd_search(cfg, std::cout, std::cerr);
    }

    if (*verify) {
      tp.cap = BitCap{v_cap};
      return cmd_verify_theorem(v_name, tp, std::cout);
    }

    if (*lemma) {
      if (l_o_alpha->count()) lp.alpha_max = l_alpha;
      if (l_o_beta->count()) lp.beta_max = l_beta;
      lp.cap = BitCap{l_cap};
      return cmd_check_lemma(l_tag, lp, parse_format(l_format), std::cout);
    }

    if (*mers) return cmd_mersenne(m_bound, std::cout);

    if (*perfect) {
      std::optional<Nat> check;
      if (!p_check.empty()) check = Nat::parse(p_check);
      return cmd_perfect(check, p_qmax, std::cout);
    }
  } catch (const SizeCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
