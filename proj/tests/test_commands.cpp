#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sigmadiv/commands.hpp"

using namespace sigmadiv;

TEST(CmdSigma, Fixtures) {
  std::ostringstream out;
  EXPECT_EQ(cmd_sigma(Nat(22), 5, out), kExitOk);
  EXPECT_NE(out.str().find("= 5314716"), std::string::npos);
  EXPECT_NE(out.str().find("verdict: divisible"), std::string::npos);
  std::ostringstream one;
  cmd_sigma(Nat(1), 9, one);
  EXPECT_NE(one.str().find("sigma_9(1) = 1\n"), std::string::npos);
  EXPECT_NE(one.str().find("verdict: divisible"), std::string::npos);
  std::ostringstream e86;
  cmd_sigma(Nat(86), 7, e86);
  EXPECT_NE(e86.str().find("verdict: divisible"), std::string::npos);
  std::ostringstream twelve;
  cmd_sigma(Nat(12), 1, twelve);
  EXPECT_NE(twelve.str().find("not divisible"), std::string::npos);
  EXPECT_THROW(cmd_sigma(Nat(0), 3, out), std::invalid_argument);
  EXPECT_THROW(cmd_sigma(pow2(200), 3, out, BitCap{100}), SizeCapExceeded);
}

TEST(CmdSearch, ModeSelection) {
  EXPECT_EQ(search_mode_for(5, 16), SearchMode::PrimePower);
  EXPECT_EQ(search_mode_for(7, 2), SearchMode::SinglePrime);
  EXPECT_EQ(search_mode_for(7, 8), SearchMode::Conjecture);
}

TEST(CmdSearch, ExitCodesAndFileOutput) {
  SearchConfig cfg;
  cfg.k = KSelector{7, false};
  cfg.alpha_max = 6;
  cfg.beta_max = 2;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_search(cfg, out, err), kExitOk);
  EXPECT_NE(out.str().find("496"), std::string::npos);

  const std::string path = ::testing::TempDir() + "sigmadiv_cmd_search.jsonl";
  cfg.output_path = path;
  cfg.format = OutputFormat::JsonLines;
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_search(cfg, out2, err2), kExitOk);
  EXPECT_TRUE(out2.str().empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto recs = parse_jsonl(ss.str());
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].reports.size(), 3u);
  std::remove(path.c_str());

  cfg.output_path = "/nonexistent-dir/x.jsonl";
  EXPECT_THROW(cmd_search(cfg, out2, err2), std::runtime_error);
}

TEST(CmdSearch, AllMersenneUpTo) {
  SearchConfig cfg;
  cfg.k = KSelector{13, true};
  cfg.alpha_max = 6;
  cfg.beta_max = 4;
  cfg.format = OutputFormat::Csv;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_search(cfg, out, err), kExitOk);
  // single csv header for all four exponents
  std::size_t headers = 0, pos = 0;
  while ((pos = out.str().find("n,alpha", pos)) != std::string::npos) ++headers, ++pos;
  EXPECT_EQ(headers, 1u);
  EXPECT_NE(err.str().find("k=13"), std::string::npos);
}

TEST(CmdCheckLemma, AllTagsPass) {
  LemmaParams prm;
  prm.p_max = 100;
  for (auto tag : kLemmaTags) {
    std::ostringstream out;
    EXPECT_EQ(cmd_check_lemma(tag, prm, OutputFormat::Human, out), kExitOk) << tag << "\n" << out.str();
  }
  std::ostringstream out;
  EXPECT_THROW(cmd_check_lemma("nope", prm, OutputFormat::Human, out), std::invalid_argument);
}

TEST(CmdCheckLemma, JsonLinesSummary) {
  std::ostringstream out;
  EXPECT_EQ(cmd_check_lemma("vs1", LemmaParams{}, OutputFormat::JsonLines, out), kExitOk);
  std::istringstream in(out.str());
  std::string line, last;
  std::size_t lines = 0;
  while (std::getline(in, line)) last = line, ++lines;
  EXPECT_EQ(lines, 4u);
  const auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(j.at("passed"), 3);
}

TEST(CmdMersenne, Lists) {
  std::ostringstream out;
  EXPECT_EQ(cmd_mersenne(15, out), kExitOk);
  EXPECT_EQ(out.str(), "2  3\n3  7\n5  31\n7  127\n13  8191\n");
}

TEST(CmdPerfect, ListAndCheck) {
  std::ostringstream out;
  EXPECT_EQ(cmd_perfect(std::nullopt, 13, out), kExitOk);
  EXPECT_NE(out.str().find("n=33550336"), std::string::npos);
  EXPECT_EQ(out.str().find("NO"), std::string::npos);
  std::ostringstream yes, no;
  EXPECT_EQ(cmd_perfect(Nat(8128), 0, yes), kExitOk);
  EXPECT_EQ(cmd_perfect(Nat(496 * 2), 0, no), kExitDiscrepancy);
}

TEST(CmdVerifyTheorem, AllNames) {
  TheoremParams prm;
  prm.alpha_max = 9;
  prm.beta_max = 6;
  prm.n_max = 20'000;
  for (auto name : kTheoremNames) {
    std::ostringstream out;
    EXPECT_EQ(cmd_verify_theorem(name, prm, out), kExitOk) << name << "\n" << out.str();
  }
  std::ostringstream out;
  EXPECT_THROW(cmd_verify_theorem("nope", prm, out), std::invalid_argument);
}
