#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "sigmadiv/commands.hpp"

using namespace sigmadiv;

namespace {

SearchConfig random_config() {
  SearchConfig c;
  c.k = KSelector{static_cast<std::uint32_t>(oracle::uniform(3, 200)), oracle::uniform(0, 1) == 1};
  c.alpha_max = static_cast<std::uint32_t>(oracle::uniform(2, 26));
  c.beta_max = static_cast<std::uint32_t>(oracle::uniform(2, 40));
  c.workers = static_cast<std::uint32_t>(oracle::uniform(1, 64));
  c.bit_cap = oracle::uniform(64, 10'000'000);
  if (oracle::uniform(0, 1)) c.output_path = "/tmp/out-" + std::to_string(oracle::uniform(0, 999)) + ".jsonl";
  const OutputFormat fmts[] = {OutputFormat::JsonLines, OutputFormat::Csv, OutputFormat::Human};
  c.format = fmts[oracle::uniform(0, 2)];
  return c;
}

}  // namespace

TEST(KSelector, Parse) {
  EXPECT_EQ(KSelector::parse("5"), (KSelector{5, false}));
  EXPECT_EQ(KSelector::parse("all-mersenne-upto-31"), (KSelector{31, true}));
  EXPECT_EQ(KSelector::parse("all-mersenne-upto-31").exponents(), (std::vector<std::uint32_t>{3, 5, 7, 13, 17, 19, 31}));
  EXPECT_EQ(KSelector::parse("all-mersenne-upto-20").str(), "all-mersenne-upto-20");
  EXPECT_THROW(KSelector::parse("five"), std::invalid_argument);
  EXPECT_THROW(KSelector::parse("all-mersenne-upto-"), std::invalid_argument);
}

TEST(Config, RoundTrip) {
  for (int trial = 0; trial < 200; ++trial) {
    const SearchConfig c = random_config();
    EXPECT_EQ(parse_config(render_config(c)), c) << render_config(c);
  }
}

TEST(Config, JsonRoundTrip) {
  for (int trial = 0; trial < 200; ++trial) {
    const SearchConfig c = random_config();
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
  }
}

TEST(Config, OverlaysBaseAndAcceptsHyphens) {
  SearchConfig base;
  base.workers = 4;
  const SearchConfig c = parse_config("# comment\n  alpha-max = 9\nformat=csv\n\n", base);
  EXPECT_EQ(c.alpha_max, 9u);
  EXPECT_EQ(c.workers, 4u);
  EXPECT_EQ(c.format, OutputFormat::Csv);
  EXPECT_EQ(c.beta_max, 16u);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("colour=blue\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("alpha_max\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("alpha_max=-2\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("format=xml\n"), std::invalid_argument);
  SearchConfig c;
  c.workers = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.workers = 1;
  c.alpha_max = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(JsonLines, RoundTrip) {
  SearchConfig cfg;
  cfg.k = KSelector{7, false};
  cfg.alpha_max = 10;
  cfg.beta_max = 8;
  cfg.format = OutputFormat::JsonLines;
  const RunRecord rec = run_search_record(cfg, 7);
  std::ostringstream os;
  write_jsonl(os, rec);
  const auto parsed = parse_jsonl(os.str());
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0], rec);
  EXPECT_EQ(parsed[0].summary.p_equals_k.size(), 1u);
}

TEST(JsonLines, RoundTripMultipleRecordsAndBigIntegers) {
  SearchConfig cfg;
  cfg.k = KSelector{31, true};
  cfg.alpha_max = 8;
  cfg.beta_max = 4;
  std::ostringstream os;
  std::vector<RunRecord> recs;
  for (std::uint32_t k : cfg.k.exponents()) {
    recs.push_back(run_search_record(cfg, k));
    write_jsonl(os, recs.back());
  }
  EXPECT_EQ(parse_jsonl(os.str()), recs);

  RunRecord big;
  const SpecialForm f(61, (std::uint64_t{1} << 61) - 1, 2, 5, TrustedPrime{});
  big.reports.push_back(ClassificationReport{f, f.n(), true, true, false, std::nullopt});
  big.summary.predicted = {f.n()};
  std::ostringstream b;
  write_jsonl(b, big);
  EXPECT_NE(b.str().find("\"" + f.n().str() + "\""), std::string::npos);
  EXPECT_EQ(parse_jsonl(b.str()).at(0), big);
}

TEST(JsonLines, RejectsMalformed) {
  EXPECT_THROW(parse_jsonl("{\"record\":\"report\"}\n"), std::invalid_argument);
  EXPECT_THROW(parse_jsonl("{\"record\":\"mystery\"}\n"), std::invalid_argument);
  EXPECT_THROW(parse_jsonl("not json\n"), nlohmann::json::exception);
}

TEST(JsonLines, DeterministicApartFromHeader) {
  SearchConfig cfg;
  cfg.k = KSelector{5, false};
  cfg.alpha_max = 9;
  cfg.beta_max = 6;
  auto body = [&](std::uint32_t workers) {
    SearchConfig c = cfg;
    c.workers = workers;
    std::ostringstream os;
    write_jsonl(os, run_search_record(c, 5));
    const std::string s = os.str();
    return s.substr(s.find('\n') + 1);
  };
  const std::string a = body(1);
  EXPECT_EQ(body(1), a);
  EXPECT_EQ(body(4), a);
}

TEST(Csv, HeaderAndRows) {
  SearchConfig cfg;
  cfg.k = KSelector{5, false};
  cfg.alpha_max = 7;
  cfg.beta_max = 2;
  std::ostringstream os;
  write_csv(os, run_search_record(cfg, 5));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,alpha,p,beta,k,divides,perfect,excluded_perfect,pruned_by");
  std::getline(in, line);
  EXPECT_EQ(line, "6,2,3,2,5,true,true,false,");
}

TEST(Report, EqualityIgnoresTiming) {
  ClassificationReport a{SpecialForm(2, 3, 2, 5), Nat(6), true, true, false, std::nullopt};
  ClassificationReport b = a;
  b.timing = std::chrono::nanoseconds(12345);
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_from_json(nlohmann::ordered_json::parse(report_to_jsonl(b))), a);
}
