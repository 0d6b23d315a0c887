#pragma once

// Search configuration and run records, with their text encodings:
//   - config files: flat key=value lines, '#' comments
//   - json-lines: header, one line per report, summary (canonical)
//   - csv and a human-readable table, both derived from the same data
// Big integers are always written as decimal strings.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sigmadiv/classify.hpp"

namespace sigmadiv {

#ifdef SIGMADIV_VERSION
inline constexpr const char* kToolVersion = SIGMADIV_VERSION;
#else
inline constexpr const char* kToolVersion = "0.1.0";
#endif

inline constexpr const char* kConfigEnvVar = "SIGMADIV_CONFIG";

enum class OutputFormat { JsonLines, Csv, Human };

inline const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::JsonLines: return "json-lines";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Human: return "human";
  }
  return "?";
}

inline OutputFormat parse_format(std::string_view s) {
  if (s == "json-lines" || s == "jsonl") return OutputFormat::JsonLines;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "human") return OutputFormat::Human;
  throw std::invalid_argument("unknown format: " + std::string(s));
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw std::invalid_argument(std::string(what) + ": not a non-negative integer: " + std::string(s));
  }
  return v;
}

inline std::uint32_t parse_u32(std::string_view s, std::string_view what) {
  const std::uint64_t v = parse_u64(s, what);
  if (v > UINT32_MAX) throw std::invalid_argument(std::string(what) + ": out of range: " + std::string(s));
  return static_cast<std::uint32_t>(v);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Either one exponent or every Mersenne exponent 3..K.
struct KSelector {
  std::uint32_t value = 5;
  bool all_mersenne_upto = false;

  static constexpr std::string_view kPrefix = "all-mersenne-upto-";

  std::string str() const {
    return all_mersenne_upto ? std::string(kPrefix) + std::to_string(value) : std::to_string(value);
  }

  static KSelector parse(std::string_view s) {
    s = detail::trim(s);
    if (s.substr(0, kPrefix.size()) == kPrefix) {
      return {detail::parse_u32(s.substr(kPrefix.size()), "k"), true};
    }
    return {detail::parse_u32(s, "k"), false};
  }

  /// Concrete exponents this selector stands for.
  std::vector<std::uint32_t> exponents() const {
    if (!all_mersenne_upto) return {value};
    std::vector<std::uint32_t> out;
    if (value < 3) return out;
    for (std::uint32_t k : mersenne_exponents_upto(value)) {
      if (k > 2) out.push_back(k);
    }
    return out;
  }

  friend bool operator==(const KSelector&, const KSelector&) = default;
};

struct SearchConfig {
  KSelector k;
  std::uint32_t alpha_max = 13;
  std::uint32_t beta_max = 16;
  std::uint32_t workers = 1;
  std::uint64_t bit_cap = kDefaultBitCap.bits;
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::Human;

  void validate() const {
    if (alpha_max < 2) throw std::invalid_argument("alpha_max must be >= 2");
    if (beta_max < 2) throw std::invalid_argument("beta_max must be >= 2");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (bit_cap < 64) throw std::invalid_argument("bit_cap must be >= 64");
  }

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

inline std::string render_config(const SearchConfig& c) {
  std::ostringstream os;
  os << "k=" << c.k.str() << "\n"
     << "alpha_max=" << c.alpha_max << "\n"
     << "beta_max=" << c.beta_max << "\n"
     << "workers=" << c.workers << "\n"
     << "bit_cap=" << c.bit_cap << "\n";
  if (c.output_path) os << "out=" << *c.output_path << "\n";
  os << "format=" << to_string(c.format) << "\n";
  return os.str();
}

/// Applies key=value lines from `text` on top of `base`. Unknown keys are errors.
inline SearchConfig parse_config(std::string_view text, SearchConfig base = {}) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    for (char& ch : key) {
      if (ch == '-') ch = '_';
    }
    if (key == "k") {
      base.k = KSelector::parse(value);
    } else if (key == "alpha_max") {
      base.alpha_max = detail::parse_u32(value, key);
    } else if (key == "beta_max") {
      base.beta_max = detail::parse_u32(value, key);
    } else if (key == "workers") {
      base.workers = detail::parse_u32(value, key);
    } else if (key == "bit_cap") {
      base.bit_cap = detail::parse_u64(value, key);
    } else if (key == "out") {
      base.output_path = std::string(value);
    } else if (key == "format") {
      base.format = parse_format(value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

struct RunSummary {
  std::uint32_t k = 5;
  SearchMode mode = SearchMode::PrimePower;
  std::uint64_t grid_points = 0;
  std::vector<Nat> predicted;
  std::vector<Nat> unexpected;
  std::vector<Nat> missing;
  std::vector<Disagreement> disagreements;
  std::map<std::string, std::uint64_t> pruned;
  std::vector<SpecialForm> p_equals_k;

  bool ok() const { return unexpected.empty() && missing.empty() && disagreements.empty(); }

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunRecord {
  SearchConfig config;
  std::vector<ClassificationReport> reports;  // ascending n
  RunSummary summary;
  std::string tool_version = kToolVersion;
  std::string started;
  std::string finished;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline RunSummary summarize(const SearchResult& r) {
  RunSummary s;
  s.k = r.grid.k;
  s.mode = r.mode;
  s.grid_points = r.grid_points;
  s.predicted = r.predicted;
  s.unexpected = r.unexpected;
  s.missing = r.missing;
  s.disagreements = r.disagreements;
  s.pruned = r.pruned;
  s.p_equals_k = r.p_equals_k_solutions;
  return s;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson nats_to_json(const std::vector<Nat>& xs) {
  ojson a = ojson::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

inline std::vector<Nat> nats_from_json(const ojson& a) {
  std::vector<Nat> out;
  for (const auto& x : a) out.push_back(Nat::parse(x.get<std::string>()));
  return out;
}

inline ojson form_to_json(const SpecialForm& f) {
  return ojson{{"alpha", f.alpha()}, {"p", std::to_string(f.p())}, {"beta", f.beta()}, {"k", f.k()}};
}

inline SpecialForm form_from_json(const ojson& j) {
  return SpecialForm(j.at("alpha").get<std::uint32_t>(), parse_u64(j.at("p").get<std::string>(), "p"),
                     j.at("beta").get<std::uint32_t>(), j.at("k").get<std::uint32_t>());
}

inline SearchMode mode_from_string(std::string_view s) {
  for (SearchMode m : {SearchMode::SinglePrime, SearchMode::PrimePower, SearchMode::Conjecture}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown search mode: " + std::string(s));
}

}  // namespace detail

inline nlohmann::ordered_json config_to_json(const SearchConfig& c) {
  nlohmann::ordered_json j{{"k", c.k.str()},         {"alpha_max", c.alpha_max}, {"beta_max", c.beta_max},
                           {"workers", c.workers},   {"bit_cap", std::to_string(c.bit_cap)}};
  j["out"] = c.output_path ? nlohmann::ordered_json(*c.output_path) : nlohmann::ordered_json(nullptr);
  j["format"] = to_string(c.format);
  return j;
}

inline SearchConfig config_from_json(const nlohmann::ordered_json& j) {
  SearchConfig c;
  c.k = KSelector::parse(j.at("k").get<std::string>());
  c.alpha_max = j.at("alpha_max").get<std::uint32_t>();
  c.beta_max = j.at("beta_max").get<std::uint32_t>();
  c.workers = j.at("workers").get<std::uint32_t>();
  c.bit_cap = detail::parse_u64(j.at("bit_cap").get<std::string>(), "bit_cap");
  if (!j.at("out").is_null()) c.output_path = j.at("out").get<std::string>();
  c.format = parse_format(j.at("format").get<std::string>());
  return c;
}

inline std::string report_to_jsonl(const ClassificationReport& r) {
  nlohmann::ordered_json j{{"record", "report"}, {"n", r.n.str()}};
  const auto form = detail::form_to_json(r.form);
  for (const auto& [key, val] : form.items()) j[key] = val;
  j["divides"] = r.divides;
  j["perfect"] = r.perfect;
  j["excluded_perfect"] = r.excluded_perfect;
  j["pruned_by"] = r.pruned_by ? nlohmann::ordered_json(to_string(*r.pruned_by)) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

inline ClassificationReport report_from_json(const nlohmann::ordered_json& j) {
  ClassificationReport r{detail::form_from_json(j), Nat::parse(j.at("n").get<std::string>())};
  r.divides = j.at("divides").get<bool>();
  r.perfect = j.at("perfect").get<bool>();
  r.excluded_perfect = j.at("excluded_perfect").get<bool>();
  if (!j.at("pruned_by").is_null()) {
    const auto tag = j.at("pruned_by").get<std::string>();
    r.pruned_by = pruner_from_string(tag);
    if (!r.pruned_by) throw std::invalid_argument("unknown pruner tag: " + tag);
  }
  if (r.form.n() != r.n) throw std::invalid_argument("report: n does not match its form");
  return r;
}

inline std::string summary_to_jsonl(const RunSummary& s, std::size_t solutions) {
  nlohmann::ordered_json j{{"record", "summary"}, {"k", s.k}, {"mode", to_string(s.mode)},
                           {"grid_points", s.grid_points}, {"solutions", solutions}};
  j["predicted"] = detail::nats_to_json(s.predicted);
  j["unexpected"] = detail::nats_to_json(s.unexpected);
  j["missing"] = detail::nats_to_json(s.missing);
  nlohmann::ordered_json dis = nlohmann::ordered_json::array();
  for (const auto& d : s.disagreements) {
    auto e = detail::form_to_json(d.form);
    e["what"] = d.what;
    dis.push_back(std::move(e));
  }
  j["disagreements"] = std::move(dis);
  nlohmann::ordered_json pr = nlohmann::ordered_json::object();
  for (const auto& [tag, count] : s.pruned) pr[tag] = count;
  j["pruned"] = std::move(pr);
  nlohmann::ordered_json pk = nlohmann::ordered_json::array();
  for (const auto& f : s.p_equals_k) pk.push_back(detail::form_to_json(f));
  j["p_equals_k"] = std::move(pk);
  j["status"] = s.ok() ? "match" : "discrepancy";
  return j.dump();
}

inline RunSummary summary_from_json(const nlohmann::ordered_json& j) {
  RunSummary s;
  s.k = j.at("k").get<std::uint32_t>();
  s.mode = detail::mode_from_string(j.at("mode").get<std::string>());
  s.grid_points = j.at("grid_points").get<std::uint64_t>();
  s.predicted = detail::nats_from_json(j.at("predicted"));
  s.unexpected = detail::nats_from_json(j.at("unexpected"));
  s.missing = detail::nats_from_json(j.at("missing"));
  for (const auto& d : j.at("disagreements")) {
    s.disagreements.push_back({detail::form_from_json(d), d.at("what").get<std::string>()});
  }
  for (const auto& [tag, count] : j.at("pruned").items()) s.pruned[tag] = count.get<std::uint64_t>();
  for (const auto& f : j.at("p_equals_k")) s.p_equals_k.push_back(detail::form_from_json(f));
  return s;
}

/// Header line (the only line carrying timestamps), reports, summary.
inline void write_jsonl(std::ostream& os, const RunRecord& rec) {
  nlohmann::ordered_json h{{"record", "header"},       {"tool_version", rec.tool_version},
                           {"started", rec.started},   {"finished", rec.finished},
                           {"elapsed_ms", rec.elapsed_ms}};
  h["config"] = config_to_json(rec.config);
  os << h.dump() << "\n";
  for (const auto& r : rec.reports) os << report_to_jsonl(r) << "\n";
  os << summary_to_jsonl(rec.summary, rec.reports.size()) << "\n";
}

/// Parses one or more records written by write_jsonl.
inline std::vector<RunRecord> parse_jsonl(std::string_view text) {
  std::vector<RunRecord> out;
  bool open = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = detail::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const auto j = nlohmann::ordered_json::parse(line);
    const auto kind = j.at("record").get<std::string>();
    if (kind == "header") {
      if (open) throw std::invalid_argument("jsonl line " + std::to_string(line_no) + ": header before summary");
      RunRecord rec;
      rec.tool_version = j.at("tool_version").get<std::string>();
      rec.started = j.at("started").get<std::string>();
      rec.finished = j.at("finished").get<std::string>();
      rec.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
      rec.config = config_from_json(j.at("config"));
      out.push_back(std::move(rec));
      open = true;
    } else if (kind == "report") {
      if (!open) throw std::invalid_argument("jsonl line " + std::to_string(line_no) + ": report outside a record");
      out.back().reports.push_back(report_from_json(j));
    } else if (kind == "summary") {
      if (!open) throw std::invalid_argument("jsonl line " + std::to_string(line_no) + ": summary outside a record");
      out.back().summary = summary_from_json(j);
      if (j.at("solutions").get<std::size_t>() != out.back().reports.size()) {
        throw std::invalid_argument("jsonl line " + std::to_string(line_no) + ": solution count mismatch");
      }
      open = false;
    } else {
      throw std::invalid_argument("jsonl line " + std::to_string(line_no) + ": unknown record kind " + kind);
    }
  }
  if (open) throw std::invalid_argument("jsonl: record without summary");
  return out;
}

inline void write_csv(std::ostream& os, const RunRecord& rec, bool with_header = true) {
  if (with_header) os << "n,alpha,p,beta,k,divides,perfect,excluded_perfect,pruned_by\n";
  for (const auto& r : rec.reports) {
    os << r.n << ',' << r.form.alpha() << ',' << r.form.p() << ',' << r.form.beta() << ',' << r.form.k() << ','
       << (r.divides ? "true" : "false") << ',' << (r.perfect ? "true" : "false") << ','
       << (r.excluded_perfect ? "true" : "false") << ',' << (r.pruned_by ? to_string(*r.pruned_by) : "") << '\n';
  }
}

inline std::string join_nats(const std::vector<Nat>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].str();
  return s + "}";
}

inline void write_summary_human(std::ostream& os, const RunSummary& s, std::size_t solutions) {
  os << "status: " << (s.ok() ? "match" : "DISCREPANCY") << " (solutions " << solutions << ", predicted "
     << s.predicted.size() << ", unexpected " << s.unexpected.size() << ", missing " << s.missing.size()
     << ", disagreements " << s.disagreements.size() << ")\n";
  if (!s.unexpected.empty()) os << "unexpected: " << join_nats(s.unexpected) << "\n";
  if (!s.missing.empty()) os << "missing: " << join_nats(s.missing) << "\n";
  for (const auto& d : s.disagreements) {
    os << "disagreement at alpha=" << d.form.alpha() << " p=" << d.form.p() << " beta=" << d.form.beta() << ": "
       << d.what << "\n";
  }
  os << "pruned:";
  for (const auto& [tag, count] : s.pruned) os << " " << tag << "=" << count;
  os << "\n";
  for (const auto& f : s.p_equals_k) {
    os << "note: solution with p = k at alpha=" << f.alpha() << " beta=" << f.beta() << "\n";
  }
}

inline void write_human(std::ostream& os, const RunRecord& rec) {
  const RunSummary& s = rec.summary;
  os << "k=" << s.k << "  mode=" << to_string(s.mode) << "  alpha<=" << rec.config.alpha_max
     << "  beta<=" << (s.mode == SearchMode::SinglePrime ? 2 : rec.config.beta_max) << "  grid points "
     << s.grid_points << "\n";
  std::size_t width = 1;
  for (const auto& r : rec.reports) width = std::max(width, r.n.str().size());
  os << std::setw(static_cast<int>(width)) << "n" << "  " << std::setw(5) << "alpha" << "  " << std::setw(8) << "p"
     << "  " << std::setw(4) << "beta" << "  " << std::setw(7) << "perfect" << "  excluded\n";
  for (const auto& r : rec.reports) {
    os << std::setw(static_cast<int>(width)) << r.n.str() << "  " << std::setw(5) << r.form.alpha() << "  "
       << std::setw(8) << r.form.p() << "  " << std::setw(4) << r.form.beta() << "  " << std::setw(7)
       << (r.perfect ? "yes" : "no") << "  " << (r.excluded_perfect ? "yes" : "no") << "\n";
  }
  write_summary_human(os, s, rec.reports.size());
}

inline void write_record(std::ostream& os, const RunRecord& rec, OutputFormat fmt, bool csv_header = true) {
  switch (fmt) {
    case OutputFormat::JsonLines: write_jsonl(os, rec); break;
    case OutputFormat::Csv: write_csv(os, rec, csv_header); break;
    case OutputFormat::Human: write_human(os, rec); break;
  }
}

}  // namespace sigmadiv
