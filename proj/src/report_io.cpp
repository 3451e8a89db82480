#include "giuga/report_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "giuga/errors.hpp"

#ifndef GIUGA_VERSION
#define GIUGA_VERSION "0.0.0"
#endif

namespace giuga::report {

namespace {

using nlohmann::json;
using claims::Value;

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* value_kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::residue: return "residue";
    case Value::Kind::nonzero_residue: return "nonzero-residue";
    case Value::Kind::integer: return "integer";
    case Value::Kind::negative_integer: return "negative-integer";
  }
  return "?";
}

Value::Kind parse_value_kind(const std::string& s) {
  for (auto k : {Value::Kind::residue, Value::Kind::nonzero_residue, Value::Kind::integer,
                 Value::Kind::negative_integer}) {
    if (s == value_kind_name(k)) return k;
  }
  throw UsageError("unknown value kind '" + s + "'");
}

json value_to_json(const Value& v) {
  json j;
  j["kind"] = value_kind_name(v.kind);
  j["value"] = v.value.get_str();
  j["modulus"] = v.modulus;
  return j;
}

Value value_from_json(const json& j) {
  Value v;
  v.kind = parse_value_kind(j.at("kind").get<std::string>());
  const std::string text = j.at("value").get<std::string>();
  if (v.value.set_str(text, 10) != 0) throw UsageError("bad integer '" + text + "'");
  v.modulus = j.at("modulus").get<std::uint64_t>();
  return v;
}

json optional_u64(const std::optional<std::uint64_t>& x) { return x ? json(*x) : json(nullptr); }

std::optional<std::uint64_t> optional_u64_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::uint64_t>();
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string csv_row(const claims::Violation& v) {
  auto opt = [](const std::optional<std::uint64_t>& x) { return x ? std::to_string(*x) : std::string(); };
  return v.claim_id + ',' + opt(v.n) + ',' + opt(v.k) + ',' + v.observed.str() + ',' +
         v.expected.str() + ',' + claims::to_string(v.path);
}

}  // namespace

std::string tool_version() { return std::string("giuga ") + GIUGA_VERSION; }

ReportDocument make_document(std::vector<claims::ClaimReport> reports) {
  return {kFormatVersion, tool_version(), std::move(reports), now_utc()};
}

ReportDocument make_document(scan::GiugaCensus census) {
  return {kFormatVersion, tool_version(), std::move(census), now_utc()};
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw UsageError("unknown format '" + text + "' (expected json or csv)");
}

json to_json(const claims::Violation& v) {
  json j;
  j["claim_id"] = v.claim_id;
  j["n"] = optional_u64(v.n);
  j["k"] = optional_u64(v.k);
  j["observed"] = value_to_json(v.observed);
  j["expected"] = value_to_json(v.expected);
  j["path"] = claims::to_string(v.path);
  j["detail"] = v.detail;
  return j;
}

claims::Violation violation_from_json(const json& j) {
  claims::Violation v;
  v.claim_id = j.at("claim_id").get<std::string>();
  v.n = optional_u64_from(j.at("n"));
  v.k = optional_u64_from(j.at("k"));
  v.observed = value_from_json(j.at("observed"));
  v.expected = value_from_json(j.at("expected"));
  v.path = claims::parse_path(j.at("path").get<std::string>());
  v.detail = j.at("detail").get<std::string>();
  return v;
}

json to_json(const claims::ClaimReport& r, const WriteOptions& options) {
  json j;
  j["claim_id"] = r.claim_id;
  j["axis"] = claims::to_string(r.axis);
  j["range"] = {{"lo", r.lo}, {"hi", r.hi}};
  j["k_policy"] = r.k_policy;
  j["pairs_checked"] = r.pairs_checked;
  j["pairs_skipped"] = r.pairs_skipped;
  j["violation_total"] = r.violation_total;
  j["verdict"] = claims::to_string(r.verdict);
  j["status"] = claims::to_string(r.status);
  if (!options.canonical) j["wall_time_ms"] = r.wall_time_ms;
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back(to_json(v));
  return j;
}

claims::ClaimReport claim_report_from_json(const json& j) {
  claims::ClaimReport r;
  r.claim_id = j.at("claim_id").get<std::string>();
  r.axis = claims::parse_axis(j.at("axis").get<std::string>());
  r.lo = j.at("range").at("lo").get<std::uint64_t>();
  r.hi = j.at("range").at("hi").get<std::uint64_t>();
  r.k_policy = j.at("k_policy").get<std::string>();
  r.pairs_checked = j.at("pairs_checked").get<std::uint64_t>();
  r.pairs_skipped = j.at("pairs_skipped").get<std::uint64_t>();
  r.violation_total = j.at("violation_total").get<std::uint64_t>();
  r.verdict = claims::parse_verdict(j.at("verdict").get<std::string>());
  r.status = claims::parse_status(j.at("status").get<std::string>());
  r.wall_time_ms = j.value("wall_time_ms", std::uint64_t{0});
  for (const auto& v : j.at("violations")) r.violations.push_back(violation_from_json(v));
  return r;
}

json to_json(const scan::GiugaCensus& c, const WriteOptions& options) {
  json j;
  j["bound"] = c.bound;
  j["composite_satisfiers"] = c.composite_satisfiers;
  j["prime_satisfiers"] = c.prime_satisfiers;
  j["g"] = c.g;
  j["numbers_checked"] = c.numbers_checked;
  j["prime_failures"] = c.prime_failures;
  if (!options.canonical) j["wall_time_ms"] = c.wall_time_ms;
  return j;
}

scan::GiugaCensus census_from_json(const json& j) {
  scan::GiugaCensus c;
  c.bound = j.at("bound").get<std::uint64_t>();
  c.composite_satisfiers = j.at("composite_satisfiers").get<std::vector<std::uint64_t>>();
  c.prime_satisfiers = j.at("prime_satisfiers").get<std::uint64_t>();
  c.g = j.at("g").get<std::uint64_t>();
  c.numbers_checked = j.at("numbers_checked").get<std::uint64_t>();
  c.prime_failures = j.at("prime_failures").get<std::vector<std::uint64_t>>();
  c.wall_time_ms = j.value("wall_time_ms", std::uint64_t{0});
  if (c.g != c.composite_satisfiers.size()) {
    throw UsageError("census: g does not match the number of composite satisfiers");
  }
  return c;
}

json to_json(const claims::ChunkResult& c) {
  json j;
  j["index"] = c.index;
  j["lo"] = c.lo;
  j["hi"] = c.hi;
  j["pairs_checked"] = c.pairs_checked;
  j["pairs_skipped"] = c.pairs_skipped;
  j["violation_total"] = c.violation_total;
  j["implementation_bug"] = c.implementation_bug;
  j["violations"] = json::array();
  for (const auto& v : c.violations) j["violations"].push_back(to_json(v));
  return j;
}

claims::ChunkResult chunk_from_json(const json& j) {
  claims::ChunkResult c;
  c.index = j.at("index").get<std::uint64_t>();
  c.lo = j.at("lo").get<std::uint64_t>();
  c.hi = j.at("hi").get<std::uint64_t>();
  c.pairs_checked = j.at("pairs_checked").get<std::uint64_t>();
  c.pairs_skipped = j.at("pairs_skipped").get<std::uint64_t>();
  c.violation_total = j.at("violation_total").get<std::uint64_t>();
  c.implementation_bug = j.at("implementation_bug").get<bool>();
  for (const auto& v : j.at("violations")) c.violations.push_back(violation_from_json(v));
  return c;
}

json to_json(const scan::CensusChunk& c) {
  json j;
  j["index"] = c.index;
  j["lo"] = c.lo;
  j["hi"] = c.hi;
  j["numbers_checked"] = c.numbers_checked;
  j["prime_satisfiers"] = c.prime_satisfiers;
  j["composite_satisfiers"] = c.composite_satisfiers;
  j["prime_failures"] = c.prime_failures;
  return j;
}

scan::CensusChunk census_chunk_from_json(const json& j) {
  scan::CensusChunk c;
  c.index = j.at("index").get<std::uint64_t>();
  c.lo = j.at("lo").get<std::uint64_t>();
  c.hi = j.at("hi").get<std::uint64_t>();
  c.numbers_checked = j.at("numbers_checked").get<std::uint64_t>();
  c.prime_satisfiers = j.at("prime_satisfiers").get<std::uint64_t>();
  c.composite_satisfiers = j.at("composite_satisfiers").get<std::vector<std::uint64_t>>();
  c.prime_failures = j.at("prime_failures").get<std::vector<std::uint64_t>>();
  return c;
}

std::string to_json_text(const ReportDocument& doc, const WriteOptions& options) {
  json j;
  j["format_version"] = doc.format_version;
  j["tool_version"] = doc.tool_version;
  if (!options.canonical) j["generated_utc"] = doc.generated_utc;
  if (const auto* reports = std::get_if<std::vector<claims::ClaimReport>>(&doc.payload)) {
    j["kind"] = "claim-reports";
    j["reports"] = json::array();
    for (const auto& r : *reports) j["reports"].push_back(to_json(r, options));
  } else {
    j["kind"] = "giuga-census";
    j["census"] = to_json(std::get<scan::GiugaCensus>(doc.payload), options);
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const ReportDocument& doc) {
  std::string out = std::string(kCsvHeader) + "\n";
  if (const auto* reports = std::get_if<std::vector<claims::ClaimReport>>(&doc.payload)) {
    for (const auto& r : *reports) {
      for (const auto& v : r.violations) out += csv_row(v) + "\n";
    }
  } else {
    const auto& census = std::get<scan::GiugaCensus>(doc.payload);
    for (std::uint64_t n : census.composite_satisfiers) {
      claims::Violation v{"giuga", n, std::nullopt, Value::residue(0, n), Value::nonzero(n),
                          claims::EvalPath::modular, {}};
      out += csv_row(v) + "\n";
    }
    for (std::uint64_t p : census.prime_failures) {
      claims::Violation v{"sierpinski", p, std::nullopt, Value::nonzero(p), Value::residue(p - 1, p),
                          claims::EvalPath::modular, {}};
      out += csv_row(v) + "\n";
    }
  }
  return out;
}

ReportDocument parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("report parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  try {
    ReportDocument doc;
    doc.format_version = j.at("format_version").get<int>();
    if (doc.format_version != kFormatVersion) {
      throw VersionMismatchError("unsupported report format version " +
                                 std::to_string(doc.format_version) + " (this build reads " +
                                 std::to_string(kFormatVersion) + ")");
    }
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.generated_utc = j.value("generated_utc", std::string());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "claim-reports") {
      std::vector<claims::ClaimReport> reports;
      for (const auto& r : j.at("reports")) reports.push_back(claim_report_from_json(r));
      doc.payload = std::move(reports);
    } else if (kind == "giuga-census") {
      doc.payload = census_from_json(j.at("census"));
    } else {
      throw UsageError("unknown document kind '" + kind + "'");
    }
    return doc;
  } catch (const VersionMismatchError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("report schema error: ") + e.what(), 0, 0);
  }
}

void write_report(const ReportDocument& doc, const std::string& path, Format format,
                  const WriteOptions& options) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << (format == Format::json ? to_json_text(doc, options) : to_csv(doc));
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ReportDocument read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str());
}

}  // namespace giuga::report
