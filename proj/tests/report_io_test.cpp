#include "giuga/report_io.hpp"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "random_reports.hpp"

using namespace giuga;
using namespace giuga::claims;
using report::ReportDocument;

namespace {

using namespace random_reports;

std::string valid_text() {
  return report::to_json_text(report::make_document(std::vector<ClaimReport>{random_report()}));
}

}  // namespace

TEST(ReportIo, RandomDocumentsRoundTrip) {
  for (int t = 0; t < 100; ++t) {
    const ReportDocument doc = random_document();
    const std::string text = report::to_json_text(doc);
    const ReportDocument back = report::parse_report(text);
    ASSERT_EQ(back, doc) << text;
    EXPECT_EQ(back.generated_utc, doc.generated_utc);
    EXPECT_EQ(report::to_json_text(back), text);
  }
}

TEST(ReportIo, CanonicalOmitsTimes) {
  auto doc = report::make_document(std::vector<ClaimReport>{random_report()});
  const std::string text = report::to_json_text(doc, {true});
  EXPECT_EQ(text.find("generated_utc"), std::string::npos);
  EXPECT_EQ(text.find("wall_time_ms"), std::string::npos);
  ReportDocument back = report::parse_report(text);
  EXPECT_EQ(back.format_version, report::kFormatVersion);
}

TEST(ReportIo, VersionStamped) {
  const auto doc = report::make_document(random_census());
  EXPECT_EQ(doc.tool_version, report::tool_version());
  EXPECT_FALSE(doc.generated_utc.empty());
  EXPECT_EQ(doc.generated_utc.back(), 'Z');
}

TEST(ReportIo, CsvHeaderAndRows) {
  ClaimReport r;
  r.claim_id = "thm-ukz";
  r.axis = Axis::n_k;
  Violation v;
  v.claim_id = "thm-ukz";
  v.n = 4;
  v.k = 2;
  v.observed = Value::residue(2, 4);
  v.expected = Value::residue(0, 4);
  v.path = EvalPath::modular;
  r.violations = {v};
  const std::string csv = report::to_csv(report::make_document(std::vector<ClaimReport>{r}));
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "claim_id,n,k,observed,expected,path");
  EXPECT_EQ(row, "thm-ukz,4,2,2 (mod 4),0 (mod 4),modular");
}

TEST(ReportIo, CsvForEmptyCensusIsHeaderOnly) {
  scan::GiugaCensus c;
  c.bound = 100;
  EXPECT_EQ(report::to_csv(report::make_document(c)), std::string(report::kCsvHeader) + "\n");
}

TEST(ReportIo, TruncatedInputIsParseError) {
  const std::string text = valid_text();
  for (std::size_t cut : {std::size_t{1}, text.size() / 3, text.size() / 2, text.size() - 2}) {
    try {
      report::parse_report(text.substr(0, cut));
      FAIL() << "accepted truncated input at " << cut;
    } catch (const report::ParseError& e) {
      EXPECT_GE(e.line(), 1u);
    }
  }
  EXPECT_THROW(report::parse_report(""), report::ParseError);
}

TEST(ReportIo, SchemaErrorsAreParseErrors) {
  EXPECT_THROW(report::parse_report("{}"), report::ParseError);
  EXPECT_THROW(report::parse_report("[1,2,3]"), report::ParseError);
  auto j = nlohmann::json::parse(valid_text());
  j["reports"][0]["verdict"] = "maybe";
  EXPECT_THROW(report::parse_report(j.dump()), report::ParseError);
}

TEST(ReportIo, OtherVersionsRejected) {
  for (int version : {0, 2}) {
    auto j = nlohmann::json::parse(valid_text());
    j["format_version"] = version;
    EXPECT_THROW(report::parse_report(j.dump()), report::VersionMismatchError) << version;
  }
}

TEST(ReportIo, FileRoundTrip) {
  const auto p = (std::filesystem::temp_directory_path() / ("giuga_report_" + std::to_string(::getpid()) + ".json")).string();
  const ReportDocument doc = random_document();
  report::write_report(doc, p, report::Format::json);
  EXPECT_EQ(report::read_report(p), doc);
  std::filesystem::remove(p);
  EXPECT_THROW(report::read_report(p), std::runtime_error);
}

TEST(ReportIo, ChunkRecordsRoundTrip) {
  for (int t = 0; t < 50; ++t) {
    ChunkResult c;
    c.index = oracle::uniform(0, 1000);
    c.lo = oracle::uniform(2, 100);
    c.hi = c.lo + oracle::uniform(0, 100);
    c.pairs_checked = oracle::uniform(0, 10000);
    c.violations = random_report().violations;
    c.violation_total = c.violations.size();
    c.implementation_bug = oracle::uniform(0, 1);
    EXPECT_EQ(report::chunk_from_json(report::to_json(c)), c);
  }
}
