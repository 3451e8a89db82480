#pragma once

// Versioned JSON reports and CSV violation export. Big integers are written
// as decimal strings; counts as JSON integers. Nothing is ever a float.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "giuga/claims.hpp"
#include "giuga/scanner.hpp"

namespace giuga::report {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kCsvHeader = "claim_id,n,k,observed,expected,path";

std::string tool_version();

struct ReportDocument {
  int format_version = kFormatVersion;
  std::string tool_version;
  std::variant<std::vector<claims::ClaimReport>, scan::GiugaCensus> payload;
  std::string generated_utc;  // ignored by operator==

  friend bool operator==(const ReportDocument& a, const ReportDocument& b) {
    return a.format_version == b.format_version && a.tool_version == b.tool_version &&
           a.payload == b.payload;
  }
};

// Stamps the current tool version and UTC time.
ReportDocument make_document(std::vector<claims::ClaimReport> reports);
ReportDocument make_document(scan::GiugaCensus census);

enum class Format { json, csv };
Format parse_format(const std::string& text);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class VersionMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical output drops the timestamp and wall times, so two runs of the
// same configuration produce identical bytes.
struct WriteOptions {
  bool canonical = false;
};

std::string to_json_text(const ReportDocument& doc, const WriteOptions& options = {});
std::string to_csv(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

// Throws std::runtime_error on I/O failure.
void write_report(const ReportDocument& doc, const std::string& path, Format format,
                  const WriteOptions& options = {});
ReportDocument read_report(const std::string& path);

// Building blocks shared with the checkpoint format.
nlohmann::json to_json(const claims::Violation& v);
claims::Violation violation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const claims::ClaimReport& r, const WriteOptions& options = {});
claims::ClaimReport claim_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const scan::GiugaCensus& c, const WriteOptions& options = {});
scan::GiugaCensus census_from_json(const nlohmann::json& j);
nlohmann::json to_json(const claims::ChunkResult& c);
claims::ChunkResult chunk_from_json(const nlohmann::json& j);
nlohmann::json to_json(const scan::CensusChunk& c);
scan::CensusChunk census_chunk_from_json(const nlohmann::json& j);

}  // namespace giuga::report
