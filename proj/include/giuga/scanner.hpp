#pragma once

// Chunked, parallel, resumable sweeps over n. A sweep's result depends only
// on its configuration, never on worker count or completion order.
//
// Checkpoint file: one JSON record per line. The first line is a header
// carrying the configuration and its digest; every following line is one
// completed chunk with an FNV-1a checksum over its payload. A final line
// without a terminating newline is a torn write and is ignored on resume.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "giuga/claims.hpp"

namespace giuga::scan {

// ScanConfig::target for the Giuga census; anything else names a claim.
inline constexpr const char* kCensusTarget = "giuga-census";

// Default ceiling on the census bound x.
inline constexpr std::uint64_t kCensusCeiling = 50000;

struct ScanConfig {
  std::string target;
  std::uint64_t n_lo = 2;
  std::uint64_t n_hi = 2;
  claims::KPolicy k_policy = claims::KPolicy::automatic();
  unsigned workers = 1;
  std::uint64_t chunk_size = 64;
  std::optional<std::string> checkpoint_path;
  claims::Budget budget{};
  const kernels::KernelSet* kernels = nullptr;
  // Test hook: process at most this many new chunks, then throw Interrupted.
  std::optional<std::uint64_t> stop_after_chunks;
};

// Stable digest of everything that determines the result (target, range,
// k-policy, chunk size). Paths and worker count are excluded.
std::string config_digest(const ScanConfig& cfg);

struct GiugaCensus {
  std::uint64_t bound = 0;  // every n with 2 <= n < bound was examined
  std::vector<std::uint64_t> composite_satisfiers;
  std::uint64_t prime_satisfiers = 0;
  std::uint64_t g = 0;  // == composite_satisfiers.size()
  std::uint64_t numbers_checked = 0;
  // Primes whose residue is not -1; nonempty only if a kernel is broken.
  std::vector<std::uint64_t> prime_failures;
  std::uint64_t wall_time_ms = 0;

  friend bool operator==(const GiugaCensus&, const GiugaCensus&) = default;
};

struct CensusChunk {
  std::uint64_t index = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t numbers_checked = 0;
  std::uint64_t prime_satisfiers = 0;
  std::vector<std::uint64_t> composite_satisfiers;
  std::vector<std::uint64_t> prime_failures;

  friend bool operator==(const CensusChunk&, const CensusChunk&) = default;
};

using ScanOutcome = std::variant<claims::ClaimReport, GiugaCensus>;

struct Checkpoint {
  std::string digest;
  ScanConfig config;  // as recorded in the header; paths and workers unset
  std::vector<claims::ChunkResult> claim_chunks;
  std::vector<CensusChunk> census_chunks;
  // Length of the file prefix made of complete records.
  std::uint64_t intact_bytes = 0;

  std::vector<std::uint64_t> completed_chunks() const;
};

class Interrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DigestMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CorruptCheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs a claim sweep or the census from scratch. With a checkpoint path the
// file is (re)created and a record is appended after every completed chunk.
ScanOutcome run(const ScanConfig& cfg);

// Claim sweep; cfg.target must be a claim id.
claims::ClaimReport sweep(const ScanConfig& cfg);

// Census over 2 <= n < x; x >= 3. Range, target and chunking come from x and
// `base` (workers, chunk size, checkpoint, kernels).
GiugaCensus giuga_census(std::uint64_t x, ScanConfig base = {});

// Throws CorruptCheckpointError.
Checkpoint read_checkpoint(const std::string& path);

// Completes the chunks missing from the checkpoint at cfg.checkpoint_path,
// appending to it. Throws DigestMismatchError when cfg does not match the
// recorded configuration.
ScanOutcome resume(const ScanConfig& cfg);

// Rebuilds the configuration recorded in a checkpoint file, for resuming
// without restating it.
ScanConfig config_from_checkpoint(const std::string& path);

}  // namespace giuga::scan
