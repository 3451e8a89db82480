#pragma once

// Registry of checkable statements about the Wilson/Giuga interpolation
// family, and the machinery to check them over (n, k) ranges.
//
// Each claim is either a forced identity (every step of its proof is valid
// for every modulus, so a violation means our code is wrong) or under test
// (its proof divides residues by factors that need not be invertible, so a
// violation is a mathematical finding and is reported, not fatal).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "giuga/exact.hpp"
#include "giuga/kernels.hpp"
#include "giuga/modular.hpp"

namespace giuga::claims {

enum class ClaimKind { forced_identity, under_test };
// What a range iterates over: n alone (k fixed or absent), (n, k) pairs, or k alone.
enum class Axis { n, n_k, k };
enum class EvalPath { exact, modular };
enum class Verdict { confirmed_on_range, violated, skipped };
enum class RunStatus { completed, finding, implementation_bug };

std::string to_string(ClaimKind);
std::string to_string(Axis);
std::string to_string(EvalPath);
std::string to_string(Verdict);
std::string to_string(RunStatus);
ClaimKind parse_kind(const std::string&);
Axis parse_axis(const std::string&);
EvalPath parse_path(const std::string&);
Verdict parse_verdict(const std::string&);
RunStatus parse_status(const std::string&);

struct ClaimDescriptor {
  std::string id;
  std::string statement;
  ClaimKind kind;
  Axis axis;
  EvalPath path;
  std::string domain;
  std::string anchor;
  // Fixed k for n-axis claims about a single family member.
  std::optional<std::uint64_t> implicit_k;
};

// One side of a comparison recorded in a Violation.
struct Value {
  enum class Kind { residue, nonzero_residue, integer, negative_integer };

  Kind kind = Kind::integer;
  exact::Int value = 0;         // unused for nonzero_residue / negative_integer
  std::uint64_t modulus = 0;    // residue kinds only

  static Value residue(const mod::Residue& r);
  static Value residue(std::uint64_t r, std::uint64_t m);
  static Value nonzero(std::uint64_t m);
  static Value integer(exact::Int v);
  static Value negative();

  // "2 (mod 4)", "!=0 (mod 4)", "-1", "<0"
  std::string str() const;
  static Value parse(const std::string& text);

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind == b.kind && a.value == b.value && a.modulus == b.modulus;
  }
};

struct Violation {
  std::string claim_id;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  Value observed;
  Value expected;
  EvalPath path = EvalPath::exact;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Which k are examined at each n. Explicit policies name k directly (fixed)
// or relative to n (band offsets d, meaning k = n - d); requested k outside a
// claim's domain are counted as skipped.
struct KPolicy {
  enum class Mode { all_valid, explicit_set, automatic };

  Mode mode = Mode::automatic;
  std::vector<std::uint64_t> fixed;
  std::vector<std::uint64_t> offsets;

  // all-valid k up to this n, then small fixed k plus a near-n band.
  static constexpr std::uint64_t kAutomaticAllUpTo = 200;

  static KPolicy all_valid();
  static KPolicy automatic();
  static KPolicy fixed_k(std::vector<std::uint64_t> ks);
  static KPolicy band(std::vector<std::uint64_t> offsets);
  static KPolicy explicit_k(std::vector<std::uint64_t> ks, std::vector<std::uint64_t> offsets);

  // "all", "auto", "fixed:2,3", "band:2,3", "fixed:2,3+band:2,3"
  std::string str() const;
  static KPolicy parse(const std::string& text);

  // True when this policy examines every valid k at n.
  bool exhaustive_at(std::uint64_t n) const;

  friend bool operator==(const KPolicy&, const KPolicy&) = default;
};

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

// Default number of violations stored per report; the total is always kept.
inline constexpr std::size_t kMaxStoredViolations = 100;

struct ClaimReport {
  std::string claim_id;
  Axis axis = Axis::n;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::string k_policy;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_skipped = 0;
  std::vector<Violation> violations;
  std::uint64_t violation_total = 0;
  Verdict verdict = Verdict::skipped;
  RunStatus status = RunStatus::completed;
  std::uint64_t wall_time_ms = 0;

  friend bool operator==(const ClaimReport&, const ClaimReport&) = default;
};

// Range ceilings. Every ceiling is multiplied by `scale`; from_env() reads
// the scale from GIUGA_COST_CEILING.
struct Budget {
  double scale = 1.0;

  static Budget from_env();
};

struct CheckOptions {
  unsigned workers = 1;
  std::uint64_t chunk_size = 64;
  Budget budget{};
  // nullptr selects kernels::active().
  const kernels::KernelSet* kernels = nullptr;
  // Every pair with n <= path_check_max_n whose hash falls in one of
  // path_check_period buckets is re-evaluated on the exact path.
  std::uint64_t path_check_max_n = 60;
  std::uint64_t path_check_period = 4;
  std::size_t max_stored_violations = kMaxStoredViolations;
};

// Result for one contiguous block of the range; the unit of parallelism and
// of checkpointing.
struct ChunkResult {
  std::uint64_t index = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_skipped = 0;
  std::vector<Violation> violations;  // first max_stored_violations, in (n, k) order
  std::uint64_t violation_total = 0;
  bool implementation_bug = false;

  friend bool operator==(const ChunkResult&, const ChunkResult&) = default;
};

const std::vector<ClaimDescriptor>& list_claims();
// Throws UnknownClaimError.
const ClaimDescriptor& find_claim(const std::string& id);

// Largest range end check_claim accepts for this claim and policy.
std::uint64_t range_ceiling(const std::string& id, const KPolicy& policy, const Budget& budget);

// Evaluates [lo, hi] of the claim's axis (already validated against ceilings).
ChunkResult evaluate_chunk(const std::string& id, std::uint64_t index, Range range,
                           const KPolicy& policy, const CheckOptions& options);

// Splits a range into chunk ranges of options.chunk_size.
std::vector<Range> chunk_ranges(Range range, std::uint64_t chunk_size);

// Folds chunk results (ordered by index, from index 0) into a report. Chunks
// after the first one flagged as an implementation bug are dropped.
ClaimReport merge_chunks(const std::string& id, Range range, const KPolicy& policy,
                         const std::vector<ChunkResult>& chunks,
                         std::size_t max_stored = kMaxStoredViolations);

// Throws UnknownClaimError, UsageError (empty range), ResourceError (range
// beyond the ceiling).
ClaimReport check_claim(const std::string& id, Range range, const KPolicy& policy = KPolicy::automatic(),
                        const CheckOptions& options = {});

// Least (n, k), n ascending then k ascending, violating the claim with n <= search_max.
// Defaults to the claim's own search ceiling.
std::optional<Violation> first_violation(const std::string& id,
                                         std::optional<std::uint64_t> search_max = std::nullopt,
                                         const CheckOptions& options = {});
std::uint64_t default_search_ceiling(const std::string& id);

struct FamilyMember {
  enum class Which { wilson, giuga, H };
  Which which = Which::H;
  std::uint64_t k = 1;

  static FamilyMember wilson() { return {Which::wilson, 0}; }
  static FamilyMember giuga() { return {Which::giuga, 0}; }
  static FamilyMember h(std::uint64_t k) { return {Which::H, k}; }
};

// prime(n) <=> n | member(n) over the range, which must start at or above max(2, k+1).
ClaimReport characterization_test(FamilyMember member, Range range, const CheckOptions& options = {});

// Characterization of H_k for k in {2,3,4,5} and k in {n-5,...,n-2}, n <= n_max.
ClaimReport reproduce_author_observation(std::uint64_t n_max = 1000, const CheckOptions& options = {});

// Re-evaluates a violation on the exact path; true when the exact path
// reproduces observed != expected.
bool replay(const Violation& v);

}  // namespace giuga::claims
