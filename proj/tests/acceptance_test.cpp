// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every comparison is exact; each criterion also has a
// wall-clock limit that counts as a failure when exceeded.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "giuga/claims.hpp"
#include "giuga/exact.hpp"
#include "giuga/modular.hpp"
#include "giuga/primality.hpp"
#include "giuga/report_io.hpp"
#include "giuga/scanner.hpp"
#include "oracle.hpp"
#include "random_reports.hpp"

using namespace giuga;
using namespace giuga::claims;

namespace {

// Thrown by a criterion body to fail with a message.
struct Failure {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

std::string describe(const ClaimReport& r) {
  std::ostringstream os;
  os << r.claim_id << " [" << r.lo << "," << r.hi << "] " << to_string(r.verdict) << "/" << to_string(r.status)
     << " checked=" << r.pairs_checked << " violations=" << r.violation_total;
  return os.str();
}

void require_clean(const ClaimReport& r) {
  require(r.status == RunStatus::completed && r.violation_total == 0 && r.pairs_checked > 0 &&
              r.verdict == Verdict::confirmed_on_range,
          describe(r));
}

// Criterion 1: modular paths agree with exact values reduced mod n.
std::string oracle_equivalence() {
  std::uint64_t compared = 0;
  for (const kernels::KernelSet* ks : kernels::available()) {
    for (std::uint64_t n = 2; n <= 60; ++n) {
      require(mod::wilson_residue(n, *ks).r() == exact::f_wilson(n).mod(n), "wilson n=" + std::to_string(n));
      require(mod::giuga_residue(n, *ks).r() == exact::power_sum(n - 1, n).mod(n), "giuga n=" + std::to_string(n));
      const auto row = exact::H_row(n);
      for (std::uint64_t k = 1; k <= n - 1; ++k) {
        const std::string at = " n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + std::string(ks->name);
        require(mod::H_mod(k, n, *ks).r() == row[k].mod(n), "H_mod" + at);
        require(row[k] == exact::H(k, n), "H_row" + at);
        compared += 2;
        if (n >= 3 && k <= n - 2) {
          require(mod::U_mod(k, n, *ks).r() == exact::U(k, n).mod(n), "U_mod" + at);
          ++compared;
        }
      }
      compared += 2;
    }
  }
  return std::to_string(compared) + " residues compared across " + std::to_string(kernels::available().size()) +
         " kernel sets";
}

// Criterion 2: every forced identity, zero violations.
std::string forced_identities() {
  const KPolicy all = KPolicy::all_valid();
  const std::vector<std::pair<std::string, Range>> runs = {
      {"lemma-ordering", {2, 60}}, {"endpoint-hg", {2, 60}},  {"lemma-step", {2, 40}},
      {"lemma-core", {2, 200}},    {"remark-step", {2, 200}}, {"lemma-u1", {3, 5000}},
      {"h1-fw", {2, 5000}},        {"vk-identity", {1, 200}}, {"lemma-a", {1, 200}},
      {"lemma-b", {1, 200}},       {"factorial-chain", {2, 200}}, {"wilson", {2, 5000}},
  };
  std::uint64_t pairs = 0;
  for (const auto& [id, range] : runs) {
    require(find_claim(id).kind == ClaimKind::forced_identity, id + " is not a forced identity");
    const ClaimReport r = check_claim(id, range, all);
    require_clean(r);
    pairs += r.pairs_checked;
  }
  return std::to_string(runs.size()) + " claims, " + std::to_string(pairs) + " points, 0 violations";
}

// Criterion 3: H_1 and H_2 characterize the primes.
std::string characterizations() {
  const ClaimReport h1 = characterization_test(FamilyMember::h(1), {2, 5000});
  const ClaimReport h2 = characterization_test(FamilyMember::h(2), {3, 5000});
  require_clean(h1);
  require_clean(h2);
  require(h1.pairs_checked == 4999 && h2.pairs_checked == 4998, "unexpected coverage: " + describe(h1) +
                                                                      "; " + describe(h2));
  // Independent spot check of the oracle wiring: the residues themselves.
  const auto table = primality::primes_up_to(5000);
  for (std::uint64_t n = 3; n <= 5000; ++n) {
    require((mod::H_mod(2, n).r() == 0) == table.contains(n), "H_2 mismatch at n=" + std::to_string(n));
  }
  return "H_1 over [2,5000] and H_2 over [3,5000], 0 mismatches";
}

// Criterion 4: the small-k and near-n characterization sweep to 1000.
std::string observation() {
  const ClaimReport r = reproduce_author_observation(1000);
  require_clean(r);
  return std::to_string(r.pairs_checked) + " (n,k) pairs to n=1000, 0 violations";
}

// Criterion 5: the step-sum congruence over composites, and over primes.
std::string step_sum_finding() {
  // Exact brute force: factorial table, exact division, then reduce.
  require(exact::U(2, 4) == exact::Nat(14) && oracle::U(2, 4) == 14, "U(2,4) != 14");
  require(oracle::mod(oracle::U(2, 4), 4) == 2, "U(2,4) mod 4 != 2");

  std::vector<mpz_class> fact(610);
  fact[0] = 1;
  for (std::size_t j = 1; j < fact.size(); ++j) fact[j] = fact[j - 1] * static_cast<unsigned long>(j);
  std::set<std::pair<std::uint64_t, std::uint64_t>> expected;
  for (std::uint64_t n = 3; n <= 300; ++n) {
    for (std::uint64_t k = 1; k <= n - 2; ++k) {
      mpz_class s = 0, q;
      for (std::uint64_t i = 1; i <= k + 1; ++i) {
        mpz_divexact(q.get_mpz_t(), fact[n + i - 2 - k].get_mpz_t(), fact[i].get_mpz_t());
        s += q * oracle::ipow(i, k);
      }
      if (oracle::mod(s, n) != 0) expected.emplace(n, k);
    }
  }

  CheckOptions o;
  o.max_stored_violations = SIZE_MAX;
  const ClaimReport r = check_claim("thm-ukz", {2, 300}, KPolicy::all_valid(), o);
  require(r.status != RunStatus::implementation_bug, describe(r));
  std::set<std::pair<std::uint64_t, std::uint64_t>> found;
  for (const auto& v : r.violations) found.emplace(*v.n, *v.k);
  require(r.violation_total == r.violations.size(), "violation list truncated");
  require(found == expected, "scan found " + std::to_string(found.size()) + " violations, oracle " +
                                 std::to_string(expected.size()));
  for (const auto& [n, k] : found) require(!oracle::is_prime(n), "violation at prime n=" + std::to_string(n));

  const auto first = first_violation("thm-ukz");
  require(first.has_value() && !expected.empty(), "no first violation");
  require(std::make_pair(*first->n, *first->k) == *expected.begin(), "first violation disagrees with oracle");

  // Primes: k up to min(p-2, 64).
  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = 1; k <= 64; ++k) ks.push_back(k);
  const KPolicy small_k = KPolicy::fixed_k(ks);
  std::uint64_t prime_pairs = 0, index = 0;
  for (std::uint64_t p : primality::primes_up_to(1000).primes()) {
    if (p < 3) continue;
    const ChunkResult c = evaluate_chunk("thm-ukz", index++, {p, p}, small_k, {});
    require(c.violation_total == 0 && !c.implementation_bug, "U_k(p) != 0 at p=" + std::to_string(p));
    require(c.pairs_checked == std::min<std::uint64_t>(p - 2, 64), "coverage at p=" + std::to_string(p));
    prime_pairs += c.pairs_checked;
  }
  std::ostringstream os;
  os << r.pairs_checked << " pairs to n=300, " << found.size() << " violations equal to the exact oracle set, first (n="
     << *first->n << ", k=" << *first->k << "); " << prime_pairs << " prime pairs all zero";
  return os.str();
}

// Criterion 6: the full-family conjecture to n=200, with replay of anything found.
std::string full_family_sweep() {
  CheckOptions o;
  o.max_stored_violations = SIZE_MAX;
  const ClaimReport r = check_claim("conj-hk", {2, 200}, KPolicy::all_valid(), o);
  require(r.status != RunStatus::implementation_bug, describe(r));
  require(r.pairs_checked == 199u * 200u / 2u, "coverage: " + describe(r));
  for (const auto& v : r.violations) require(replay(v), "violation does not replay at n=" + std::to_string(*v.n));

  const auto path = std::filesystem::temp_directory_path() / ("giuga_accept_" + std::to_string(::getpid()) + ".json");
  const auto doc = report::make_document(std::vector<ClaimReport>{r});
  report::write_report(doc, path.string(), report::Format::json);
  const bool same = report::read_report(path.string()) == doc;
  std::filesystem::remove(path);
  require(same, "report did not round-trip");
  return std::to_string(r.pairs_checked) + " pairs, " + std::to_string(r.violation_total) +
         " violations (all replayed), report written";
}

// Criterion 7: Giuga census below 20000.
std::string census() {
  const std::uint64_t x = 20000;
  scan::ScanConfig one;
  one.workers = 1;
  const scan::GiugaCensus a = scan::giuga_census(x, one);
  scan::ScanConfig eight;
  eight.workers = 8;
  const scan::GiugaCensus b = scan::giuga_census(x, eight);

  require(a.g == 0 && a.composite_satisfiers.empty(), "G(20000) = " + std::to_string(a.g));
  require(a.prime_failures.empty(), "primes failing the congruence");
  require(a.prime_satisfiers == 2262, "prime satisfiers " + std::to_string(a.prime_satisfiers));
  require(primality::primes_up_to(x - 1).count() == 2262, "sieve count");
  const report::WriteOptions canon{true};
  require(report::to_json_text(report::make_document(a), canon) ==
              report::to_json_text(report::make_document(b), canon),
          "1 and 8 workers differ");

  const auto ckpt = std::filesystem::temp_directory_path() / ("giuga_accept_" + std::to_string(::getpid()) + ".ckpt");
  scan::ScanConfig cfg;
  cfg.target = scan::kCensusTarget;
  cfg.n_lo = 2;
  cfg.n_hi = x - 1;
  cfg.workers = 8;
  cfg.checkpoint_path = ckpt.string();
  cfg.stop_after_chunks = 150;
  bool interrupted = false;
  try {
    scan::run(cfg);
  } catch (const scan::Interrupted&) {
    interrupted = true;
  }
  require(interrupted, "interrupt hook did not fire");
  cfg.stop_after_chunks.reset();
  scan::GiugaCensus c = std::get<scan::GiugaCensus>(scan::resume(cfg));
  std::filesystem::remove(ckpt);
  require(report::to_json_text(report::make_document(c), canon) ==
              report::to_json_text(report::make_document(a), canon),
          "resumed census differs");
  return "G(20000)=0, 2262 prime satisfiers, 1 vs 8 workers identical, interrupt+resume identical";
}

// Criterion 8: report round-trip.
std::string report_round_trip() {
  for (int t = 0; t < 100; ++t) {
    const auto doc = random_reports::random_document();
    const std::string text = report::to_json_text(doc);
    require(report::parse_report(text) == doc, "document " + std::to_string(t) + " did not round-trip");
  }
  const std::string csv = report::to_csv(report::make_document(std::vector<ClaimReport>{}));
  require(csv == "claim_id,n,k,observed,expected,path\n", "CSV header: " + csv);
  return "100 random documents round-tripped, CSV header exact";
}

struct Criterion {
  int number;
  std::string name;
  double limit_s;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 30, oracle_equivalence},
      {2, "forced identities", 300, forced_identities},
      {3, "H_1 and H_2 characterizations", 120, characterizations},
      {4, "small-k and near-n observation", 120, observation},
      {5, "step-sum congruence finding", 600, step_sum_finding},
      {6, "full-family conjecture sweep", 300, full_family_sweep},
      {7, "Giuga census", 900, census},
      {8, "report round-trip", 10, report_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.limit_s) {
      ok = false;
      detail += " (over time limit)";
    }
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << " " << c.name << ": " << detail << " ["
              << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s, limit " << c.limit_s << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
