// giuga: evaluate the Wilson/Giuga interpolation family, check claims about
// it, and run resumable Giuga censuses.
//
// Exit codes: 0 completed with every forced identity holding, 1 an under-test
// claim was violated (finding), 2 a forced identity was violated
// (implementation bug), 3 usage or configuration error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "giuga/claims.hpp"
#include "giuga/errors.hpp"
#include "giuga/exact.hpp"
#include "giuga/modular.hpp"
#include "giuga/report_io.hpp"
#include "giuga/scanner.hpp"

namespace {

using namespace giuga;

enum ExitCode : int { kOk = 0, kFinding = 1, kBug = 2, kUsage = 3 };

std::string claims_footer() {
  std::ostringstream os;
  os << "Claims (id, kind: anchor):\n";
  for (const auto& c : claims::list_claims()) {
    os << "  " << c.id << " [" << claims::to_string(c.kind) << "]: " << c.anchor << "\n";
  }
  return os.str();
}

int exit_code_for(const std::vector<claims::ClaimReport>& reports) {
  int code = kOk;
  for (const auto& r : reports) {
    if (r.status == claims::RunStatus::implementation_bug) return kBug;
    if (r.status == claims::RunStatus::finding) code = kFinding;
  }
  return code;
}

int exit_code_for(const scan::GiugaCensus& c) {
  if (!c.prime_failures.empty()) return kBug;
  return c.g == 0 ? kOk : kFinding;
}

void print_text(std::ostream& os, const claims::ClaimReport& r) {
  const char* axis = r.axis == claims::Axis::k ? "k" : "n";
  os << r.claim_id << ": " << claims::to_string(r.verdict) << " (" << claims::to_string(r.status)
     << ") " << axis << " in [" << r.lo << ", " << r.hi << "]";
  if (r.axis == claims::Axis::n_k) os << ", k-policy " << r.k_policy;
  os << ", " << r.pairs_checked << " checked, " << r.violation_total << " violations, "
     << r.wall_time_ms << " ms\n";
  if (r.pairs_skipped > 0) {
    os << "  note: " << r.pairs_skipped << " requested points outside the claim domain were skipped\n";
  }
  const std::size_t shown = std::min<std::size_t>(r.violations.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = r.violations[i];
    os << "  violation";
    if (v.n) os << " n=" << *v.n;
    if (v.k) os << " k=" << *v.k;
    os << ": observed " << v.observed.str() << ", expected " << v.expected.str() << " ["
       << claims::to_string(v.path) << "]";
    if (!v.detail.empty()) os << " " << v.detail;
    os << "\n";
  }
  if (r.violation_total > shown) os << "  ... " << (r.violation_total - shown) << " more\n";
}

void print_text(std::ostream& os, const scan::GiugaCensus& c) {
  os << "Giuga census below " << c.bound << ": " << c.numbers_checked << " numbers, "
     << c.prime_satisfiers << " prime satisfiers, G(" << c.bound << ") = " << c.g << ", "
     << c.wall_time_ms << " ms\n";
  for (std::uint64_t n : c.composite_satisfiers) os << "  COMPOSITE SATISFIER: " << n << "\n";
  for (std::uint64_t p : c.prime_failures) os << "  prime failing the congruence (bug): " << p << "\n";
}

struct OutputFlags {
  std::string format = "text";
  std::string out;
  bool canonical = false;

  void add_to(CLI::App* cmd, bool with_canonical) {
    cmd->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out, "write the report to this file instead of stdout");
    if (with_canonical) {
      cmd->add_flag("--canonical", canonical, "omit timestamps and wall times from JSON output");
    }
  }
};

template <class Payload>
void emit(const OutputFlags& flags, Payload payload) {
  if (flags.format == "text") {
    std::ostringstream os;
    if constexpr (std::is_same_v<Payload, scan::GiugaCensus>) {
      print_text(os, payload);
    } else {
      for (const auto& r : payload) print_text(os, r);
    }
    if (flags.out.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(flags.out);
      if (!f) throw std::runtime_error("cannot open '" + flags.out + "'");
      f << os.str();
    }
    return;
  }
  const report::ReportDocument doc = report::make_document(std::move(payload));
  const report::WriteOptions options{flags.canonical};
  const report::Format fmt = report::parse_format(flags.format);
  if (flags.out.empty()) {
    std::cout << (fmt == report::Format::json ? report::to_json_text(doc, options) : report::to_csv(doc));
  } else {
    report::write_report(doc, flags.out, fmt, options);
  }
}

claims::Budget budget_from_env() {
  claims::Budget b = claims::Budget::from_env();
  if (b.scale != 1.0) {
    std::cerr << "warning: cost ceilings scaled by " << b.scale << " (GIUGA_COST_CEILING)\n";
  }
  return b;
}

int run_eval(const std::string& fn, std::optional<std::uint64_t> n, std::optional<std::uint64_t> k,
             bool mod_path) {
  auto need = [&](const std::optional<std::uint64_t>& v, const char* flag) {
    if (!v) throw UsageError(std::string("eval ") + fn + " requires " + flag);
    return *v;
  };
  std::string out;
  if (fn == "V") {
    if (mod_path) throw UsageError("V is an integer identity; there is no modular path");
    out = exact::V(need(k, "--k")).get_str();
  } else if (fn == "S") {
    const auto nn = need(n, "--n"), kk = need(k, "--k");
    out = mod_path ? mod::power_sum_mod(kk, nn).str() : exact::power_sum(kk, nn).str();
  } else if (fn == "fW") {
    const auto nn = need(n, "--n");
    out = mod_path ? mod::wilson_residue(nn).str() : exact::f_wilson(nn).str();
  } else if (fn == "fG") {
    const auto nn = need(n, "--n");
    if (mod_path) {
      mod::require_modulus(nn);
      out = (mod::giuga_residue(nn) + mod::Residue(1, nn)).str();
    } else {
      out = exact::f_giuga(nn).str();
    }
  } else if (fn == "H") {
    const auto nn = need(n, "--n"), kk = need(k, "--k");
    out = mod_path ? mod::H_mod(kk, nn).str() : exact::H(kk, nn).str();
  } else if (fn == "U") {
    const auto nn = need(n, "--n"), kk = need(k, "--k");
    out = mod_path ? mod::U_mod(kk, nn).str() : exact::U(kk, nn).str();
  } else {
    throw UsageError("unknown function '" + fn + "'");
  }
  std::cout << out << "\n";
  return kOk;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  if (text == "all") {
    for (const auto& c : claims::list_claims()) ids.push_back(c.id);
    return ids;
  }
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (!id.empty()) ids.push_back(id);
  }
  for (const auto& i : ids) claims::find_claim(i);
  if (ids.empty()) throw UsageError("--claims: no claim ids given");
  return ids;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Wilson/Giuga interpolation family: evaluation, claim checks, Giuga census"};
  app.require_subcommand(1);
  app.footer(claims_footer());

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate S, fW, fG, H, U or V");
  std::string eval_fn;
  std::optional<std::uint64_t> eval_n, eval_k;
  bool eval_exact = false, eval_mod = false;
  eval->add_option("function", eval_fn, "S, fW, fG, H, U or V")
      ->required()
      ->check(CLI::IsMember({"S", "fW", "fG", "H", "U", "V"}));
  eval->add_option("--n", eval_n, "n");
  eval->add_option("--k", eval_k, "k");
  auto* exact_flag = eval->add_flag("--exact", eval_exact, "exact integer value (default)");
  eval->add_flag("--mod", eval_mod, "residue modulo n")->excludes(exact_flag);

  // check
  auto* check = app.add_subcommand("check", "check claims over a range of n");
  std::string check_ids;
  std::uint64_t check_n_min = 2, check_n_max = 0;
  std::string check_policy = "auto";
  unsigned check_workers = 1;
  std::size_t check_max_violations = claims::kMaxStoredViolations;
  OutputFlags check_out;
  check->add_option("--claims", check_ids, "comma-separated claim ids, or 'all'")->required();
  check->add_option("--n-min", check_n_min, "first n (claims over k start at k = 1)");
  check->add_option("--n-max", check_n_max, "last n (or last k for claims over k)")->required();
  check->add_option("--k-policy", check_policy, "all, auto, fixed:<ks>, band:<offsets>, or fixed:..+band:..");
  check->add_option("--workers", check_workers, "worker threads")->check(CLI::PositiveNumber);
  check->add_option("--max-violations", check_max_violations,
                    "violations stored per claim (the total is always counted)");
  check_out.add_to(check, true);

  // scan-giuga
  auto* scan_cmd = app.add_subcommand("scan-giuga", "count composite n < max satisfying Giuga's congruence");
  std::uint64_t scan_max = 0, scan_chunk = 64;
  unsigned scan_workers = 1;
  std::string scan_checkpoint;
  OutputFlags scan_out;
  scan_cmd->add_option("--max", scan_max, "census bound x (n < x)")->required();
  scan_cmd->add_option("--workers", scan_workers, "worker threads")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--chunk-size", scan_chunk, "consecutive n per work unit")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--checkpoint", scan_checkpoint,
                       "checkpoint file; resumed automatically when it exists");
  scan_out.add_to(scan_cmd, true);

  // observe
  auto* observe = app.add_subcommand("observe", "re-run the small-k and near-n characterization sweep");
  std::uint64_t observe_n_max = 1000;
  unsigned observe_workers = 1;
  OutputFlags observe_out;
  observe->add_option("--n-max", observe_n_max, "last n");
  observe->add_option("--workers", observe_workers, "worker threads")->check(CLI::PositiveNumber);
  observe_out.add_to(observe, true);

  // list-claims
  auto* list = app.add_subcommand("list-claims", "list every claim with its kind and anchor");

  // resume
  auto* resume_cmd = app.add_subcommand("resume", "finish a checkpointed scan");
  std::string resume_checkpoint;
  unsigned resume_workers = 1;
  OutputFlags resume_out;
  resume_cmd->add_option("--checkpoint", resume_checkpoint, "checkpoint file")->required();
  resume_cmd->add_option("--workers", resume_workers, "worker threads")->check(CLI::PositiveNumber);
  resume_out.add_to(resume_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (eval->parsed()) return run_eval(eval_fn, eval_n, eval_k, eval_mod);

  if (list->parsed()) {
    for (const auto& c : claims::list_claims()) {
      std::cout << c.id << "\t" << claims::to_string(c.kind) << "\t" << claims::to_string(c.axis) << "\t"
                << c.domain << "\t" << c.statement << "\t" << c.anchor << "\n";
    }
    return kOk;
  }

  if (check->parsed()) {
    const auto ids = split_ids(check_ids);
    const claims::KPolicy policy = claims::KPolicy::parse(check_policy);
    claims::CheckOptions options;
    options.workers = check_workers;
    options.max_stored_violations = check_max_violations;
    options.budget = budget_from_env();
    // Validate every range before running anything.
    std::vector<std::pair<std::string, claims::Range>> plan;
    for (const auto& id : ids) {
      const auto& d = claims::find_claim(id);
      const claims::Range range{d.axis == claims::Axis::k ? 1 : check_n_min, check_n_max};
      if (range.lo > range.hi) throw UsageError("--n-max must be >= " + std::to_string(range.lo));
      const std::uint64_t ceiling = claims::range_ceiling(id, policy, options.budget);
      if (range.hi > ceiling) {
        throw ResourceError("'" + id + "' is limited to " + std::to_string(ceiling) +
                            " with k-policy " + policy.str() + "; raise GIUGA_COST_CEILING to override");
      }
      plan.emplace_back(id, range);
    }
    std::vector<claims::ClaimReport> reports;
    for (const auto& [id, range] : plan) reports.push_back(claims::check_claim(id, range, policy, options));
    const int code = exit_code_for(reports);
    emit(check_out, std::move(reports));
    return code;
  }

  if (observe->parsed()) {
    claims::CheckOptions options;
    options.workers = observe_workers;
    options.budget = budget_from_env();
    std::vector<claims::ClaimReport> reports{claims::reproduce_author_observation(observe_n_max, options)};
    const int code = exit_code_for(reports);
    if (observe_out.format == "text" && observe_out.out.empty()) {
      std::cout << "Characterization n prime <=> n | H_k(n) for k in {2,3,4,5} and k in {n-5,...,n-2}, n <= "
                << observe_n_max << "\n";
    }
    emit(observe_out, std::move(reports));
    return code;
  }

  if (scan_cmd->parsed()) {
    if (scan_max < 3) throw UsageError("--max must be >= 3");
    scan::ScanConfig cfg;
    cfg.target = scan::kCensusTarget;
    cfg.n_lo = 2;
    cfg.n_hi = scan_max - 1;
    cfg.workers = scan_workers;
    cfg.chunk_size = scan_chunk;
    cfg.budget = budget_from_env();
    if (!scan_checkpoint.empty()) cfg.checkpoint_path = scan_checkpoint;
    const bool resuming = !scan_checkpoint.empty() && std::filesystem::exists(scan_checkpoint);
    auto census = std::get<scan::GiugaCensus>(resuming ? scan::resume(cfg) : scan::run(cfg));
    const int code = exit_code_for(census);
    emit(scan_out, std::move(census));
    return code;
  }

  if (resume_cmd->parsed()) {
    scan::ScanConfig cfg = scan::config_from_checkpoint(resume_checkpoint);
    cfg.workers = resume_workers;
    cfg.budget = budget_from_env();
    const scan::ScanOutcome outcome = scan::resume(cfg);
    if (const auto* census = std::get_if<scan::GiugaCensus>(&outcome)) {
      const int code = exit_code_for(*census);
      emit(resume_out, *census);
      return code;
    }
    std::vector<claims::ClaimReport> reports{std::get<claims::ClaimReport>(outcome)};
    const int code = exit_code_for(reports);
    emit(resume_out, std::move(reports));
    return code;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_impl(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
