#include "giuga/scanner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "giuga/errors.hpp"
#include "giuga/modular.hpp"
#include "giuga/primality.hpp"
#include "giuga/report_io.hpp"
#include "giuga/work_queue.hpp"

namespace giuga::scan {

namespace {

using nlohmann::json;
using std::uint64_t;

constexpr int kCheckpointFormat = 1;

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t x) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4) s[i] = kDigits[x & 15];
  return s;
}

bool is_census(const ScanConfig& cfg) { return cfg.target == kCensusTarget; }

claims::Range range_of(const ScanConfig& cfg) { return {cfg.n_lo, cfg.n_hi}; }

void validate(const ScanConfig& cfg) {
  if (cfg.n_lo > cfg.n_hi) throw UsageError("scan: n_lo must not exceed n_hi");
  if (cfg.chunk_size == 0) throw UsageError("scan: chunk size must be >= 1");
  if (cfg.workers == 0) throw UsageError("scan: worker count must be >= 1");
  if (is_census(cfg)) {
    if (cfg.n_lo < 2) throw UsageError("census: n starts at 2");
    const auto ceiling = static_cast<uint64_t>(static_cast<double>(kCensusCeiling) * cfg.budget.scale);
    if (cfg.n_hi + 1 > ceiling) {
      throw ResourceError("census bound " + std::to_string(cfg.n_hi + 1) + " exceeds the ceiling " +
                          std::to_string(ceiling) + "; raise GIUGA_COST_CEILING to override");
    }
    return;
  }
  const uint64_t ceiling = claims::range_ceiling(cfg.target, cfg.k_policy, cfg.budget);
  if (cfg.n_hi > ceiling) {
    throw ResourceError("sweep of '" + cfg.target + "' to " + std::to_string(cfg.n_hi) +
                        " exceeds the ceiling " + std::to_string(ceiling) +
                        "; raise GIUGA_COST_CEILING to override");
  }
}

json config_json(const ScanConfig& cfg) {
  return {{"target", cfg.target},
          {"n_lo", cfg.n_lo},
          {"n_hi", cfg.n_hi},
          {"k_policy", cfg.k_policy.str()},
          {"chunk_size", cfg.chunk_size}};
}

class CheckpointWriter {
 public:
  CheckpointWriter(const std::string& path, bool append) : path_(path) {
    out_.open(path, append ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  }

  void header(const ScanConfig& cfg) {
    json h{{"type", "header"},
           {"format", kCheckpointFormat},
           {"digest", config_digest(cfg)},
           {"config", config_json(cfg)}};
    line(h);
  }

  void chunk(uint64_t index, const json& payload) {
    json rec{{"type", "chunk"},
             {"index", index},
             {"payload", payload},
             {"checksum", hex64(fnv1a(payload.dump()))}};
    line(rec);
  }

 private:
  void line(const json& j) {
    out_ << j.dump() << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("write to checkpoint '" + path_ + "' failed");
  }

  std::string path_;
  std::ofstream out_;
};

claims::CheckOptions check_options(const ScanConfig& cfg) {
  claims::CheckOptions o;
  o.workers = cfg.workers;
  o.chunk_size = cfg.chunk_size;
  o.budget = cfg.budget;
  o.kernels = cfg.kernels;
  return o;
}

CensusChunk census_chunk(uint64_t index, claims::Range r, const kernels::KernelSet& ks) {
  CensusChunk c;
  c.index = index;
  c.lo = r.lo;
  c.hi = r.hi;
  for (uint64_t n = r.lo; n <= r.hi; ++n) {
    ++c.numbers_checked;
    const bool satisfies = mod::giuga_residue(n, ks).r() == n - 1;
    const bool prime = primality::is_prime(n);
    if (satisfies && prime) ++c.prime_satisfiers;
    else if (satisfies) c.composite_satisfiers.push_back(n);
    else if (prime) c.prime_failures.push_back(n);
  }
  return c;
}

// Runs the chunks missing from `have`, recording each to the checkpoint as it
// completes, and returns every chunk ordered by index.
template <class Chunk, class Work, class Fatal>
std::vector<Chunk> execute(const ScanConfig& cfg, const std::vector<claims::Range>& parts,
                           std::map<uint64_t, Chunk> have, CheckpointWriter* writer, Work&& work,
                           Fatal&& fatal) {
  std::vector<uint64_t> missing;
  for (uint64_t i = 0; i < parts.size(); ++i) {
    if (!have.count(i)) missing.push_back(i);
  }
  bool interrupted = false;
  if (cfg.stop_after_chunks && missing.size() > *cfg.stop_after_chunks) {
    missing.resize(*cfg.stop_after_chunks);
    interrupted = true;
  }
  auto fresh = run_indexed<Chunk>(
      missing, cfg.workers, [&](uint64_t i) { return work(i, parts[i]); },
      [&](const Chunk& c) {
        if (writer) writer->chunk(c.index, report::to_json(c));
      },
      fatal);
  if (interrupted) throw Interrupted("scan interrupted after " + std::to_string(missing.size()) + " chunks");
  for (auto& [i, c] : fresh) have.emplace(i, std::move(c));
  std::vector<Chunk> ordered;
  for (uint64_t i = 0; i < parts.size(); ++i) {
    auto it = have.find(i);
    if (it == have.end()) break;  // only after a fatal chunk
    ordered.push_back(std::move(it->second));
  }
  return ordered;
}

GiugaCensus merge_census(const ScanConfig& cfg, const std::vector<CensusChunk>& chunks) {
  GiugaCensus out;
  out.bound = cfg.n_hi + 1;
  for (const auto& c : chunks) {
    out.numbers_checked += c.numbers_checked;
    out.prime_satisfiers += c.prime_satisfiers;
    out.composite_satisfiers.insert(out.composite_satisfiers.end(), c.composite_satisfiers.begin(),
                                    c.composite_satisfiers.end());
    out.prime_failures.insert(out.prime_failures.end(), c.prime_failures.begin(), c.prime_failures.end());
  }
  out.g = out.composite_satisfiers.size();
  return out;
}

ScanOutcome run_with(const ScanConfig& cfg, const Checkpoint* prior, CheckpointWriter* writer) {
  const auto start = std::chrono::steady_clock::now();
  const auto parts = claims::chunk_ranges(range_of(cfg), cfg.chunk_size);
  const kernels::KernelSet& ks = cfg.kernels ? *cfg.kernels : kernels::active();
  auto elapsed_ms = [&] {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count());
  };

  if (is_census(cfg)) {
    std::map<uint64_t, CensusChunk> have;
    if (prior) {
      for (const auto& c : prior->census_chunks) have.emplace(c.index, c);
    }
    auto chunks = execute<CensusChunk>(
        cfg, parts, std::move(have), writer,
        [&](uint64_t i, claims::Range r) { return census_chunk(i, r, ks); },
        [](const CensusChunk&) { return false; });
    GiugaCensus census = merge_census(cfg, chunks);
    census.wall_time_ms = elapsed_ms();
    return census;
  }

  std::map<uint64_t, claims::ChunkResult> have;
  if (prior) {
    for (const auto& c : prior->claim_chunks) have.emplace(c.index, c);
  }
  const claims::CheckOptions options = check_options(cfg);
  auto chunks = execute<claims::ChunkResult>(
      cfg, parts, std::move(have), writer,
      [&](uint64_t i, claims::Range r) { return claims::evaluate_chunk(cfg.target, i, r, cfg.k_policy, options); },
      [](const claims::ChunkResult& c) { return c.implementation_bug; });
  claims::ClaimReport rep = claims::merge_chunks(cfg.target, range_of(cfg), cfg.k_policy, chunks);
  rep.wall_time_ms = elapsed_ms();
  return rep;
}

}  // namespace

std::string config_digest(const ScanConfig& cfg) {
  return hex64(fnv1a(config_json(cfg).dump()));
}

std::vector<uint64_t> Checkpoint::completed_chunks() const {
  std::set<uint64_t> s;
  for (const auto& c : claim_chunks) s.insert(c.index);
  for (const auto& c : census_chunks) s.insert(c.index);
  return {s.begin(), s.end()};
}

ScanOutcome run(const ScanConfig& cfg) {
  validate(cfg);
  std::optional<CheckpointWriter> writer;
  if (cfg.checkpoint_path) {
    writer.emplace(*cfg.checkpoint_path, false);
    writer->header(cfg);
  }
  return run_with(cfg, nullptr, writer ? &*writer : nullptr);
}

claims::ClaimReport sweep(const ScanConfig& cfg) {
  if (is_census(cfg)) throw UsageError("sweep: use giuga_census for the census target");
  claims::find_claim(cfg.target);
  return std::get<claims::ClaimReport>(run(cfg));
}

GiugaCensus giuga_census(uint64_t x, ScanConfig base) {
  if (x < 3) throw DomainError("giuga_census: bound must be >= 3");
  base.target = kCensusTarget;
  base.n_lo = 2;
  base.n_hi = x - 1;
  return std::get<GiugaCensus>(run(base));
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  Checkpoint cp;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<uint64_t> seen;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;  // torn trailing write
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto corrupt = [&](const std::string& why) {
      return CorruptCheckpointError("checkpoint '" + path + "' line " + std::to_string(line_no) + ": " + why);
    };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      throw corrupt("not a JSON record");
    }
    try {
      const std::string type = rec.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw corrupt("first record is not a header");
        if (rec.at("format").get<int>() != kCheckpointFormat) throw corrupt("unsupported format");
        const json& c = rec.at("config");
        cp.config.target = c.at("target").get<std::string>();
        cp.config.n_lo = c.at("n_lo").get<uint64_t>();
        cp.config.n_hi = c.at("n_hi").get<uint64_t>();
        cp.config.k_policy = claims::KPolicy::parse(c.at("k_policy").get<std::string>());
        cp.config.chunk_size = c.at("chunk_size").get<uint64_t>();
        cp.digest = rec.at("digest").get<std::string>();
        if (cp.digest != config_digest(cp.config)) throw corrupt("header digest does not match its config");
        have_header = true;
        continue;
      }
      if (type != "chunk") throw corrupt("unexpected record type '" + type + "'");
      const json& payload = rec.at("payload");
      if (rec.at("checksum").get<std::string>() != hex64(fnv1a(payload.dump()))) {
        throw corrupt("checksum mismatch");
      }
      const uint64_t index = rec.at("index").get<uint64_t>();
      if (!seen.insert(index).second) continue;  // duplicate of an earlier record
      if (cp.config.target == kCensusTarget) {
        cp.census_chunks.push_back(report::census_chunk_from_json(payload));
        if (cp.census_chunks.back().index != index) throw corrupt("index mismatch");
      } else {
        cp.claim_chunks.push_back(report::chunk_from_json(payload));
        if (cp.claim_chunks.back().index != index) throw corrupt("index mismatch");
      }
    } catch (const CorruptCheckpointError&) {
      throw;
    } catch (const std::exception& e) {
      throw corrupt(e.what());
    }
  }
  if (!have_header) throw CorruptCheckpointError("checkpoint '" + path + "' has no header");
  cp.intact_bytes = pos;
  return cp;
}

ScanConfig config_from_checkpoint(const std::string& path) {
  ScanConfig cfg = read_checkpoint(path).config;
  cfg.checkpoint_path = path;
  return cfg;
}

ScanOutcome resume(const ScanConfig& cfg) {
  if (!cfg.checkpoint_path) throw UsageError("resume: no checkpoint path configured");
  validate(cfg);
  const Checkpoint cp = read_checkpoint(*cfg.checkpoint_path);
  if (cp.digest != config_digest(cfg)) {
    throw DigestMismatchError("checkpoint digest " + cp.digest + " does not match configuration digest " +
                              config_digest(cfg));
  }
  if (std::filesystem::file_size(*cfg.checkpoint_path) != cp.intact_bytes) {
    std::filesystem::resize_file(*cfg.checkpoint_path, cp.intact_bytes);
  }
  CheckpointWriter writer(*cfg.checkpoint_path, true);
  return run_with(cfg, &cp, &writer);
}

}  // namespace giuga::scan
