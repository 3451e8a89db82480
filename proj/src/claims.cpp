#include "giuga/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "giuga/errors.hpp"
#include "giuga/primality.hpp"
#include "giuga/work_queue.hpp"

namespace giuga::claims {

namespace {

using exact::Int;
using exact::Nat;
using kernels::KernelSet;
using std::uint64_t;

constexpr const char* kPathMismatch = "path: modular result disagrees with exact result";

struct Outcome {
  bool ok = true;
  Value observed;
  Value expected;
  std::string detail;
};

using FastEval = std::function<Outcome(uint64_t n, uint64_t k, const KernelSet&)>;
using ExactEval = std::function<Outcome(uint64_t n, uint64_t k)>;

struct KInterval {
  uint64_t lo = 1;
  uint64_t hi = 0;  // empty when lo > hi
};

struct ClaimImpl {
  ClaimDescriptor desc;
  // n-axis and k-axis claims.
  std::function<bool(uint64_t)> in_domain;
  // n_k claims: valid k at n.
  std::function<KInterval(uint64_t)> k_interval;
  FastEval evaluate;
  ExactEval evaluate_exact;
  uint64_t ceiling_all = 0;
  uint64_t ceiling_explicit = 0;
  uint64_t search_ceiling = 0;
};

// ---------------------------------------------------------------------------
// Outcome builders

Outcome characterization(uint64_t n, uint64_t r) {
  const bool prime = primality::is_prime(n);
  Outcome out;
  out.ok = (r == 0) == prime;
  out.observed = Value::residue(r, n);
  out.expected = prime ? Value::residue(0, n) : Value::nonzero(n);
  return out;
}

Outcome residues_equal(uint64_t observed, uint64_t expected, uint64_t n) {
  return {observed == expected, Value::residue(observed, n), Value::residue(expected, n), {}};
}

Outcome integers_equal(Int observed, Int expected) {
  const bool ok = observed == expected;
  return {ok, Value::integer(std::move(observed)), Value::integer(std::move(expected)), {}};
}

uint64_t reduce(const Int& v, uint64_t n) { return mpz_fdiv_ui(v.get_mpz_t(), n); }

// ---------------------------------------------------------------------------
// Exact helpers

// H_k(n) for every k at one n, kept per thread for the claims that walk k.
const std::vector<Nat>& cached_h_row(uint64_t n) {
  thread_local uint64_t cached_n = 0;
  thread_local std::vector<Nat> row;
  if (cached_n != n) {
    row = exact::H_row(n);
    cached_n = n;
  }
  return row;
}

// (n-k-1) * sum_{i=1}^{n-1} (n+i-2-k)!/i! * i^k
Int step_decrement(uint64_t k, uint64_t n) {
  Int sum = 0;
  for (uint64_t i = 1; i <= n - 1; ++i) {
    sum += exact::falling_quotient(n, i, k + 1).value() * exact::signed_pow(static_cast<std::int64_t>(i), k);
  }
  return sum * Int(static_cast<unsigned long>(n - k - 1));
}

// 1 + sum_{i=1}^{k} (n+i-1-k)!/i! * i^k, exactly.
Int core_part_exact(uint64_t k, uint64_t n) {
  Int acc = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    acc += exact::falling_quotient(n, i, k).value() * exact::signed_pow(static_cast<std::int64_t>(i), k);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Factorial chain: (n-1-k+j)! == a (-1)^j k!/(k-j)!  (mod n), a = (n-1-k)! mod n.

Outcome factorial_chain_mod(uint64_t n, uint64_t k, const KernelSet& ks) {
  const uint64_t a = ks.range_product(1, n - 1 - k, n);
  uint64_t lhs = a;
  uint64_t falling = 1 % n;
  for (uint64_t j = 1; j <= k; ++j) {
    lhs = kernels::mul_mod(lhs, (n - 1 - k + j) % n, n);
    falling = kernels::mul_mod(falling, (k - j + 1) % n, n);
    uint64_t rhs = kernels::mul_mod(a, falling, n);
    if (j % 2 == 1 && rhs != 0) rhs = n - rhs;
    if (lhs != rhs) {
      return {false, Value::residue(lhs, n), Value::residue(rhs, n), "j=" + std::to_string(j)};
    }
  }
  return {true, Value::residue(lhs, n), Value::residue(lhs, n), {}};
}

Outcome factorial_chain_exact(uint64_t n, uint64_t k) {
  const uint64_t a = exact::factorial(n - 1 - k).mod(n);
  const Nat k_fact = exact::factorial(k);
  uint64_t last = a;
  for (uint64_t j = 1; j <= k; ++j) {
    const uint64_t lhs = exact::factorial(n - 1 - k + j).mod(n);
    Int rhs = Int(static_cast<unsigned long>(a)) * k_fact.exact_div(exact::factorial(k - j)).value();
    if (j % 2 == 1) rhs = -rhs;
    const uint64_t rhs_r = reduce(rhs, n);
    if (lhs != rhs_r) {
      return {false, Value::residue(lhs, n), Value::residue(rhs_r, n), "j=" + std::to_string(j)};
    }
    last = lhs;
  }
  return {true, Value::residue(last, n), Value::residue(last, n), {}};
}

// ---------------------------------------------------------------------------
// Difference-operator identity: sum_{i=0}^{k+1} (-1)^i C(k+1,i) i^k = 0, with
// the Delta^{k+1} route cross-checked for small k.

constexpr uint64_t kDifferenceCheckMaxK = 50;

Int delta_of_power(uint64_t k, std::int64_t base) {
  std::vector<Int> samples;
  samples.reserve(k + 2);
  for (uint64_t t = 0; t <= k + 1; ++t) {
    samples.push_back(exact::signed_pow(base + static_cast<std::int64_t>(t), k));
  }
  return exact::iterated_forward_difference(samples, k + 1);
}

Outcome lemma_b(uint64_t, uint64_t k) {
  const Int alt = exact::alternating_power_sum(k);
  if (alt != 0) return integers_equal(alt, 0);
  if (k <= kDifferenceCheckMaxK) {
    const auto kk = static_cast<std::int64_t>(k);
    const std::int64_t half = (kk + 1) / 2;
    for (std::int64_t base : {-kk - 1, -half, std::int64_t{0}, half, kk + 1}) {
      Int d = delta_of_power(k, base);
      if (d != 0) {
        Outcome out = integers_equal(std::move(d), 0);
        out.detail = "difference operator at j=" + std::to_string(base);
        return out;
      }
    }
    Int at_start = delta_of_power(k, -kk - 1);
    if (k % 2 == 1) at_start = -at_start;
    if (alt != at_start) {
      Outcome out = integers_equal(alt, std::move(at_start));
      out.detail = "alternating sum vs difference operator at j=-(k+1)";
      return out;
    }
  }
  return integers_equal(alt, 0);
}

// ---------------------------------------------------------------------------
// Registry

KInterval k_range(uint64_t n, uint64_t lo, std::int64_t hi_offset) {
  const std::int64_t hi = static_cast<std::int64_t>(n) + hi_offset;
  if (hi < static_cast<std::int64_t>(lo)) return {lo, lo - 1};
  return {lo, static_cast<uint64_t>(hi)};
}

bool at_least(uint64_t x, uint64_t floor) { return x >= floor; }

std::vector<ClaimImpl> build_registry() {
  std::vector<ClaimImpl> r;

  auto n_claim = [&](ClaimDescriptor d, uint64_t n_floor, FastEval fast, ExactEval slow,
                     uint64_t ceiling, uint64_t search) {
    ClaimImpl c;
    d.axis = Axis::n;
    c.desc = std::move(d);
    c.in_domain = [n_floor](uint64_t n) { return at_least(n, n_floor); };
    c.evaluate = std::move(fast);
    c.evaluate_exact = std::move(slow);
    c.ceiling_all = c.ceiling_explicit = ceiling;
    c.search_ceiling = search;
    r.push_back(std::move(c));
  };
  auto nk_claim = [&](ClaimDescriptor d, uint64_t k_lo, std::int64_t k_hi_offset, FastEval fast,
                      ExactEval slow, uint64_t ceiling_all, uint64_t ceiling_explicit,
                      uint64_t search) {
    ClaimImpl c;
    d.axis = Axis::n_k;
    c.desc = std::move(d);
    c.k_interval = [k_lo, k_hi_offset](uint64_t n) { return k_range(n, k_lo, k_hi_offset); };
    c.evaluate = std::move(fast);
    c.evaluate_exact = std::move(slow);
    c.ceiling_all = ceiling_all;
    c.ceiling_explicit = ceiling_explicit;
    c.search_ceiling = search;
    r.push_back(std::move(c));
  };
  auto k_claim = [&](ClaimDescriptor d, ExactEval eval, uint64_t ceiling, uint64_t search) {
    ClaimImpl c;
    d.axis = Axis::k;
    c.desc = std::move(d);
    c.in_domain = [](uint64_t k) { return k >= 1; };
    c.evaluate = [eval](uint64_t n, uint64_t k, const KernelSet&) { return eval(n, k); };
    c.evaluate_exact = eval;
    c.ceiling_all = c.ceiling_explicit = ceiling;
    c.search_ceiling = search;
    r.push_back(std::move(c));
  };

  const auto forced = ClaimKind::forced_identity;
  const auto under_test = ClaimKind::under_test;
  const auto modular = EvalPath::modular;
  const auto exact_path = EvalPath::exact;

  n_claim({"wilson", "n is prime iff n divides f_W(n) = 1 + (n-1)!", forced, {}, modular, "n >= 2",
           "Wilson's theorem: n prime <=> n | f_W(n)", {}},
          2,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return characterization(n, mod::wilson_residue(n, ks).r());
          },
          [](uint64_t n, uint64_t) { return characterization(n, exact::f_wilson(n).mod(n)); },
          50000, 5000);

  {
    ClaimImpl c;
    c.desc = {"sierpinski", "every prime p satisfies S_{p-1}(p) = -1 (mod p)", forced, Axis::n,
              modular, "n >= 2 prime (composites skipped)",
              "Fermat/Sierpinski: sum_{j=1}^{p-1} j^{p-1} = -1 (mod p)", {}};
    c.in_domain = [](uint64_t n) { return n >= 2 && primality::is_prime(n); };
    c.evaluate = [](uint64_t n, uint64_t, const KernelSet& ks) {
      return residues_equal(mod::giuga_residue(n, ks).r(), n - 1, n);
    };
    c.evaluate_exact = [](uint64_t n, uint64_t) {
      return residues_equal(exact::power_sum(n - 1, n).mod(n), n - 1, n);
    };
    c.ceiling_all = c.ceiling_explicit = 50000;
    c.search_ceiling = 5000;
    r.push_back(std::move(c));
  }

  n_claim({"giuga", "n is prime iff n divides f_G(n) = 1 + S_{n-1}(n)", under_test, {}, modular,
           "n >= 2", "Giuga's conjecture: n prime <=> n | f_G(n)", {}},
          2,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return characterization(n, (mod::giuga_residue(n, ks) + mod::Residue(1, n)).r());
          },
          [](uint64_t n, uint64_t) { return characterization(n, exact::f_giuga(n).mod(n)); },
          50000, 5000);

  n_claim({"lemma-h1", "n is prime iff n divides H_1(n)", forced, {}, modular, "n >= 2",
           "Lemma: n prime <=> n | H_1(n), via H_1(n) = f_W(n) (mod n)", 1},
          2,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return characterization(n, mod::H_mod(1, n, ks).r());
          },
          [](uint64_t n, uint64_t) { return characterization(n, exact::H(1, n).mod(n)); },
          50000, 5000);

  n_claim({"h1-fw", "H_1(n) = f_W(n) (mod n)", forced, {}, modular, "n >= 2",
           "Lemma proof: H_1(n) = 1 + (n-1)! = f_W(n) (mod n)", 1},
          2,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return residues_equal(mod::H_mod(1, n, ks).r(), mod::wilson_residue(n, ks).r(), n);
          },
          [](uint64_t n, uint64_t) {
            return residues_equal(exact::H(1, n).mod(n), exact::f_wilson(n).mod(n), n);
          },
          50000, 5000);

  n_claim({"lemma-u1", "U_1(n) = 0 (mod n)", forced, {}, modular, "n >= 3",
           "Lemma: U_1(n) = 0 (mod n)", 1},
          3,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return residues_equal(mod::U_mod(1, n, ks).r(), 0, n);
          },
          [](uint64_t n, uint64_t) { return residues_equal(exact::U(1, n).mod(n), 0, n); },
          50000, 5000);

  n_claim({"lemma-h2", "n is prime iff n divides H_2(n)", forced, {}, modular, "n >= 3",
           "Lemma: H_2 also characterizes the primes", 2},
          3,
          [](uint64_t n, uint64_t, const KernelSet& ks) {
            return characterization(n, mod::H_mod(2, n, ks).r());
          },
          [](uint64_t n, uint64_t) { return characterization(n, exact::H(2, n).mod(n)); },
          50000, 5000);

  nk_claim({"conj-hk",
            "for n >= k+1: n is prime iff n divides H_k(n) (stated for k >= 2; checked from k = 1)",
            under_test, {}, modular, "1 <= k <= n-1",
            "Conjecture: [n prime, n >= k+1] <=> n | H_k(n)", {}},
           1, -1,
           [](uint64_t n, uint64_t k, const KernelSet& ks) {
             return characterization(n, mod::H_mod(k, n, ks).r());
           },
           [](uint64_t n, uint64_t k) { return characterization(n, exact::H(k, n).mod(n)); },
           400, 50000, 300);

  nk_claim({"lemma-ordering", "H_k(n) < H_{k-1}(n)", forced, {}, exact_path, "2 <= k <= n-1",
            "Lemma: H_k(n) < H_{k-1}(n) for n >= k+1", {}},
           2, -1,
           [](uint64_t n, uint64_t k, const KernelSet&) {
             const auto& row = cached_h_row(n);
             Int diff = row[k].value() - row[k - 1].value();
             const bool ok = sgn(diff) < 0;
             return Outcome{ok, Value::integer(std::move(diff)), Value::negative(), {}};
           },
           [](uint64_t n, uint64_t k) {
             Int diff = exact::H(k, n).value() - exact::H(k - 1, n).value();
             const bool ok = sgn(diff) < 0;
             return Outcome{ok, Value::integer(std::move(diff)), Value::negative(), {}};
           },
           500, 500, 200);

  n_claim({"endpoint-hg", "H_{n-1}(n) = f_G(n)", forced, {}, exact_path, "n >= 2",
           "Remark: H_{n-1} = f_G", {}},
          2,
          [](uint64_t n, uint64_t, const KernelSet&) {
            return integers_equal(exact::H(n - 1, n).value(), exact::f_giuga(n).value());
          },
          [](uint64_t n, uint64_t) {
            return integers_equal(exact::H(n - 1, n).value(), exact::f_giuga(n).value());
          },
          2000, 500);

  nk_claim({"lemma-core", "H_k(n) = 1 + sum_{i=1}^{k} (n+i-1-k)!/i! i^k (mod n)", forced, {},
            modular, "1 <= k <= n-1",
            "Lemma (core part): H_k(n) = 1 + sum_{i=1}^k (n+i-1-k)!/i! i^k (mod n)", {}},
           1, -1,
           [](uint64_t n, uint64_t k, const KernelSet& ks) {
             return residues_equal(mod::H_mod(k, n, ks).r(), mod::H_mod_full(k, n, ks).r(), n);
           },
           [](uint64_t n, uint64_t k) {
             return residues_equal(reduce(core_part_exact(k, n), n), exact::H(k, n).mod(n), n);
           },
           200, 2000, 200);

  nk_claim({"lemma-step",
            "H_{k+1}(n) = H_k(n) - (n-k-1) sum_{i=1}^{n-1} (n+i-2-k)!/i! i^k (exact)", forced, {},
            exact_path, "1 <= k <= n-2",
            "Lemma: H_{k+1}(n) = H_k(n) - (n-k-1) sum_{i=1}^{n-1} (n+i-2-k)!/i! i^k", {}},
           1, -2,
           [](uint64_t n, uint64_t k, const KernelSet&) {
             const auto& row = cached_h_row(n);
             return integers_equal(row[k + 1].value(), row[k].value() - step_decrement(k, n));
           },
           [](uint64_t n, uint64_t k) {
             return integers_equal(exact::H(k + 1, n).value(),
                                   exact::H(k, n).value() - step_decrement(k, n));
           },
           60, 200, 40);

  nk_claim({"remark-step", "H_{k+1}(n) - H_k(n) = (k+1) U_k(n) (mod n)", forced, {}, modular,
            "1 <= k <= n-2", "Remark: H_{k+1}(n) - H_k(n) = (k+1) U_k(n) (mod n)", {}},
           1, -2,
           [](uint64_t n, uint64_t k, const KernelSet& ks) {
             const mod::Residue lhs = mod::H_mod(k + 1, n, ks) - mod::H_mod(k, n, ks);
             const mod::Residue rhs = mod::Residue(k + 1, n) * mod::U_mod(k, n, ks);
             return residues_equal(lhs.r(), rhs.r(), n);
           },
           [](uint64_t n, uint64_t k) {
             const Int lhs = exact::H(k + 1, n).value() - exact::H(k, n).value();
             const Int rhs = Int(static_cast<unsigned long>(k + 1)) * exact::U(k, n).value();
             return residues_equal(reduce(lhs, n), reduce(rhs, n), n);
           },
           400, 50000, 300);

  nk_claim({"factorial-chain",
            "(n-1-k+j)! = a (-1)^j k!/(k-j)! (mod n) for 1 <= j <= k, where a = (n-1-k)! mod n",
            forced, {}, modular, "1 <= k <= n-2",
            "Proof step: (n-1-k+j)! = (-1)^j a k!/(k-j)! (mod n)", {}},
           1, -2, factorial_chain_mod, factorial_chain_exact, 400, 50000, 300);

  nk_claim({"thm-ukz", "U_k(n) = 0 (mod n) for 1 <= k <= n-2", under_test, {}, modular,
            "1 <= k <= n-2", "Theorem: U_k(n) = 0 (mod n)", {}},
           1, -2,
           [](uint64_t n, uint64_t k, const KernelSet& ks) {
             return residues_equal(mod::U_mod(k, n, ks).r(), 0, n);
           },
           [](uint64_t n, uint64_t k) { return residues_equal(exact::U(k, n).mod(n), 0, n); },
           400, 50000, 300);

  k_claim({"vk-identity", "V_k = (-1)^{k+1}", forced, {}, exact_path, "k >= 1",
           "Theorem: V_k = (-1)^{k+1}", {}},
          [](uint64_t, uint64_t k) { return integers_equal(exact::V(k), k % 2 == 1 ? 1 : -1); },
          1000, 200);

  k_claim({"lemma-a", "sum_{i=0}^{k} C(k,i) k^i = (k+1)^k", forced, {}, exact_path, "k >= 1",
           "Lemma A: sum_{i=0}^k C(k,i) k^i = (k+1)^k", {}},
          [](uint64_t, uint64_t k) {
            return integers_equal(exact::binomial_power_sum(k).value(),
                                  exact::signed_pow(static_cast<std::int64_t>(k + 1), k));
          },
          1000, 200);

  k_claim({"lemma-b",
           "sum_{i=0}^{k+1} (-1)^i C(k+1,i) i^k = 0, and Delta^{k+1} j^k = 0 (cross-checked for k <= 50)",
           forced, {}, exact_path, "k >= 1",
           "Lemma B: sum_{i=0}^{k+1} (-1)^i C(k+1,i) i^k = 0 via the forward difference operator", {}},
          lemma_b, 1000, 200);

  // The central result and everything resting on it stay under test: the
  // proof divides residues by i!, which is not invertible modulo composites.
  return r;
}

const std::vector<ClaimImpl>& registry() {
  static const std::vector<ClaimImpl> r = build_registry();
  return r;
}

const ClaimImpl& find_impl(const std::string& id) {
  for (const auto& c : registry()) {
    if (c.desc.id == id) return c;
  }
  throw UnknownClaimError(id);
}

// k values examined at n for an n_k claim; *skipped counts requested k outside the domain.
std::vector<uint64_t> ks_at(const ClaimImpl& c, uint64_t n, const KPolicy& policy,
                            uint64_t* skipped) {
  const KInterval valid = c.k_interval(n);
  std::vector<uint64_t> out;
  if (policy.exhaustive_at(n)) {
    if (valid.lo > valid.hi) {
      ++*skipped;
      return out;
    }
    for (uint64_t k = valid.lo; k <= valid.hi; ++k) out.push_back(k);
    return out;
  }
  std::vector<uint64_t> fixed = policy.fixed;
  std::vector<uint64_t> offsets = policy.offsets;
  if (policy.mode == KPolicy::Mode::automatic) {
    fixed = {1, 2, 3, 4, 5};
    offsets = {1, 2, 3, 4, 5};
  }
  std::set<uint64_t> requested(fixed.begin(), fixed.end());
  for (uint64_t d : offsets) {
    if (d >= n) {
      ++*skipped;  // k = n - d would be <= 0
      continue;
    }
    requested.insert(n - d);
  }
  for (uint64_t k : requested) {
    if (k >= valid.lo && k <= valid.hi) out.push_back(k);
    else ++*skipped;
  }
  return out;
}

bool sampled_for_path_check(uint64_t n, uint64_t k, const CheckOptions& o) {
  if (n > o.path_check_max_n || o.path_check_period == 0) return false;
  uint64_t h = n * 0x9E3779B97F4A7C15ull ^ (k + 0x632BE59BD9B4E019ull);
  h ^= h >> 29;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 32;
  return h % o.path_check_period == 0;
}

std::string join(const std::vector<uint64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

std::vector<uint64_t> parse_list(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("k-policy: bad number '" + item + "'");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError("k-policy: empty list");
  return out;
}

template <class E>
E parse_enum(const std::string& text, std::initializer_list<E> values, const char* what) {
  for (E v : values) {
    if (to_string(v) == text) return v;
  }
  throw UsageError(std::string("unknown ") + what + ": '" + text + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Enum names

std::string to_string(ClaimKind k) {
  return k == ClaimKind::forced_identity ? "forced-identity" : "under-test";
}
std::string to_string(Axis a) {
  switch (a) {
    case Axis::n: return "n";
    case Axis::n_k: return "n,k";
    case Axis::k: return "k";
  }
  return "?";
}
std::string to_string(EvalPath p) { return p == EvalPath::exact ? "exact" : "modular"; }
std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::confirmed_on_range: return "confirmed-on-range";
    case Verdict::violated: return "violated";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}
std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::finding: return "finding";
    case RunStatus::implementation_bug: return "implementation-bug";
  }
  return "?";
}

ClaimKind parse_kind(const std::string& t) {
  return parse_enum(t, {ClaimKind::forced_identity, ClaimKind::under_test}, "claim kind");
}
Axis parse_axis(const std::string& t) { return parse_enum(t, {Axis::n, Axis::n_k, Axis::k}, "axis"); }
EvalPath parse_path(const std::string& t) {
  return parse_enum(t, {EvalPath::exact, EvalPath::modular}, "evaluation path");
}
Verdict parse_verdict(const std::string& t) {
  return parse_enum(t, {Verdict::confirmed_on_range, Verdict::violated, Verdict::skipped}, "verdict");
}
RunStatus parse_status(const std::string& t) {
  return parse_enum(t, {RunStatus::completed, RunStatus::finding, RunStatus::implementation_bug},
                    "run status");
}

// ---------------------------------------------------------------------------
// Value

Value Value::residue(const mod::Residue& r) { return residue(r.r(), r.m()); }

Value Value::residue(uint64_t r, uint64_t m) {
  Value v;
  v.kind = Kind::residue;
  v.value = Int(static_cast<unsigned long>(r));
  v.modulus = m;
  return v;
}

Value Value::nonzero(uint64_t m) {
  Value v;
  v.kind = Kind::nonzero_residue;
  v.modulus = m;
  return v;
}

Value Value::integer(Int x) {
  Value v;
  v.kind = Kind::integer;
  v.value = std::move(x);
  return v;
}

Value Value::negative() {
  Value v;
  v.kind = Kind::negative_integer;
  return v;
}

std::string Value::str() const {
  switch (kind) {
    case Kind::residue: return value.get_str() + " (mod " + std::to_string(modulus) + ")";
    case Kind::nonzero_residue: return "!=0 (mod " + std::to_string(modulus) + ")";
    case Kind::integer: return value.get_str();
    case Kind::negative_integer: return "<0";
  }
  return "?";
}

Value Value::parse(const std::string& text) {
  if (text == "<0") return negative();
  const auto open = text.find(" (mod ");
  if (open != std::string::npos) {
    if (text.back() != ')') throw UsageError("bad value text: '" + text + "'");
    const std::string head = text.substr(0, open);
    const std::string mod_text = text.substr(open + 6, text.size() - open - 7);
    const uint64_t m = exact::Nat::parse(mod_text).to_u64();
    if (head == "!=0") return nonzero(m);
    return residue(exact::Nat::parse(head).to_u64(), m);
  }
  Int x;
  if (text.empty() || x.set_str(text, 10) != 0) throw UsageError("bad value text: '" + text + "'");
  return integer(std::move(x));
}

// ---------------------------------------------------------------------------
// KPolicy

KPolicy KPolicy::all_valid() { return {Mode::all_valid, {}, {}}; }
KPolicy KPolicy::automatic() { return {Mode::automatic, {}, {}}; }
KPolicy KPolicy::fixed_k(std::vector<uint64_t> ks) { return explicit_k(std::move(ks), {}); }
KPolicy KPolicy::band(std::vector<uint64_t> offsets) { return explicit_k({}, std::move(offsets)); }
KPolicy KPolicy::explicit_k(std::vector<uint64_t> ks, std::vector<uint64_t> offsets) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  return {Mode::explicit_set, std::move(ks), std::move(offsets)};
}

std::string KPolicy::str() const {
  switch (mode) {
    case Mode::all_valid: return "all";
    case Mode::automatic: return "auto";
    case Mode::explicit_set: break;
  }
  std::string s;
  if (!fixed.empty()) s += "fixed:" + join(fixed);
  if (!offsets.empty()) s += (s.empty() ? "" : "+") + std::string("band:") + join(offsets);
  return s;
}

KPolicy KPolicy::parse(const std::string& text) {
  if (text == "all") return all_valid();
  if (text == "auto") return automatic();
  std::vector<uint64_t> ks, offsets;
  std::stringstream ss(text);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '+')) {
    if (part.rfind("fixed:", 0) == 0) {
      auto xs = parse_list(part.substr(6));
      ks.insert(ks.end(), xs.begin(), xs.end());
    } else if (part.rfind("band:", 0) == 0) {
      auto xs = parse_list(part.substr(5));
      offsets.insert(offsets.end(), xs.begin(), xs.end());
    } else {
      throw UsageError("k-policy: expected all, auto, fixed:<list> or band:<list>, got '" + text + "'");
    }
    any = true;
  }
  if (!any) throw UsageError("k-policy: empty");
  return explicit_k(std::move(ks), std::move(offsets));
}

bool KPolicy::exhaustive_at(uint64_t n) const {
  return mode == Mode::all_valid || (mode == Mode::automatic && n <= kAutomaticAllUpTo);
}

// ---------------------------------------------------------------------------
// Budget

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("GIUGA_COST_CEILING")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      throw UsageError(std::string("GIUGA_COST_CEILING must be a positive number, got '") + env + "'");
    }
    b.scale = v;
  }
  return b;
}

// ---------------------------------------------------------------------------
// Registry access

const std::vector<ClaimDescriptor>& list_claims() {
  static const std::vector<ClaimDescriptor> out = [] {
    std::vector<ClaimDescriptor> v;
    for (const auto& c : registry()) v.push_back(c.desc);
    return v;
  }();
  return out;
}

const ClaimDescriptor& find_claim(const std::string& id) { return find_impl(id).desc; }

uint64_t range_ceiling(const std::string& id, const KPolicy& policy, const Budget& budget) {
  const ClaimImpl& c = find_impl(id);
  const bool all = c.desc.axis != Axis::n_k || policy.mode == KPolicy::Mode::all_valid;
  const double base = static_cast<double>(all ? c.ceiling_all : c.ceiling_explicit);
  return static_cast<uint64_t>(base * budget.scale);
}

uint64_t default_search_ceiling(const std::string& id) { return find_impl(id).search_ceiling; }

// ---------------------------------------------------------------------------
// Evaluation

std::vector<Range> chunk_ranges(Range range, uint64_t chunk_size) {
  if (chunk_size == 0) throw UsageError("chunk size must be >= 1");
  if (range.lo > range.hi) throw UsageError("empty range");
  std::vector<Range> out;
  for (uint64_t lo = range.lo;; lo += chunk_size) {
    const uint64_t hi = std::min(range.hi, lo + chunk_size - 1);
    out.push_back({lo, hi});
    if (hi == range.hi) break;
  }
  return out;
}

ChunkResult evaluate_chunk(const std::string& id, uint64_t index, Range range, const KPolicy& policy,
                           const CheckOptions& options) {
  const ClaimImpl& c = find_impl(id);
  const KernelSet& ks = options.kernels != nullptr ? *options.kernels : kernels::active();
  ChunkResult out;
  out.index = index;
  out.lo = range.lo;
  out.hi = range.hi;

  // Returns false once the chunk must stop (implementation bug).
  auto examine = [&](uint64_t n, uint64_t k) -> bool {
    ++out.pairs_checked;
    const Outcome got = c.evaluate(n, k, ks);
    auto record = [&](const Outcome& o, EvalPath path) {
      ++out.violation_total;
      if (out.violations.size() < options.max_stored_violations) {
        Violation v;
        v.claim_id = id;
        if (c.desc.axis != Axis::k) v.n = n;
        if (c.desc.axis != Axis::n) v.k = k;
        else if (c.desc.implicit_k) v.k = *c.desc.implicit_k;
        v.observed = o.observed;
        v.expected = o.expected;
        v.path = path;
        v.detail = o.detail;
        out.violations.push_back(std::move(v));
      }
    };
    if (c.desc.path == EvalPath::modular && sampled_for_path_check(n, k, options)) {
      const Outcome slow = c.evaluate_exact(n, k);
      if (slow.ok != got.ok || !(slow.observed == got.observed) || !(slow.expected == got.expected)) {
        Outcome mismatch{false, got.observed, slow.observed, kPathMismatch};
        record(mismatch, EvalPath::modular);
        out.implementation_bug = true;
        return false;
      }
    }
    if (!got.ok) {
      record(got, c.desc.path);
      if (c.desc.kind == ClaimKind::forced_identity) {
        out.implementation_bug = true;
        return false;
      }
    }
    return true;
  };

  for (uint64_t x = range.lo; x <= range.hi; ++x) {
    if (c.desc.axis == Axis::n_k) {
      for (uint64_t k : ks_at(c, x, policy, &out.pairs_skipped)) {
        if (!examine(x, k)) return out;
      }
    } else if (!c.in_domain(x)) {
      ++out.pairs_skipped;
    } else if (c.desc.axis == Axis::n) {
      if (!examine(x, c.desc.implicit_k.value_or(0))) return out;
    } else {
      if (!examine(0, x)) return out;
    }
    if (x == UINT64_MAX) break;
  }
  return out;
}

ClaimReport merge_chunks(const std::string& id, Range range, const KPolicy& policy,
                         const std::vector<ChunkResult>& chunks, std::size_t max_stored) {
  const ClaimDescriptor& d = find_claim(id);
  ClaimReport rep;
  rep.claim_id = id;
  rep.axis = d.axis;
  rep.lo = range.lo;
  rep.hi = range.hi;
  rep.k_policy = d.axis == Axis::n_k ? policy.str() : "-";
  bool bug = false;
  for (const ChunkResult& ch : chunks) {
    rep.pairs_checked += ch.pairs_checked;
    rep.pairs_skipped += ch.pairs_skipped;
    rep.violation_total += ch.violation_total;
    for (const Violation& v : ch.violations) {
      if (rep.violations.size() >= max_stored) break;
      rep.violations.push_back(v);
    }
    if (ch.implementation_bug) {
      bug = true;
      break;
    }
  }
  if (rep.violation_total > 0) rep.verdict = Verdict::violated;
  else if (rep.pairs_checked == 0) rep.verdict = Verdict::skipped;
  else rep.verdict = Verdict::confirmed_on_range;
  if (bug) rep.status = RunStatus::implementation_bug;
  else if (rep.violation_total > 0) rep.status = RunStatus::finding;
  else rep.status = RunStatus::completed;
  return rep;
}

ClaimReport check_claim(const std::string& id, Range range, const KPolicy& policy,
                        const CheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  find_impl(id);
  if (range.lo > range.hi) throw UsageError("check_claim: empty range");
  const uint64_t ceiling = range_ceiling(id, policy, options.budget);
  if (range.hi > ceiling) {
    throw ResourceError("check_claim: range end " + std::to_string(range.hi) + " for '" + id +
                        "' (k-policy " + policy.str() + ") exceeds the cost ceiling " +
                        std::to_string(ceiling) + "; raise GIUGA_COST_CEILING to override");
  }
  const std::vector<Range> parts = chunk_ranges(range, options.chunk_size);
  std::vector<uint64_t> indices(parts.size());
  for (uint64_t i = 0; i < parts.size(); ++i) indices[i] = i;

  auto results = run_indexed<ChunkResult>(
      indices, options.workers,
      [&](uint64_t i) { return evaluate_chunk(id, i, parts[i], policy, options); },
      [](const ChunkResult&) {}, [](const ChunkResult& r) { return r.implementation_bug; });

  std::vector<ChunkResult> ordered;
  for (uint64_t i = 0; i < parts.size(); ++i) {
    auto it = results.find(i);
    if (it == results.end()) break;
    ordered.push_back(std::move(it->second));
    if (ordered.back().implementation_bug) break;
  }
  ClaimReport rep = merge_chunks(id, range, policy, ordered, options.max_stored_violations);
  rep.wall_time_ms = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                               std::chrono::steady_clock::now() - start)
                                               .count());
  return rep;
}

std::optional<Violation> first_violation(const std::string& id, std::optional<uint64_t> search_max,
                                         const CheckOptions& options) {
  const ClaimImpl& c = find_impl(id);
  const uint64_t hi = search_max.value_or(c.search_ceiling);
  const uint64_t lo = c.desc.axis == Axis::k ? 1 : 2;
  if (hi < lo) return std::nullopt;
  uint64_t index = 0;
  for (const Range& part : chunk_ranges({lo, hi}, 16)) {
    ChunkResult r = evaluate_chunk(id, index++, part, KPolicy::all_valid(), options);
    if (!r.violations.empty()) return r.violations.front();
  }
  return std::nullopt;
}

ClaimReport characterization_test(FamilyMember member, Range range, const CheckOptions& options) {
  const uint64_t floor = member.which == FamilyMember::Which::H ? std::max<uint64_t>(2, member.k + 1) : 2;
  if (member.which == FamilyMember::Which::H && member.k < 1) {
    throw DomainError("characterization_test: H_k needs k >= 1");
  }
  if (range.lo < floor) {
    throw UsageError("characterization_test: range must start at or above " + std::to_string(floor));
  }
  switch (member.which) {
    case FamilyMember::Which::wilson: return check_claim("wilson", range, KPolicy::automatic(), options);
    case FamilyMember::Which::giuga: return check_claim("giuga", range, KPolicy::automatic(), options);
    case FamilyMember::Which::H: break;
  }
  if (member.k == 1) return check_claim("lemma-h1", range, KPolicy::automatic(), options);
  if (member.k == 2) return check_claim("lemma-h2", range, KPolicy::automatic(), options);
  return check_claim("conj-hk", range, KPolicy::fixed_k({member.k}), options);
}

ClaimReport reproduce_author_observation(uint64_t n_max, const CheckOptions& options) {
  if (n_max < 2) throw UsageError("reproduce_author_observation: n_max must be >= 2");
  return check_claim("conj-hk", {2, n_max}, KPolicy::explicit_k({2, 3, 4, 5}, {2, 3, 4, 5}), options);
}

bool replay(const Violation& v) {
  const ClaimImpl& c = find_impl(v.claim_id);
  uint64_t n = v.n.value_or(0);
  uint64_t k = v.k.value_or(0);
  const Outcome slow = c.evaluate_exact(n, k);
  if (v.detail == kPathMismatch) return slow.observed == v.expected && !(v.observed == v.expected);
  return !slow.ok && slow.observed == v.observed && slow.expected == v.expected;
}

}  // namespace giuga::claims
