#include "giuga/exact.hpp"

#include <limits>
#include <mutex>
#include <shared_mutex>

#include "giuga/errors.hpp"

namespace giuga::exact {

namespace {

Int from_u64(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 expected");
  return Int(static_cast<unsigned long>(v));
}

Int pow_u64(std::uint64_t base, std::uint64_t e) {
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

// Product lo * (lo+1) * ... * hi; empty when lo > hi.
Int range_product(std::uint64_t lo, std::uint64_t hi) {
  Int acc = 1;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(j));
  }
  return acc;
}

// Small factorials are hit constantly by sweeps; larger ones are computed on
// demand and not retained.
class FactorialCache {
 public:
  static constexpr std::uint64_t kCachedLimit = 4096;

  Int get(std::uint64_t m) {
    if (m > kCachedLimit) {
      Int out;
      mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
      return out;
    }
    {
      std::shared_lock lock(mu_);
      if (m < table_.size()) return table_[m];
    }
    std::unique_lock lock(mu_);
    if (table_.empty()) table_.push_back(1);
    while (table_.size() <= m) {
      Int next = table_.back();
      mpz_mul_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(table_.size()));
      table_.push_back(std::move(next));
    }
    return table_[m];
  }

 private:
  std::shared_mutex mu_;
  std::vector<Int> table_;
};

FactorialCache& factorial_cache() {
  static FactorialCache cache;
  return cache;
}

}  // namespace

Nat::Nat(std::uint64_t v) : value_(from_u64(v)) {}

Nat Nat::from_int(Int v) {
  if (sgn(v) < 0) throw DomainError("Nat: negative value " + v.get_str());
  Nat out;
  out.value_ = std::move(v);
  return out;
}

Nat Nat::parse(const std::string& decimal) {
  if (decimal.empty() || decimal.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("Nat: not a decimal natural number: '" + decimal + "'");
  }
  return from_int(Int(decimal, 10));
}

bool Nat::fits_u64() const { return mpz_sizeinbase(value_.get_mpz_t(), 2) <= 64; }

std::uint64_t Nat::to_u64() const {
  if (!fits_u64()) throw OverflowError("Nat: value does not fit in 64 bits");
  return mpz_get_ui(value_.get_mpz_t());
}

std::uint64_t Nat::mod(std::uint64_t m) const {
  if (m == 0) throw DomainError("Nat::mod: zero modulus");
  return mpz_fdiv_ui(value_.get_mpz_t(), static_cast<unsigned long>(m));
}

Nat Nat::exact_div(const Nat& divisor) const {
  if (divisor.is_zero()) throw DomainError("Nat::exact_div: division by zero");
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value_.get_mpz_t(), divisor.value_.get_mpz_t());
  if (r != 0) {
    throw DomainError("Nat::exact_div: " + str() + " is not divisible by " + divisor.str());
  }
  return from_int(std::move(q));
}

Nat factorial(std::uint64_t m) { return Nat::from_int(factorial_cache().get(m)); }

Nat binomial(std::uint64_t n, std::uint64_t r) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Nat::from_int(std::move(out));
}

Nat falling_quotient(std::uint64_t n, std::uint64_t i, std::uint64_t k) {
  if (n < 2 || k < 1 || k > n - 1 || i < 1 || i > n - 1) {
    throw DomainError("falling_quotient: need 1 <= k <= n-1 and 1 <= i <= n-1 (n=" +
                      std::to_string(n) + ", i=" + std::to_string(i) +
                      ", k=" + std::to_string(k) + ")");
  }
  return Nat::from_int(range_product(i + 1, n + i - 1 - k));
}

Nat power_sum(std::uint64_t k, std::uint64_t n) {
  if (n < 1) throw DomainError("power_sum: n must be >= 1");
  Int acc = 0;
  for (std::uint64_t j = 1; j < n; ++j) acc += pow_u64(j, k);
  return Nat::from_int(std::move(acc));
}

Nat f_wilson(std::uint64_t n) {
  if (n < 2) throw DomainError("f_wilson: n must be >= 2");
  return Nat(1) + factorial(n - 1);
}

Nat f_giuga(std::uint64_t n) {
  if (n < 2) throw DomainError("f_giuga: n must be >= 2");
  return Nat(1) + power_sum(n - 1, n);
}

Nat H(std::uint64_t k, std::uint64_t n) {
  if (n < 2) throw DomainError("H: n must be >= 2");
  if (k < 1 || k > n - 1) return Nat(0);
  Int acc = 1;
  for (std::uint64_t i = 1; i <= n - 1; ++i) {
    acc += falling_quotient(n, i, k).value() * pow_u64(i, k);
  }
  return Nat::from_int(std::move(acc));
}

std::vector<Nat> H_row(std::uint64_t n) {
  if (n < 2) throw DomainError("H_row: n must be >= 2");
  std::vector<Nat> row(n, Nat(0));
  // terms[i] holds (n+i-1-k)!/i! * i^k for the current k, starting at k = n-1.
  std::vector<Int> terms(n);
  Int sum = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    terms[i] = pow_u64(i, n - 1);
    sum += terms[i];
  }
  row[n - 1] = Nat::from_int(sum + 1);
  for (std::uint64_t k = n - 2; k >= 1; --k) {
    sum = 0;
    for (std::uint64_t i = 1; i < n; ++i) {
      mpz_mul_ui(terms[i].get_mpz_t(), terms[i].get_mpz_t(),
                 static_cast<unsigned long>(n + i - 1 - k));
      mpz_divexact_ui(terms[i].get_mpz_t(), terms[i].get_mpz_t(), static_cast<unsigned long>(i));
      sum += terms[i];
    }
    row[k] = Nat::from_int(sum + 1);
  }
  return row;
}

Nat U(std::uint64_t k, std::uint64_t n) {
  if (n < 2) throw DomainError("U: n must be >= 2");
  if (k < 1 || k > n - 2) return Nat(0);
  Int acc = 0;
  for (std::uint64_t i = 1; i <= k + 1; ++i) {
    // (n+i-2-k)!/i! is falling_quotient at k+1.
    acc += falling_quotient(n, i, k + 1).value() * pow_u64(i, k);
  }
  return Nat::from_int(std::move(acc));
}

Int V(std::uint64_t k) {
  if (k < 1) throw DomainError("V: k must be >= 1");
  Int acc = 0;
  const bool k_odd = (k % 2) == 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    Int first = binomial(k + 1, i).value() * pow_u64(i, k);
    if (i % 2 == 0) first = -first;  // (-1)^{i-1}
    Int second = binomial(k, i).value() * pow_u64(k, i);
    if (k_odd) second = -second;  // (-1)^k
    acc += first + second;
  }
  return acc;
}

Nat binomial_power_sum(std::uint64_t k) {
  if (k < 1) throw DomainError("binomial_power_sum: k must be >= 1");
  Int acc = 0;
  for (std::uint64_t i = 0; i <= k; ++i) acc += binomial(k, i).value() * pow_u64(k, i);
  return Nat::from_int(std::move(acc));
}

Int alternating_power_sum(std::uint64_t k) {
  if (k < 1) throw DomainError("alternating_power_sum: k must be >= 1");
  Int acc = 0;
  for (std::uint64_t i = 0; i <= k + 1; ++i) {
    Int term = binomial(k + 1, i).value() * pow_u64(i, k);
    if (i % 2 == 1) acc -= term;
    else acc += term;
  }
  return acc;
}

Int iterated_forward_difference(std::span<const Int> samples, std::size_t order) {
  if (samples.size() != order + 1) {
    throw UsageError("iterated_forward_difference: expected " + std::to_string(order + 1) +
                     " samples for order " + std::to_string(order) + ", got " +
                     std::to_string(samples.size()));
  }
  Int acc = 0;
  for (std::size_t i = 0; i <= order; ++i) {
    Int term = binomial(order, i).value() * samples[order - i];
    if (i % 2 == 1) acc -= term;
    else acc += term;
  }
  return acc;
}

Int signed_pow(std::int64_t base, std::uint64_t e) {
  const std::uint64_t magnitude =
      base < 0 ? static_cast<std::uint64_t>(-(base + 1)) + 1 : static_cast<std::uint64_t>(base);
  Int out = pow_u64(magnitude, e);
  if (base < 0 && e % 2 == 1) out = -out;
  return out;
}

}  // namespace giuga::exact
