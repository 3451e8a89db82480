#include "giuga/exact.hpp"

#include <vector>

#include <gtest/gtest.h>

#include "giuga/errors.hpp"
#include "oracle.hpp"

using namespace giuga;
using namespace giuga::exact;

namespace {

Nat nat(const char* s) { return Nat::parse(s); }

}  // namespace

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), Nat(1));
  EXPECT_EQ(factorial(1), Nat(1));
  EXPECT_EQ(factorial(5), Nat(120));
  EXPECT_EQ(factorial(20), Nat(2432902008176640000ULL));
}

TEST(Factorial, MatchesLoopProduct) {
  for (std::uint64_t m : {0, 1, 2, 10, 33, 100, 257, 1000, 5000}) {
    EXPECT_EQ(factorial(m).value(), oracle::fact(m)) << m;
  }
}

TEST(Binomial, PascalRows) {
  for (std::uint64_t n = 0; n <= 40; ++n) {
    for (std::uint64_t r = 0; r <= n + 1; ++r) {
      EXPECT_EQ(binomial(n, r).value(), oracle::choose(n, r)) << n << " " << r;
    }
  }
}

TEST(FallingQuotient, Examples) {
  EXPECT_EQ(falling_quotient(5, 1, 1), Nat(24));
  EXPECT_EQ(falling_quotient(5, 4, 4), Nat(1));
  EXPECT_EQ(falling_quotient(5, 3, 2), Nat(20));
}

TEST(FallingQuotient, EqualsFactorialRatio) {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    for (std::uint64_t k = 1; k <= n - 1; ++k) {
      for (std::uint64_t i = 1; i <= n - 1; ++i) {
        const mpz_class expected = oracle::fact(n + i - 1 - k) / oracle::fact(i);
        ASSERT_EQ(falling_quotient(n, i, k).value(), expected) << n << " " << i << " " << k;
        ASSERT_EQ(oracle::fact(n + i - 1 - k) % oracle::fact(i), 0);
      }
    }
  }
}

TEST(FallingQuotient, RejectsOutOfRange) {
  EXPECT_THROW(falling_quotient(5, 0, 1), DomainError);
  EXPECT_THROW(falling_quotient(5, 5, 1), DomainError);
  EXPECT_THROW(falling_quotient(5, 1, 5), DomainError);
  EXPECT_THROW(falling_quotient(5, 1, 0), DomainError);
}

TEST(PowerSum, Examples) {
  EXPECT_EQ(power_sum(1, 5), Nat(10));
  EXPECT_EQ(power_sum(4, 5), Nat(354));
  EXPECT_EQ(power_sum(7, 1), Nat(0));
}

TEST(PowerSum, RandomAgainstOracle) {
  for (int t = 0; t < 200; ++t) {
    const auto k = oracle::uniform(0, 60);
    const auto n = oracle::uniform(1, 120);
    ASSERT_EQ(power_sum(k, n).value(), oracle::power_sum(k, n)) << k << " " << n;
  }
}

TEST(Endpoints, Examples) {
  EXPECT_EQ(f_wilson(2), Nat(2));
  EXPECT_EQ(f_wilson(4), Nat(7));
  EXPECT_EQ(f_wilson(5), Nat(25));
  EXPECT_EQ(f_wilson(6), Nat(121));
  EXPECT_EQ(f_giuga(2), Nat(2));
  EXPECT_EQ(f_giuga(4), Nat(37));
  EXPECT_EQ(f_giuga(5), Nat(355));
}

TEST(H, Examples) {
  EXPECT_EQ(H(1, 5), Nat(1345));
  EXPECT_EQ(H(4, 5), Nat(355));
  EXPECT_EQ(H(7, 5), Nat(0));
  EXPECT_EQ(H(0, 5), Nat(0));
  EXPECT_EQ(H(5, 5), Nat(0));
}

TEST(H, AgreesWithFactorialDivisionOracle) {
  for (std::uint64_t n = 2; n <= 40; ++n) {
    for (std::uint64_t k = 0; k <= n + 1; ++k) {
      ASSERT_EQ(H(k, n).value(), oracle::H(k, n)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(H, TopIndexIsGiugaEndpoint) {
  for (std::uint64_t n = 2; n <= 80; ++n) EXPECT_EQ(H(n - 1, n), f_giuga(n)) << n;
}

TEST(H, RowMatchesIndividualValues) {
  for (std::uint64_t n : {2, 3, 4, 7, 16, 31, 64}) {
    const auto row = H_row(n);
    ASSERT_EQ(row.size(), n);
    EXPECT_TRUE(row[0].is_zero());
    for (std::uint64_t k = 1; k < n; ++k) EXPECT_EQ(row[k], H(k, n)) << n << " " << k;
  }
}

TEST(H, RandomLargerPairsAgainstOracle) {
  for (int t = 0; t < 40; ++t) {
    const auto n = oracle::uniform(41, 120);
    const auto k = oracle::uniform(1, n - 1);
    ASSERT_EQ(H(k, n).value(), oracle::H(k, n)) << k << " " << n;
  }
}

TEST(U, Examples) {
  EXPECT_EQ(U(1, 4), Nat(8));
  EXPECT_EQ(U(2, 4), Nat(14));
  EXPECT_EQ(U(2, 5), Nat(50));
  EXPECT_EQ(U(3, 4), Nat(0));
  EXPECT_EQ(U(0, 4), Nat(0));
}

TEST(U, AgreesWithOracle) {
  for (std::uint64_t n = 2; n <= 40; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      ASSERT_EQ(U(k, n).value(), oracle::U(k, n)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(U, FirstIndexIsNTimesFactorial) {
  for (std::uint64_t n = 3; n <= 60; ++n) EXPECT_EQ(U(1, n).value(), n * oracle::fact(n - 2)) << n;
}

TEST(V, Examples) {
  EXPECT_EQ(V(1), Int(1));
  EXPECT_EQ(V(2), Int(-1));
  EXPECT_EQ(V(3), Int(1));
}

TEST(V, AlternatesSign) {
  for (std::uint64_t k = 1; k <= 150; ++k) {
    EXPECT_EQ(V(k), (k % 2 == 1) ? Int(1) : Int(-1)) << k;
  }
}

TEST(V, DefinitionOracle) {
  for (std::uint64_t k = 1; k <= 30; ++k) {
    mpz_class s = 0;
    for (std::uint64_t i = 1; i <= k; ++i) {
      const mpz_class sign = (i % 2 == 1) ? 1 : -1;
      const mpz_class sign_k = (k % 2 == 0) ? 1 : -1;
      s += sign * oracle::choose(k + 1, i) * oracle::ipow(i, k) +
           sign_k * oracle::choose(k, i) * oracle::ipow(k, i);
    }
    EXPECT_EQ(V(k), s) << k;
  }
}

TEST(BinomialPowerSum, IsPowerOfSuccessor) {
  EXPECT_EQ(binomial_power_sum(1), Nat(2));
  EXPECT_EQ(binomial_power_sum(2), Nat(9));
  EXPECT_EQ(binomial_power_sum(3), Nat(64));
  for (std::uint64_t k = 1; k <= 100; ++k) {
    EXPECT_EQ(binomial_power_sum(k).value(), oracle::ipow(k + 1, k)) << k;
  }
}

TEST(AlternatingPowerSum, Vanishes) {
  for (std::uint64_t k = 1; k <= 120; ++k) EXPECT_EQ(alternating_power_sum(k), Int(0)) << k;
}

TEST(ForwardDifference, Examples) {
  const std::vector<Int> constant{3, 3};
  EXPECT_EQ(iterated_forward_difference(constant, 1), Int(0));
  const std::vector<Int> squares{1, 4, 9};
  EXPECT_EQ(iterated_forward_difference(squares, 2), Int(2));
  const std::vector<Int> squares4{0, 1, 4, 9};
  EXPECT_EQ(iterated_forward_difference(squares4, 3), Int(0));
}

TEST(ForwardDifference, SizeMismatchIsUsageError) {
  const std::vector<Int> s{1, 2, 3};
  EXPECT_THROW(iterated_forward_difference(s, 1), UsageError);
}

TEST(ForwardDifference, PolynomialDegreeLaw) {
  // Delta^d of a degree-d monic polynomial is d!, and Delta^{d+1} is 0, at any base.
  for (int t = 0; t < 100; ++t) {
    const auto d = oracle::uniform(1, 25);
    const auto base = static_cast<std::int64_t>(oracle::uniform(0, 60)) - 30;
    std::vector<Int> samples;
    for (std::uint64_t j = 0; j <= d + 1; ++j) {
      samples.push_back(signed_pow(base + static_cast<std::int64_t>(j), d));
    }
    EXPECT_EQ(iterated_forward_difference(samples, d + 1), Int(0));
    samples.pop_back();
    EXPECT_EQ(iterated_forward_difference(samples, d), oracle::fact(d));
  }
}

TEST(SignedPow, Signs) {
  EXPECT_EQ(signed_pow(-2, 3), Int(-8));
  EXPECT_EQ(signed_pow(-2, 4), Int(16));
  EXPECT_EQ(signed_pow(0, 0), Int(1));
  EXPECT_EQ(signed_pow(7, 0), Int(1));
}

TEST(Nat, ParseRoundTripAndErrors) {
  const Nat big = nat("123456789012345678901234567890");
  EXPECT_EQ(big.str(), "123456789012345678901234567890");
  EXPECT_FALSE(big.fits_u64());
  EXPECT_THROW(big.to_u64(), OverflowError);
  EXPECT_THROW(Nat::from_int(Int(-1)), DomainError);
  EXPECT_EQ(Nat(18446744073709551615ULL).to_u64(), 18446744073709551615ULL);
  EXPECT_EQ(big.mod(97), oracle::mod(big.value(), 97));
}

TEST(Nat, ExactDivision) {
  EXPECT_EQ(Nat(120).exact_div(Nat(24)), Nat(5));
  EXPECT_THROW(Nat(121).exact_div(Nat(24)), DomainError);
}
