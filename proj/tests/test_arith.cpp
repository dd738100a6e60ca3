#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hmfd;

TEST(Arith, FloorModIsNonNegative) {
  EXPECT_EQ(floor_mod(std::int64_t{-7}, std::int64_t{5}), 3);
  EXPECT_EQ(floor_mod(std::int64_t{7}, std::int64_t{5}), 2);
  EXPECT_EQ(floor_mod(std::int64_t{-10}, std::int64_t{5}), 0);
}

TEST(Arith, InverseModMatchesExhaustiveSearch) {
  for (std::int64_t m : {7, 11, 12, 101}) {
    for (std::int64_t a = 1; a < m; ++a) {
      std::int64_t expect = -1;
      for (std::int64_t b = 1; b < m; ++b)
        if (a * b % m == 1) expect = b;
      if (expect < 0) {
        EXPECT_THROW(inv_mod(a, m), std::domain_error);
      } else {
        EXPECT_EQ(inv_mod(a, m), expect);
      }
    }
  }
}

TEST(Arith, PrimalityAgreesWithTrialDivision) {
  for (std::int64_t n = -5; n < 3000; ++n) {
    bool expect = n >= 2;
    for (std::int64_t d = 2; d * d <= n && expect; ++d)
      if (n % d == 0) expect = false;
    EXPECT_EQ(is_prime(n), expect) << n;
  }
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(std::int64_t{1000000007} * 998244353));
}

TEST(Arith, FactorizationMultipliesBack) {
  for (std::int64_t n = 1; n < 2000; ++n) {
    std::int64_t prod = 1;
    for (auto [q, e] : factor_integer(n)) {
      EXPECT_TRUE(is_prime(q));
      for (int i = 0; i < e; ++i) prod *= q;
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Arith, SquarefreeAndSqrtMod) {
  EXPECT_TRUE(is_squarefree(10));
  EXPECT_FALSE(is_squarefree(12));
  for (std::int64_t ell : {3, 5, 7, 11, 13, 97}) {
    for (std::int64_t a = 0; a < ell; ++a) {
      bool square = false;
      for (std::int64_t x = 0; x < ell; ++x) square |= (x * x % ell == a);
      auto r = sqrt_mod_prime(a, ell);
      EXPECT_EQ(r.has_value(), square);
      if (r) {
        EXPECT_EQ(*r * *r % ell, a);
      }
      if (a) {
        EXPECT_EQ(kronecker_prime(a, ell), square ? 1 : -1);
      }
    }
  }
}

TEST(Arith, IntegerSquareRoot) {
  Integer r;
  EXPECT_TRUE(is_perfect_square(Integer(144), &r));
  EXPECT_EQ(r, 12);
  EXPECT_FALSE(is_perfect_square(Integer(145)));
  Integer big = Integer(1) << 200;
  EXPECT_EQ(isqrt(big), Integer(1) << 100);
}
