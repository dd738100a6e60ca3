#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hmfd;

TEST(Ideal, EnumerationMatchesBruteForce) {
  for (std::int64_t D : {3, 5, 10, 13}) {
    const QuadraticField F = make_field(D);
    EXPECT_EQ(enumerate_ideals(F, 300), oracle::brute_force_ideals(D, 300)) << "D = " << D;
  }
}

TEST(Ideal, MultiplicationMatchesBruteForce) {
  for (std::int64_t D : {3, 5, 10}) {
    const QuadraticField F = make_field(D);
    auto ideals = enumerate_ideals(F, 40);
    for (const auto& I : ideals)
      for (const auto& J : ideals) {
        IdealHNF P = ideal_mul(F, I, J);
        EXPECT_EQ(P, oracle::brute_mul(D, I, J)) << I << " * " << J;
        EXPECT_EQ(P.norm(), I.norm() * J.norm());
      }
  }
}

TEST(Ideal, ConjugateMatchesBruteForce) {
  for (std::int64_t D : {3, 5, 10}) {
    const QuadraticField F = make_field(D);
    for (const auto& I : enumerate_ideals(F, 100)) EXPECT_EQ(ideal_conj(F, I), oracle::brute_conj(D, I)) << I;
  }
}

TEST(Ideal, MakeIdealValidates) {
  const QuadraticField F = make_field(3);
  EXPECT_NO_THROW(make_ideal(F, 11, 5, 1));
  EXPECT_THROW(make_ideal(F, 11, 4, 1), std::invalid_argument);
  EXPECT_THROW(make_ideal(F, 0, 0, 1), std::invalid_argument);
}

TEST(Ideal, SplittingTypes) {
  const QuadraticField F = make_field(3);
  auto p7 = primes_above(F, 7);  // 3 is not a square mod 7
  ASSERT_EQ(p7.size(), 1u);
  EXPECT_EQ(p7[0].residue_degree, 2);
  EXPECT_EQ(p7[0].ideal, (IdealHNF{7, 0, 7}));
  auto p11 = primes_above(F, 11);
  ASSERT_EQ(p11.size(), 2u);
  EXPECT_EQ(p11[0].ideal, (IdealHNF{11, 5, 1}));
  EXPECT_EQ(p11[1].ideal, (IdealHNF{11, 6, 1}));
  auto p3 = primes_above(F, 3);
  ASSERT_EQ(p3.size(), 1u);
  EXPECT_TRUE(p3[0].ramified);
  EXPECT_EQ(ideal_mul(F, p3[0].ideal, p3[0].ideal), (IdealHNF{3, 0, 3}));
  auto p2 = primes_above(F, 2);
  ASSERT_EQ(p2.size(), 1u);
  EXPECT_TRUE(p2[0].ramified);
}

TEST(Ideal, FactorizationRoundTripsAndDivisorsAgreeWithContainment) {
  for (std::int64_t D : {3, 5, 10}) {
    const QuadraticField F = make_field(D);
    auto ideals = enumerate_ideals(F, 200);
    for (const auto& I : ideals) {
      IdealHNF prod = unit_ideal();
      for (const auto& [P, e] : factor_ideal(F, I)) {
        EXPECT_EQ(P.norm(), P.residue_degree == 2 ? P.rational_prime * P.rational_prime : P.rational_prime);
        prod = ideal_mul(F, prod, ideal_pow(F, P.ideal, e));
      }
      EXPECT_EQ(prod, I);
      std::vector<IdealHNF> expect;
      for (const auto& J : ideals)
        if (J.norm() <= I.norm() && oracle::brute_divides(J, I)) expect.push_back(J);
      auto divs = divisors_of(F, I);
      std::sort(divs.begin(), divs.end());
      EXPECT_EQ(divs, expect) << I;
      for (const auto& J : expect) {
        EXPECT_TRUE(ideal_divides(F, J, I));
        auto Q = ideal_quotient(F, I, J);
        ASSERT_TRUE(Q.has_value());
        EXPECT_EQ(ideal_mul(F, *Q, J), I);
      }
    }
  }
}

TEST(Ideal, ForEachVisitsEachIdealOnceWithItsFactorization) {
  const QuadraticField F = make_field(10);
  std::map<IdealHNF, int> seen;
  for_each_ideal(F, 500, [&](const IdealHNF& I, const Factorization& fac) {
    ++seen[I];
    IdealHNF prod = unit_ideal();
    for (const auto& [P, e] : fac) prod = ideal_mul(F, prod, ideal_pow(F, P.ideal, e));
    EXPECT_EQ(prod, I);
  });
  auto all = oracle::brute_force_ideals(10, 500);
  EXPECT_EQ(seen.size(), all.size());
  for (const auto& [I, n] : seen) EXPECT_EQ(n, 1) << I;
}

TEST(Ideal, Squarefreeness) {
  const QuadraticField F = make_field(3);
  EXPECT_TRUE(is_squarefree_ideal(F, make_ideal(F, 11, 5, 1)));
  EXPECT_TRUE(is_squarefree_ideal(F, make_ideal(F, 11, 0, 11)));  // (11) = p p'
  EXPECT_FALSE(is_squarefree_ideal(F, make_ideal(F, 3, 0, 3)));   // (3) = q^2
  EXPECT_FALSE(is_squarefree_ideal(F, ideal_pow(F, make_ideal(F, 11, 5, 1), 2)));
}
