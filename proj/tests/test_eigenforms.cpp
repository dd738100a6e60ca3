#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hmfd;

namespace {

struct Env {
  QuadraticField F;
  std::shared_ptr<const NarrowClassGroup> G;
  std::shared_ptr<const GFContext> K;
  std::vector<Character> chars;
  Env(std::int64_t D, std::int64_t p)
      : F(make_field(D)), G(narrow_class_group(F)), K(gf_make(p, minimal_degree_for_exponent(p, G->exponent()))),
        chars(characters_of(G, K)) {}
};

}  // namespace

TEST(Eigenforms, EisensteinCoefficientsAreDivisorSums) {
  for (auto [D, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 7}, {10, 11}, {15, 13}}) {
    Env S(D, p);
    auto all = oracle::brute_force_ideals(D, 150);
    for (const auto& a : S.chars)
      for (const auto& b : S.chars) {
        AdelicQExpansion f = eisenstein(a, b, 150);
        EXPECT_EQ(f.nebentypus(), a * b);
        for (const auto& r : all) EXPECT_EQ(f.coeff(r), oracle::brute_divisor_sum(S.F, a, b, r, all)) << r;
      }
  }
}

TEST(Eigenforms, ConstantModes) {
  Env S(3, 11);
  AdelicQExpansion f0 = eisenstein(S.chars[0], S.chars[1], 20, ConstantMode::zero);
  AdelicQExpansion f1 = eisenstein(S.chars[0], S.chars[1], 20, ConstantMode::v_phi1);
  AdelicQExpansion f2 = eisenstein(S.chars[0], S.chars[1], 20, ConstantMode::v_phi2);
  EXPECT_TRUE(f0.constant().is_zero());
  EXPECT_EQ(f1.constant(), phi_vector(S.chars[0]));
  EXPECT_EQ(f2.constant(), phi_vector(S.chars[1]));
  EXPECT_EQ(f1.coeffs(), f0.coeffs());
  EXPECT_EQ(constant_mode_from_string("v_phi2"), ConstantMode::v_phi2);
  EXPECT_THROW(constant_mode_from_string("bogus"), std::invalid_argument);
}

TEST(Eigenforms, EisensteinEigenvalues) {
  for (auto [D, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 7}, {3, 11}, {10, 7}, {15, 13}}) {
    Env S(D, p);
    auto primes = prime_ideals_up_to(S.F, 50);
    for (const auto& a : S.chars)
      for (const auto& b : S.chars)
        for (ConstantMode mode : {ConstantMode::zero, ConstantMode::v_phi1, ConstantMode::v_phi2}) {
          AdelicQExpansion f = eisenstein(a, b, 2600, mode);
          for (const auto& chk : verify_eigenform(f, primes)) {
            ASSERT_TRUE(chk.is_eigen) << chk.witness;
            EXPECT_EQ(*chk.lambda, a(chk.q.ideal) + b(chk.q.ideal)) << "q = " << chk.q.ideal;
          }
        }
  }
}

TEST(Eigenforms, ConstantFormEigenvalues) {
  Env S(15, 13);
  auto primes = prime_ideals_up_to(S.F, 50);
  for (const auto& phi : S.chars)
    for (const auto& eps : S.chars) {
      AdelicQExpansion f = constant_form(phi, eps, 200);
      for (const auto& chk : verify_eigenform(f, primes)) {
        ASSERT_TRUE(chk.is_eigen) << chk.witness;
        EXPECT_EQ(*chk.lambda, phi(chk.q.ideal) + eps(chk.q.ideal) * phi(chk.q.ideal).inverse());
      }
    }
}

TEST(Eigenforms, NonEigenformsAreReportedWithWitness) {
  Env S(3, 7);
  std::mt19937_64 rng(oracle::test_seed());
  auto ideals = enumerate_ideals(S.F, 300);
  AdelicQExpansion f = random_form(S.chars[0], ideals, 300, rng);
  auto checks = verify_eigenform(f, prime_ideals_up_to(S.F, 13));
  bool any_fail = false;
  for (const auto& c : checks)
    if (!c.is_eigen) {
      any_fail = true;
      EXPECT_FALSE(c.witness.empty());
    }
  EXPECT_TRUE(any_fail);
  AdelicQExpansion zero(1, S.chars[0], 300);
  EXPECT_THROW(verify_eigenform(zero, prime_ideals_up_to(S.F, 13)), PrecisionError);
}

TEST(Eigenforms, SumOfEisensteinSeriesWithDifferentEigenvaluesFails) {
  Env S(3, 11);
  AdelicQExpansion f = qexp_add(eisenstein(S.chars[0], S.chars[0], 500), eisenstein(S.chars[1], S.chars[1], 500));
  auto checks = verify_eigenform(f, prime_ideals_up_to(S.F, 20));
  bool any_fail = false;
  for (const auto& c : checks) any_fail |= !c.is_eigen;
  EXPECT_TRUE(any_fail);
}
