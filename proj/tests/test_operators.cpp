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

// T_q written straight from the defining formula, with divisibility and quotients found
// among brute-force ideals.
AdelicQExpansion naive_T(const AdelicQExpansion& f, const PrimeIdeal& q, int k, const std::vector<IdealHNF>& all) {
  const GFContext& K = f.coefficient_field();
  const std::int64_t D = f.field().D();
  const std::int64_t B = f.precision() / q.norm();
  GFElement nu = K.one();
  for (int i = 1; i < k; ++i) nu *= K.from_int(q.norm());
  const GFElement e = f.nebentypus().at_class(f.group().class_of_direct(q.ideal)) * nu;
  AdelicQExpansion out = f.zero_like(B);
  for (const auto& r : all) {
    if (r.norm() > B) break;
    GFElement a = f.coeff(oracle::brute_mul(D, q.ideal, r));
    if (oracle::brute_divides(q.ideal, r))
      for (const auto& s : all)
        if (s.norm() * q.norm() == r.norm() && oracle::brute_mul(D, s, q.ideal) == r) a += e * f.coeff(s);
    out.set_coeff(r, a);
  }
  // constant term: sum over classes c of a_c ([q][c] + e [q^{-1}][c])
  const auto& G = f.group();
  const int cq = G.class_of_direct(q.ideal);
  GroupRingVector c = GroupRingVector::zero(f.nebentypus().group(), K);
  for (int x = 0; x < G.order(); ++x) {
    c[G.compose(cq, x)] += f.constant()[x];
    c[G.compose(G.inverse(cq), x)] += e * f.constant()[x];
  }
  out.set_constant(c);
  return out;
}

}  // namespace

TEST(Operators, HeckeMatchesDefinition) {
  for (auto [D, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 7}, {10, 11}, {5, 11}}) {
    Env S(D, p);
    std::mt19937_64 rng(oracle::test_seed() + static_cast<std::uint64_t>(D));
    const std::int64_t B = 600;
    auto ideals = enumerate_ideals(S.F, B);
    auto all = oracle::brute_force_ideals(D, B);
    for (int trial = 0; trial < 3; ++trial) {
      AdelicQExpansion f = random_form(S.chars[trial % S.chars.size()], ideals, B, rng, 0.8);
      for (const auto& q : prime_ideals_up_to(S.F, 25)) {
        for (int k : {1, 2, static_cast<int>(p)}) {
          AdelicQExpansion a = apply_T(f, q, k), b = naive_T(f, q, k, all);
          EXPECT_EQ(a.precision(), b.precision());
          EXPECT_FALSE(qexp_first_difference(a, b, a.precision()).has_value())
              << "D=" << D << " q=" << q.ideal << " k=" << k << ": " << *qexp_first_difference(a, b, a.precision());
        }
      }
    }
  }
}

TEST(Operators, HeckeIsLinearAndCommutesWithDiamond) {
  Env S(10, 7);
  std::mt19937_64 rng(oracle::test_seed() + 3);
  auto ideals = enumerate_ideals(S.F, 500);
  for (int trial = 0; trial < 5; ++trial) {
    const Character& eps = S.chars[trial % 2];
    AdelicQExpansion f = random_form(eps, ideals, 500, rng), g = random_form(eps, ideals, 500, rng);
    GFElement c = random_element(*S.K, rng);
    for (const auto& q : prime_ideals_up_to(S.F, 20)) {
      AdelicQExpansion lhs = apply_T(qexp_add(qexp_scale(c, f), g), q);
      AdelicQExpansion rhs = qexp_add(qexp_scale(c, apply_T(f, q)), apply_T(g, q));
      EXPECT_TRUE(qexp_equal(lhs, rhs, lhs.precision()));
      for (const auto& r : prime_ideals_up_to(S.F, 20)) {
        AdelicQExpansion a = apply_diamond(apply_T(f, q), r.ideal), b = apply_T(apply_diamond(f, r.ideal), q);
        EXPECT_TRUE(qexp_equal(a, b, a.precision()));
      }
    }
  }
}

TEST(Operators, HeckeOperatorsCommuteOnRandomForms) {
  Env S(3, 11);
  std::mt19937_64 rng(oracle::test_seed() + 4);
  auto ideals = enumerate_ideals(S.F, 2000);
  auto primes = prime_ideals_up_to(S.F, 30);
  for (int trial = 0; trial < 3; ++trial) {
    AdelicQExpansion f = random_form(S.chars[trial % 2], ideals, 2000, rng);
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j) {
        AdelicQExpansion a = apply_T(apply_T(f, primes[i]), primes[j]);
        AdelicQExpansion b = apply_T(apply_T(f, primes[j]), primes[i]);
        ASSERT_EQ(a.precision(), b.precision());
        EXPECT_TRUE(qexp_equal(a, b, a.precision())) << primes[i].ideal << " " << primes[j].ideal;
      }
  }
}

TEST(Operators, HeckeAboveCharacteristicInHigherWeightIsShift) {
  Env S(3, 7);
  std::mt19937_64 rng(oracle::test_seed() + 5);
  auto ideals = enumerate_ideals(S.F, 3000);
  AdelicQExpansion f = random_form(S.chars[1], ideals, 3000, rng);
  const PrimeIdeal q = primes_above(S.F, 7)[0];
  AdelicQExpansion Tf = apply_T(f, q, 7);
  AdelicQExpansion shift = t_shift(f, q.ideal);
  EXPECT_EQ(Tf.coeffs(), shift.coeffs());
}

TEST(Operators, HasseLiftOnlyChangesWeight) {
  Env S(3, 7);
  std::mt19937_64 rng(oracle::test_seed() + 6);
  auto ideals = enumerate_ideals(S.F, 100);
  AdelicQExpansion f = random_form(S.chars[0], ideals, 100, rng);
  AdelicQExpansion h = hasse_lift(f);
  EXPECT_EQ(h.weight(), 7);
  EXPECT_EQ(h.coeffs(), f.coeffs());
  EXPECT_EQ(h.constant(), f.constant());
}

TEST(Operators, FrobeniusSupportValidation) {
  Env S(3, 11);
  EXPECT_THROW(frobenius_support(S.F, make_ideal(S.F, 2, 1, 1), 11), std::invalid_argument);
  IdealHNF p1 = primes_above(S.F, 11)[0].ideal;
  EXPECT_THROW(frobenius_support(S.F, ideal_mul(S.F, p1, p1), 11), std::invalid_argument);
  EXPECT_EQ(frobenius_support(S.F, IdealHNF{11, 0, 11}, 11).size(), 2u);
}

TEST(Operators, VPDirectIsShiftedHasseLift) {
  Env S(3, 11);
  std::mt19937_64 rng(oracle::test_seed() + 7);
  auto ideals = enumerate_ideals(S.F, 300);
  AdelicQExpansion f = random_form(S.chars[1], ideals, 300, rng);
  for (const auto& P : primes_above(S.F, 11)) {
    AdelicQExpansion v = apply_VP_direct(f, P.ideal);
    EXPECT_EQ(v.weight(), 11);
    EXPECT_EQ(v.precision(), 300 * 11);
    for (const auto& r : ideals) EXPECT_EQ(v.coeff(ideal_mul(S.F, r, P.ideal)), f.coeff(r));
    // both primes above 11 are in the nontrivial class, which is its own inverse
    EXPECT_EQ(v.constant(), translate_by_class(f.constant(), 1));
  }
  EXPECT_THROW(apply_VP_direct(hasse_lift(f), primes_above(S.F, 11)[0].ideal), std::invalid_argument);
}

TEST(Operators, VPRecursionAgreesWithClosedForm) {
  for (auto [D, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 11}, {3, 7}, {10, 3}}) {
    Env S(D, p);
    const auto primes = primes_above(S.F, p);
    std::int64_t rad = 1;
    for (const auto& q : primes) rad *= q.norm();
    const std::int64_t B = rad * (rad + 8);
    std::mt19937_64 rng(oracle::test_seed() + 8);
    auto ideals = enumerate_ideals(S.F, B);
    for (int trial = 0; trial < 4; ++trial) {
      AdelicQExpansion f = random_isotypic_form(S.chars, ideals, B, rng);
      for (const auto& P : squarefree_divisors(S.F, primes)) {
        AdelicQExpansion direct = apply_VP_direct(f, P);
        auto order = frobenius_support(S.F, P, p);
        do {
          AdelicQExpansion rec = apply_VP_recursive(f, order);
          EXPECT_EQ(rec.weight(), direct.weight());
          EXPECT_TRUE(qexp_equal(rec, direct, rec.precision())) << "D=" << D << " P=" << P;
        } while (std::next_permutation(order.begin(), order.end()));
        for (const auto& q : primes) {
          std::string w;
          EXPECT_TRUE(check_UV_lemma(f, q, P, &w)) << w;
        }
      }
    }
  }
}

TEST(Operators, LemmaCheckNeedsEnoughCoordinates) {
  Env S(3, 11);
  const auto primes = primes_above(S.F, 11);
  AdelicQExpansion f(1, S.chars[1], 1);
  f.set_coeff(unit_ideal(), S.K->one());
  EXPECT_THROW(check_UV_lemma(f, primes[0], primes[0].ideal), PrecisionError);
  EXPECT_THROW(check_UV_lemma(f, primes_above(S.F, 13)[0], primes[0].ideal), std::invalid_argument);
}
