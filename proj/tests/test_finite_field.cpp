#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hmfd;

namespace {

// First monic polynomial of degree 2 or 3 without roots in F_p, lower coefficients
// ordered with the highest one most significant.
std::vector<std::int64_t> least_rootless(std::int64_t p, int m) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(m), 0);
  while (true) {
    bool root = false;
    for (std::int64_t x = 0; x < p && !root; ++x) {
      std::int64_t v = 1;
      for (int i = m - 1; i >= 0; --i) v = (v * x + c[static_cast<std::size_t>(i)]) % p;
      root = v == 0;
    }
    if (!root) {
      c.push_back(1);
      return c;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (++c[i] < p) break;
      c[i] = 0;
    }
  }
}

const std::vector<std::pair<std::int64_t, int>> kSmallFields{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1},
                                                             {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2},
                                                             {11, 1}, {11, 2}};

}  // namespace

TEST(FiniteField, ModulusIsLeastIrreducible) {
  EXPECT_EQ(gf_make(7, 2)->modulus(), least_rootless(7, 2));
  EXPECT_EQ(gf_make(11, 2)->modulus(), least_rootless(11, 2));
  EXPECT_EQ(gf_make(7, 2)->modulus(), (std::vector<std::int64_t>{1, 0, 1}));
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {13, 2}})
    EXPECT_EQ(gf_make(p, m)->modulus(), least_rootless(p, m)) << p << "^" << m;
}

TEST(FiniteField, ExhaustiveInversesAndAxioms) {
  for (auto [p, m] : kSmallFields) {
    auto K = gf_make(p, m);
    const std::uint64_t q = K->order();
    for (std::uint64_t a = 1; a < q; ++a) {
      GFElement x = K->from_code(a);
      std::uint64_t found = 0;
      for (std::uint64_t b = 1; b < q; ++b)
        if ((x * K->from_code(b)).is_one()) found = b;
      EXPECT_EQ(x.inverse().code(), found) << p << "^" << m << " code " << a;
    }
    if (q > 32) continue;
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) {
        GFElement x = K->from_code(a), y = K->from_code(b);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x + y - y, x);
        for (std::uint64_t c = 0; c < q; ++c) {
          GFElement z = K->from_code(c);
          EXPECT_EQ(x * (y + z), x * y + x * z);
          EXPECT_EQ((x * y) * z, x * (y * z));
        }
      }
  }
}

TEST(FiniteField, GeneratorAndFrobenius) {
  for (auto [p, m] : kSmallFields) {
    auto K = gf_make(p, m);
    EXPECT_EQ(K->element_order(K->generator().code()), K->order() - 1);
    for (std::uint64_t a = 0; a < K->order(); ++a) {
      GFElement x = K->from_code(a);
      EXPECT_EQ(x.pow(K->order()), x);
      // Frobenius is additive
      GFElement y = K->from_code((a * 7 + 3) % K->order());
      EXPECT_EQ((x + y).pow(static_cast<std::uint64_t>(p)), x.pow(static_cast<std::uint64_t>(p)) + y.pow(static_cast<std::uint64_t>(p)));
    }
  }
}

TEST(FiniteField, ElementStringsAndCoefficients) {
  auto K = gf_make(7, 2);
  std::vector<std::int64_t> cs{3, 5};
  GFElement x = K->from_coeffs(cs);
  EXPECT_EQ(x.coeffs(), cs);
  EXPECT_EQ(x.str(), "[3,5]");
  EXPECT_EQ(gf_make(11, 1)->from_int(-1).str(), "10");
  EXPECT_THROW(gf_make(12, 1), std::invalid_argument);
}

TEST(FiniteField, QuadraticRootsExamples) {
  auto K = gf_make(7, 1);
  auto r = quadratic_roots(K->from_int(2), K->from_int(1));  // (X - 1)^2
  EXPECT_TRUE(r.split);
  EXPECT_TRUE(r.double_root);
  EXPECT_EQ(r.roots[0], K->one());
  EXPECT_EQ(r.roots[1], K->one());

  auto K11 = gf_make(11, 1);
  auto s = quadratic_roots(K11->zero(), K11->from_int(-1));  // X^2 - 1
  EXPECT_TRUE(s.split);
  EXPECT_FALSE(s.double_root);
  EXPECT_EQ(s.roots[0], K11->one());
  EXPECT_EQ(s.roots[1], K11->from_int(-1));

  auto t = quadratic_roots(K->zero(), K->one());  // X^2 + 1 is irreducible over F_7
  EXPECT_FALSE(t.split);
  EXPECT_EQ(t.needed_degree, 2);
  EXPECT_THROW(quadratic_roots(K->one(), K->zero()), std::invalid_argument);
}

TEST(FiniteField, QuadraticRootsAgreeWithSearch) {
  for (auto [p, m] : kSmallFields) {
    auto K = gf_make(p, m);
    if (K->order() > 50) continue;
    for (std::uint64_t l = 0; l < K->order(); ++l)
      for (std::uint64_t e = 1; e < K->order(); ++e) {
        GFElement lam = K->from_code(l), eps = K->from_code(e);
        std::vector<GFElement> found;
        for (std::uint64_t x = 0; x < K->order(); ++x) {
          GFElement r = K->from_code(x);
          if ((r * r - lam * r + eps).is_zero()) found.push_back(r);
        }
        auto qr = quadratic_roots(lam, eps);
        EXPECT_EQ(qr.split, !found.empty());
        if (found.empty()) continue;
        if (found.size() == 1) found.push_back(found[0]);
        EXPECT_EQ(qr.roots, found);
        EXPECT_EQ(qr.double_root, found[0] == found[1]);
      }
  }
}

TEST(FiniteField, EmbeddingIsRingHomomorphism) {
  for (auto [p, m, M] : std::vector<std::tuple<std::int64_t, int, int>>{{2, 2, 4}, {3, 2, 4}, {7, 1, 2}, {5, 2, 4}, {2, 3, 6}}) {
    auto K = gf_make(p, m), L = gf_make(p, M);
    GFEmbedding emb(K, L);
    for (std::uint64_t a = 0; a < K->order(); ++a)
      for (std::uint64_t b = 0; b < K->order(); ++b) {
        GFElement x = K->from_code(a), y = K->from_code(b);
        EXPECT_EQ(emb(x * y), emb(x) * emb(y));
        EXPECT_EQ(emb(x + y), emb(x) + emb(y));
      }
    EXPECT_TRUE(emb(K->one()).is_one());
  }
  EXPECT_THROW(GFEmbedding(gf_make(3, 2), gf_make(3, 3)), std::invalid_argument);
}
