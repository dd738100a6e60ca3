#pragma once

// Random isotypic weight-1 expansions for property tests and the operator corpus.

#include "hmfd/qexp.hpp"

#include <random>

namespace hmfd {

inline GFElement random_element(const GFContext& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, K.order() - 1);
  return K.from_code(dist(rng));
}

inline GFElement random_nonzero(const GFContext& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1, K.order() - 1);
  return K.from_code(dist(rng));
}

/// Weight-1 form with nebentypus eps, random constant term, and a random coefficient at
/// each of the given ideals (which should be all ideals of norm <= B). Each coefficient is
/// nonzero with probability `density`.
inline AdelicQExpansion random_form(const Character& eps, const std::vector<IdealHNF>& ideals, std::int64_t B,
                                    std::mt19937_64& rng, double density = 1.0) {
  const GFContext& K = *eps.field();
  AdelicQExpansion f(1, eps, B);
  GroupRingVector c = GroupRingVector::zero(eps.group(), K);
  for (int k = 0; k < c.size(); ++k) c[k] = random_element(K, rng);
  f.set_constant(std::move(c));
  std::bernoulli_distribution keep(density);
  for (const auto& r : ideals) {
    if (r.norm() > B) break;
    if (keep(rng)) f.set_coeff(r, random_nonzero(K, rng));
  }
  return f;
}

/// A random form whose nebentypus is drawn uniformly from the given characters.
inline AdelicQExpansion random_isotypic_form(const std::vector<Character>& chars, const std::vector<IdealHNF>& ideals,
                                             std::int64_t B, std::mt19937_64& rng, double density = 1.0) {
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  return random_form(chars[pick(rng)], ideals, B, rng, density);
}

/// Seed from the HMFD_SEED environment variable, else the given default.
inline std::uint64_t seed_from_env(std::uint64_t fallback = 20240611) {
  if (const char* s = std::getenv("HMFD_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

}  // namespace hmfd
