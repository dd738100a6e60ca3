#pragma once

// Eisenstein series attached to pairs of narrow class characters, constant forms, and
// an eigenvalue checker.

#include "hmfd/operators.hpp"

namespace hmfd {

enum class ConstantMode { zero, v_phi1, v_phi2 };

inline std::string to_string(ConstantMode m) {
  switch (m) {
    case ConstantMode::zero:
      return "zero";
    case ConstantMode::v_phi1:
      return "v_phi1";
    case ConstantMode::v_phi2:
      return "v_phi2";
  }
  return "zero";
}

inline ConstantMode constant_mode_from_string(const std::string& s) {
  if (s == "zero") return ConstantMode::zero;
  if (s == "v_phi1") return ConstantMode::v_phi1;
  if (s == "v_phi2") return ConstantMode::v_phi2;
  throw std::invalid_argument("unknown constant mode '" + s + "' (expected zero, v_phi1 or v_phi2)");
}

/// Weight-1 series with a(r) = sum_{d | r} phi1(d) phi2(r/d) for N(r) <= B and
/// nebentypus phi1*phi2. The coefficients are computed multiplicatively: on a prime
/// power P^e the sum is sum_i phi1(P)^i phi2(P)^{e-i}.
inline AdelicQExpansion eisenstein(const Character& phi1, const Character& phi2, std::int64_t B,
                                   ConstantMode mode = ConstantMode::zero) {
  if (phi1.group() != phi2.group() || phi1.field() != phi2.field())
    throw std::invalid_argument("eisenstein: characters on different groups or fields");
  const NarrowClassGroup& G = *phi1.group();
  const GFContext& K = *phi1.field();
  AdelicQExpansion f(1, phi1 * phi2, B);
  for_each_ideal(G.field(), B, [&](const IdealHNF& r, const Factorization& fac) {
    GFElement a = K.one();
    for (const auto& [P, e] : fac) {
      const int c = G.prime_class(P.ideal);
      const GFElement x = phi1.at_class(c), y = phi2.at_class(c);
      GFElement sum = K.zero(), xi = K.one();
      for (int i = 0; i <= e; ++i) {
        sum += xi * y.pow(static_cast<std::uint64_t>(e - i));
        xi *= x;
      }
      a *= sum;
    }
    f.set_coeff(r, a);
  });
  if (mode == ConstantMode::v_phi1) f.set_constant(phi_vector(phi1));
  if (mode == ConstantMode::v_phi2) f.set_constant(phi_vector(phi2));
  return f;
}

/// The weight-1 form with all a(r) = 0 and constant term v_phi.
inline AdelicQExpansion constant_form(const Character& phi, const Character& eps, std::int64_t B) {
  if (phi.group() != eps.group()) throw std::invalid_argument("constant_form: characters on different groups");
  AdelicQExpansion f(1, eps, B);
  f.set_constant(phi_vector(phi));
  return f;
}

struct EigenCheck {
  PrimeIdeal q;
  bool is_eigen = false;
  std::optional<GFElement> lambda;  // set when is_eigen
  std::string witness;              // where proportionality fails, when !is_eigen
};

/// For each q, either the scalar lambda with T_q f = lambda f up to the precision of T_q f,
/// or a coordinate witnessing that no such scalar exists.
inline std::vector<EigenCheck> verify_eigenform(const AdelicQExpansion& f, const std::vector<PrimeIdeal>& primes) {
  std::vector<EigenCheck> out;
  for (const auto& q : primes) {
    AdelicQExpansion Tf = apply_T(f, q);
    const std::int64_t bound = Tf.precision();
    EigenCheck chk{q, false, std::nullopt, {}};
    // the scalar is fixed by the first coordinate where f is nonzero
    std::optional<GFElement> lambda;
    for (int c = 0; c < f.constant().size() && !lambda; ++c)
      if (!f.constant()[c].is_zero()) lambda = Tf.constant()[c] / f.constant()[c];
    if (!lambda) {
      for (const auto& [r, v] : f.coeffs()) {
        if (r.norm() > bound) break;
        lambda = Tf.coeff(r) / v;
        break;
      }
    }
    if (!lambda) {
      if (!Tf.is_zero()) {
        chk.witness = "f vanishes up to norm " + std::to_string(bound) + " but T_q f does not";
        out.push_back(chk);
        continue;
      }
      throw PrecisionError("verify_eigenform: f vanishes on every coordinate up to norm " + std::to_string(bound));
    }
    AdelicQExpansion scaled = qexp_truncate(qexp_scale(*lambda, f), bound);
    if (auto diff = qexp_first_difference(Tf, scaled, bound)) {
      chk.witness = "T_q f differs from " + lambda->str() + " * f at " + *diff;
    } else {
      chk.is_eigen = true;
      chk.lambda = lambda;
    }
    out.push_back(chk);
  }
  return out;
}

}  // namespace hmfd
