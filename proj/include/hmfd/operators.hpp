#pragma once

// Hecke, diamond, Hasse and Frobenius operators on isotypic q-expansions.

#include "hmfd/qexp.hpp"

namespace hmfd {

/// <q> f = eps(q) f for the nebentypus eps of f.
inline AdelicQExpansion apply_diamond(const AdelicQExpansion& f, const IdealHNF& q) {
  return qexp_scale(f.nebentypus()(q), f);
}

/// T_q^{(k)} with k = weight(f) unless overridden:
///   a(r, T f) = a(qr, f) + eps(q) N(q)^{k-1} a(r/q, f)
/// with the matching group-ring formula for the constant term. Over F_{p^m} the factor
/// N(q)^{k-1} vanishes for q above p and k > 1, leaving the U_p-type shift.
inline AdelicQExpansion apply_T(const AdelicQExpansion& f, const PrimeIdeal& q, std::optional<int> k_override = {}) {
  const int k = k_override.value_or(f.weight());
  if (k < 1) throw std::invalid_argument("apply_T: weight must be positive");
  const QuadraticField& F = f.field();
  const GFContext& K = f.coefficient_field();
  const std::int64_t nq = q.norm();
  const std::int64_t B = f.precision() / nq;
  if (B < 1)
    throw PrecisionError("apply_T: precision " + std::to_string(f.precision()) + " is below N(q) = " +
                         std::to_string(nq));
  const GFElement nu = K.from_int(nq).pow(static_cast<std::uint64_t>(k - 1));
  const int cq = f.group().class_of(q.ideal);
  const GFElement e = f.nebentypus().at_class(cq) * nu;

  AdelicQExpansion out = f.zero_like(B);
  out.set_constant(translate_by_class(f.constant(), cq) +
                   e * translate_by_class(f.constant(), f.group().inverse(cq)));
  for (const auto& [s, v] : f.coeffs()) {
    // s = q r contributes a(qr, f) to index r
    if (s.norm() <= B * nq && s.norm() % nq == 0)
      if (auto r = ideal_quotient(F, s, q.ideal)) out.add_to_coeff(*r, v);
    // s = r / q contributes eps(q) nu a(s, f) to index r = s q
    if (!e.is_zero() && s.norm() <= B / nq) out.add_to_coeff(ideal_mul(F, s, q.ideal), e * v);
  }
  return out;
}

/// Multiplication by the Hasse invariant: same expansion, weight raised by p - 1.
inline AdelicQExpansion hasse_lift(const AdelicQExpansion& f) {
  AdelicQExpansion out = f;
  out.set_weight(f.weight() + static_cast<int>(f.coefficient_field().characteristic()) - 1);
  return out;
}

/// Prime factors of a squarefree P whose primes all lie above the characteristic, in
/// canonical order. Throws for other P.
inline std::vector<PrimeIdeal> frobenius_support(const QuadraticField& F, const IdealHNF& P, std::int64_t p) {
  std::vector<PrimeIdeal> primes;
  for (const auto& [Q, e] : factor_ideal(F, P)) {
    if (e > 1) throw std::invalid_argument("V_P: P must be squarefree");
    if (Q.rational_prime != p) throw std::invalid_argument("V_P: every prime factor of P must divide p");
    primes.push_back(Q);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

/// V_P f by the closed form a(r, V_P f) = a(r/P, f), constant term [P^{-1}] a((0), f).
inline AdelicQExpansion apply_VP_direct(const AdelicQExpansion& f, const IdealHNF& P) {
  if (f.weight() != 1) throw std::invalid_argument("V_P: input must have weight 1");
  const std::int64_t p = f.coefficient_field().characteristic();
  frobenius_support(f.field(), P, p);
  AdelicQExpansion out = hasse_lift(iota_shift(f, P));
  out.set_constant(translate_by_class(f.constant(), f.group().inverse(f.group().class_of(P))));
  return out;
}

/// V_P f by the recursion V_{Qq} = eps(q)^{-1} (V_Q T_q^{(1)} - T_q^{(p)} V_Q), peeling
/// the primes of P in the given order (last one first), starting from V_(1) = h.
inline AdelicQExpansion apply_VP_recursive(const AdelicQExpansion& f, const std::vector<PrimeIdeal>& order) {
  if (f.weight() != 1) throw std::invalid_argument("V_P: input must have weight 1");
  if (order.empty()) return hasse_lift(f);
  const int p = static_cast<int>(f.coefficient_field().characteristic());
  const PrimeIdeal& q = order.back();
  std::vector<PrimeIdeal> rest(order.begin(), order.end() - 1);
  AdelicQExpansion left = apply_VP_recursive(apply_T(f, q, 1), rest);
  AdelicQExpansion right = apply_T(apply_VP_recursive(f, rest), q, p);
  return qexp_scale(f.nebentypus()(q.ideal).inverse(), qexp_sub(left, right));
}

/// V_P f by the recursion with primes peeled in canonical order.
inline AdelicQExpansion apply_VP_recursive(const AdelicQExpansion& f, const IdealHNF& P) {
  return apply_VP_recursive(f, frobenius_support(f.field(), P, f.coefficient_field().characteristic()));
}

/// Checks T_q^{(p)} V_P f = V_{P/q} f when q | P, and
/// T_q^{(p)} V_P f = V_P T_q^{(1)} f - eps(q) V_{Pq} f otherwise, on every coordinate
/// both sides share. Throws PrecisionError when fewer than 2^s + h coordinates are shared.
inline bool check_UV_lemma(const AdelicQExpansion& f, const PrimeIdeal& q, const IdealHNF& P,
                           std::string* witness = nullptr) {
  const QuadraticField& F = f.field();
  const int p = static_cast<int>(f.coefficient_field().characteristic());
  if (q.rational_prime != p) throw std::invalid_argument("check_UV_lemma: q must lie above p");
  AdelicQExpansion lhs = apply_T(apply_VP_direct(f, P), q, p);
  std::optional<AdelicQExpansion> rhs;
  if (auto Pq = ideal_quotient(F, P, q.ideal)) {
    rhs = apply_VP_direct(f, *Pq);
  } else {
    AdelicQExpansion a = apply_VP_direct(apply_T(f, q, 1), P);
    AdelicQExpansion b = apply_VP_direct(f, ideal_mul(F, P, q.ideal));
    rhs = qexp_sub(a, qexp_scale(f.nebentypus()(q.ideal), b));
  }
  const std::int64_t bound = std::min(lhs.precision(), rhs->precision());
  const std::size_t s = primes_above(F, p).size();
  const std::size_t needed = (std::size_t{1} << s) + static_cast<std::size_t>(f.group().order());
  auto count_up_to = [&](std::int64_t b) {
    std::size_t n = static_cast<std::size_t>(f.group().order());
    for_each_ideal(F, b, [&](const IdealHNF&, const Factorization&) { ++n; });
    return n;
  };
  // a short prefix of the index set usually suffices to meet the requirement
  std::size_t shared = count_up_to(std::min<std::int64_t>(bound, 64 * static_cast<std::int64_t>(needed)));
  if (shared < needed && bound > 64 * static_cast<std::int64_t>(needed)) shared = count_up_to(bound);
  if (shared < needed)
    throw PrecisionError("check_UV_lemma: only " + std::to_string(shared) + " shared coordinates, need " +
                         std::to_string(needed));
  auto diff = qexp_first_difference(lhs, *rhs, bound);
  if (diff && witness) *witness = *diff;
  return !diff;
}

}  // namespace hmfd
