#pragma once

// Integral ideals of a real quadratic field in Hermite normal form.
//
// IdealHNF{a, b, c} is the Z-module aZ + (b + c*omega)Z with c | a, c | b and
// 0 <= b < a. Its norm is a*c. Canonical order everywhere is (norm, a, b, c).

#include "hmfd/number_field.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <tuple>

namespace hmfd {

struct IdealHNF {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  std::int64_t norm() const { return a * c; }
  bool is_unit() const { return a == 1 && c == 1; }

  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
  friend std::strong_ordering operator<=>(const IdealHNF& x, const IdealHNF& y) {
    return std::make_tuple(x.norm(), x.a, x.b, x.c) <=> std::make_tuple(y.norm(), y.a, y.b, y.c);
  }
  friend std::ostream& operator<<(std::ostream& os, const IdealHNF& I) {
    return os << "[" << I.a << "," << I.b << "," << I.c << "]";
  }
};

inline IdealHNF unit_ideal() { return {1, 0, 1}; }

struct PrimeIdeal {
  IdealHNF ideal;
  std::int64_t rational_prime = 0;
  int residue_degree = 1;
  bool ramified = false;

  std::int64_t norm() const { return ideal.norm(); }
  friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) { return x.ideal == y.ideal; }
  friend auto operator<=>(const PrimeIdeal& x, const PrimeIdeal& y) { return x.ideal <=> y.ideal; }
};

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

namespace detail {

// Incremental Hermite normal form of a full-rank lattice in Z^2 spanned by
// vectors (x, y) <-> x + y*omega. Basis rows are (a, 0) and (b, c).
class Hnf2 {
 public:
  void add(i128 x, i128 y) {
    if (y == 0) {
      a_ = gcd128(a_, x);
      reduce();
      return;
    }
    if (c_ == 0) {
      if (y < 0) {
        x = -x;
        y = -y;
      }
      b_ = x;
      c_ = y;
      reduce();
      return;
    }
    ExtGcd e = ext_gcd(c_, y);
    i128 nb = e.s * b_ + e.t * x;
    i128 rest = (y / e.g) * b_ - (c_ / e.g) * x;
    b_ = nb;
    c_ = e.g;
    a_ = gcd128(a_, rest);
    reduce();
  }

  IdealHNF finish() const {
    if (a_ == 0 || c_ == 0) throw std::invalid_argument("lattice is not of full rank");
    return {narrow_to_i64(a_), narrow_to_i64(floor_mod(b_, a_)), narrow_to_i64(c_)};
  }

 private:
  void reduce() {
    if (a_ != 0) b_ = floor_mod(b_, a_);
  }
  i128 a_ = 0, b_ = 0, c_ = 0;
};

}  // namespace detail

/// True when (a, b, c) is a canonical HNF closed under multiplication by omega.
inline bool is_valid_ideal(const QuadraticField& F, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a <= 0 || c <= 0 || b < 0 || b >= a) return false;
  if (a % c != 0 || b % c != 0) return false;
  // primitive part (a', b' + omega) needs a' | N(b' + omega) = b'^2 + t b' - n
  i128 ap = a / c, bp = b / c;
  i128 nb = bp * bp + static_cast<i128>(F.trace_omega()) * bp - F.omega_sq_const();
  return floor_mod(nb, ap) == 0;
}

inline IdealHNF make_ideal(const QuadraticField& F, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (!is_valid_ideal(F, a, b, c))
    throw std::invalid_argument("not a canonical ideal HNF: [" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + "]");
  return {a, b, c};
}

/// Ideal generated (as an O-module) by the integral elements x_i + y_i*omega.
inline IdealHNF ideal_from_generators(const QuadraticField& F, const std::vector<std::pair<i128, i128>>& gens) {
  detail::Hnf2 h;
  const i128 t = F.trace_omega(), n = F.omega_sq_const();
  for (auto [x, y] : gens) {
    h.add(x, y);
    h.add(n * y, x + t * y);  // omega * (x + y omega)
  }
  return h.finish();
}

inline IdealHNF ideal_from_element(const QuadraticField& F, const FieldElement& alpha) {
  if (!alpha.is_integral() || alpha.is_zero()) throw std::invalid_argument("ideal_from_element: need nonzero integral");
  return ideal_from_generators(F, {{narrow_to_i64(alpha.x()), narrow_to_i64(alpha.y())}});
}

inline bool ideal_contains(const IdealHNF& I, i128 x, i128 y) {
  if (y % I.c != 0) return false;
  return floor_mod(x - (y / I.c) * I.b, static_cast<i128>(I.a)) == 0;
}

inline IdealHNF ideal_mul(const QuadraticField& F, const IdealHNF& I, const IdealHNF& J) {
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  const i128 t = F.trace_omega(), n = F.omega_sq_const();
  const i128 a1 = I.a, b1 = I.b, c1 = I.c, a2 = J.a, b2 = J.b, c2 = J.c;
  detail::Hnf2 h;
  h.add(a1 * a2, 0);
  h.add(a1 * b2, a1 * c2);
  h.add(a2 * b1, a2 * c1);
  h.add(b1 * b2 + c1 * c2 * n, b1 * c2 + b2 * c1 + c1 * c2 * t);
  return h.finish();
}

inline IdealHNF ideal_pow(const QuadraticField& F, const IdealHNF& I, int e) {
  IdealHNF r = unit_ideal();
  for (int i = 0; i < e; ++i) r = ideal_mul(F, r, I);
  return r;
}

inline IdealHNF ideal_conj(const QuadraticField& F, const IdealHNF& I) {
  detail::Hnf2 h;
  h.add(I.a, 0);
  h.add(static_cast<i128>(I.b) + static_cast<i128>(I.c) * F.trace_omega(), -static_cast<i128>(I.c));
  return h.finish();
}

/// K with J*K = I, or nullopt when J does not divide I.
inline std::optional<IdealHNF> ideal_quotient(const QuadraticField& F, const IdealHNF& I, const IdealHNF& J) {
  if (J.is_unit()) return I;
  const std::int64_t nj = J.norm();
  if (I.norm() % nj != 0) return std::nullopt;
  // J | I  <=>  I * conj(J) is contained in J * conj(J) = (N(J))
  IdealHNF P = ideal_mul(F, I, ideal_conj(F, J));
  if (P.a % nj != 0 || P.b % nj != 0 || P.c % nj != 0) return std::nullopt;
  return IdealHNF{P.a / nj, P.b / nj, P.c / nj};
}

inline bool ideal_divides(const QuadraticField& F, const IdealHNF& J, const IdealHNF& I) {
  return ideal_quotient(F, I, J).has_value();
}

/// Prime ideals above the rational prime ell, in canonical order.
inline std::vector<PrimeIdeal> primes_above(const QuadraticField& F, std::int64_t ell) {
  if (!is_prime(ell)) throw std::invalid_argument("primes_above: " + std::to_string(ell) + " is not prime");
  const std::int64_t t = F.trace_omega(), n = F.omega_sq_const();
  const int k = kronecker_prime(F.disc(), ell);
  // roots of the minimal polynomial X^2 - tX - n of omega modulo ell
  std::vector<std::int64_t> roots;
  if (ell == 2) {
    for (std::int64_t r = 0; r < 2; ++r)
      if (floor_mod(r * r - t * r - n, 2) == 0) roots.push_back(r);
  } else if (k == 0) {
    roots.push_back(mul_mod(t, inv_mod(2, ell), ell));
  } else if (k == 1) {
    std::int64_t s = *sqrt_mod_prime(F.disc(), ell);
    std::int64_t inv2 = inv_mod(2, ell);
    roots.push_back(mul_mod(floor_mod(t + s, ell), inv2, ell));
    roots.push_back(mul_mod(floor_mod(t - s, ell), inv2, ell));
  }
  std::vector<PrimeIdeal> out;
  if (k == -1) {
    if (!roots.empty()) throw InvariantViolation("primes_above: splitting data inconsistent");
    out.push_back({{ell, 0, ell}, ell, 2, false});
    return out;
  }
  if (k == 0) {
    out.push_back({{ell, floor_mod(-roots.front(), ell), 1}, ell, 1, true});
    return out;
  }
  if (roots.size() != 2) throw InvariantViolation("primes_above: splitting data inconsistent");
  for (std::int64_t r : roots) out.push_back({{ell, floor_mod(-r, ell), 1}, ell, 1, false});
  std::sort(out.begin(), out.end());
  return out;
}

/// Prime ideal record for an ideal known to be prime; throws otherwise.
inline PrimeIdeal as_prime(const QuadraticField& F, const IdealHNF& P) {
  auto fac = factor_integer(P.norm());
  if (fac.size() == 1) {
    for (const auto& q : primes_above(F, fac.front().first))
      if (q.ideal == P) return q;
  }
  throw std::invalid_argument("ideal is not prime");
}

inline Factorization factor_ideal(const QuadraticField& F, IdealHNF I) {
  Factorization out;
  for (auto [ell, e] : factor_integer(I.norm())) {
    for (const auto& P : primes_above(F, ell)) {
      int mult = 0;
      while (auto K = ideal_quotient(F, I, P.ideal)) {
        I = *K;
        ++mult;
      }
      if (mult) out.emplace_back(P, mult);
    }
  }
  if (!I.is_unit()) throw InvariantViolation("factor_ideal: cofactor did not reduce to (1)");
  return out;
}

inline bool is_squarefree_ideal(const QuadraticField& F, const IdealHNF& I) {
  for (const auto& [P, e] : factor_ideal(F, I))
    if (e > 1) return false;
  return true;
}

inline std::vector<IdealHNF> divisors_of(const QuadraticField& F, const IdealHNF& I) {
  std::vector<IdealHNF> out{unit_ideal()};
  for (const auto& [P, e] : factor_ideal(F, I)) {
    std::vector<IdealHNF> next;
    for (const auto& d : out) {
      IdealHNF cur = d;
      next.push_back(cur);
      for (int i = 1; i <= e; ++i) {
        cur = ideal_mul(F, cur, P.ideal);
        next.push_back(cur);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All prime ideals of norm <= B, in canonical order.
inline std::vector<PrimeIdeal> prime_ideals_up_to(const QuadraticField& F, std::int64_t B) {
  std::vector<PrimeIdeal> out;
  for (std::int64_t ell : primes_up_to(B))
    for (const auto& P : primes_above(F, ell))
      if (P.norm() <= B) out.push_back(P);
  std::sort(out.begin(), out.end());
  return out;
}

/// Visits every nonzero integral ideal of norm <= B exactly once (unordered), together
/// with its factorization, by building products of prime powers.
inline void for_each_ideal(const QuadraticField& F, std::int64_t B,
                           const std::function<void(const IdealHNF&, const Factorization&)>& visit) {
  if (B < 1) return;
  const auto primes = prime_ideals_up_to(F, B);
  Factorization fac;
  std::function<void(std::size_t, const IdealHNF&, std::int64_t)> rec = [&](std::size_t start, const IdealHNF& cur,
                                                                            std::int64_t nrm) {
    visit(cur, fac);
    for (std::size_t i = start; i < primes.size(); ++i) {
      const std::int64_t np = primes[i].norm();
      if (nrm > B / np) break;
      IdealHNF pw = cur;
      std::int64_t n2 = nrm;
      for (int e = 1; n2 <= B / np; ++e) {
        pw = ideal_mul(F, pw, primes[i].ideal);
        n2 *= np;
        fac.emplace_back(primes[i], e);
        rec(i + 1, pw, n2);
        fac.pop_back();
      }
    }
  };
  rec(0, unit_ideal(), 1);
}

/// All nonzero integral ideals of norm <= B, sorted canonically.
inline std::vector<IdealHNF> enumerate_ideals(const QuadraticField& F, std::int64_t B) {
  std::vector<IdealHNF> out;
  for_each_ideal(F, B, [&](const IdealHNF& I, const Factorization&) { out.push_back(I); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hmfd
