#pragma once

// Small exact integer helpers shared by the number-field and finite-field code.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hmfd {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using i128 = __int128;

/// Raised when an exact computation needs more q-expansion terms than it was given.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computed object contradicts an identity that must hold.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the coefficient field F_{p^m} is too small; degree() is the degree that suffices.
class NeedsExtension : public std::runtime_error {
 public:
  NeedsExtension(const std::string& what, int degree) : std::runtime_error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(floor_mod(static_cast<i128>(a) * b, static_cast<i128>(m)));
}

inline std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  base = floor_mod(base, m);
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct ExtGcd {
  i128 g, s, t;  // g = s*a + t*b, g >= 0
};

inline ExtGcd ext_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  auto e = ext_gcd(floor_mod(a, m), m);
  if (e.g != 1) throw std::domain_error("inv_mod: not invertible");
  return static_cast<std::int64_t>(floor_mod(e.s, static_cast<i128>(m)));
}

inline std::int64_t narrow_to_i64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

inline std::int64_t narrow_to_i64(const Integer& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("value exceeds 64-bit range");
  return v.convert_to<std::int64_t>();
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(boost::multiprecision::sqrt(Integer(n)));
  return r;
}

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n, Integer* root = nullptr) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

/// Deterministic Miller-Rabin for the full signed 64-bit range.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = pow_mod(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Trial-division factorization; fine for the norms that occur at desk scale.
inline std::vector<std::pair<std::int64_t, int>> factor_integer(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factor_integer: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (auto [ell, e] : factor_integer(n))
    if (e > 1) return false;
  return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

/// Kronecker symbol (a/ell) for a prime ell.
inline int kronecker_prime(std::int64_t a, std::int64_t ell) {
  if (ell == 2) {
    if (a % 2 == 0) return 0;
    std::int64_t r = floor_mod(a, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  std::int64_t r = floor_mod(a, ell);
  if (r == 0) return 0;
  return pow_mod(r, static_cast<std::uint64_t>((ell - 1) / 2), ell) == 1 ? 1 : -1;
}

/// Tonelli-Shanks square root modulo an odd prime; nullopt for non-residues.
inline std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t ell) {
  a = floor_mod(a, ell);
  if (a == 0) return 0;
  if (ell == 2) return a;
  if (pow_mod(a, static_cast<std::uint64_t>((ell - 1) / 2), ell) != 1) return std::nullopt;
  std::int64_t q = ell - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::int64_t z = 2;
  while (pow_mod(z, static_cast<std::uint64_t>((ell - 1) / 2), ell) != ell - 1) ++z;
  std::int64_t m = s;
  std::int64_t c = pow_mod(z, static_cast<std::uint64_t>(q), ell);
  std::int64_t t = pow_mod(a, static_cast<std::uint64_t>(q), ell);
  std::int64_t r = pow_mod(a, static_cast<std::uint64_t>((q + 1) / 2), ell);
  while (t != 1) {
    std::int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, ell);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, ell);
    m = i;
    c = mul_mod(b, b, ell);
    t = mul_mod(t, c, ell);
    r = mul_mod(r, b, ell);
  }
  return r;
}

}  // namespace hmfd
