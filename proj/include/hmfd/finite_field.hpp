#pragma once

// Arithmetic in F_{p^m} = F_p[X]/(modulus), with the lexicographically smallest monic
// irreducible modulus of degree m.
//
// Elements are packed as sum c_i p^i (c_0 least significant). Fields with at most
// 2^20 elements use exp/log tables for multiplication.

#include "hmfd/arith.hpp"

#include <memory>
#include <span>
#include <string>

namespace hmfd {

class GFContext;

class GFElement {
 public:
  GFElement() = default;
  GFElement(const GFContext* ctx, std::uint64_t code) : ctx_(ctx), code_(code) {}

  const GFContext* context() const { return ctx_; }
  std::uint64_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  inline std::vector<std::int64_t> coeffs() const;
  inline GFElement inverse() const;
  inline GFElement pow(std::uint64_t e) const;

  inline friend GFElement operator+(const GFElement& a, const GFElement& b);
  inline friend GFElement operator-(const GFElement& a, const GFElement& b);
  inline friend GFElement operator-(const GFElement& a);
  inline friend GFElement operator*(const GFElement& a, const GFElement& b);
  inline friend GFElement operator/(const GFElement& a, const GFElement& b);
  GFElement& operator+=(const GFElement& b) { return *this = *this + b; }
  GFElement& operator-=(const GFElement& b) { return *this = *this - b; }
  GFElement& operator*=(const GFElement& b) { return *this = *this * b; }
  friend bool operator==(const GFElement& a, const GFElement& b) { return a.ctx_ == b.ctx_ && a.code_ == b.code_; }

  inline std::string str() const;

 private:
  const GFContext* ctx_ = nullptr;
  std::uint64_t code_ = 0;
};

namespace detail {

// Dense polynomials over F_p, low degree first, used to validate moduli.
using FpPoly = std::vector<std::int64_t>;

inline void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::int64_t p) {
  fp_trim(a);
  const std::size_t dm = m.size() - 1;
  const std::int64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::int64_t coef = mul_mod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = floor_mod(a[shift + i] - mul_mod(coef, m[i], p), p);
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = floor_mod(r[i + j] + mul_mod(a[i], b[j], p), p);
  return fp_mod(std::move(r), m, p);
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::int64_t p) {
  FpPoly r{1};
  base = fp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::int64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::int64_t inv = inv_mod(a.back(), p);
    for (auto& c : a) c = mul_mod(c, inv, p);
  }
  return a;
}

/// Ben-Or test: a monic f of degree m is irreducible iff gcd(X^{p^i} - X, f) = 1 for i <= m/2.
inline bool fp_is_irreducible(const FpPoly& f, std::int64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  if (f[0] == 0) return false;
  FpPoly h{0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    h = fp_powmod(h, static_cast<std::uint64_t>(p), f, p);
    FpPoly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = floor_mod(g[1] - 1, p);
    if (fp_gcd(g, f, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class GFContext {
 public:
  /// F_{p^m} with canonical modulus; for m = 1 the modulus is X.
  static std::shared_ptr<const GFContext> make(std::int64_t p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("gf_make: " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("gf_make: degree must be positive");
    std::shared_ptr<GFContext> ctx(new GFContext());
    ctx->p_ = p;
    ctx->m_ = m;
    Integer q = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(m));
    if (q >= (Integer(1) << 62)) throw std::invalid_argument("gf_make: field too large");
    ctx->q_ = q.convert_to<std::uint64_t>();
    ctx->find_modulus();
    ctx->setup_multiplication();
    return ctx;
  }

  std::int64_t characteristic() const { return p_; }
  int degree() const { return m_; }
  std::uint64_t order() const { return q_; }
  /// Monic modulus, low degree first (size m + 1).
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  GFElement zero() const { return {this, 0}; }
  GFElement one() const { return {this, 1}; }
  GFElement from_int(std::int64_t k) const { return {this, static_cast<std::uint64_t>(floor_mod(k, p_))}; }
  GFElement from_int(const Integer& k) const {
    Integer r = k % p_;
    if (r < 0) r += p_;
    return {this, r.convert_to<std::uint64_t>()};
  }
  GFElement from_code(std::uint64_t code) const {
    if (code >= q_) throw std::out_of_range("GF element code out of range");
    return {this, code};
  }
  GFElement from_coeffs(std::span<const std::int64_t> cs) const {
    if (cs.size() > static_cast<std::size_t>(m_)) throw std::invalid_argument("too many GF coefficients");
    std::uint64_t code = 0, w = 1;
    for (std::int64_t c : cs) {
      code += static_cast<std::uint64_t>(floor_mod(c, p_)) * w;
      w *= static_cast<std::uint64_t>(p_);
    }
    return {this, code};
  }
  /// Least primitive element in code order.
  GFElement generator() const { return {this, generator_}; }

  std::vector<std::int64_t> coeffs(std::uint64_t code) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      out[i] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(p_));
      code /= static_cast<std::uint64_t>(p_);
    }
    return out;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) {
      std::uint64_t s = a + b;
      return s >= static_cast<std::uint64_t>(p_) ? s - p_ : s;
    }
    return digitwise(a, b, +1);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return a >= b ? a - b : a + p_ - b;
    return digitwise(a, b, -1);
  }
  std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
      std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    if (m_ == 1) return static_cast<std::uint64_t>(mul_mod(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p_));
    return slow_mul(a, b);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("GF: inverse of zero");
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("GF: order of zero");
    std::uint64_t n = q_ - 1;
    for (auto [r, e] : factor_integer(static_cast<std::int64_t>(q_ - 1))) {
      for (int i = 0; i < e; ++i) {
        if (pow(a, n / static_cast<std::uint64_t>(r)) == 1)
          n /= static_cast<std::uint64_t>(r);
        else
          break;
      }
    }
    return n;
  }

 private:
  GFContext() = default;

  std::uint64_t digitwise(std::uint64_t a, std::uint64_t b, int sign) const {
    std::uint64_t out = 0, w = 1, P = static_cast<std::uint64_t>(p_);
    for (int i = 0; i < m_; ++i) {
      std::int64_t da = static_cast<std::int64_t>(a % P), db = static_cast<std::int64_t>(b % P);
      a /= P;
      b /= P;
      out += static_cast<std::uint64_t>(floor_mod(da + sign * db, p_)) * w;
      w *= P;
    }
    return out;
  }

  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    auto pa = coeffs(a), pb = coeffs(b);
    auto r = detail::fp_mulmod(pa, pb, modulus_, p_);
    return from_coeffs(r).code();
  }

  void find_modulus() {
    if (m_ == 1) {
      modulus_ = {0, 1};
      return;
    }
    const std::uint64_t count = q_;  // lower coefficients range over all codes
    for (std::uint64_t k = 0; k < count; ++k) {
      detail::FpPoly f = coeffs(k);
      f.push_back(1);
      if (detail::fp_is_irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw std::runtime_error("gf_make: no irreducible polynomial found");
  }

  void setup_multiplication() {
    for (std::uint64_t g = 1; g < q_; ++g) {
      if (q_ == 2 || element_order(g) == q_ - 1) {
        generator_ = g;
        break;
      }
    }
    if (q_ > (1u << 20)) return;
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x);
      log_[x] = static_cast<std::uint32_t>(i);
      x = m_ == 1 ? static_cast<std::uint64_t>(mul_mod(static_cast<std::int64_t>(x), static_cast<std::int64_t>(generator_), p_))
                  : slow_mul(x, generator_);
    }
  }

  std::int64_t p_ = 2;
  int m_ = 1;
  std::uint64_t q_ = 2;
  std::vector<std::int64_t> modulus_;
  std::uint64_t generator_ = 1;
  std::vector<std::uint32_t> exp_, log_;
};

inline std::shared_ptr<const GFContext> gf_make(std::int64_t p, int m) { return GFContext::make(p, m); }

namespace detail {
inline const GFContext* same_ctx(const GFElement& a, const GFElement& b) {
  if (a.context() != b.context() || a.context() == nullptr)
    throw std::logic_error("GF elements from different fields");
  return a.context();
}
}  // namespace detail

inline GFElement operator+(const GFElement& a, const GFElement& b) {
  auto* c = detail::same_ctx(a, b);
  return {c, c->add(a.code_, b.code_)};
}
inline GFElement operator-(const GFElement& a, const GFElement& b) {
  auto* c = detail::same_ctx(a, b);
  return {c, c->sub(a.code_, b.code_)};
}
inline GFElement operator-(const GFElement& a) { return {a.ctx_, a.ctx_->neg(a.code_)}; }
inline GFElement operator*(const GFElement& a, const GFElement& b) {
  auto* c = detail::same_ctx(a, b);
  return {c, c->mul(a.code_, b.code_)};
}
inline GFElement operator/(const GFElement& a, const GFElement& b) {
  auto* c = detail::same_ctx(a, b);
  return {c, c->mul(a.code_, c->inv(b.code_))};
}
inline GFElement GFElement::inverse() const { return {ctx_, ctx_->inv(code_)}; }
inline GFElement GFElement::pow(std::uint64_t e) const { return {ctx_, ctx_->pow(code_, e)}; }
inline std::vector<std::int64_t> GFElement::coeffs() const { return ctx_->coeffs(code_); }
inline std::string GFElement::str() const {
  if (ctx_->degree() == 1) return std::to_string(code_);
  std::string s = "[";
  auto cs = coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i]);
  return s + "]";
}

/// Roots of X^2 - lambda X + eps, or the degree needed to split it.
struct QuadraticRoots {
  bool split = false;
  bool double_root = false;
  std::vector<GFElement> roots;  // two entries sorted by code (equal for a double root)
  int needed_degree = 0;         // 2m when !split
};

inline std::optional<GFElement> gf_sqrt(const GFElement& d) {
  const GFContext& K = *d.context();
  const std::uint64_t q = K.order();
  if (d.is_zero()) return d;
  if (K.characteristic() != 2 && K.pow(d.code(), (q - 1) / 2) != 1) return std::nullopt;
  if (q <= 1000000) {
    for (std::uint64_t x = 0; x < q; ++x)
      if (K.mul(x, x) == d.code()) return K.from_code(x);
    return std::nullopt;
  }
  if (q % 4 == 3) {
    GFElement r = d.pow((q + 1) / 4);
    if (r * r == d) return r;
    return std::nullopt;
  }
  for (std::uint64_t x = 0; x < q; ++x)
    if (K.mul(x, x) == d.code()) return K.from_code(x);
  return std::nullopt;
}

inline QuadraticRoots quadratic_roots(const GFElement& lambda, const GFElement& eps) {
  if (eps.is_zero()) throw std::invalid_argument("quadratic_roots: constant term must be nonzero");
  const GFContext& K = *lambda.context();
  QuadraticRoots out;
  if (K.characteristic() == 2) {
    // no discriminant in characteristic 2: search directly
    for (std::uint64_t x = 0; x < K.order(); ++x) {
      GFElement r = K.from_code(x);
      if ((r * r - lambda * r + eps).is_zero()) out.roots.push_back(r);
    }
    if (out.roots.empty()) {
      out.needed_degree = 2 * K.degree();
      return out;
    }
    if (out.roots.size() == 1) out.roots.push_back(out.roots.front());
    out.split = true;
    out.double_root = lambda.is_zero();
    return out;
  }
  GFElement disc = lambda * lambda - K.from_int(4) * eps;
  auto s = gf_sqrt(disc);
  if (!s) {
    out.needed_degree = 2 * K.degree();
    return out;
  }
  GFElement half = K.from_int(2).inverse();
  GFElement r1 = (lambda + *s) * half, r2 = (lambda - *s) * half;
  if (r2.code() < r1.code()) std::swap(r1, r2);
  out.split = true;
  out.double_root = disc.is_zero();
  out.roots = {r1, r2};
  return out;
}

/// Embedding F_{p^m} -> F_{p^{m'}} (m | m') sending X to the least root of the small modulus.
class GFEmbedding {
 public:
  GFEmbedding(std::shared_ptr<const GFContext> from, std::shared_ptr<const GFContext> to)
      : from_(std::move(from)), to_(std::move(to)) {
    if (from_->characteristic() != to_->characteristic() || to_->degree() % from_->degree() != 0)
      throw std::invalid_argument("GFEmbedding: no embedding between these fields");
    if (from_->degree() == 1) return;
    if (to_->order() > 50000000) throw std::invalid_argument("GFEmbedding: target field too large to search");
    const auto& mod = from_->modulus();
    for (std::uint64_t x = 0; x < to_->order(); ++x) {
      GFElement r = to_->from_code(x), acc = to_->zero(), pw = to_->one();
      for (std::int64_t c : mod) {
        acc += to_->from_int(c) * pw;
        pw *= r;
      }
      if (acc.is_zero()) {
        image_of_x_ = r;
        return;
      }
    }
    throw InvariantViolation("GFEmbedding: modulus has no root in the target field");
  }

  const std::shared_ptr<const GFContext>& source() const { return from_; }
  const std::shared_ptr<const GFContext>& target() const { return to_; }

  GFElement operator()(const GFElement& a) const {
    if (a.context() != from_.get()) throw std::logic_error("GFEmbedding: element from a different field");
    if (from_->degree() == 1) return to_->from_int(static_cast<std::int64_t>(a.code()));
    GFElement acc = to_->zero(), pw = to_->one();
    for (std::int64_t c : a.coeffs()) {
      acc += to_->from_int(c) * pw;
      pw *= image_of_x_;
    }
    return acc;
  }

 private:
  std::shared_ptr<const GFContext> from_, to_;
  GFElement image_of_x_;
};

}  // namespace hmfd
