#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt D).
//
// Elements are stored as (x + y*omega) / den over the integral basis {1, omega},
// where omega = (1 + sqrt D)/2 when D = 1 mod 4 and omega = sqrt D otherwise.
// The "first" real embedding sends sqrt D to the positive square root.

#include "hmfd/arith.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace hmfd {

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Integer x, Integer y, Integer den = 1) : x_(std::move(x)), y_(std::move(y)), den_(std::move(den)) {
    normalize();
  }
  static FieldElement rational(Integer n, Integer d = 1) { return FieldElement(std::move(n), 0, std::move(d)); }

  const Integer& x() const { return x_; }
  const Integer& y() const { return y_; }
  const Integer& den() const { return den_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_integral() const { return den_ == 1; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return FieldElement(a.x_ * b.den_ + b.x_ * a.den_, a.y_ * b.den_ + b.y_ * a.den_, a.den_ * b.den_);
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return FieldElement(a.x_ * b.den_ - b.x_ * a.den_, a.y_ * b.den_ - b.y_ * a.den_, a.den_ * b.den_);
  }
  friend FieldElement operator-(const FieldElement& a) { return FieldElement(-a.x_, -a.y_, a.den_); }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.den_ == b.den_;
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
    if (a.den_ != 1) os << "(";
    os << a.x_ << (a.y_ < 0 ? " - " : " + ") << boost::multiprecision::abs(a.y_) << "w";
    if (a.den_ != 1) os << ")/" << a.den_;
    return os;
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("FieldElement: zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      x_ = -x_;
      y_ = -y_;
    }
    Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(boost::multiprecision::abs(x_), boost::multiprecision::abs(y_)), den_);
    if (g > 1) {
      x_ /= g;
      y_ /= g;
      den_ /= g;
    }
  }

  Integer x_ = 0;
  Integer y_ = 0;
  Integer den_ = 1;
};

class QuadraticField {
 public:
  /// Builds Q(sqrt D) for squarefree D > 1 and computes its fundamental unit.
  static QuadraticField make(std::int64_t D) {
    if (D <= 1) throw std::invalid_argument("make_field: D must exceed 1");
    if (!is_squarefree(D)) throw std::invalid_argument("make_field: D must be squarefree");
    QuadraticField F;
    F.D_ = D;
    F.half_ = (D % 4 == 1);
    F.t_ = F.half_ ? 1 : 0;
    F.n_ = F.half_ ? (D - 1) / 4 : D;
    F.disc_ = F.half_ ? D : 4 * D;
    F.find_fundamental_unit();
    return F;
  }

  std::int64_t D() const { return D_; }
  std::int64_t disc() const { return disc_; }
  /// True when omega = (1 + sqrt D)/2.
  bool half_integral_basis() const { return half_; }
  /// omega^2 = trace_omega * omega + omega_sq_const
  std::int64_t trace_omega() const { return t_; }
  std::int64_t omega_sq_const() const { return n_; }
  const FieldElement& fundamental_unit() const { return unit_; }
  int unit_norm() const { return unit_norm_; }

  FieldElement omega() const { return FieldElement(0, 1); }
  FieldElement sqrt_D() const { return half_ ? FieldElement(-1, 2) : FieldElement(0, 1); }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    return FieldElement(a.x() * b.x() + n_ * a.y() * b.y(), a.x() * b.y() + a.y() * b.x() + t_ * a.y() * b.y(),
                        a.den() * b.den());
  }

  FieldElement pow(FieldElement a, unsigned k) const {
    FieldElement r(1, 0);
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  FieldElement conj(const FieldElement& a) const { return FieldElement(a.x() + t_ * a.y(), -a.y(), a.den()); }

  /// Numerator of the norm before division by den^2.
  Integer norm_numerator(const FieldElement& a) const {
    return a.x() * a.x() + t_ * a.x() * a.y() - n_ * a.y() * a.y();
  }
  Rational norm(const FieldElement& a) const { return Rational(norm_numerator(a), a.den() * a.den()); }
  Rational trace(const FieldElement& a) const { return Rational(2 * a.x() + t_ * a.y(), a.den()); }

  FieldElement inverse(const FieldElement& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    Integer nn = norm_numerator(a);
    FieldElement c = conj(a);
    // a^{-1} = conj(a) * den^2 / (den * nn) with a = num/den
    return FieldElement(c.x() * a.den(), c.y() * a.den(), nn);
  }

  /// Exact sign of a under the embedding sqrt D -> +sqrt D (which = 0) or -sqrt D (which = 1).
  int embedding_sign(const FieldElement& a, int which) const {
    // 2*(x + y*omega) = X + Y*sqrt D
    Integer X = half_ ? 2 * a.x() + a.y() : 2 * a.x();
    Integer Y = half_ ? a.y() : 2 * a.y();
    if (which == 1) Y = -Y;
    return sign_of_surd(X, Y);
  }

  bool is_totally_positive(const FieldElement& a) const {
    if (a.is_zero()) throw std::invalid_argument("is_totally_positive: zero element");
    return embedding_sign(a, 0) > 0 && embedding_sign(a, 1) > 0;
  }

  /// Integer U with U >= the larger real embedding of the fundamental unit.
  Integer unit_upper_bound() const {
    Integer w = Integer(isqrt_u64(static_cast<std::uint64_t>(D_))) + 1;  // omega_1 < w in both bases
    return unit_.x() + unit_.y() * w;
  }

  friend bool operator==(const QuadraticField& a, const QuadraticField& b) { return a.D_ == b.D_; }

 private:
  QuadraticField() = default;

  int sign_of_surd(const Integer& X, const Integer& Y) const {
    // sign of X + Y*sqrt(D)
    if (X >= 0 && Y >= 0) return (X == 0 && Y == 0) ? 0 : 1;
    if (X <= 0 && Y <= 0) return -1;
    Integer lhs = X * X, rhs = Y * Y * D_;
    if (X > 0) return lhs > rhs ? 1 : -1;  // Y < 0
    return rhs > lhs ? 1 : -1;             // X < 0 < Y
  }

  // Smallest unit x + y*omega > 1 with the given y > 0, if any.
  std::optional<FieldElement> unit_with_y(const Integer& y) const {
    std::optional<FieldElement> best;
    for (int s : {1, -1}) {
      Integer disc = t_ * t_ * y * y + 4 * (n_ * y * y + s);
      Integer root;
      if (!is_perfect_square(disc, &root)) continue;
      Integer num = -t_ * y + root;
      if (boost::multiprecision::abs(num) % 2 != 0) continue;
      FieldElement u(num / 2, y);
      if (embedding_sign(u - FieldElement(1, 0), 0) <= 0) continue;
      if (!best || embedding_sign(*best - u, 0) > 0) best = u;
    }
    return best;
  }

  void set_unit(const FieldElement& u) {
    unit_ = u;
    unit_norm_ = norm_numerator(u) > 0 ? 1 : -1;
  }

  // A unit u > 1 has y > 0, and y is non-decreasing along the powers of the
  // fundamental unit (strictly unless D = 5), so the least unit > 1 with the least
  // positive y is fundamental. Small y are scanned
  // directly; beyond that the unit appears among the continued-fraction convergents
  // p/q of omega_1 (Legendre's criterion holds once disc >= 8).
  void find_fundamental_unit() {
    for (int y = 1; y <= 1000; ++y) {
      if (auto u = unit_with_y(y)) {
        set_unit(*u);
        return;
      }
    }
    Integer s = isqrt(Integer(D_));
    Integer P = half_ ? 1 : 0, Q = half_ ? 2 : 1;
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    auto floor_div = [](const Integer& a, const Integer& b) {
      Integer q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
      return q;
    };
    for (int iter = 0; iter < 1000000; ++iter) {
      Integer a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
      Integer h = a * h1 + h2, k = a * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      Integer nrm = h * h - t_ * h * k - n_ * k * k;  // N(h - k*omega)
      if (nrm == 1 || nrm == -1) {
        FieldElement v(h - k * t_, k);
        if (embedding_sign(v, 0) < 0) v = -v;
        set_unit(v);
        return;
      }
      Integer P2 = a * Q - P;
      Integer Q2 = (Integer(D_) - P2 * P2) / Q;
      P = P2;
      Q = Q2;
    }
    throw std::runtime_error("fundamental unit search did not terminate");
  }

  std::int64_t D_ = 0;
  std::int64_t disc_ = 0;
  bool half_ = false;
  std::int64_t t_ = 0;
  std::int64_t n_ = 0;
  FieldElement unit_;
  int unit_norm_ = 1;
};

inline QuadraticField make_field(std::int64_t D) { return QuadraticField::make(D); }

inline Rational elem_norm(const QuadraticField& F, const FieldElement& a) { return F.norm(a); }

inline bool is_totally_positive(const QuadraticField& F, const FieldElement& a) { return F.is_totally_positive(a); }

}  // namespace hmfd
