#pragma once

// Truncated adelic q-expansions: a coefficient a(r) for each nonzero integral ideal r of
// norm at most the precision B, plus a constant term in the group ring F[Cl_F^+].
//
// Coefficients are stored sparsely (absent keys are zero), but reading an index beyond
// the precision is an error rather than a silent zero.

#include "hmfd/character.hpp"

#include <map>

namespace hmfd {

/// An element sum_c v[c] [c] of the group ring, indexed by class representative.
class GroupRingVector {
 public:
  GroupRingVector() = default;
  GroupRingVector(std::shared_ptr<const NarrowClassGroup> group, std::vector<GFElement> coeffs)
      : group_(std::move(group)), coeffs_(std::move(coeffs)) {
    if (!group_ || static_cast<int>(coeffs_.size()) != group_->order())
      throw std::invalid_argument("GroupRingVector: one coefficient per class is required");
  }
  static GroupRingVector zero(std::shared_ptr<const NarrowClassGroup> group, const GFContext& K) {
    std::vector<GFElement> v(static_cast<std::size_t>(group->order()), K.zero());
    return {std::move(group), std::move(v)};
  }

  const std::shared_ptr<const NarrowClassGroup>& group() const { return group_; }
  const std::vector<GFElement>& coeffs() const { return coeffs_; }
  const GFElement& operator[](int cls) const { return coeffs_.at(static_cast<std::size_t>(cls)); }
  GFElement& operator[](int cls) { return coeffs_.at(static_cast<std::size_t>(cls)); }
  int size() const { return static_cast<int>(coeffs_.size()); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend GroupRingVector operator+(GroupRingVector a, const GroupRingVector& b) {
    a.check_group(b);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend GroupRingVector operator-(GroupRingVector a, const GroupRingVector& b) {
    a.check_group(b);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
  }
  friend GroupRingVector operator*(const GFElement& s, GroupRingVector a) {
    for (auto& c : a.coeffs_) c = s * c;
    return a;
  }
  friend bool operator==(const GroupRingVector& a, const GroupRingVector& b) {
    return a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_group(const GroupRingVector& b) const {
    if (group_ != b.group_) throw std::invalid_argument("GroupRingVector: different class groups");
  }

  std::shared_ptr<const NarrowClassGroup> group_;
  std::vector<GFElement> coeffs_;
};

/// [g] * v for a class index g: the output at g*c is the input at c.
inline GroupRingVector translate_by_class(const GroupRingVector& v, int g) {
  const NarrowClassGroup& G = *v.group();
  GroupRingVector out = v;
  for (int c = 0; c < G.order(); ++c) out[G.compose(g, c)] = v[c];
  return out;
}

/// [I] * v, the translation by the class of I.
inline GroupRingVector constant_translate(const GroupRingVector& v, const IdealHNF& I) {
  return translate_by_class(v, v.group()->class_of(I));
}

/// v_phi = sum_c phi(c) [c^{-1}], which satisfies [q] * v_phi = phi(q) v_phi.
inline GroupRingVector phi_vector(const Character& phi) {
  const NarrowClassGroup& G = *phi.group();
  GroupRingVector v = GroupRingVector::zero(phi.group(), *phi.field());
  for (int c = 0; c < G.order(); ++c) v[G.inverse(c)] = phi.at_class(c);
  return v;
}

class AdelicQExpansion {
 public:
  using Table = std::map<IdealHNF, GFElement>;

  AdelicQExpansion(int weight, Character nebentypus, std::int64_t precision)
      : weight_(weight),
        nebentypus_(std::move(nebentypus)),
        precision_(precision),
        constant_(GroupRingVector::zero(nebentypus_.group(), *nebentypus_.field())) {
    if (weight_ < 1) throw std::invalid_argument("AdelicQExpansion: weight must be positive");
    if (precision_ < 1) throw PrecisionError("AdelicQExpansion: precision must be at least 1");
  }

  int weight() const { return weight_; }
  const Character& nebentypus() const { return nebentypus_; }
  std::int64_t precision() const { return precision_; }
  const GroupRingVector& constant() const { return constant_; }
  const Table& coeffs() const { return coeffs_; }

  const NarrowClassGroup& group() const { return *nebentypus_.group(); }
  const QuadraticField& field() const { return group().field(); }
  const GFContext& coefficient_field() const { return *nebentypus_.field(); }

  /// a(r, f); throws PrecisionError when norm(r) exceeds the precision.
  GFElement coeff(const IdealHNF& r) const {
    if (r.norm() > precision_)
      throw PrecisionError("coefficient at ideal of norm " + std::to_string(r.norm()) +
                           " requested from an expansion of precision " + std::to_string(precision_));
    auto it = coeffs_.find(r);
    return it == coeffs_.end() ? coefficient_field().zero() : it->second;
  }

  void set_coeff(const IdealHNF& r, const GFElement& v) {
    if (r.norm() > precision_) throw PrecisionError("set_coeff: ideal beyond precision");
    if (v.context() != &coefficient_field()) throw std::invalid_argument("set_coeff: value in a different field");
    if (v.is_zero())
      coeffs_.erase(r);
    else
      coeffs_[r] = v;
  }

  void add_to_coeff(const IdealHNF& r, const GFElement& v) {
    if (v.is_zero()) return;
    auto it = coeffs_.find(r);
    set_coeff(r, it == coeffs_.end() ? v : it->second + v);
  }

  void set_constant(GroupRingVector v) {
    if (v.group() != nebentypus_.group()) throw std::invalid_argument("set_constant: different class group");
    constant_ = std::move(v);
  }
  void set_weight(int k) {
    if (k < 1) throw std::invalid_argument("weight must be positive");
    weight_ = k;
  }

  bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }
  bool is_constant() const { return coeffs_.empty(); }

  /// Same weight, nebentypus, and precision, with all coefficients zero.
  AdelicQExpansion zero_like(std::int64_t precision) const {
    return AdelicQExpansion(weight_, nebentypus_, precision);
  }

 private:
  int weight_;
  Character nebentypus_;
  std::int64_t precision_;
  GroupRingVector constant_;
  Table coeffs_;
};

namespace detail {
inline void check_compatible(const AdelicQExpansion& f, const AdelicQExpansion& g) {
  if (f.weight() != g.weight())
    throw std::invalid_argument("q-expansions of different weights (" + std::to_string(f.weight()) + " and " +
                                std::to_string(g.weight()) + ")");
  if (!(f.nebentypus() == g.nebentypus())) throw std::invalid_argument("q-expansions with different nebentypus");
}

inline AdelicQExpansion combine(const AdelicQExpansion& f, const AdelicQExpansion& g, const GFElement& sg) {
  check_compatible(f, g);
  const std::int64_t B = std::min(f.precision(), g.precision());
  AdelicQExpansion out = f.zero_like(B);
  out.set_constant(f.constant() + sg * g.constant());
  for (const auto& [r, v] : f.coeffs())
    if (r.norm() <= B) out.add_to_coeff(r, v);
  for (const auto& [r, v] : g.coeffs())
    if (r.norm() <= B) out.add_to_coeff(r, sg * v);
  return out;
}
}  // namespace detail

/// f + g over the common precision min(B_f, B_g).
inline AdelicQExpansion qexp_add(const AdelicQExpansion& f, const AdelicQExpansion& g) {
  return detail::combine(f, g, f.coefficient_field().one());
}

inline AdelicQExpansion qexp_sub(const AdelicQExpansion& f, const AdelicQExpansion& g) {
  return detail::combine(f, g, -f.coefficient_field().one());
}

inline AdelicQExpansion qexp_scale(const GFElement& c, const AdelicQExpansion& f) {
  AdelicQExpansion out = f.zero_like(f.precision());
  out.set_constant(c * f.constant());
  for (const auto& [r, v] : f.coeffs()) out.set_coeff(r, c * v);
  return out;
}

/// f truncated to a smaller precision.
inline AdelicQExpansion qexp_truncate(const AdelicQExpansion& f, std::int64_t B) {
  if (B > f.precision()) throw PrecisionError("qexp_truncate: cannot raise precision");
  AdelicQExpansion out = f.zero_like(B);
  out.set_constant(f.constant());
  for (const auto& [r, v] : f.coeffs())
    if (r.norm() <= B) out.set_coeff(r, v);
  return out;
}

/// iota_q: a(r, iota_q f) = a(r/q, f), zero when q does not divide r; precision B*N(q).
inline AdelicQExpansion iota_shift(const AdelicQExpansion& f, const IdealHNF& q) {
  AdelicQExpansion out = f.zero_like(f.precision() * q.norm());
  out.set_constant(f.constant());
  for (const auto& [s, v] : f.coeffs()) out.set_coeff(ideal_mul(f.field(), s, q), v);
  return out;
}

/// t_q: a(r, t_q f) = a(rq, f); precision floor(B / N(q)).
inline AdelicQExpansion t_shift(const AdelicQExpansion& f, const IdealHNF& q) {
  AdelicQExpansion out = f.zero_like(f.precision() / q.norm());
  out.set_constant(f.constant());
  for (const auto& [s, v] : f.coeffs()) {
    if (s.norm() > out.precision() * q.norm()) continue;
    if (auto r = ideal_quotient(f.field(), s, q)) out.set_coeff(*r, v);
  }
  return out;
}

/// Equal constants and equal coefficients at every ideal of norm <= up_to.
inline bool qexp_equal(const AdelicQExpansion& f, const AdelicQExpansion& g, std::int64_t up_to) {
  if (up_to > f.precision() || up_to > g.precision())
    throw PrecisionError("qexp_equal: comparison bound " + std::to_string(up_to) + " exceeds precision");
  if (!(f.constant() == g.constant())) return false;
  for (const auto& [r, v] : f.coeffs())
    if (r.norm() <= up_to && !(g.coeff(r) == v)) return false;
  for (const auto& [r, v] : g.coeffs())
    if (r.norm() <= up_to && !(f.coeff(r) == v)) return false;
  return true;
}

/// First index (constant class, or ideal) where f and g differ up to the bound, as text.
inline std::optional<std::string> qexp_first_difference(const AdelicQExpansion& f, const AdelicQExpansion& g,
                                                        std::int64_t up_to) {
  for (int c = 0; c < f.constant().size(); ++c)
    if (!(f.constant()[c] == g.constant()[c]))
      return "constant term at class " + std::to_string(c) + ": " + f.constant()[c].str() + " vs " +
             g.constant()[c].str();
  std::map<IdealHNF, int> keys;
  for (const auto& [r, v] : f.coeffs())
    if (r.norm() <= up_to) keys[r] = 1;
  for (const auto& [r, v] : g.coeffs())
    if (r.norm() <= up_to) keys[r] = 1;
  for (const auto& [r, one] : keys) {
    GFElement a = f.coeff(r), b = g.coeff(r);
    if (!(a == b)) {
      std::ostringstream os;
      os << "coefficient at " << r << ": " << a.str() << " vs " << b.str();
      return os.str();
    }
  }
  return std::nullopt;
}

}  // namespace hmfd
