#pragma once

// Narrow principality and the narrow class group Cl_F^+ of a real quadratic field.

#include "hmfd/ideal.hpp"

#include <memory>
#include <cmath>
#include <mutex>
#include <numeric>

namespace hmfd {

/// Some generator of I if I is principal (any sign of norm), else nullopt.
///
/// Search box: let alpha generate I and n = N(I). Multiplying by a power of the
/// fundamental unit u > 1 moves the first embedding into [sqrt n, u*sqrt n), so the
/// second has absolute value n/|alpha_1| in (sqrt(n)/u, sqrt n]. Since
/// alpha_1 - alpha_2 = y*sqrt(disc), every principal I has a generator x + y*omega with
/// |y| < sqrt(n)*(u + 1)/sqrt(disc); for each such y the norm equation fixes x.
namespace detail {

inline bool is_square_u128(unsigned __int128 v, unsigned __int128* root) {
  auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  *root = r;
  return r * r == v;
}

/// The search of find_generator in 128-bit arithmetic; valid while every intermediate
/// value stays far below 2^126.
inline std::optional<FieldElement> find_generator_i128(const QuadraticField& F, const IdealHNF& I, i128 ymax) {
  const i128 n = I.norm(), t = F.trace_omega(), nw = F.omega_sq_const();
  for (i128 y = 0; y <= ymax; y += I.c) {
    for (int sign : {1, -1}) {
      i128 disc = t * t * y * y + 4 * (nw * y * y + sign * n);
      if (disc < 0) continue;
      unsigned __int128 root;
      if (!is_square_u128(static_cast<unsigned __int128>(disc), &root)) continue;
      const i128 r = static_cast<i128>(root);
      for (i128 num : {-t * y + r, -t * y - r}) {
        if (num % 2 != 0) continue;
        i128 x = num / 2;
        if ((x - (y / I.c) * I.b) % I.a != 0) continue;
        return FieldElement(Integer(narrow_to_i64(x)), Integer(narrow_to_i64(y)));
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<FieldElement> find_generator(const QuadraticField& F, const IdealHNF& I) {
  const Integer n = I.norm();
  const Integer t = F.trace_omega(), nw = F.omega_sq_const();
  Integer ymax = ((isqrt(n) + 1) * (F.unit_upper_bound() + 1)) / isqrt(Integer(F.disc())) + 1;
  // (4 nw + t^2) y^2 + 4 n stays below 2^100 here
  const Integer limit = Integer(1) << 100;
  if (ymax < (Integer(1) << 40) && (4 * nw + t * t + 1) * ymax * ymax + 4 * n < limit)
    return detail::find_generator_i128(F, I, static_cast<i128>(ymax.convert_to<std::int64_t>()));
  // multiples of c only: x + y*omega in I forces c | y
  for (Integer y = 0; y <= ymax; y += I.c) {
    for (int sign : {1, -1}) {
      Integer disc = t * t * y * y + 4 * (nw * y * y + sign * n);
      Integer root;
      if (!is_perfect_square(disc, &root)) continue;
      for (const Integer& num : {Integer(-t * y + root), Integer(-t * y - root)}) {
        if (boost::multiprecision::abs(num) % 2 != 0) continue;
        Integer x = num / 2;
        Integer r = (x - (y / I.c) * I.b) % I.a;
        if (r != 0) continue;
        return FieldElement(x, y);
      }
    }
  }
  return std::nullopt;
}

/// A totally positive generator of I, if I is narrowly principal.
inline std::optional<FieldElement> is_narrowly_principal(const QuadraticField& F, const IdealHNF& I) {
  if (I.is_unit()) return FieldElement(1, 0);
  auto g = find_generator(F, I);
  if (!g) return std::nullopt;
  FieldElement alpha = *g;
  if (F.norm_numerator(alpha) < 0) {
    // all generators share the norm sign unless a unit of norm -1 exists
    if (F.unit_norm() != -1) return std::nullopt;
    alpha = F.mul(alpha, F.fundamental_unit());
  }
  if (F.embedding_sign(alpha, 0) < 0) alpha = -alpha;
  return alpha;
}

/// I ~ J narrowly, tested as narrow principality of I * conj(J) (conj(J) = N(J) J^{-1}).
inline bool narrowly_equivalent(const QuadraticField& F, const IdealHNF& I, const IdealHNF& J) {
  return is_narrowly_principal(F, ideal_mul(F, I, ideal_conj(F, J))).has_value();
}

/// Ceiling of sqrt(disc)/2.
inline std::int64_t minkowski_bound(const QuadraticField& F) {
  std::int64_t r = static_cast<std::int64_t>(isqrt_u64(static_cast<std::uint64_t>(F.disc())));
  if (r * r < F.disc()) ++r;
  return (r + 1) / 2;
}

class NarrowClassGroup {
 public:
  const QuadraticField& field() const { return field_; }
  const std::vector<IdealHNF>& reps() const { return reps_; }
  int order() const { return static_cast<int>(reps_.size()); }
  int exponent() const { return exponent_; }
  int compose(int i, int j) const { return table_[i][j]; }
  int inverse(int i) const { return inverse_[i]; }
  int identity() const { return 0; }
  int power(int i, long long e) const {
    e %= elem_order_[i];
    if (e < 0) e += elem_order_[i];
    int r = 0;
    for (long long k = 0; k < e; ++k) r = table_[r][i];
    return r;
  }
  int element_order(int i) const { return elem_order_[i]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  /// Index of the rep narrowly equivalent to I, by direct equivalence tests.
  int class_of_direct(const IdealHNF& I) const {
    for (int i = 0; i < order(); ++i)
      if (narrowly_equivalent(field_, I, reps_[i])) return i;
    throw InvariantViolation("class_of: ideal is equivalent to no representative; prime bound too small?");
  }

  /// Index of the class of I, composed from memoized classes of its prime factors.
  int class_of(const IdealHNF& I) const {
    if (I.is_unit()) return 0;
    int cls = 0;
    for (const auto& [P, e] : factor_ideal(field_, I)) cls = table_[cls][power(prime_class(P.ideal), e)];
    return cls;
  }

  int prime_class(const IdealHNF& P) const {
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = prime_memo_.find(P);
      if (it != prime_memo_.end()) return it->second;
    }
    int cls = class_of_direct(P);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    prime_memo_.emplace(P, cls);
    return cls;
  }

  static std::shared_ptr<const NarrowClassGroup> build(const QuadraticField& F, std::int64_t prime_bound);

 private:
  explicit NarrowClassGroup(QuadraticField F) : field_(std::move(F)) {}

  QuadraticField field_;
  std::vector<IdealHNF> reps_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> elem_order_;
  int exponent_ = 1;
  mutable std::mutex memo_mutex_;
  mutable std::map<IdealHNF, int> prime_memo_;
};

inline std::shared_ptr<const NarrowClassGroup> NarrowClassGroup::build(const QuadraticField& F,
                                                                       std::int64_t prime_bound) {
  std::shared_ptr<NarrowClassGroup> G(new NarrowClassGroup(F));
  std::vector<IdealHNF> gens;
  for (const auto& P : prime_ideals_up_to(F, std::max<std::int64_t>(prime_bound, 1))) gens.push_back(P.ideal);
  // Cl^+ -> Cl has kernel generated by (sqrt D) when no unit of norm -1 exists; its
  // prime factors can lie above the Minkowski bound, so add it explicitly.
  gens.push_back(ideal_from_element(F, F.half_integral_basis() ? FieldElement(-1, 2) : FieldElement(0, 1)));

  auto find = [&](const IdealHNF& I) -> int {
    for (std::size_t i = 0; i < G->reps_.size(); ++i)
      if (narrowly_equivalent(F, I, G->reps_[i])) return static_cast<int>(i);
    return -1;
  };
  G->reps_.push_back(unit_ideal());
  for (std::size_t frontier = 0; frontier < G->reps_.size(); ++frontier) {
    for (const auto& g : gens) {
      IdealHNF prod = ideal_mul(F, G->reps_[frontier], g);
      if (find(prod) < 0) G->reps_.push_back(prod);
    }
  }
  const int h = static_cast<int>(G->reps_.size());
  G->table_.assign(h, std::vector<int>(h, -1));
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) {
      int k = find(ideal_mul(F, G->reps_[i], G->reps_[j]));
      if (k < 0) throw InvariantViolation("narrow_class_group: products do not close; prime bound too small");
      G->table_[i][j] = G->table_[j][i] = k;
    }
  G->inverse_.assign(h, -1);
  G->elem_order_.assign(h, 0);
  for (int i = 0; i < h; ++i) {
    if (G->table_[0][i] != i) throw InvariantViolation("narrow_class_group: identity is not at index 0");
    for (int j = 0; j < h; ++j)
      if (G->table_[i][j] == 0) G->inverse_[i] = j;
    if (G->inverse_[i] < 0) throw InvariantViolation("narrow_class_group: missing inverse");
    int x = i, k = 1;
    while (x != 0) {
      x = G->table_[x][i];
      ++k;
    }
    G->elem_order_[i] = k;
    G->exponent_ = std::lcm(G->exponent_, k);
  }
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      for (int k = 0; k < h; ++k)
        if (G->table_[G->table_[i][j]][k] != G->table_[i][G->table_[j][k]])
          throw InvariantViolation("narrow_class_group: composition is not associative");
  return G;
}

inline std::shared_ptr<const NarrowClassGroup> narrow_class_group(const QuadraticField& F, std::int64_t prime_bound) {
  return NarrowClassGroup::build(F, prime_bound);
}

inline std::shared_ptr<const NarrowClassGroup> narrow_class_group(const QuadraticField& F) {
  return NarrowClassGroup::build(F, minkowski_bound(F));
}

inline int class_of(const NarrowClassGroup& G, const IdealHNF& I) { return G.class_of(I); }

}  // namespace hmfd
