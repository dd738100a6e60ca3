#pragma once

// Characters of the narrow class group with values in F_{p^m}.

#include "hmfd/class_group.hpp"
#include "hmfd/finite_field.hpp"

namespace hmfd {

class Character {
 public:
  Character() = default;
  Character(std::shared_ptr<const NarrowClassGroup> group, std::shared_ptr<const GFContext> field,
            std::vector<GFElement> values)
      : group_(std::move(group)), field_(std::move(field)), values_(std::move(values)) {
    if (!group_ || static_cast<int>(values_.size()) != group_->order())
      throw std::invalid_argument("Character: one value per class is required");
    for (const auto& v : values_)
      if (v.context() != field_.get()) throw std::invalid_argument("Character: value outside the coefficient field");
  }

  const std::shared_ptr<const NarrowClassGroup>& group() const { return group_; }
  const std::vector<GFElement>& values() const { return values_; }
  const std::shared_ptr<const GFContext>& field() const { return field_; }

  GFElement at_class(int cls) const { return values_.at(static_cast<std::size_t>(cls)); }
  GFElement operator()(const IdealHNF& I) const { return values_[group_->class_of(I)]; }

  bool is_trivial() const {
    for (const auto& v : values_)
      if (!v.is_one()) return false;
    return true;
  }

  friend Character operator*(const Character& a, const Character& b) {
    if (a.group_ != b.group_) throw std::invalid_argument("Character: different class groups");
    std::vector<GFElement> v;
    for (std::size_t i = 0; i < a.values_.size(); ++i) v.push_back(a.values_[i] * b.values_[i]);
    return {a.group_, a.field_, std::move(v)};
  }
  Character inverse() const {
    std::vector<GFElement> v;
    for (const auto& x : values_) v.push_back(x.inverse());
    return {group_, field_, std::move(v)};
  }
  friend bool operator==(const Character& a, const Character& b) {
    return a.group_ == b.group_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const NarrowClassGroup> group_;
  std::shared_ptr<const GFContext> field_;
  std::vector<GFElement> values_;
};

inline Character trivial_character(std::shared_ptr<const NarrowClassGroup> G, std::shared_ptr<const GFContext> K) {
  std::vector<GFElement> v(static_cast<std::size_t>(G->order()), K->one());
  return {std::move(G), std::move(K), std::move(v)};
}

/// Least m' >= 1 with e | p^{m'} - 1.
inline int minimal_degree_for_exponent(std::int64_t p, int e) {
  if (e % p == 0) throw std::invalid_argument("characters: exponent divisible by the characteristic");
  std::int64_t x = p % e;
  for (int m = 1; m <= e; ++m) {
    if (x == 1 % e) return m;
    x = (x * p) % e;
  }
  throw std::logic_error("minimal_degree_for_exponent: no degree found");
}

/// All |G| characters as exponent tables: value at class c is zeta^{j[c]} with zeta of order e.
inline std::vector<std::vector<int>> character_exponents(const NarrowClassGroup& G) {
  const int h = G.order(), e = G.exponent();
  // classes reached so far, with the exponent of each character on them
  std::vector<int> in_span(h, 0);
  std::vector<int> span{0};
  in_span[0] = 1;
  std::vector<std::vector<int>> chars{std::vector<int>(h, 0)};
  while (static_cast<int>(span.size()) < h) {
    int g = -1;
    for (int c = 0; c < h; ++c)
      if (!in_span[c] && (g < 0 || G.element_order(c) > G.element_order(g))) g = c;
    int n = 1, gn = g;
    while (!in_span[gn]) {
      gn = G.compose(gn, g);
      ++n;
    }
    std::vector<std::vector<int>> next;
    for (const auto& chi : chars) {
      // n*j = chi(g^n) mod e; n divides e, and chi(g^n) is a multiple of n
      int target = chi[gn];
      if (target % n != 0) throw InvariantViolation("characters: extension equation has no solution");
      for (int k = 0; k < n; ++k) {
        int j = (target / n + k * (e / n)) % e;
        std::vector<int> ext = chi;
        for (int base : span) {
          int x = base;
          for (int i = 1; i < n; ++i) {
            x = G.compose(x, g);
            ext[x] = (chi[base] + i * j) % e;
          }
        }
        next.push_back(std::move(ext));
      }
    }
    std::vector<int> grown = span;
    for (int base : span) {
      int x = base;
      for (int i = 1; i < n; ++i) {
        x = G.compose(x, g);
        grown.push_back(x);
        in_span[x] = 1;
      }
    }
    span = std::move(grown);
    chars = std::move(next);
  }
  return chars;
}

/// All characters Cl_F^+ -> F_{p^m}^x; the trivial character comes first.
inline std::vector<Character> characters_of(std::shared_ptr<const NarrowClassGroup> G,
                                            std::shared_ptr<const GFContext> Kp) {
  const GFContext& K = *Kp;
  const int e = G->exponent();
  if ((K.order() - 1) % static_cast<std::uint64_t>(e) != 0) {
    int need = minimal_degree_for_exponent(K.characteristic(), e);
    throw NeedsExtension("characters_of: F_" + std::to_string(K.order()) + " has no element of order " +
                             std::to_string(e) + "; need degree " + std::to_string(need),
                         need);
  }
  GFElement zeta = K.generator().pow((K.order() - 1) / static_cast<std::uint64_t>(e));
  std::vector<Character> out;
  for (const auto& exps : character_exponents(*G)) {
    std::vector<GFElement> v;
    for (int j : exps) v.push_back(zeta.pow(static_cast<std::uint64_t>(j)));
    out.emplace_back(G, Kp, std::move(v));
  }
  return out;
}

/// The character with values pushed through a field embedding.
inline Character embed_character(const Character& chi, const GFEmbedding& emb) {
  std::vector<GFElement> v;
  for (const auto& x : chi.values()) v.push_back(emb(x));
  return {chi.group(), emb.target(), std::move(v)};
}

}  // namespace hmfd
