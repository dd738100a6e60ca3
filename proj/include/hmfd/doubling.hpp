#pragma once

// The span W of the forms V_P f (P squarefree, P | p) for a weight-1 eigenform f,
// the matrices of the T_q^{(p)} (q | p) on W computed from q-expansion data, and the
// subspaces W_q cut out by the other operators.

#include "hmfd/eigenforms.hpp"
#include "hmfd/linalg.hpp"

namespace hmfd {

/// Index set shared by several expansions: the h constant-term classes followed by
/// ideals in canonical order.
struct Coordinates {
  int classes = 0;
  std::vector<IdealHNF> ideals;
  std::size_t size() const { return static_cast<std::size_t>(classes) + ideals.size(); }
};

/// Constants plus every ideal of norm <= bound in the support of some form.
inline Coordinates shared_coordinates(const std::vector<const AdelicQExpansion*>& forms, std::int64_t bound) {
  Coordinates c;
  c.classes = forms.front()->group().order();
  std::map<IdealHNF, int> keys;
  for (const auto* f : forms) {
    if (f->precision() < bound) throw PrecisionError("shared_coordinates: bound exceeds a form's precision");
    for (const auto& [r, v] : f->coeffs()) {
      if (r.norm() > bound) break;  // the table is ordered by norm first
      keys.emplace(r, 0);
    }
  }
  for (const auto& [r, z] : keys) c.ideals.push_back(r);
  return c;
}

inline std::vector<GFElement> coordinate_vector(const AdelicQExpansion& f, const Coordinates& c) {
  std::vector<GFElement> v;
  v.reserve(c.size());
  for (int k = 0; k < c.classes; ++k) v.push_back(f.constant()[k]);
  for (const auto& r : c.ideals) v.push_back(f.coeff(r));
  return v;
}

inline GFMatrix coordinate_matrix(const std::vector<const AdelicQExpansion*>& forms, const Coordinates& c) {
  std::vector<std::vector<GFElement>> cols;
  for (const auto* f : forms) cols.push_back(coordinate_vector(*f, c));
  return GFMatrix::from_columns(&forms.front()->coefficient_field(), c.size(), cols);
}

/// Squarefree divisors of the product of the given primes, in canonical order.
inline std::vector<IdealHNF> squarefree_divisors(const QuadraticField& F, const std::vector<PrimeIdeal>& primes) {
  std::vector<IdealHNF> out{unit_ideal()};
  for (const auto& q : primes) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(ideal_mul(F, out[i], q.ideal));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct WBasis {
  std::vector<PrimeIdeal> primes;  // primes above p, canonical order
  std::vector<IdealHNF> labels;    // squarefree P | p, canonical order; labels[0] = (1)
  std::vector<AdelicQExpansion> forms;
  Coordinates coords;
  GFMatrix matrix;  // column j = coordinates of forms[j]
  std::size_t rank = 0;

  std::vector<const AdelicQExpansion*> form_ptrs() const {
    std::vector<const AdelicQExpansion*> out;
    for (const auto& f : forms) out.push_back(&f);
    return out;
  }
};

/// The 2^s forms V_P f and their coordinate matrix. Throws PrecisionError unless the
/// matrix has full rank 2^s.
inline WBasis build_W(const AdelicQExpansion& f) {
  if (f.weight() != 1) throw std::invalid_argument("build_W: f must have weight 1");
  if (f.is_constant())
    throw std::invalid_argument("build_W: f has no nonzero coefficient a(r); constant forms are not handled here");
  const QuadraticField& F = f.field();
  const std::int64_t p = f.coefficient_field().characteristic();
  WBasis W;
  W.primes = primes_above(F, p);
  W.labels = squarefree_divisors(F, W.primes);
  for (const auto& P : W.labels) W.forms.push_back(apply_VP_direct(f, P));
  W.coords = shared_coordinates(W.form_ptrs(), f.precision());
  W.matrix = coordinate_matrix(W.form_ptrs(), W.coords);
  W.rank = rank(W.matrix);
  if (W.rank != W.labels.size())
    throw PrecisionError("build_W: coefficient matrix has rank " + std::to_string(W.rank) + " < " +
                         std::to_string(W.labels.size()) + " at precision " + std::to_string(f.precision()));
  return W;
}

/// Matrix M of T_q^{(p)} on W in the basis forms, with column j holding the coordinates of
/// T_q(forms[j]). Every shared coordinate is checked, not only a solving block.
inline GFMatrix matrix_of_T(const WBasis& W, const PrimeIdeal& q) {
  const GFContext* K = W.matrix.context();
  const int p = static_cast<int>(K->characteristic());
  std::vector<AdelicQExpansion> images;
  for (const auto& g : W.forms) images.push_back(apply_T(g, q, p));
  std::int64_t bound = images.front().precision();
  for (const auto& g : images) bound = std::min(bound, g.precision());
  std::vector<const AdelicQExpansion*> all = W.form_ptrs();
  for (const auto& g : images) all.push_back(&g);
  Coordinates c = shared_coordinates(all, bound);
  GFMatrix A = coordinate_matrix(W.form_ptrs(), c);
  const std::size_t n = W.forms.size();
  GFMatrix M(K, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    SolveResult s = solve(A, coordinate_vector(images[j], c));
    if (s.status == SolveStatus::underdetermined)
      throw PrecisionError("matrix_of_T: basis is not independent on ideals of norm <= " + std::to_string(bound));
    if (s.status == SolveStatus::inconsistent) {
      std::ostringstream os;
      os << "T_q V_P f is not in W for q = " << q.ideal << ", P = " << W.labels[j];
      throw InvariantViolation(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) M(i, j) = s.x[i];
  }
  return M;
}

/// M^2 - lambda M + eps I = 0.
inline bool check_annihilator(const GFMatrix& M, const GFElement& lambda, const GFElement& eps) {
  const GFMatrix I = GFMatrix::identity(M.context(), M.rows());
  return (M * M - lambda * M + eps * I).is_zero();
}

/// Simultaneous kernel of (M_i - alpha_i I); with no conditions this is the whole space.
inline std::vector<std::vector<GFElement>> build_Wp(const std::vector<GFMatrix>& others,
                                                    const std::vector<GFElement>& alphas, std::size_t n,
                                                    const GFContext* K) {
  if (others.size() != alphas.size()) throw std::invalid_argument("build_Wp: one root per operator is required");
  GFMatrix stacked(K, n * others.size(), n);
  for (std::size_t k = 0; k < others.size(); ++k) {
    GFMatrix D = others[k] - alphas[k] * GFMatrix::identity(K, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(k * n + i, j) = D(i, j);
  }
  if (others.empty()) return kernel(GFMatrix(K, 1, n));
  return kernel(stacked);
}

/// Matrix of M on the subspace spanned by basis (which must be M-stable).
inline GFMatrix restricted_action(const GFMatrix& M, const std::vector<std::vector<GFElement>>& basis) {
  const GFContext* K = M.context();
  GFMatrix Bm = GFMatrix::from_columns(K, M.rows(), basis);
  GFMatrix R(K, basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    SolveResult s = solve(Bm, M * basis[j]);
    if (s.status != SolveStatus::unique) throw InvariantViolation("restricted_action: subspace is not stable");
    for (std::size_t i = 0; i < basis.size(); ++i) R(i, j) = s.x[i];
  }
  return R;
}

struct MinpolyVerdict {
  GFPoly minpoly;
  bool semisimple = false;
  bool matches_quadratic = false;  // minpoly == X^2 - lambda X + eps
};

inline MinpolyVerdict minpoly_and_semisimplicity(const GFMatrix& M, const GFElement& lambda, const GFElement& eps) {
  MinpolyVerdict v;
  v.minpoly = minimal_polynomial(M);
  v.semisimple = is_semisimple(v.minpoly);
  const GFContext* K = M.context();
  v.matches_quadratic = v.minpoly == GFPoly{eps, -lambda, K->one()};
  return v;
}

/// Row space of the columns of A contains that of B and has the same rank.
inline bool same_column_space(const GFMatrix& A, const GFMatrix& B) {
  if (A.rows() != B.rows()) throw std::invalid_argument("same_column_space: row count mismatch");
  GFMatrix AB(A.context(), A.rows(), A.cols() + B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) AB(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols(); ++j) AB(i, A.cols() + j) = B(i, j);
  }
  std::size_t r = rank(AB);
  return r == rank(A) && r == rank(B);
}

}  // namespace hmfd
