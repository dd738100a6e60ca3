#pragma once

// Dense exact linear algebra over F_{p^m}: row reduction, kernels, solving, and
// minimal polynomials of small square matrices.

#include "hmfd/finite_field.hpp"

#include <ostream>

namespace hmfd {

class GFMatrix {
 public:
  GFMatrix() = default;
  GFMatrix(const GFContext* K, std::size_t rows, std::size_t cols)
      : ctx_(K), rows_(rows), cols_(cols), data_(rows * cols, K->zero()) {}

  static GFMatrix identity(const GFContext* K, std::size_t n) {
    GFMatrix I(K, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = K->one();
    return I;
  }

  /// Builds a matrix whose columns are the given vectors.
  static GFMatrix from_columns(const GFContext* K, std::size_t rows, const std::vector<std::vector<GFElement>>& cols) {
    GFMatrix M(K, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("GFMatrix: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
    }
    return M;
  }

  const GFContext* context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GFElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GFElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<GFElement> column(std::size_t j) const {
    std::vector<GFElement> v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend GFMatrix operator*(const GFMatrix& A, const GFMatrix& B) {
    if (A.cols_ != B.rows_) throw std::invalid_argument("GFMatrix: shape mismatch in product");
    GFMatrix C(A.ctx_, A.rows_, B.cols_);
    for (std::size_t i = 0; i < A.rows_; ++i)
      for (std::size_t k = 0; k < A.cols_; ++k) {
        if (A(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < B.cols_; ++j) C(i, j) += A(i, k) * B(k, j);
      }
    return C;
  }
  friend std::vector<GFElement> operator*(const GFMatrix& A, const std::vector<GFElement>& v) {
    if (A.cols_ != v.size()) throw std::invalid_argument("GFMatrix: shape mismatch in product");
    std::vector<GFElement> out(A.rows_, A.ctx_->zero());
    for (std::size_t i = 0; i < A.rows_; ++i)
      for (std::size_t k = 0; k < A.cols_; ++k) out[i] += A(i, k) * v[k];
    return out;
  }
  friend GFMatrix operator+(GFMatrix A, const GFMatrix& B) {
    A.check_same_shape(B);
    for (std::size_t i = 0; i < A.data_.size(); ++i) A.data_[i] += B.data_[i];
    return A;
  }
  friend GFMatrix operator-(GFMatrix A, const GFMatrix& B) {
    A.check_same_shape(B);
    for (std::size_t i = 0; i < A.data_.size(); ++i) A.data_[i] -= B.data_[i];
    return A;
  }
  friend GFMatrix operator*(const GFElement& c, GFMatrix A) {
    for (auto& x : A.data_) x = c * x;
    return A;
  }
  friend bool operator==(const GFMatrix& A, const GFMatrix& B) {
    return A.rows_ == B.rows_ && A.cols_ == B.cols_ && A.data_ == B.data_;
  }

  GFMatrix transpose() const {
    GFMatrix T(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
  }

  friend std::ostream& operator<<(std::ostream& os, const GFMatrix& M) {
    os << "[";
    for (std::size_t i = 0; i < M.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < M.cols_; ++j) os << (j ? "," : "") << M(i, j).str();
      os << "]";
    }
    return os << "]";
  }

 private:
  void check_same_shape(const GFMatrix& B) const {
    if (rows_ != B.rows_ || cols_ != B.cols_) throw std::invalid_argument("GFMatrix: shape mismatch");
  }

  const GFContext* ctx_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<GFElement> data_;
};

struct Rref {
  GFMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline Rref rref(GFMatrix M) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t piv = r;
    while (piv < M.rows() && M(piv, c).is_zero()) ++piv;
    if (piv == M.rows()) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(r, j), M(piv, j));
    GFElement inv = M(r, c).inverse();
    for (std::size_t j = c; j < M.cols(); ++j) M(r, j) = M(r, j) * inv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c).is_zero()) continue;
      GFElement f = M(i, c);
      for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(M), std::move(pivots)};
}

inline std::size_t rank(const GFMatrix& M) { return rref(M).pivots.size(); }

/// Basis of {x : M x = 0}, one vector per free column, read off the reduced form.
inline std::vector<std::vector<GFElement>> kernel(const GFMatrix& M) {
  const GFContext* K = M.context();
  Rref R = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto c : R.pivots) is_pivot[c] = true;
  std::vector<std::vector<GFElement>> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<GFElement> v(M.cols(), K->zero());
    v[f] = K->one();
    for (std::size_t i = 0; i < R.pivots.size(); ++i) v[R.pivots[i]] = -R.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolveStatus { unique, underdetermined, inconsistent };

struct SolveResult {
  SolveStatus status = SolveStatus::inconsistent;
  std::vector<GFElement> x;  // a solution when status != inconsistent
};

/// Solves A x = b exactly; every equation is checked, not only a square block.
inline SolveResult solve(const GFMatrix& A, const std::vector<GFElement>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  const GFContext* K = A.context();
  GFMatrix Aug(K, A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) Aug(i, j) = A(i, j);
    Aug(i, A.cols()) = b[i];
  }
  Rref R = rref(Aug);
  SolveResult out;
  if (!R.pivots.empty() && R.pivots.back() == A.cols()) return out;
  out.x.assign(A.cols(), K->zero());
  for (std::size_t i = 0; i < R.pivots.size(); ++i) out.x[R.pivots[i]] = R.reduced(i, A.cols());
  out.status = R.pivots.size() == A.cols() ? SolveStatus::unique : SolveStatus::underdetermined;
  return out;
}

/// Polynomials over F_{p^m}, low degree first, without trailing zeros.
using GFPoly = std::vector<GFElement>;

inline void poly_trim(GFPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline int poly_degree(const GFPoly& f) { return static_cast<int>(f.size()) - 1; }

inline GFPoly poly_derivative(const GFPoly& f) {
  GFPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i].context()->from_int(static_cast<std::int64_t>(i)) * f[i]);
  poly_trim(d);
  return d;
}

inline GFPoly poly_mod(GFPoly a, const GFPoly& m) {
  poly_trim(a);
  if (m.empty()) throw std::domain_error("poly_mod: zero modulus");
  GFElement lead_inv = m.back().inverse();
  while (a.size() >= m.size()) {
    GFElement coef = a.back() * lead_inv;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= coef * m[i];
    poly_trim(a);
  }
  return a;
}

/// Monic gcd; gcd(0, 0) is the zero polynomial.
inline GFPoly poly_gcd(GFPoly a, GFPoly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    GFPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GFElement inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

inline std::string poly_str(const GFPoly& f) {
  std::string s;
  for (int i = poly_degree(f); i >= 0; --i) {
    if (f[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    bool unit = f[i].is_one() && i > 0;
    if (!unit) s += f[i].str();
    if (i > 0) s += (unit ? "" : "*") + std::string("X") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

/// Minimal polynomial of a square matrix: the first power M^d that is a linear
/// combination of I, M, ..., M^{d-1}.
inline GFPoly minimal_polynomial(const GFMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("minimal_polynomial: matrix is not square");
  const GFContext* K = M.context();
  const std::size_t n = M.rows();
  std::vector<std::vector<GFElement>> powers;
  GFMatrix P = GFMatrix::identity(K, n);
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<GFElement> flat;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.push_back(P(i, j));
    if (d > 0) {
      GFMatrix A = GFMatrix::from_columns(K, n * n, powers);
      SolveResult s = solve(A, flat);
      if (s.status == SolveStatus::unique) {
        GFPoly mp;
        for (const auto& c : s.x) mp.push_back(-c);
        mp.push_back(K->one());
        return mp;
      }
      if (s.status == SolveStatus::underdetermined)
        throw InvariantViolation("minimal_polynomial: lower powers unexpectedly dependent");
    }
    powers.push_back(std::move(flat));
    P = P * M;
  }
  throw InvariantViolation("minimal_polynomial: degree exceeds matrix size");
}

/// Semisimple (diagonalizable over the algebraic closure) iff the minimal polynomial is squarefree.
inline bool is_semisimple(const GFPoly& minpoly) { return poly_degree(poly_gcd(minpoly, poly_derivative(minpoly))) == 0; }

}  // namespace hmfd
