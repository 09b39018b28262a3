#pragma once

#include <initializer_list>
#include <vector>

#include "bjclass/scalar.hpp"

namespace bjclass {

/// Dense row-major matrix over one coefficient field R, C or H.
///
/// Vectors are n-by-1 matrices. Quaternion columns form a right module:
/// scalar coefficients multiply on the right, so a linear combination of
/// columns is sum_j col_j * c_j.
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(ScalarKind kind, int rows, int cols)
      : kind_(kind), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows * cols), Scalar::zero(kind)) {
    if (rows < 0 || cols < 0) throw Error("KMatrix: negative shape");
  }

  [[nodiscard]] static KMatrix zero(ScalarKind kind, int rows, int cols) {
    return KMatrix(kind, rows, cols);
  }
  [[nodiscard]] static KMatrix identity(ScalarKind kind, int n) {
    KMatrix m(kind, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(kind);
    return m;
  }
  [[nodiscard]] static KMatrix column(ScalarKind kind,
                                      std::initializer_list<Scalar> entries) {
    KMatrix m(kind, static_cast<int>(entries.size()), 1);
    int i = 0;
    for (const Scalar& s : entries) m.at(i++, 0) = promote(s, kind);
    return m;
  }

  [[nodiscard]] ScalarKind kind() const noexcept { return kind_; }
  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  [[nodiscard]] Scalar& at(int r, int c) {
    return a_[static_cast<std::size_t>(r * cols_ + c)];
  }
  [[nodiscard]] const Scalar& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r * cols_ + c)];
  }

  [[nodiscard]] KMatrix col(int j) const {
    KMatrix v(kind_, rows_, 1);
    for (int i = 0; i < rows_; ++i) v.at(i, 0) = at(i, j);
    return v;
  }
  void set_col(int j, const KMatrix& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v.at(i, 0);
  }

  [[nodiscard]] KMatrix adjoint() const {
    KMatrix m(kind_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
  }

  [[nodiscard]] double frobenius2() const noexcept {
    double s = 0.0;
    for (const Scalar& v : a_) s += v.modulus2();
    return s;
  }
  [[nodiscard]] double frobenius() const noexcept {
    return std::sqrt(frobenius2());
  }

  [[nodiscard]] bool is_zero(double tol = 0.0) const noexcept {
    return frobenius() <= tol;
  }

  KMatrix& operator+=(const KMatrix& o) {
    check_same_shape(o, "operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = a_[i] + o.a_[i];
    return *this;
  }
  KMatrix& operator-=(const KMatrix& o) {
    check_same_shape(o, "operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = a_[i] - o.a_[i];
    return *this;
  }
  KMatrix& operator*=(double s) {
    for (Scalar& v : a_) v = v * s;
    return *this;
  }

  /// Entrywise multiplication by a scalar on the left (s * A).
  [[nodiscard]] KMatrix scale_left(const Scalar& s) const {
    KMatrix m = *this;
    for (Scalar& v : m.a_) v = promote(s, kind_) * v;
    return m;
  }
  /// Entrywise multiplication by a scalar on the right (A * s).
  [[nodiscard]] KMatrix scale_right(const Scalar& s) const {
    KMatrix m = *this;
    for (Scalar& v : m.a_) v = v * promote(s, kind_);
    return m;
  }

 private:
  void check_same_shape(const KMatrix& o, const char* op) const {
    if (kind_ != o.kind_ || rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(std::string("KMatrix shape/kind mismatch in ") + op);
  }

  ScalarKind kind_ = ScalarKind::Real;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

[[nodiscard]] inline KMatrix operator+(KMatrix a, const KMatrix& b) {
  a += b;
  return a;
}
[[nodiscard]] inline KMatrix operator-(KMatrix a, const KMatrix& b) {
  a -= b;
  return a;
}
[[nodiscard]] inline KMatrix operator*(KMatrix a, double s) {
  a *= s;
  return a;
}
[[nodiscard]] inline KMatrix operator*(double s, KMatrix a) {
  a *= s;
  return a;
}

[[nodiscard]] inline KMatrix operator*(const KMatrix& a, const KMatrix& b) {
  if (a.kind() != b.kind() || a.cols() != b.rows())
    throw Error("KMatrix product shape/kind mismatch");
  KMatrix m(a.kind(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        m.at(i, j) = m.at(i, j) + aik * b.at(k, j);
    }
  return m;
}

/// K-valued inner product y^* x of two column vectors.
[[nodiscard]] inline Scalar inner(const KMatrix& x, const KMatrix& y) {
  if (x.kind() != y.kind() || x.cols() != 1 || y.cols() != 1 ||
      x.rows() != y.rows())
    throw Error("inner: shape mismatch");
  Scalar s = Scalar::zero(x.kind());
  for (int i = 0; i < x.rows(); ++i)
    s = s + y.at(i, 0).conj() * x.at(i, 0);
  return s;
}

/// Real part of the Frobenius pairing Re tr(Y^* X).
[[nodiscard]] inline double frobenius_re(const KMatrix& x, const KMatrix& y) {
  if (x.kind() != y.kind() || x.rows() != y.rows() || x.cols() != y.cols())
    throw Error("frobenius_re: shape mismatch");
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      const Scalar& a = x.at(i, j);
      const Scalar& b = y.at(i, j);
      s += a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    }
  return s;
}

/// Rank-one matrix u v^*.
[[nodiscard]] inline KMatrix rank_one(const KMatrix& u, const KMatrix& v) {
  if (u.kind() != v.kind() || u.cols() != 1 || v.cols() != 1)
    throw Error("rank_one: expects column vectors of one kind");
  KMatrix m(u.kind(), u.rows(), v.rows());
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < v.rows(); ++j)
      m.at(i, j) = u.at(i, 0) * v.at(j, 0).conj();
  return m;
}

/// Right-module Gram-Schmidt. Orthonormalizes the given vectors, dropping
/// directions whose residual norm falls below `tol` times the input norm.
[[nodiscard]] inline std::vector<KMatrix> gram_schmidt(
    const std::vector<KMatrix>& vs, double tol = 1e-8) {
  std::vector<KMatrix> basis;
  for (const KMatrix& v0 : vs) {
    KMatrix v = v0;
    const double scale = std::max(v.frobenius(), 1e-300);
    for (int pass = 0; pass < 2; ++pass)
      for (const KMatrix& u : basis) v -= u.scale_right(inner(v, u));
    const double n = v.frobenius();
    if (n > tol * scale && n > 1e-14) basis.push_back(v * (1.0 / n));
  }
  return basis;
}

/// Extends `basis` to an orthonormal basis of the full column space K^n.
[[nodiscard]] inline std::vector<KMatrix> complete_basis(
    std::vector<KMatrix> basis, ScalarKind kind, int n) {
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
    KMatrix e(kind, n, 1);
    e.at(i, 0) = Scalar::one(kind);
    KMatrix v = e;
    for (int pass = 0; pass < 2; ++pass)
      for (const KMatrix& u : basis) v -= u.scale_right(inner(v, u));
    const double nrm = v.frobenius();
    if (nrm > 1e-7) basis.push_back(v * (1.0 / nrm));
  }
  if (static_cast<int>(basis.size()) != n)
    throw Error("complete_basis: failed to complete orthonormal basis");
  return basis;
}

}  // namespace bjclass
