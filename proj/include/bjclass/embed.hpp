#pragma once

#include <Eigen/Dense>

#include "bjclass/algebra.hpp"

namespace bjclass {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Real form of one scalar: 1x1 for R, the 2x2 rotation-scaling form
/// [[a,-b],[b,a]] for a+bi, and the 4x4 left-multiplication form for
/// quaternions. All three are *-homomorphisms (conjugation becomes
/// transposition) and isometries for the operator norm.
[[nodiscard]] inline MatrixXd real_form(const Scalar& s) {
  switch (s.kind) {
    case ScalarKind::Real: {
      MatrixXd m(1, 1);
      m(0, 0) = s.w;
      return m;
    }
    case ScalarKind::Complex: {
      MatrixXd m(2, 2);
      m << s.w, -s.x, s.x, s.w;
      return m;
    }
    default: {
      MatrixXd m(4, 4);
      m << s.w, -s.x, -s.y, -s.z,  //
          s.x, s.w, -s.z, s.y,     //
          s.y, s.z, s.w, -s.x,     //
          s.z, -s.y, s.x, s.w;
      return m;
    }
  }
}

/// Standard real embedding of a block matrix into M_{d n}(R).
[[nodiscard]] inline MatrixXd embed_real(const KMatrix& a) {
  const int d = real_dim(a.kind());
  MatrixXd m = MatrixXd::Zero(d * a.rows(), d * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m.block(d * i, d * j, d, d) = real_form(a.at(i, j));
  return m;
}

/// Complex adjoint form of a quaternion matrix A = A1 + A2 j:
/// [[A1, A2], [-conj(A2), conj(A1)]] in M_{2n}(C). A *-homomorphism whose
/// singular values are those of A, each doubled.
[[nodiscard]] inline MatrixXcd complex_adjoint_form(const KMatrix& a) {
  if (a.kind() != ScalarKind::Quaternion)
    throw Error("complex_adjoint_form: quaternion matrix expected");
  const int r = a.rows(), c = a.cols();
  MatrixXcd m(2 * r, 2 * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      const std::complex<double> a1 = a.at(i, j).complex_part_a();
      const std::complex<double> a2 = a.at(i, j).complex_part_b();
      m(i, j) = a1;
      m(i, j + c) = a2;
      m(i + r, j) = -std::conj(a2);
      m(i + r, j + c) = std::conj(a1);
    }
  return m;
}

/// Complex embedding: complex blocks map to themselves, real blocks are cast,
/// quaternionic blocks use the complex adjoint form.
[[nodiscard]] inline MatrixXcd embed_complex(const KMatrix& a) {
  if (a.kind() == ScalarKind::Quaternion) return complex_adjoint_form(a);
  MatrixXcd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m(i, j) = a.at(i, j).to_std_complex();
  return m;
}

[[nodiscard]] inline KMatrix kmatrix_from_complex(const MatrixXcd& m,
                                                  ScalarKind kind) {
  if (kind == ScalarKind::Quaternion)
    throw Error("kmatrix_from_complex: use quaternion pullbacks instead");
  KMatrix a(kind, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (kind == ScalarKind::Real && std::abs(m(i, j).imag()) > 1e-12)
        throw Error("kmatrix_from_complex: imaginary residue in real block");
      a.at(i, j) = kind == ScalarKind::Real
                       ? Scalar::real(m(i, j).real())
                       : Scalar::complex(m(i, j).real(), m(i, j).imag());
    }
  return a;
}

/// Vector correspondence intertwining the complex adjoint form:
/// x = x1 + x2 j in H^n maps to (x1; -conj(x2)) in C^{2n}, so that
/// quat_to_c2n(A x) = complex_adjoint_form(A) * quat_to_c2n(x) and complex
/// inner products restrict to the complex part of the quaternionic ones.
[[nodiscard]] inline VectorXcd quat_to_c2n(const KMatrix& x) {
  if (x.kind() != ScalarKind::Quaternion || x.cols() != 1)
    throw Error("quat_to_c2n: quaternion column expected");
  const int n = x.rows();
  VectorXcd v(2 * n);
  for (int i = 0; i < n; ++i) {
    v(i) = x.at(i, 0).complex_part_a();
    v(i + n) = -std::conj(x.at(i, 0).complex_part_b());
  }
  return v;
}

[[nodiscard]] inline KMatrix quat_from_c2n(const VectorXcd& v) {
  if (v.size() % 2 != 0) throw Error("quat_from_c2n: odd length");
  const int n = static_cast<int>(v.size() / 2);
  KMatrix x(ScalarKind::Quaternion, n, 1);
  for (int i = 0; i < n; ++i)
    x.at(i, 0) = Scalar::from_complex_pair(v(i), -std::conj(v(i + n)));
  return x;
}

/// Operator norm of one block (largest singular value).
[[nodiscard]] inline double operator_norm_block(const KMatrix& a) {
  if (a.rows() == 0) return 0.0;
  if (a.kind() == ScalarKind::Real) {
    MatrixXd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) m(i, j) = a.at(i, j).w;
    return m.jacobiSvd().singularValues()(0);
  }
  return embed_complex(a).jacobiSvd().singularValues()(0);
}

/// Operator norm of an element, the max over blocks.
[[nodiscard]] inline double operator_norm(const Element& a) {
  double n = 0.0;
  for (const KMatrix& b : a.blocks) n = std::max(n, operator_norm_block(b));
  return n;
}

// ---------------------------------------------------------------------------
// Flattening of elements to real coordinate vectors. The real Frobenius
// pairing on elements becomes the Euclidean dot product on coordinates.
// ---------------------------------------------------------------------------

[[nodiscard]] inline int flat_dimension(const AlgebraDescriptor& alg) {
  return alg.real_dimension();
}

[[nodiscard]] inline VectorXd flatten(const Element& e) {
  VectorXd v(flat_dimension(*e.alg));
  int p = 0;
  for (const KMatrix& b : e.blocks) {
    const int d = real_dim(b.kind());
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) {
        const Scalar& s = b.at(i, j);
        v(p++) = s.w;
        if (d > 1) v(p++) = s.x;
        if (d > 2) {
          v(p++) = s.y;
          v(p++) = s.z;
        }
      }
  }
  return v;
}

[[nodiscard]] inline Element unflatten(const AlgebraPtr& alg,
                                       const VectorXd& v) {
  Element e(alg);
  int p = 0;
  for (KMatrix& b : e.blocks) {
    const int d = real_dim(b.kind());
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) {
        Scalar s = Scalar::zero(b.kind());
        s.w = v(p++);
        if (d > 1) s.x = v(p++);
        if (d > 2) {
          s.y = v(p++);
          s.z = v(p++);
        }
        b.at(i, j) = s;
      }
  }
  return e;
}

/// Coordinate range [begin, end) of block k in the flattened layout.
[[nodiscard]] inline std::pair<int, int> flat_block_range(
    const AlgebraDescriptor& alg, int block) {
  int p = 0;
  for (int k = 0; k < block; ++k) {
    const BlockSpec& b = alg.blocks()[static_cast<std::size_t>(k)];
    p += real_dim(b.kind) * b.n * b.n;
  }
  const BlockSpec& b = alg.blocks()[static_cast<std::size_t>(block)];
  return {p, p + real_dim(b.kind) * b.n * b.n};
}

}  // namespace bjclass
