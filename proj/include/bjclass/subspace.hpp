#pragma once

#include "bjclass/symmetry.hpp"

namespace bjclass {

/// A real-linear subspace of the algebra with an orthonormal, block-aligned
/// basis. Every subspace produced by the pipeline arises from intersections
/// of smooth-element neighborhoods, which are block-decomposable; the
/// constructor re-mixes an arbitrary null-space basis into per-block bases
/// and rejects inputs where that is impossible.
class Subspace {
 public:
  [[nodiscard]] static Subspace full(const AlgebraPtr& alg) {
    const int d = flat_dimension(*alg);
    return Subspace(alg, MatrixXd::Identity(d, d));
  }

  [[nodiscard]] static Subspace zero_space(const AlgebraPtr& alg) {
    return Subspace(alg, MatrixXd::Zero(flat_dimension(*alg), 0));
  }

  /// Common kernel of the given functional rows (rows may be rank-deficient).
  /// An empty row set yields the full space.
  [[nodiscard]] static Subspace from_nullspace(const AlgebraPtr& alg,
                                               const MatrixXd& rows) {
    const int d = flat_dimension(*alg);
    if (rows.cols() != 0 && rows.cols() != d)
      throw Error("from_nullspace: row width mismatch");
    if (rows.rows() == 0) return full(alg);
    Eigen::JacobiSVD<MatrixXd> svd(rows, Eigen::ComputeFullV);
    const VectorXd sv = svd.singularValues();
    const double cut = 1e-9 * std::max(sv.size() > 0 ? sv(0) : 0.0, 1e-300);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    return Subspace(alg, svd.matrixV().rightCols(d - rank));
  }

  Subspace(AlgebraPtr alg, const MatrixXd& raw_basis)
      : alg_(std::move(alg)) {
    block_align(raw_basis);
  }

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] int dim() const noexcept {
    return static_cast<int>(basis_.cols());
  }
  [[nodiscard]] bool is_zero() const noexcept { return dim() == 0; }
  [[nodiscard]] const MatrixXd& basis() const noexcept { return basis_; }
  [[nodiscard]] int block_dim(int k) const {
    return block_dims_[static_cast<std::size_t>(k)];
  }
  [[nodiscard]] const std::vector<int>& block_dims() const noexcept {
    return block_dims_;
  }
  [[nodiscard]] int nonzero_block_count() const noexcept {
    int n = 0;
    for (int d : block_dims_) n += d > 0 ? 1 : 0;
    return n;
  }

  [[nodiscard]] Element element(int i) const {
    return unflatten(alg_, basis_.col(i));
  }

  /// Basis elements of the block-k component.
  [[nodiscard]] std::vector<Element> block_basis(int k) const {
    std::vector<Element> out;
    for (int i = 0; i < dim(); ++i) {
      const Element e = element(i);
      if (e.blocks[static_cast<std::size_t>(k)].frobenius() > 0.5)
        out.push_back(e);
    }
    return out;
  }

  [[nodiscard]] bool contains(const VectorXd& v, double tol = 1e-8) const {
    const double n = v.norm();
    if (n <= 0.0) return true;
    return (v - basis_ * (basis_.transpose() * v)).norm() <= tol * n;
  }
  [[nodiscard]] bool contains(const Element& e, double tol = 1e-8) const {
    return contains(flatten(e), tol);
  }

  [[nodiscard]] Element project(const Element& e) const {
    return unflatten(alg_, basis_ * (basis_.transpose() * flatten(e)));
  }

  [[nodiscard]] Element random_element(Rng& rng) const {
    if (is_zero()) return Element::zero(alg_);
    VectorXd c(dim());
    for (int i = 0; i < dim(); ++i) c(i) = rng.gaussian();
    VectorXd v = basis_ * c;
    const double n = v.norm();
    if (n > 1e-12) v /= n;
    return unflatten(alg_, v);
  }

  [[nodiscard]] Subspace intersect(const Subspace& other) const {
    const int d = flat_dimension(*alg_);
    MatrixXd rows(2 * d, d);
    rows.topRows(d) = MatrixXd::Identity(d, d) - basis_ * basis_.transpose();
    rows.bottomRows(d) =
        MatrixXd::Identity(d, d) - other.basis_ * other.basis_.transpose();
    return from_nullspace(alg_, rows);
  }

 private:
  /// Rebuilds the basis as a concatenation of per-block orthonormal bases.
  void block_align(const MatrixXd& raw) {
    const int m = static_cast<int>(raw.cols());
    block_dims_.assign(alg_->blocks().size(), 0);
    std::vector<MatrixXd> pieces;
    int total = 0;
    for (int k = 0; k < alg_->block_count(); ++k) {
      const auto [lo, hi] = flat_block_range(*alg_, k);
      const MatrixXd piece = raw.middleRows(lo, hi - lo);
      if (m == 0 || piece.norm() < 1e-12) {
        pieces.emplace_back(hi - lo, 0);
        continue;
      }
      Eigen::JacobiSVD<MatrixXd> svd(piece, Eigen::ComputeFullU);
      int rank = 0;
      while (rank < svd.singularValues().size() &&
             svd.singularValues()(rank) > 1e-7)
        ++rank;
      pieces.push_back(svd.matrixU().leftCols(rank));
      block_dims_[static_cast<std::size_t>(k)] = rank;
      total += rank;
    }
    if (total != m)
      throw Error("subspace is not block-decomposable");
    basis_ = MatrixXd::Zero(raw.rows(), total);
    int col = 0;
    for (int k = 0; k < alg_->block_count(); ++k) {
      const auto [lo, hi] = flat_block_range(*alg_, k);
      const MatrixXd& p = pieces[static_cast<std::size_t>(k)];
      basis_.block(lo, col, hi - lo, p.cols()) = p;
      col += static_cast<int>(p.cols());
    }
  }

  AlgebraPtr alg_;
  MatrixXd basis_;
  std::vector<int> block_dims_;
};

[[nodiscard]] inline bool subspace_contained(const Subspace& s,
                                             const Subspace& t,
                                             double tol = 1e-8) {
  if (s.dim() == 0) return true;
  const MatrixXd r =
      s.basis() - t.basis() * (t.basis().transpose() * s.basis());
  return r.colwise().norm().maxCoeff() <= tol;
}

[[nodiscard]] inline bool subspace_equal(const Subspace& s, const Subspace& t,
                                         double tol = 1e-8) {
  return s.dim() == t.dim() && subspace_contained(s, t, tol) &&
         subspace_contained(t, s, tol);
}

/// Largest principal-angle residual between equal-dimensional subspaces:
/// 1 - sigma_min(Q_s^T Q_t), or 1 if the dimensions differ.
[[nodiscard]] inline double principal_angle_residual(const Subspace& s,
                                                     const Subspace& t) {
  if (s.dim() != t.dim()) return 1.0;
  if (s.dim() == 0) return 0.0;
  const MatrixXd m = s.basis().transpose() * t.basis();
  const VectorXd sv = m.jacobiSvd().singularValues();
  return 1.0 - sv(sv.size() - 1);
}

/// Functional rows of a smooth element's neighborhood: over R the kernel of
/// one real row, over C of two (real and imaginary parts).
[[nodiscard]] inline MatrixXd functional_rows(const AlgebraPtr& alg,
                                              const SupportingFunctional& f) {
  const int d = flat_dimension(*alg);
  const bool complex_field = alg->field() == FieldTag::Complex;
  MatrixXd rows(complex_field ? 2 : 1, d);
  rows.row(0) = flatten(f.riesz_re(alg)).transpose();
  if (complex_field) rows.row(1) = flatten(f.riesz_im(alg)).transpose();
  return rows;
}

/// Common outgoing neighborhood of smooth generators, as a subspace:
/// the intersection of their supporting-functional kernels. Generators must
/// be smooth (their neighborhoods are exactly those kernels).
[[nodiscard]] inline Subspace perp_subspace(const AlgebraPtr& alg,
                                            const std::vector<Element>& gens,
                                            double tol = kDefaultTol) {
  const int d = flat_dimension(*alg);
  const int stride = alg->field() == FieldTag::Complex ? 2 : 1;
  MatrixXd rows(static_cast<int>(gens.size()) * stride, d);
  int r = 0;
  for (const Element& g : gens) {
    const ElementAnalysis an = analyze(g, tol);
    if (!is_smooth(an))
      throw Error("perp_subspace: generator is not smooth");
    rows.middleRows(r, stride) =
        functional_rows(alg, supporting_functional(g, an));
    r += stride;
  }
  rows.conservativeResize(r, d);
  return Subspace::from_nullspace(alg, rows);
}

}  // namespace bjclass
