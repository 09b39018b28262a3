#pragma once

#include <algorithm>

#include "bjclass/random.hpp"

#include "bjclass/embed.hpp"

namespace bjclass {

/// SVD of one block: A = sum_i sigma_i y_i x_i^* with K-orthonormal frames.
struct BlockSvd {
  std::vector<double> sigma;  ///< descending, length n
  KMatrix left;               ///< n x n, columns y_i
  KMatrix right;              ///< n x n, columns x_i

  [[nodiscard]] double norm() const noexcept {
    return sigma.empty() ? 0.0 : sigma.front();
  }
};

struct SvdResult {
  std::vector<BlockSvd> blocks;
  [[nodiscard]] double norm() const noexcept {
    double n = 0.0;
    for (const BlockSvd& b : blocks) n = std::max(n, b.norm());
    return n;
  }
};

namespace detail {

[[nodiscard]] inline BlockSvd svd_real_or_complex(const KMatrix& a) {
  BlockSvd out;
  const int n = a.rows();
  if (a.kind() == ScalarKind::Real) {
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = a.at(i, j).w;
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.sigma.assign(svd.singularValues().data(),
                     svd.singularValues().data() + n);
    out.left = KMatrix(ScalarKind::Real, n, n);
    out.right = KMatrix(ScalarKind::Real, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out.left.at(i, j) = Scalar::real(svd.matrixU()(i, j));
        out.right.at(i, j) = Scalar::real(svd.matrixV()(i, j));
      }
    return out;
  }
  const MatrixXcd m = embed_complex(a);
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.sigma.assign(svd.singularValues().data(),
                   svd.singularValues().data() + n);
  out.left = kmatrix_from_complex(svd.matrixU(), ScalarKind::Complex);
  out.right = kmatrix_from_complex(svd.matrixV(), ScalarKind::Complex);
  return out;
}

/// Quaternionic SVD through the complex adjoint form. The embedded matrix has
/// each singular value twice; the pairs are deduplicated and the right frame
/// is pulled back to H-orthonormal vectors by the vector correspondence plus
/// quaternionic Gram-Schmidt within each singular cluster.
[[nodiscard]] inline BlockSvd svd_quaternion(const KMatrix& a) {
  const int n = a.rows();
  const MatrixXcd m = complex_adjoint_form(a);
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorXd sv = svd.singularValues();
  const double top = sv(0);
  const double pair_tol = 1e-8 * std::max(top, 1e-300);

  // Duplicate-pair structure is a property of the embedding; a mismatch
  // signals numerical failure and must be surfaced.
  for (int t = 0; t < n; ++t)
    if (std::abs(sv(2 * t) - sv(2 * t + 1)) > pair_tol)
      throw Error("quaternionic SVD: duplicate singular-value pairs broken");

  BlockSvd out;
  out.sigma.resize(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t)
    out.sigma[static_cast<std::size_t>(t)] = 0.5 * (sv(2 * t) + sv(2 * t + 1));

  // Cluster equal singular values, pull back each cluster's right singular
  // subspace, and re-orthonormalize over H.
  std::vector<KMatrix> xs;
  int t = 0;
  while (t < n) {
    int e = t + 1;
    while (e < n && std::abs(out.sigma[static_cast<std::size_t>(e)] -
                             out.sigma[static_cast<std::size_t>(t)]) <=
                        pair_tol)
      ++e;
    std::vector<KMatrix> pulled;
    for (int c = 2 * t; c < 2 * e; ++c)
      pulled.push_back(quat_from_c2n(svd.matrixV().col(c)));
    std::vector<KMatrix> ortho = gram_schmidt(pulled, 1e-6);
    if (static_cast<int>(ortho.size()) != e - t)
      throw Error("quaternionic SVD: cluster pullback rank mismatch");
    for (KMatrix& x : ortho) xs.push_back(std::move(x));
    t = e;
  }

  // Left frame: y_i = A x_i / sigma_i where defined, completed otherwise.
  std::vector<KMatrix> ys;
  const double zero_tol = 1e-12 * std::max(top, 1e-300);
  for (int i = 0; i < n; ++i) {
    const double s = out.sigma[static_cast<std::size_t>(i)];
    if (s > zero_tol)
      ys.push_back((a * xs[static_cast<std::size_t>(i)]) * (1.0 / s));
  }
  ys = complete_basis(gram_schmidt(ys, 1e-6), ScalarKind::Quaternion, n);

  out.right = KMatrix(ScalarKind::Quaternion, n, n);
  out.left = KMatrix(ScalarKind::Quaternion, n, n);
  for (int i = 0; i < n; ++i) {
    out.right.set_col(i, xs[static_cast<std::size_t>(i)]);
    out.left.set_col(i, ys[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace detail

[[nodiscard]] inline BlockSvd svd_block(const KMatrix& a) {
  return a.kind() == ScalarKind::Quaternion ? detail::svd_quaternion(a)
                                            : detail::svd_real_or_complex(a);
}

[[nodiscard]] inline SvdResult svd(const Element& a) {
  SvdResult r;
  r.blocks.reserve(a.blocks.size());
  for (const KMatrix& b : a.blocks) r.blocks.push_back(svd_block(b));
  return r;
}

/// Per-block orthonormal bases of the norm-attaining subspaces M_0^*(A_k):
/// right singular vectors at the top singular value on blocks whose norm
/// reaches the element norm, empty frames elsewhere. For A = 0 the frames
/// span everything.
struct NormFrame {
  double norm = 0.0;
  std::vector<KMatrix> frames;  ///< per block, n_k x m_k (m_k possibly 0)

  [[nodiscard]] int frame_dim(int k) const {
    return frames[static_cast<std::size_t>(k)].cols();
  }
  [[nodiscard]] int total_dim() const {
    int m = 0;
    for (const KMatrix& f : frames) m += f.cols();
    return m;
  }
  [[nodiscard]] bool attains(int k) const { return frame_dim(k) > 0; }
};

[[nodiscard]] inline NormFrame norm_frame_from_svd(const AlgebraDescriptor& alg,
                                                   const SvdResult& sv,
                                                   double tol = kDefaultTol) {
  if (tol <= 0.0) throw Error("norm_frame: tol must be positive");
  NormFrame f;
  f.norm = sv.norm();
  f.frames.reserve(sv.blocks.size());
  if (f.norm == 0.0) {
    for (const BlockSpec& b : alg.blocks())
      f.frames.push_back(KMatrix::identity(b.kind, b.n));
    return f;
  }
  const double cut = (1.0 - tol) * f.norm;
  for (const BlockSvd& b : sv.blocks) {
    const int n = b.right.rows();
    int m = 0;
    if (b.norm() >= cut)
      while (m < n && b.sigma[static_cast<std::size_t>(m)] >= cut) ++m;
    KMatrix frame(b.right.kind(), n, m);
    for (int j = 0; j < m; ++j) frame.set_col(j, b.right.col(j));
    f.frames.push_back(std::move(frame));
  }
  return f;
}

[[nodiscard]] inline NormFrame norm_frame(const Element& a,
                                          double tol = kDefaultTol) {
  return norm_frame_from_svd(*a.alg, svd(a), tol);
}

/// Cached per-element data used by the orthogonality and symmetry tests.
struct ElementAnalysis {
  SvdResult svd;
  NormFrame frame;
  double norm = 0.0;
};

[[nodiscard]] inline ElementAnalysis analyze(const Element& a,
                                             double tol = kDefaultTol) {
  ElementAnalysis an;
  an.svd = svd(a);
  an.norm = an.svd.norm();
  an.frame = norm_frame_from_svd(*a.alg, an.svd, tol);
  return an;
}

/// Isometry (U_k A_k V_k^*)_k. U and V must be blockwise unitary.
[[nodiscard]] inline Element apply_isometry(const Element& a, const Element& u,
                                            const Element& v,
                                            double tol = kDefaultTol) {
  for (const Element* w : {&u, &v})
    for (std::size_t k = 0; k < w->blocks.size(); ++k) {
      const KMatrix& b = w->blocks[k];
      const KMatrix res = b.adjoint() * b - KMatrix::identity(b.kind(), b.rows());
      if (res.frobenius() > std::max(tol, 1e-10) * b.rows())
        throw Error("apply_isometry: non-unitary factor");
    }
  Element e = a;
  for (std::size_t k = 0; k < e.blocks.size(); ++k)
    e.blocks[k] = u.blocks[k] * a.blocks[k] * v.blocks[k].adjoint();
  return e;
}

/// Permutes blocks; only blocks of equal size and kind may trade places.
[[nodiscard]] inline Element block_permute(const Element& a,
                                           const std::vector<int>& perm) {
  const auto& specs = a.alg->blocks();
  if (perm.size() != specs.size()) throw Error("block_permute: size mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const int p = perm[k];
    if (p < 0 || p >= static_cast<int>(perm.size()) ||
        seen[static_cast<std::size_t>(p)])
      throw Error("block_permute: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
    if (!(specs[k] == specs[static_cast<std::size_t>(p)]))
      throw Error("block_permute: blocks of unequal shape");
  }
  Element e = a;
  for (std::size_t k = 0; k < perm.size(); ++k)
    e.blocks[k] = a.blocks[static_cast<std::size_t>(perm[k])];
  return e;
}

/// Top singular value by direct maximization of ||A x|| over sampled unit
/// vectors: random starts refined through the Gram matrix, whose repeated
/// squaring contracts onto the top singular subspace at a rate independent
/// of the spectral gap. Serves as the definitional oracle for the norm.
[[nodiscard]] inline double norm_bruteforce(const Element& a, Rng& rng,
                                            int samples = 8,
                                            int squarings = 48) {
  double best = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const KMatrix& blk = a.blocks[k];
    KMatrix gram = blk.adjoint() * blk;
    for (int it = 0; it < squarings; ++it) {
      const double f = gram.frobenius();
      if (f < 1e-300) break;
      gram = (gram * (1.0 / f)) * gram;
    }
    for (int s = 0; s < samples; ++s) {
      KMatrix x = gram * random_unit_vector(blk.kind(), blk.rows(), rng);
      const double n = x.frobenius();
      if (n < 1e-200) {
        best = std::max(
            best,
            (blk * random_unit_vector(blk.kind(), blk.rows(), rng))
                .frobenius());
        continue;
      }
      best = std::max(best, (blk * (x * (1.0 / n))).frobenius());
    }
  }
  return best;
}

}  // namespace bjclass
