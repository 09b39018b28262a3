#pragma once

#include "bjclass/orthogonality.hpp"

namespace bjclass {

// ---------------------------------------------------------------------------
// Supporting functionals.
// ---------------------------------------------------------------------------

/// The unique norm-one supporting functional of a smooth element:
/// X -> <X_i x, A_i x>_F / ||A||, represented by the attaining block, the
/// norm vector x and the unit direction u = A_i x / ||A||.
struct SupportingFunctional {
  int block = 0;
  KMatrix x;          ///< unit vector spanning M_0(A_block)
  KMatrix direction;  ///< u = A_block x / ||A||, unit
  double norm = 0.0;  ///< ||A||

  /// f(X), a scalar in the base field; linear in X.
  [[nodiscard]] Scalar value(const Element& e) const {
    const KMatrix v = e.blocks[static_cast<std::size_t>(block)] * x;
    const Scalar ip = inner(v, direction);  // u^* (X x)
    if (e.alg->field() == FieldTag::Real) return Scalar::real(ip.re());
    if (ip.kind == ScalarKind::Real) return Scalar::complex(ip.w, 0.0);
    return Scalar::complex(ip.w, ip.x);
  }

  /// Riesz elements of the real parts of f: f(X) = <X, riesz_re>_Frob and,
  /// over C, Im f(X) = <X, riesz_im>_Frob. Their kernels cut out ker f.
  [[nodiscard]] Element riesz_re(const AlgebraPtr& alg) const {
    return Element::single_block(alg, block, rank_one(direction, x));
  }
  [[nodiscard]] Element riesz_im(const AlgebraPtr& alg) const {
    const Scalar i_unit = Scalar(direction.kind(), 0.0, 1.0);
    return Element::single_block(alg, block,
                                 rank_one(direction.scale_left(i_unit), x));
  }
};

// ---------------------------------------------------------------------------
// Smoothness.
// ---------------------------------------------------------------------------

/// Smooth iff exactly one block attains the norm and its norm-attaining
/// subspace is one-dimensional over the block's coefficient field. Zero is
/// not smooth.
[[nodiscard]] inline bool is_smooth(const ElementAnalysis& an) {
  if (an.norm <= 0.0) return false;
  int attaining = 0;
  int dim = 0;
  for (const KMatrix& f : an.frame.frames)
    if (f.cols() > 0) {
      ++attaining;
      dim = f.cols();
    }
  return attaining == 1 && dim == 1;
}

[[nodiscard]] inline bool is_smooth(const Element& a,
                                    double tol = kDefaultTol) {
  return is_smooth(analyze(a, tol));
}

[[nodiscard]] inline SupportingFunctional supporting_functional(
    const Element& a, const ElementAnalysis& an) {
  if (!is_smooth(an)) throw Error("supporting_functional: not smooth");
  SupportingFunctional f;
  for (std::size_t k = 0; k < an.frame.frames.size(); ++k)
    if (an.frame.frames[k].cols() > 0) {
      f.block = static_cast<int>(k);
      f.x = an.frame.frames[k].col(0);
    }
  f.norm = an.norm;
  f.direction = (a.blocks[static_cast<std::size_t>(f.block)] * f.x) *
                (1.0 / an.norm);
  return f;
}

[[nodiscard]] inline SupportingFunctional supporting_functional(
    const Element& a, double tol = kDefaultTol) {
  return supporting_functional(a, analyze(a, tol));
}

/// BJ-level smoothness: searches the structured family of candidates B with
/// B^perp strictly inside A^perp (single-block truncations and rank-one
/// norm-vector compressions). Smooth elements admit none.
[[nodiscard]] inline bool is_smooth_bj(const Element& a,
                                       double tol = kDefaultTol) {
  const ElementAnalysis an = analyze(a, tol);
  if (an.norm <= 0.0) return false;  // 0^perp is everything
  std::vector<Element> candidates;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const KMatrix& frame = an.frame.frames[k];
    if (frame.cols() == 0) continue;
    candidates.push_back(
        Element::single_block(a.alg, static_cast<int>(k), a.blocks[k]));
    std::vector<KMatrix> probes;
    for (int j = 0; j < frame.cols(); ++j) probes.push_back(frame.col(j));
    if (frame.cols() > 1) {
      Rng rng = Rng::derived(0x5eedu, k);
      for (int extra = 0; extra < 2; ++extra) {
        KMatrix coeff = random_kmatrix(frame.kind(), frame.cols(), 1, rng);
        KMatrix v(frame.kind(), frame.rows(), 1);
        for (int j = 0; j < frame.cols(); ++j)
          v += frame.col(j).scale_right(coeff.at(j, 0));
        const double n = v.frobenius();
        if (n > 1e-9) probes.push_back(v * (1.0 / n));
      }
    }
    for (const KMatrix& x : probes)
      candidates.push_back(Element::single_block(
          a.alg, static_cast<int>(k), rank_one(a.blocks[k] * x, x)));
  }
  for (const Element& b : candidates) {
    if (b.is_zero(1e-12)) continue;
    if (neighborhood_contained(b, a, tol) && !neighborhood_equal(b, a, tol))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Left symmetry.
// ---------------------------------------------------------------------------

/// Left-symmetric iff zero, or supported in exactly one block of size one.
[[nodiscard]] inline bool is_left_symmetric_structural(const Element& a,
                                                       double tol = kDefaultTol) {
  const double total = a.frobenius();
  if (total <= 0.0) return true;
  int nonzero = -1;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    if (a.blocks[k].frobenius() <= tol * total) continue;
    if (nonzero >= 0) return false;
    nonzero = static_cast<int>(k);
  }
  return nonzero >= 0 &&
         a.alg->blocks()[static_cast<std::size_t>(nonzero)].n == 1;
}

struct SampledVerdict {
  bool verdict = true;
  int trials = 0;
  std::optional<Element> counterexample;
};

/// One-sided Monte Carlo left-symmetry test: draws members of A^perp through
/// supporting-functional hyperplanes (full, norm-block-restricted and
/// single-block Gaussians in rotation) and fails on the first one that is not
/// orthogonal to A in return.
[[nodiscard]] inline SampledVerdict is_left_symmetric_sampled(
    const Element& a, int trials, std::uint64_t seed,
    double tol = kDefaultTol) {
  SampledVerdict out;
  if (trials < 1) throw Error("is_left_symmetric_sampled: trials must be >= 1");
  if (a.is_zero()) return out;  // vacuously left-symmetric
  const ElementAnalysis an = analyze(a, tol);
  Rng rng = Rng::derived(seed, 0xa11ce);
  constexpr SuccessorMode kModes[] = {SuccessorMode::Full,
                                      SuccessorMode::NormBlocks,
                                      SuccessorMode::SingleBlock};
  for (int t = 0; t < trials; ++t) {
    const Element b =
        random_orthogonal_successor(a, an, rng, kModes[t % 3]);
    ++out.trials;
    if (!is_bj_orthogonal(b, a, analyze(b, tol), tol).orthogonal) {
      out.verdict = false;
      out.counterexample = b;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Right symmetry.
// ---------------------------------------------------------------------------

/// Structural test: every block satisfies A_k^* A_k = c I with the common
/// constant c = ||A||^2, i.e. A is a scalar multiple of a unitary. The
/// residual is measured relative to c so the verdict is scale-free; zero is
/// the multiple 0 U.
[[nodiscard]] inline bool is_right_symmetric(const Element& a,
                                             double tol = kDefaultTol) {
  const double c = operator_norm(a);
  if (c == 0.0) return true;
  const double c2 = c * c;
  for (const KMatrix& b : a.blocks) {
    const KMatrix gram = b.adjoint() * b;
    const KMatrix res = gram - KMatrix::identity(b.kind(), b.rows()) * c2;
    if (res.frobenius() > std::max(tol, 1e-12) * c2 * b.rows()) return false;
  }
  return true;
}

/// The polar unitary ||A|| (U_k V_k^*)_k from the blockwise SVD. Its
/// neighborhood always contains A^perp; equality holds exactly for scalar
/// multiples of unitaries.
[[nodiscard]] inline Element polar_unitary_envelope(const Element& a,
                                                    const SvdResult& sv) {
  Element c(a.alg);
  const double n = sv.norm();
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    c.blocks[k] = (sv.blocks[k].left * sv.blocks[k].right.adjoint()) * n;
  return c;
}

/// BJ-level right symmetry: no element has a neighborhood strictly above
/// A^perp. The polar unitary envelope realizes the largest candidate, so the
/// test reduces to neighborhood equality with it.
[[nodiscard]] inline bool is_right_symmetric_bj(const Element& a,
                                                double tol = kDefaultTol) {
  const Element c = polar_unitary_envelope(a, svd(a));
  return neighborhood_equal(a, c, tol);
}

// ---------------------------------------------------------------------------
// Combined verdict.
// ---------------------------------------------------------------------------

enum class SymmetryMode { Structural, OracleSampled, Both };

struct SymmetryVerdict {
  bool left = false;
  bool right = false;
  bool smooth = false;
  SymmetryMode mode = SymmetryMode::Structural;
  int trials = 0;
  bool modes_agree = true;
  std::optional<Element> counterexample;
};

[[nodiscard]] inline SymmetryVerdict symmetry_verdict(
    const Element& a, SymmetryMode mode, int trials = 300,
    std::uint64_t seed = 1, double tol = kDefaultTol) {
  SymmetryVerdict v;
  v.mode = mode;
  const bool run_structural = mode != SymmetryMode::OracleSampled;
  const bool run_sampled = mode != SymmetryMode::Structural;
  bool left_s = false, right_s = false, smooth_s = false;
  bool left_o = false, right_o = false, smooth_o = false;
  if (run_structural) {
    left_s = is_left_symmetric_structural(a, tol);
    right_s = is_right_symmetric(a, tol);
    smooth_s = is_smooth(a, tol);
  }
  if (run_sampled) {
    SampledVerdict sv = is_left_symmetric_sampled(a, trials, seed, tol);
    left_o = sv.verdict;
    v.trials = sv.trials;
    v.counterexample = std::move(sv.counterexample);
    right_o = is_right_symmetric_bj(a, tol);
    smooth_o = is_smooth_bj(a, tol);
  }
  if (mode == SymmetryMode::Structural) {
    v.left = left_s;
    v.right = right_s;
    v.smooth = smooth_s;
  } else {
    v.left = left_o;
    v.right = right_o;
    v.smooth = smooth_o;
  }
  if (mode == SymmetryMode::Both)
    v.modes_agree =
        left_s == left_o && right_s == right_o && smooth_s == smooth_o;
  return v;
}

}  // namespace bjclass
