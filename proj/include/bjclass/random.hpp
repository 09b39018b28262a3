#pragma once

#include <cstdint>
#include <random>

#include "bjclass/algebra.hpp"

namespace bjclass {

/// Deterministic random source. Gaussian deviates are generated by an
/// explicit Box-Muller step on top of mt19937_64 so that a fixed seed yields
/// the same stream independent of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Derives an independent stream, stable under reordering of call sites.
  [[nodiscard]] static Rng derived(std::uint64_t seed, std::uint64_t salt) {
    return Rng(seed * 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL +
               0x94d049bb133111ebULL);
  }

  [[nodiscard]] double uniform01() {
    // 53-bit mantissa in (0, 1].
    const std::uint64_t u = gen_();
    return (static_cast<double>(u >> 11) + 1.0) * 0x1.0p-53;
  }

  [[nodiscard]] double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  [[nodiscard]] double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  [[nodiscard]] std::uint64_t bits() { return gen_(); }

  [[nodiscard]] int index(int n) {
    return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

[[nodiscard]] inline Scalar random_scalar(ScalarKind kind, Rng& rng) {
  Scalar s = Scalar::zero(kind);
  s.w = rng.gaussian();
  if (kind != ScalarKind::Real) s.x = rng.gaussian();
  if (kind == ScalarKind::Quaternion) {
    s.y = rng.gaussian();
    s.z = rng.gaussian();
  }
  return s;
}

/// Random scalar of modulus one.
[[nodiscard]] inline Scalar random_unit_scalar(ScalarKind kind, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(kind, rng);
    const double m = s.modulus();
    if (m > 1e-6) return s * (1.0 / m);
  }
}

[[nodiscard]] inline KMatrix random_kmatrix(ScalarKind kind, int rows,
                                            int cols, Rng& rng) {
  KMatrix m(kind, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar(kind, rng);
  return m;
}

[[nodiscard]] inline KMatrix random_unit_vector(ScalarKind kind, int n,
                                                Rng& rng) {
  for (;;) {
    KMatrix v = random_kmatrix(kind, n, 1, rng);
    const double m = v.frobenius();
    if (m > 1e-6) return v * (1.0 / m);
  }
}

/// Random unitary via Gram-Schmidt on a Gaussian matrix; works over H too.
[[nodiscard]] inline KMatrix random_unitary_block(ScalarKind kind, int n,
                                                  Rng& rng) {
  for (;;) {
    std::vector<KMatrix> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      cols.push_back(random_kmatrix(kind, n, 1, rng));
    std::vector<KMatrix> basis = gram_schmidt(cols, 1e-6);
    if (static_cast<int>(basis.size()) != n) continue;
    KMatrix u(kind, n, n);
    for (int j = 0; j < n; ++j) u.set_col(j, basis[static_cast<std::size_t>(j)]);
    return u;
  }
}

/// Sampling laws for random elements.
enum class RandomLaw {
  Gaussian,    ///< independent standard Gaussian coordinates
  UnitNorm,    ///< Gaussian scaled to Frobenius norm one
  UnitaryLike  ///< blockwise random unitary
};

[[nodiscard]] inline Element random_element(const AlgebraPtr& alg, Rng& rng,
                                            RandomLaw law = RandomLaw::Gaussian) {
  Element e(alg);
  for (std::size_t k = 0; k < e.blocks.size(); ++k) {
    const BlockSpec& b = alg->blocks()[k];
    e.blocks[k] = law == RandomLaw::UnitaryLike
                      ? random_unitary_block(b.kind, b.n, rng)
                      : random_kmatrix(b.kind, b.n, b.n, rng);
  }
  if (law == RandomLaw::UnitNorm) {
    const double f = e.frobenius();
    if (f > 1e-12) e *= 1.0 / f;
  }
  return e;
}

/// Random unitary element (one unitary per block).
[[nodiscard]] inline Element random_unitary(const AlgebraPtr& alg, Rng& rng) {
  return random_element(alg, rng, RandomLaw::UnitaryLike);
}

[[nodiscard]] inline BlockVector random_block_vector(const AlgebraPtr& alg,
                                                     Rng& rng) {
  BlockVector v = BlockVector::zero(*alg);
  for (std::size_t k = 0; k < v.blocks.size(); ++k) {
    const BlockSpec& b = alg->blocks()[k];
    v.blocks[k] = random_kmatrix(b.kind, b.n, 1, rng);
  }
  return v;
}

}  // namespace bjclass
