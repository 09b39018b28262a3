#pragma once

#include <limits>
#include <optional>

#include "bjclass/random.hpp"
#include "bjclass/svd.hpp"

namespace bjclass {

// ---------------------------------------------------------------------------
// Hermitian range of a compression matrix over R, C or H.
// ---------------------------------------------------------------------------

/// Extremes of the quadratic form c -> Re(c^* D c) on the unit sphere,
/// together with attaining unit vectors.
struct HermRange {
  double lmin = 0.0;
  double lmax = 0.0;
  KMatrix vmin;
  KMatrix vmax;
};

[[nodiscard]] inline HermRange herm_range(const KMatrix& d) {
  const int m = d.rows();
  KMatrix h = (d + d.adjoint()) * 0.5;
  HermRange out;
  if (m == 0) return out;
  if (h.kind() == ScalarKind::Quaternion) {
    const MatrixXcd hc = complex_adjoint_form(h);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hc);
    out.lmin = es.eigenvalues()(0);
    out.lmax = es.eigenvalues()(2 * m - 1);
    out.vmin = quat_from_c2n(es.eigenvectors().col(0));
    out.vmax = quat_from_c2n(es.eigenvectors().col(2 * m - 1));
    return out;
  }
  if (h.kind() == ScalarKind::Real) {
    MatrixXd hr(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) hr(i, j) = h.at(i, j).w;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hr);
    out.lmin = es.eigenvalues()(0);
    out.lmax = es.eigenvalues()(m - 1);
    out.vmin = kmatrix_from_complex(es.eigenvectors().col(0).cast<std::complex<double>>(),
                                    ScalarKind::Real);
    out.vmax = kmatrix_from_complex(
        es.eigenvectors().col(m - 1).cast<std::complex<double>>(),
        ScalarKind::Real);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(embed_complex(h));
  out.lmin = es.eigenvalues()(0);
  out.lmax = es.eigenvalues()(m - 1);
  out.vmin = kmatrix_from_complex(es.eigenvectors().col(0), ScalarKind::Complex);
  out.vmax =
      kmatrix_from_complex(es.eigenvectors().col(m - 1), ScalarKind::Complex);
  return out;
}

// ---------------------------------------------------------------------------
// Orthogonality predicate.
// ---------------------------------------------------------------------------

/// Evidence for an orthogonality verdict: a unit vector x in M_0(A) with
/// <Ax, Bx>_F ~ 0, or the minimizing scalar found by the norm oracle.
struct OrthWitness {
  enum class Kind { None, Vector, MinimizingScalar };
  Kind kind = Kind::None;
  BlockVector x;        ///< for Kind::Vector
  Scalar lambda_star;   ///< for Kind::MinimizingScalar
  double residual = 0.0;
};

struct OrthResult {
  bool orthogonal = false;
  OrthWitness witness;
};

namespace detail {

/// Compression of the pairing (x, y) -> <A x, B y>_F to the frame of block k:
/// D(j, i) = (B f_j)^* (A f_i).
[[nodiscard]] inline KMatrix frame_compression(const KMatrix& ablk,
                                               const KMatrix& bblk,
                                               const KMatrix& frame) {
  const int m = frame.cols();
  KMatrix d(frame.kind(), m, m);
  std::vector<KMatrix> af, bf;
  af.reserve(static_cast<std::size_t>(m));
  bf.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    af.push_back(ablk * frame.col(j));
    bf.push_back(bblk * frame.col(j));
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      d.at(j, i) = inner(af[static_cast<std::size_t>(i)],
                         bf[static_cast<std::size_t>(j)]);
  return d;
}

/// Assembles a block vector from frame coordinates of one block.
inline void add_frame_combo(BlockVector& x, int block, const KMatrix& frame,
                            const KMatrix& coeff, double weight) {
  KMatrix v(frame.kind(), frame.rows(), 1);
  for (int j = 0; j < frame.cols(); ++j)
    v += frame.col(j).scale_right(coeff.at(j, 0));
  x.blocks[static_cast<std::size_t>(block)] += v * weight;
}

/// Witness for the degenerate pairs (A or B zero): any norm vector of A
/// satisfies the defining identity.
[[nodiscard]] inline OrthWitness trivial_witness(const Element& a,
                                                 const ElementAnalysis& an_a) {
  OrthWitness w;
  w.kind = OrthWitness::Kind::Vector;
  w.x = BlockVector::zero(*a.alg);
  for (std::size_t k = 0; k < an_a.frame.frames.size(); ++k)
    if (an_a.frame.frames[k].cols() > 0) {
      w.x.blocks[k] = an_a.frame.frames[k].col(0);
      return w;
    }
  w.x.blocks[0].at(0, 0) = Scalar::one(w.x.blocks[0].kind());
  return w;
}

[[nodiscard]] inline OrthResult orth_real_field(const Element& a,
                                                const Element& b,
                                                const ElementAnalysis& an_a,
                                                double tol) {
  const double scale = an_a.norm * operator_norm(b);
  OrthResult res;
  if (scale <= 0.0) {
    res.orthogonal = true;
    res.witness = trivial_witness(a, an_a);
    return res;
  }
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = -std::numeric_limits<double>::infinity();
  int kmin = -1, kmax = -1;
  KMatrix cmin, cmax;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const KMatrix& frame = an_a.frame.frames[k];
    if (frame.cols() == 0) continue;
    const KMatrix d =
        frame_compression(a.blocks[k], b.blocks[k], frame) * (1.0 / scale);
    const HermRange hr = herm_range(d);
    if (hr.lmin < gmin) {
      gmin = hr.lmin;
      kmin = static_cast<int>(k);
      cmin = hr.vmin;
    }
    if (hr.lmax > gmax) {
      gmax = hr.lmax;
      kmax = static_cast<int>(k);
      cmax = hr.vmax;
    }
  }
  res.orthogonal = gmin <= tol && gmax >= -tol;
  if (!res.orthogonal) {
    res.witness.kind = OrthWitness::Kind::None;
    res.witness.residual = std::min(std::abs(gmin), std::abs(gmax));
    return res;
  }
  // Witness: range of the form on unit vectors is [gmin, gmax]; interpolate
  // the extremal eigenvectors to land on zero.
  double t2 = 1.0;
  if (gmax - gmin > 1e-15) t2 = gmax / (gmax - gmin);
  t2 = std::clamp(t2, 0.0, 1.0);
  const double t = std::sqrt(t2), s = std::sqrt(1.0 - t2);
  BlockVector x = BlockVector::zero(*a.alg);
  if (kmin == kmax) {
    KMatrix coeff = cmin * t + cmax * s;
    // Extremal eigenvectors are orthogonal unless the form is constant.
    if (gmax - gmin <= 1e-15) coeff = cmin;
    add_frame_combo(x, kmin, an_a.frame.frames[static_cast<std::size_t>(kmin)],
                    coeff, 1.0);
  } else {
    add_frame_combo(x, kmin, an_a.frame.frames[static_cast<std::size_t>(kmin)],
                    cmin, t);
    add_frame_combo(x, kmax, an_a.frame.frames[static_cast<std::size_t>(kmax)],
                    cmax, s);
  }
  const double nx = x.norm();
  if (nx > 1e-12)
    for (KMatrix& blk : x.blocks) blk *= 1.0 / nx;
  res.witness.kind = OrthWitness::Kind::Vector;
  res.witness.x = x;
  res.witness.residual =
      std::abs(inner_product_F(a.apply(x), b.apply(x), *a.alg).re()) / scale;
  return res;
}

// --- complex field: membership of zero in the numerical range --------------

[[nodiscard]] inline double lambda_min_herm(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// g(theta) = lambda_min(Herm(e^{i theta} D)).
[[nodiscard]] inline double sweep_g(const MatrixXcd& d, double theta) {
  const std::complex<double> p(std::cos(theta), std::sin(theta));
  const MatrixXcd h = 0.5 * (p * d + std::conj(p) * d.adjoint());
  return lambda_min_herm(h);
}

/// Max of g over theta: coarse sweep plus golden-section refinement around
/// the best sample. Zero lies in the numerical range iff the max is <= 0.
[[nodiscard]] inline double numerical_range_margin(const MatrixXcd& d) {
  constexpr int kSamples = 64;
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double theta = 2.0 * kPi * i / kSamples;
    const double g = sweep_g(d, theta);
    if (g > best) {
      best = g;
      best_theta = theta;
    }
  }
  double lo = best_theta - 2.0 * kPi / kSamples;
  double hi = best_theta + 2.0 * kPi / kSamples;
  const double gr = 0.6180339887498949;
  double c = hi - gr * (hi - lo), dd = lo + gr * (hi - lo);
  double fc = sweep_g(d, c), fd = sweep_g(d, dd);
  for (int it = 0; it < 48; ++it) {
    if (fc > fd) {
      hi = dd;
      dd = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = sweep_g(d, c);
    } else {
      lo = c;
      c = dd;
      fc = fd;
      dd = lo + gr * (hi - lo);
      fd = sweep_g(d, dd);
    }
    best = std::max(best, std::max(fc, fd));
  }
  return best;
}

struct RangePoint {
  VectorXcd c;
  std::complex<double> z;
};

[[nodiscard]] inline std::complex<double> range_value(const MatrixXcd& d,
                                                      const VectorXcd& c) {
  return (c.adjoint() * d * c)(0);
}

/// Finds a unit c in span{u, v} with c^* D c = z. Valid whenever z lies on
/// the segment between the values at u and v: the compression to the span has
/// a convex (elliptical) numerical range containing both endpoints.
[[nodiscard]] inline std::optional<VectorXcd> solve_in_span(
    const MatrixXcd& d, const VectorXcd& u, const VectorXcd& v,
    std::complex<double> z, double tol) {
  VectorXcd e1 = u.normalized();
  VectorXcd w = v - e1 * (e1.adjoint() * v)(0);
  if (w.norm() < 1e-12) return std::nullopt;
  VectorXcd e2 = w.normalized();
  MatrixXcd m(2, 2);
  m(0, 0) = (e1.adjoint() * d * e1)(0);
  m(0, 1) = (e1.adjoint() * d * e2)(0);
  m(1, 0) = (e2.adjoint() * d * e1)(0);
  m(1, 1) = (e2.adjoint() * d * e2)(0);
  const auto value = [&](double t, double phi) {
    const std::complex<double> c0 = std::cos(t);
    const std::complex<double> c1 =
        std::sin(t) * std::complex<double>(std::cos(phi), std::sin(phi));
    return std::conj(c0) * (m(0, 0) * c0 + m(0, 1) * c1) +
           std::conj(c1) * (m(1, 0) * c0 + m(1, 1) * c1);
  };
  double bt = 0.0, bp = 0.0;
  double berr = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 48;
  for (int i = 0; i <= kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double t = 0.5 * kPi * i / kGrid;
      const double phi = 2.0 * kPi * j / kGrid;
      const double err = std::abs(value(t, phi) - z);
      if (err < berr) {
        berr = err;
        bt = t;
        bp = phi;
      }
    }
  // Newton on the two real equations with a numeric Jacobian.
  for (int it = 0; it < 60 && berr > tol * 1e-3; ++it) {
    const double h = 1e-7;
    const std::complex<double> f0 = value(bt, bp) - z;
    const std::complex<double> ft = (value(bt + h, bp) - z - f0) / h;
    const std::complex<double> fp = (value(bt, bp + h) - z - f0) / h;
    const double det = ft.real() * fp.imag() - ft.imag() * fp.real();
    if (std::abs(det) < 1e-18) break;
    const double dt = (-f0.real() * fp.imag() + f0.imag() * fp.real()) / det;
    const double dp = (-ft.real() * f0.imag() + ft.imag() * f0.real()) / det;
    double step = 1.0;
    for (int ls = 0; ls < 12; ++ls) {
      const double nt = bt + step * dt, np = bp + step * dp;
      const double err = std::abs(value(nt, np) - z);
      if (err < berr) {
        berr = err;
        bt = nt;
        bp = np;
        break;
      }
      step *= 0.5;
    }
  }
  if (berr > std::max(tol, 1e-9) * 10.0 + 1e-12) return std::nullopt;
  const std::complex<double> c1 =
      std::sin(bt) * std::complex<double>(std::cos(bp), std::sin(bp));
  VectorXcd c = e1 * std::cos(bt) + e2 * c1;
  return c.normalized();
}

/// Witness search for 0 in W(D): collects boundary and interpolated points
/// of the range, then reduces along segments and triangles through zero.
/// Expects D normalized to unit scale; tolerances are absolute.
[[nodiscard]] inline std::optional<VectorXcd> zero_range_witness(
    const MatrixXcd& d, double tol) {
  const int m = static_cast<int>(d.rows());
  std::vector<RangePoint> pts;
  const auto push = [&](const VectorXcd& c) {
    RangePoint p;
    p.c = c.normalized();
    p.z = range_value(d, p.c);
    pts.push_back(std::move(p));
  };

  const MatrixXcd h = 0.5 * (d + d.adjoint());
  const MatrixXcd s = (d - d.adjoint()) * std::complex<double>(0.0, -0.5);
  for (const MatrixXcd* part : {&h, &s}) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(*part);
    const VectorXd ev = es.eigenvalues();
    push(es.eigenvectors().col(0));
    push(es.eigenvectors().col(m - 1));
    // Interpolate extremal eigenvectors to zero out one coordinate of the
    // range value.
    const double lmin = ev(0), lmax = ev(m - 1);
    if (lmin <= 0.0 && lmax >= 0.0) {
      const double t2 =
          (lmax - lmin > 1e-18) ? std::clamp(lmax / (lmax - lmin), 0.0, 1.0)
                                : 1.0;
      push(es.eigenvectors().col(0) * std::sqrt(t2) +
           es.eigenvectors().col(m - 1) * std::sqrt(1.0 - t2));
    }
  }
  for (int i = 0; i < 24; ++i) {
    const double phi = 2.0 * kPi * i / 24.0;
    const std::complex<double> p(std::cos(-phi), std::sin(-phi));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
        0.5 * (p * d + std::conj(p) * d.adjoint()));
    push(es.eigenvectors().col(m - 1));  // support point in direction phi
  }

  for (const RangePoint& p : pts)
    if (std::abs(p.z) <= tol) return p.c;

  // Segments through zero.
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const std::complex<double> za = pts[i].z, zb = pts[j].z;
      const std::complex<double> dir = zb - za;
      const double len2 = std::norm(dir);
      if (len2 < 1e-30) continue;
      const double tpar = -(za.real() * dir.real() + za.imag() * dir.imag()) / len2;
      if (tpar < -1e-9 || tpar > 1.0 + 1e-9) continue;
      const std::complex<double> foot = za + tpar * dir;
      if (std::abs(foot) > 1e-6) continue;
      if (auto c = solve_in_span(d, pts[i].c, pts[j].c,
                                 std::complex<double>(0, 0), tol))
        return c;
    }

  // Triangles containing zero: cut the segment [za, zb] with the ray from zc
  // through zero, then reduce twice.
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const std::complex<double> za = pts[i].z, zb = pts[j].z,
                                   zc = pts[k].z;
        const auto cross = [](std::complex<double> p, std::complex<double> q) {
          return p.real() * q.imag() - p.imag() * q.real();
        };
        const double d1 = cross(zb - za, -za);
        const double d2 = cross(zc - zb, -zb);
        const double d3 = cross(za - zc, -zc);
        const bool inside = (d1 >= 0 && d2 >= 0 && d3 >= 0) ||
                            (d1 <= 0 && d2 <= 0 && d3 <= 0);
        if (!inside) continue;
        // Intersection of segment [za, zb] with the line spanned by zc and 0.
        const double denom = cross(zb - za, zc);
        if (std::abs(denom) < 1e-30) continue;
        const double tpar = cross(-za, zc) / denom;
        if (tpar < -1e-9 || tpar > 1 + 1e-9) continue;
        const std::complex<double> q = za + tpar * (zb - za);
        auto cq = solve_in_span(d, pts[i].c, pts[j].c, q, tol);
        if (!cq) continue;
        if (auto c = solve_in_span(d, *cq, pts[k].c,
                                   std::complex<double>(0, 0), tol))
          return c;
      }
  return std::nullopt;
}

[[nodiscard]] inline OrthResult orth_complex_field(const Element& a,
                                                   const Element& b,
                                                   const ElementAnalysis& an_a,
                                                   double tol) {
  const double scale = an_a.norm * operator_norm(b);
  OrthResult res;
  if (scale <= 0.0) {
    res.orthogonal = true;
    res.witness = trivial_witness(a, an_a);
    return res;
  }
  // Block-diagonal compression over the concatenated frames.
  std::vector<std::pair<int, int>> spans;  // (block, offset)
  int total = 0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const int mk = an_a.frame.frames[k].cols();
    if (mk > 0) spans.emplace_back(static_cast<int>(k), total);
    total += mk;
  }
  MatrixXcd d = MatrixXcd::Zero(total, total);
  for (const auto& [k, off] : spans) {
    const KMatrix& frame = an_a.frame.frames[static_cast<std::size_t>(k)];
    const KMatrix dk = frame_compression(a.blocks[static_cast<std::size_t>(k)],
                                         b.blocks[static_cast<std::size_t>(k)],
                                         frame) *
                       (1.0 / scale);
    d.block(off, off, frame.cols(), frame.cols()) = embed_complex(dk);
  }
  const double margin = numerical_range_margin(d);
  res.orthogonal = margin <= tol;
  if (!res.orthogonal) {
    res.witness.residual = margin;
    return res;
  }
  if (auto c = zero_range_witness(d, tol)) {
    BlockVector x = BlockVector::zero(*a.alg);
    for (const auto& [k, off] : spans) {
      const KMatrix& frame = an_a.frame.frames[static_cast<std::size_t>(k)];
      KMatrix coeff(ScalarKind::Complex, frame.cols(), 1);
      for (int j = 0; j < frame.cols(); ++j)
        coeff.at(j, 0) = Scalar::from_std_complex((*c)(off + j));
      add_frame_combo(x, k, frame, coeff, 1.0);
    }
    res.witness.kind = OrthWitness::Kind::Vector;
    res.witness.x = x;
    const Scalar val = inner_product_F(a.apply(x), b.apply(x), *a.alg);
    res.witness.residual = val.modulus() / scale;
  }
  return res;
}

}  // namespace detail

/// Birkhoff-James orthogonality A perp B, decided through the compression of
/// the pairing to the norm-attaining subspace of A. Over R zero must lie in
/// the closed interval of attainable form values; over C in the numerical
/// range of the compression. By convention 0 is orthogonal to everything.
[[nodiscard]] inline OrthResult is_bj_orthogonal(const Element& a,
                                                 const Element& b,
                                                 const ElementAnalysis& an_a,
                                                 double tol = kDefaultTol) {
  if (a.alg != b.alg && !(*a.alg == *b.alg))
    throw Error("is_bj_orthogonal: descriptor mismatch");
  return a.alg->field() == FieldTag::Real
             ? detail::orth_real_field(a, b, an_a, tol)
             : detail::orth_complex_field(a, b, an_a, tol);
}

[[nodiscard]] inline OrthResult is_bj_orthogonal(const Element& a,
                                                 const Element& b,
                                                 double tol = kDefaultTol) {
  return is_bj_orthogonal(a, b, analyze(a, tol), tol);
}

// ---------------------------------------------------------------------------
// Definitional oracle: minimize || A + lambda B || over the base field.
// ---------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline double norm_at(const Element& a, const Element& b,
                                    const Scalar& lambda) {
  return operator_norm(a + scale_field(b, lambda));
}

}  // namespace detail

/// Brute-force orthogonality: golden-section over the reals, a coarse polar
/// grid followed by compass descent over the complexes. The objective is
/// convex and coercive, so the minimizer lies inside the default radius
/// 4 ||A|| / ||B||.
[[nodiscard]] inline OrthResult bj_oracle(const Element& a, const Element& b,
                                          double tol = kDefaultTol,
                                          double radius = 0.0) {
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  OrthResult res;
  if (na == 0.0 || nb == 0.0) {
    res.orthogonal = true;
    res.witness.kind = OrthWitness::Kind::MinimizingScalar;
    res.witness.lambda_star = Scalar::zero(
        a.alg->field() == FieldTag::Real ? ScalarKind::Real : ScalarKind::Complex);
    return res;
  }
  if (radius <= 0.0) radius = 4.0 * na / nb;

  double best = na;
  Scalar best_lambda = Scalar::zero(a.alg->field() == FieldTag::Real
                                        ? ScalarKind::Real
                                        : ScalarKind::Complex);
  if (a.alg->field() == FieldTag::Real) {
    const auto f = [&](double t) {
      return detail::norm_at(a, b, Scalar::real(t));
    };
    double lo = -radius, hi = radius;
    const double gr = 0.6180339887498949;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 90; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = f(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = f(d);
      }
    }
    const double t = fc < fd ? c : d;
    const double ft = std::min(fc, fd);
    if (ft < best) {
      best = ft;
      best_lambda = Scalar::real(t);
    }
  } else {
    const auto f = [&](std::complex<double> l) {
      return detail::norm_at(a, b, Scalar::from_std_complex(l));
    };
    std::complex<double> bl(0.0, 0.0);
    for (int ri = 1; ri <= 16; ++ri)
      for (int ai = 0; ai < 24; ++ai) {
        const double r = radius * ri / 16.0;
        const double th = 2.0 * kPi * ai / 24.0;
        const std::complex<double> l(r * std::cos(th), r * std::sin(th));
        const double v = f(l);
        if (v < best) {
          best = v;
          bl = l;
        }
      }
    double step = radius / 16.0;
    while (step > 1e-13 * radius) {
      bool moved = false;
      for (int dir = 0; dir < 8; ++dir) {
        const double th = 2.0 * kPi * dir / 8.0;
        const std::complex<double> l =
            bl + step * std::complex<double>(std::cos(th), std::sin(th));
        const double v = f(l);
        if (v < best - 1e-18) {
          best = v;
          bl = l;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    best_lambda = Scalar::from_std_complex(bl);
  }
  res.orthogonal = best >= na * (1.0 - tol);
  res.witness.kind = OrthWitness::Kind::MinimizingScalar;
  res.witness.lambda_star = best_lambda;
  res.witness.residual = (na - best) / na;
  return res;
}

// ---------------------------------------------------------------------------
// Outgoing-neighborhood containment and equality.
// ---------------------------------------------------------------------------

/// A^perp is contained in B^perp iff every norm frame of A sits inside the
/// corresponding frame of B and one nonzero base-field scalar alpha maps B to
/// A on all of M_0^*(A): A_i x = alpha (B_i x). The scalar is recovered by
/// least squares over the frames and residual-checked.
[[nodiscard]] inline bool neighborhood_contained(const Element& a,
                                                 const Element& b,
                                                 double tol = kDefaultTol) {
  if (!(*a.alg == *b.alg))
    throw Error("neighborhood_contained: descriptor mismatch");
  const ElementAnalysis an_b = analyze(b, tol);
  if (an_b.norm == 0.0) return true;  // B = 0 has full neighborhood
  const ElementAnalysis an_a = analyze(a, tol);
  if (an_a.norm == 0.0) return false;  // A = 0, B != 0
  const double itol = std::max(tol, 1e-8);

  // Frame inclusion plus collection of the least-squares data for alpha.
  const bool complex_field = a.alg->field() == FieldTag::Complex;
  std::complex<double> num(0.0, 0.0);
  double den = 0.0;
  std::vector<std::pair<int, KMatrix>> cols;  // (block, frame column)
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const KMatrix& fa = an_a.frame.frames[k];
    if (fa.cols() == 0) continue;
    const KMatrix& fb = an_b.frame.frames[k];
    for (int j = 0; j < fa.cols(); ++j) {
      const KMatrix x = fa.col(j);
      KMatrix proj(x.kind(), x.rows(), 1);
      for (int c = 0; c < fb.cols(); ++c)
        proj += fb.col(c).scale_right(inner(x, fb.col(c)));
      if ((x - proj).frobenius() > itol) return false;
      const KMatrix ax = a.blocks[k] * x;
      const KMatrix bx = b.blocks[k] * x;
      const Scalar ip = inner(ax, bx);  // (B x)^* (A x)
      if (complex_field)
        num += std::complex<double>(ip.w, ip.x);
      else
        num += ip.w;
      den += bx.frobenius2();
      cols.emplace_back(static_cast<int>(k), x);
    }
  }
  if (den <= 0.0) return false;
  const std::complex<double> alpha = num / den;
  if (std::abs(alpha) <= tol) return false;
  const Scalar alpha_s = complex_field
                             ? Scalar::complex(alpha.real(), alpha.imag())
                             : Scalar::real(alpha.real());
  for (const auto& [k, x] : cols) {
    const KMatrix ax = a.blocks[static_cast<std::size_t>(k)] * x;
    KMatrix bx = b.blocks[static_cast<std::size_t>(k)] * x;
    if (complex_field)
      bx = bx.scale_left(alpha_s);
    else
      bx *= alpha_s.w;
    if ((ax - bx).frobenius() > itol * an_a.norm) return false;
  }
  return true;
}

[[nodiscard]] inline bool neighborhood_equal(const Element& a, const Element& b,
                                             double tol = kDefaultTol) {
  return neighborhood_contained(a, b, tol) && neighborhood_contained(b, a, tol);
}

// ---------------------------------------------------------------------------
// Sampling from A^perp through supporting-functional hyperplanes.
// ---------------------------------------------------------------------------

/// Restriction modes for the Gaussian part of the successor sampler.
enum class SuccessorMode { Full, NormBlocks, SingleBlock };

/// Value of the functional X -> <A x, X x>_F at a fixed unit x in M_0(A).
[[nodiscard]] inline Scalar functional_value(const Element& a,
                                             const BlockVector& x,
                                             const Element& g) {
  return inner_product_F(g.apply(x), a.apply(x), *a.alg);
}

/// Draws a random element of A^perp: a Gaussian element projected onto the
/// kernel of the supporting functional at a random norm-attaining vector.
/// Requires A != 0.
[[nodiscard]] inline Element random_orthogonal_successor(
    const Element& a, const ElementAnalysis& an_a, Rng& rng,
    SuccessorMode mode = SuccessorMode::Full) {
  if (an_a.norm <= 0.0)
    throw Error("random_orthogonal_successor: zero element");
  // Random unit x in M_0(A).
  BlockVector x = BlockVector::zero(*a.alg);
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const KMatrix& frame = an_a.frame.frames[k];
    if (frame.cols() == 0) continue;
    KMatrix coeff = random_kmatrix(frame.kind(), frame.cols(), 1, rng);
    detail::add_frame_combo(x, static_cast<int>(k), frame, coeff, 1.0);
  }
  const double nx = x.norm();
  for (KMatrix& blk : x.blocks) blk *= 1.0 / nx;

  Element g(a.alg);
  std::vector<int> allowed;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    if (mode == SuccessorMode::NormBlocks && !an_a.frame.attains(static_cast<int>(k)))
      continue;
    allowed.push_back(static_cast<int>(k));
  }
  if (mode == SuccessorMode::SingleBlock)
    allowed = {allowed[static_cast<std::size_t>(rng.index(
        static_cast<int>(allowed.size())))]};
  for (int k : allowed) {
    const BlockSpec& spec = a.alg->blocks()[static_cast<std::size_t>(k)];
    g.blocks[static_cast<std::size_t>(k)] =
        random_kmatrix(spec.kind, spec.n, spec.n, rng);
  }

  const Scalar fg = functional_value(a, x, g);
  const Scalar fa = functional_value(a, x, a);  // = ||A||^2 > 0
  const Scalar coeff = fg * (1.0 / fa.w);
  Element b = g - scale_field(a, coeff);
  // The projection can cancel g entirely (g proportional to a on its
  // support); the rounding residue would masquerade as a multiple of a, so
  // clamp it to the exact zero element, a legitimate successor.
  if (b.frobenius() <= 1e-10 * std::max(g.frobenius(), 1.0))
    b = Element::zero(a.alg);
  return b;
}

}  // namespace bjclass
