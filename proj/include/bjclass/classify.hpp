#pragma once

#include <map>
#include <set>

#include "bjclass/subspace.hpp"

namespace bjclass {

/// Raised when BJ data cannot decide the base field (one-dimensional case).
class FieldUndecidable : public Error {
 public:
  FieldUndecidable() : Error("field undecidable in dimension one") {}
};

enum class Provenance { Structural, BJProcedure };

/// Pipeline knobs. Seeds derive per stage, so reports are reproducible.
struct ClassifyConfig {
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  int left_trials = 120;        ///< sampled left-symmetry trials per candidate
  int random_unimodular = 8;    ///< random unimodular scalars per block
  Provenance mode = Provenance::BJProcedure;
};

// ---------------------------------------------------------------------------
// Dictionaries.
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::vector<Scalar> coordinate_unit_scalars(
    ScalarKind kind) {
  switch (kind) {
    case ScalarKind::Real:
      return {Scalar::real(1)};
    case ScalarKind::Complex:
      return {Scalar::complex(1, 0), Scalar::complex(0, 1)};
    default:
      return {Scalar::quaternion(1, 0, 0, 0), Scalar::quaternion(0, 1, 0, 0),
              Scalar::quaternion(0, 0, 1, 0), Scalar::quaternion(0, 0, 0, 1)};
  }
}

[[nodiscard]] inline std::vector<Scalar> imaginary_unit_scalars(
    ScalarKind kind) {
  switch (kind) {
    case ScalarKind::Real:
      return {};
    case ScalarKind::Complex:
      return {Scalar::complex(0, 1)};
    default:
      return {Scalar::quaternion(0, 1, 0, 0), Scalar::quaternion(0, 0, 1, 0),
              Scalar::quaternion(0, 0, 0, 1)};
  }
}

[[nodiscard]] inline Element single_scalar_element(const AlgebraPtr& alg,
                                                   int block,
                                                   const Scalar& s) {
  KMatrix m(alg->blocks()[static_cast<std::size_t>(block)].kind, 1, 1);
  m.at(0, 0) = s;
  return Element::single_block(alg, block, m);
}

/// Candidate generators for the left-symmetric set: coordinate and random
/// unimodular scalars in every 1-by-1 block, plus rank-one decoys inside the
/// bigger blocks that the symmetry filter is expected to reject.
[[nodiscard]] inline std::vector<Element> left_symmetric_dictionary(
    const AlgebraPtr& alg, const ClassifyConfig& cfg) {
  std::vector<Element> out;
  Rng rng = Rng::derived(cfg.seed, 0xd1c7);
  for (int k = 0; k < alg->block_count(); ++k) {
    const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
    if (b.n == 1) {
      for (const Scalar& u : coordinate_unit_scalars(b.kind))
        out.push_back(single_scalar_element(alg, k, u));
      for (int t = 0; t < cfg.random_unimodular; ++t)
        out.push_back(
            single_scalar_element(alg, k, random_unit_scalar(b.kind, rng)));
    } else {
      KMatrix decoy(b.kind, b.n, b.n);
      decoy.at(0, 0) = Scalar::one(b.kind);
      out.push_back(Element::single_block(alg, k, decoy));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Row caching for functional stacks.
// ---------------------------------------------------------------------------

namespace detail {

/// Precomputed supporting-functional rows of smooth generators, assembled
/// into null-space problems without re-deriving frames.
class RowStack {
 public:
  explicit RowStack(AlgebraPtr alg) : alg_(std::move(alg)) {}

  int add(const Element& g, double tol) {
    const ElementAnalysis an = analyze(g, tol);
    if (!is_smooth(an)) throw Error("RowStack: generator is not smooth");
    rows_.push_back(functional_rows(alg_, supporting_functional(g, an)));
    return static_cast<int>(rows_.size()) - 1;
  }

  [[nodiscard]] Subspace kernel(const std::vector<int>& ids) const {
    const int d = flat_dimension(*alg_);
    int total = 0;
    for (int id : ids)
      total += static_cast<int>(rows_[static_cast<std::size_t>(id)].rows());
    MatrixXd stack(total, d);
    int at = 0;
    for (int id : ids) {
      const MatrixXd& r = rows_[static_cast<std::size_t>(id)];
      stack.middleRows(at, r.rows()) = r;
      at += static_cast<int>(r.rows());
    }
    return Subspace::from_nullspace(alg_, stack);
  }

 private:
  AlgebraPtr alg_;
  std::vector<MatrixXd> rows_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Property FL.
// ---------------------------------------------------------------------------

/// Finiteness of the family of outgoing neighborhoods of left-symmetric
/// elements of S, decided by per-block dimension over the base field:
/// each block component of S may be at most a line over F.
[[nodiscard]] inline bool has_property_FL(const Subspace& s) {
  const AlgebraDescriptor& alg = *s.algebra();
  const int limit = alg.field() == FieldTag::Complex ? 2 : 1;
  for (int k = 0; k < alg.block_count(); ++k)
    if (s.block_dim(k) > limit) return false;
  return true;
}

/// Monte Carlo cross-check of has_property_FL: samples single-block elements
/// of S and counts distinct outgoing neighborhoods; more classes than
/// occupied blocks signals an infinite family.
[[nodiscard]] inline bool fl_sampled_crosscheck(const Subspace& s,
                                                std::uint64_t seed,
                                                int samples = 50,
                                                double tol = kDefaultTol) {
  if (s.is_zero()) return true;
  Rng rng = Rng::derived(seed, 0xf1);
  std::vector<int> live;
  for (int k = 0; k < s.algebra()->block_count(); ++k)
    if (s.block_dim(k) > 0) live.push_back(k);
  std::vector<Element> picks;
  for (int t = 0; t < samples; ++t) {
    const int k = live[static_cast<std::size_t>(rng.index(
        static_cast<int>(live.size())))];
    // random element of the block-k component of S
    const std::vector<Element> bb = s.block_basis(k);
    Element e = Element::zero(s.algebra());
    for (const Element& v : bb) e += v * rng.gaussian();
    if (e.frobenius() < 1e-9) continue;
    picks.push_back(e * (1.0 / e.frobenius()));
  }
  int classes = 0;
  std::vector<Element> reps;
  for (const Element& e : picks) {
    bool fresh = true;
    for (const Element& r : reps)
      if (neighborhood_equal(e, r, tol)) {
        fresh = false;
        break;
      }
    if (fresh) {
      reps.push_back(e);
      ++classes;
    }
  }
  return classes <= static_cast<int>(live.size());
}

// ---------------------------------------------------------------------------
// Pseudo-abelian summand through left symmetry.
// ---------------------------------------------------------------------------

struct SummandSplit {
  Subspace nonpseudo;  ///< the common neighborhood of the left-symmetric set
  Subspace pseudo;     ///< its second perp
  std::vector<Element> left_generators;
};

[[nodiscard]] inline bool accept_left_symmetric(const Element& e,
                                                const ClassifyConfig& cfg,
                                                std::uint64_t salt) {
  if (cfg.mode == Provenance::Structural)
    return is_left_symmetric_structural(e, cfg.tol);
  return is_left_symmetric_sampled(e, cfg.left_trials,
                                   cfg.seed * 0x9e37u + salt, cfg.tol)
      .verdict;
}

/// Splits the algebra into its nonpseudo-abelian summand L^perp and its
/// pseudo-abelian summand L^perpperp, both derived from orthogonality data:
/// L is discovered by the left-symmetry test over a spanning dictionary, and
/// the second perp intersects the neighborhoods of the smooth elements that
/// L^perp contains.
[[nodiscard]] inline SummandSplit pseudo_abelian_summand(
    const AlgebraPtr& alg, const ClassifyConfig& cfg = {}) {
  SummandSplit out{Subspace::full(alg), Subspace::zero_space(alg), {}};
  std::uint64_t salt = 0;
  for (const Element& cand : left_symmetric_dictionary(alg, cfg))
    if (accept_left_symmetric(cand, cfg, ++salt))
      out.left_generators.push_back(cand);
  out.nonpseudo = perp_subspace(alg, out.left_generators, cfg.tol);

  // Smooth generators of the second perp: coordinate rank-ones that live
  // inside L^perp.
  std::vector<Element> units;
  for (int k = 0; k < alg->block_count(); ++k) {
    const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
    for (int s = 0; s < b.n; ++s)
      for (int t = 0; t < b.n; ++t)
        for (const Scalar& u : coordinate_unit_scalars(b.kind)) {
          KMatrix us(b.kind, b.n, 1);
          us.at(s, 0) = u;
          KMatrix et(b.kind, b.n, 1);
          et.at(t, 0) = Scalar::one(b.kind);
          const Element e =
              Element::single_block(alg, k, rank_one(us, et));
          if (out.nonpseudo.contains(e)) units.push_back(e);
        }
  }
  out.pseudo = perp_subspace(alg, units, cfg.tol);
  return out;
}

/// Coordinate span of the blocks selected by `keep`.
template <typename Pred>
[[nodiscard]] inline Subspace structural_block_span(const AlgebraPtr& alg,
                                                    Pred keep) {
  const int d = flat_dimension(*alg);
  std::vector<int> cols;
  for (int k = 0; k < alg->block_count(); ++k) {
    if (!keep(alg->blocks()[static_cast<std::size_t>(k)])) continue;
    const auto [lo, hi] = flat_block_range(*alg, k);
    for (int i = lo; i < hi; ++i) cols.push_back(i);
  }
  MatrixXd basis = MatrixXd::Zero(d, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    basis(cols[j], static_cast<int>(j)) = 1.0;
  return Subspace(alg, basis);
}

// ---------------------------------------------------------------------------
// Minimal FL sets, block counts, dimension.
// ---------------------------------------------------------------------------

struct FlSet {
  std::vector<Element> elements;  ///< smooth, single-block, imaginary units
  int s = 0;
  Subspace core;  ///< the intersection of their neighborhoods inside P
};

/// Smooth elements realizing property FL with minimal cardinality inside the
/// pseudo-abelian summand P: one imaginary unit per complex block, three per
/// quaternionic block. Minimality is certified by leave-one-out failure and
/// by the rank count s = dim P - dim core.
[[nodiscard]] inline FlSet minimal_fl_set_relative(const AlgebraPtr& alg,
                                                   const Subspace& p,
                                                   double tol = kDefaultTol) {
  FlSet out{{}, 0, p};
  if (p.is_zero()) return out;
  if (alg->field() == FieldTag::Complex) {
    // complex homogeneity already collapses every block to one neighborhood
    if (!has_property_FL(p))
      throw Error("minimal_fl_set: complex summand fails property FL");
    return out;
  }
  for (int k = 0; k < alg->block_count(); ++k) {
    if (p.block_dim(k) == 0) continue;
    const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
    if (b.n != 1)
      throw Error("minimal_fl_set: summand has a block of size > 1");
    for (const Scalar& u : imaginary_unit_scalars(b.kind))
      out.elements.push_back(single_scalar_element(alg, k, u));
  }
  out.s = static_cast<int>(out.elements.size());
  out.core = perp_subspace(alg, out.elements, tol).intersect(p);
  if (!has_property_FL(out.core))
    throw Error("minimal_fl_set: constructed set fails property FL");
  if (out.core.dim() + out.s != p.dim())
    throw Error("minimal_fl_set: dependent functionals in FL set");
  // leave-one-out: no smaller subset of the construction has property FL
  for (int m = 0; m < out.s; ++m) {
    std::vector<Element> rest;
    for (int i = 0; i < out.s; ++i)
      if (i != m) rest.push_back(out.elements[static_cast<std::size_t>(i)]);
    if (has_property_FL(perp_subspace(alg, rest, tol).intersect(p)))
      throw Error("minimal_fl_set: set is not minimal");
  }
  return out;
}

/// One representative per occupied block of S (zero elements never count as
/// left-symmetric representatives).
[[nodiscard]] inline std::vector<Element> block_representatives(
    const Subspace& s) {
  std::vector<Element> reps;
  for (int k = 0; k < s.algebra()->block_count(); ++k) {
    if (s.block_dim(k) == 0) continue;
    const std::vector<Element> bb = s.block_basis(k);
    if (!bb.empty()) reps.push_back(bb.front());
  }
  return reps;
}

/// Number of distinct outgoing neighborhoods among the left-symmetric
/// representatives of the FL core, which equals the number of blocks.
[[nodiscard]] inline int count_blocks_relative(const FlSet& fl,
                                               double tol = kDefaultTol) {
  const std::vector<Element> reps = block_representatives(fl.core);
  std::vector<Element> classes;
  for (const Element& r : reps) {
    bool fresh = true;
    for (const Element& c : classes)
      if (neighborhood_equal(r, c, tol)) {
        fresh = false;
        break;
      }
    if (fresh) classes.push_back(r);
  }
  return static_cast<int>(classes.size());
}

// ---------------------------------------------------------------------------
// Field detection.
// ---------------------------------------------------------------------------

namespace detail {

/// Blockwise unimodular normalization of a pseudo-abelian element.
[[nodiscard]] inline Element normalize_entries(const Element& e,
                                               const Subspace& p) {
  Element out = e;
  for (int k = 0; k < e.alg->block_count(); ++k) {
    if (p.block_dim(k) == 0) continue;
    Scalar& s = out.blocks[static_cast<std::size_t>(k)].at(0, 0);
    const double m = s.modulus();
    if (m > 1e-12) s = s * (1.0 / m);
  }
  return out;
}

[[nodiscard]] inline Element random_in_block(const Subspace& p, int k,
                                             Rng& rng) {
  Element e = Element::zero(p.algebra());
  for (const Element& v : p.block_basis(k)) e += v * rng.gaussian();
  const double n = e.frobenius();
  return n > 1e-12 ? e * (1.0 / n) : e;
}

}  // namespace detail

/// Decides the base field of a pseudo-abelian summand from orthogonality
/// data alone. The left side perturbs single-block unimodular elements: a
/// changed neighborhood exposes an infinite left-symmetric family. The right
/// side perturbs full unimodular tuples the same way. The field is complex
/// iff the left family is finite while the right one is infinite; if every
/// probed pair shares one neighborhood the summand is a line and the field
/// cannot be decided.
[[nodiscard]] inline FieldTag detect_field_relative(const Subspace& p,
                                                    std::uint64_t seed,
                                                    double tol = kDefaultTol) {
  const AlgebraPtr alg = p.algebra();
  if (p.is_zero()) throw Error("detect_field: empty pseudo-abelian summand");
  Rng rng = Rng::derived(seed, 0xf1e1d);
  std::vector<int> live;
  for (int k = 0; k < alg->block_count(); ++k)
    if (p.block_dim(k) > 0) live.push_back(k);

  // Dimension-one gate: all nonzero elements share one neighborhood.
  {
    std::vector<Element> probes;
    for (int k : live) probes.push_back(detail::random_in_block(p, k, rng));
    for (int t = 0; t < 4; ++t) probes.push_back(p.random_element(rng));
    bool all_equal = true;
    for (std::size_t i = 0; i + 1 < probes.size() && all_equal; ++i)
      for (std::size_t j = i + 1; j < probes.size() && all_equal; ++j)
        if (probes[i].frobenius() > 1e-9 && probes[j].frobenius() > 1e-9 &&
            !neighborhood_equal(probes[i], probes[j], tol))
          all_equal = false;
    if (all_equal) throw FieldUndecidable();
  }

  bool left_infinite = false;
  for (int k : live) {
    for (int t = 0; t < 3 && !left_infinite; ++t) {
      const Element u =
          detail::normalize_entries(detail::random_in_block(p, k, rng), p);
      Element moved = u + detail::random_in_block(p, k, rng) * 0.25;
      moved = detail::normalize_entries(moved, p);
      if (moved.frobenius() < 1e-9) continue;
      if (!neighborhood_equal(u, moved, tol)) left_infinite = true;
    }
    if (left_infinite) break;
  }

  bool right_infinite = false;
  for (int t = 0; t < 4 && !right_infinite; ++t) {
    Element u = Element::zero(alg);
    for (int k : live) u += detail::random_in_block(p, k, rng);
    u = detail::normalize_entries(u, p);
    Element moved = u + p.random_element(rng) * 0.05;
    moved = detail::normalize_entries(moved, p);
    if (!neighborhood_equal(u, moved, tol)) right_infinite = true;
  }

  if (!left_infinite && right_infinite) return FieldTag::Complex;
  if (left_infinite && !right_infinite)
    throw Error("detect_field: inconsistent finiteness pattern");
  return FieldTag::Real;
}

// ---------------------------------------------------------------------------
// Counting real blocks (real field only).
// ---------------------------------------------------------------------------

/// The candidate set Xi of left-symmetric elements whose neighborhood can
/// replace one member of the minimal FL set while keeping property FL, the
/// subspace Omega cut out by Xi, and the resulting count of real blocks.
struct RealBlockCount {
  int r = 0;
  Subspace omega;
};

[[nodiscard]] inline RealBlockCount count_real_blocks_relative(
    const AlgebraPtr& alg, const Subspace& p, const FlSet& fl,
    const ClassifyConfig& cfg) {
  if (p.algebra()->field() != FieldTag::Real)
    throw Error("count_real_blocks: field is not R");
  detail::RowStack rows(alg);
  std::vector<int> fl_ids;
  for (const Element& e : fl.elements) fl_ids.push_back(rows.add(e, cfg.tol));

  Rng rng = Rng::derived(cfg.seed, 0xea1);
  std::vector<Element> xi;
  std::vector<int> xi_ids;
  for (int k = 0; k < alg->block_count(); ++k) {
    if (p.block_dim(k) == 0) continue;
    const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
    std::vector<Element> cands;
    for (const Scalar& u : coordinate_unit_scalars(b.kind))
      cands.push_back(single_scalar_element(alg, k, u));
    for (int t = 0; t < cfg.random_unimodular; ++t)
      cands.push_back(
          single_scalar_element(alg, k, random_unit_scalar(b.kind, rng)));
    for (const Element& a : cands) {
      const int aid = rows.add(a, cfg.tol);
      bool in_xi = false;
      for (int m = 0; m < fl.s && !in_xi; ++m) {
        std::vector<int> ids{aid};
        for (int i = 0; i < fl.s; ++i)
          if (i != m) ids.push_back(fl_ids[static_cast<std::size_t>(i)]);
        if (has_property_FL(rows.kernel(ids).intersect(p))) in_xi = true;
      }
      if (in_xi) {
        xi.push_back(a);
        xi_ids.push_back(aid);
      }
    }
  }
  RealBlockCount out{0, xi_ids.empty() ? Subspace::full(alg)
                                       : rows.kernel(xi_ids)};
  const Subspace omega_in_p = out.omega.intersect(p);
  out.omega = omega_in_p;
  // count distinct neighborhoods of the left-symmetric representatives
  std::vector<Element> reps = block_representatives(omega_in_p);
  std::vector<Element> classes;
  for (const Element& r : reps) {
    bool fresh = true;
    for (const Element& c : classes)
      if (neighborhood_equal(r, c, cfg.tol)) {
        fresh = false;
        break;
      }
    if (fresh) classes.push_back(r);
  }
  out.r = static_cast<int>(classes.size());
  return out;
}

// ---------------------------------------------------------------------------
// Abelian summand extraction.
// ---------------------------------------------------------------------------

/// Extracts the abelian summand. Over C, or when the pseudo-abelian summand
/// is a line, it is the pseudo-abelian summand itself. Over R the
/// quaternionic blocks are located through triples of the minimal FL set: a
/// triple belongs to one quaternionic block exactly when some nonzero
/// left-symmetric X keeps all three leave-one-out intersections FL after
/// adjoining X; the neighborhoods of those triples and their adjoined X cut
/// the quaternionic blocks out of the summand.
[[nodiscard]] inline Subspace abelian_summand_relative(
    const AlgebraPtr& alg, const Subspace& p, const ClassifyConfig& cfg) {
  if (p.is_zero()) return p;
  try {
    if (detect_field_relative(p, cfg.seed, cfg.tol) == FieldTag::Complex)
      return p;
  } catch (const FieldUndecidable&) {
    return p;  // a line is abelian
  }
  const FlSet fl = minimal_fl_set_relative(alg, p, cfg.tol);
  if (fl.s <= 2) return p;  // no room for a quaternionic triple

  detail::RowStack rows(alg);
  std::vector<int> fl_ids;
  for (const Element& e : fl.elements) fl_ids.push_back(rows.add(e, cfg.tol));

  Rng rng = Rng::derived(cfg.seed, 0xab311a);
  std::vector<Element> cands;
  std::vector<int> cand_ids;
  for (int k = 0; k < alg->block_count(); ++k) {
    if (p.block_dim(k) == 0) continue;
    const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
    for (const Scalar& u : coordinate_unit_scalars(b.kind))
      cands.push_back(single_scalar_element(alg, k, u));
    for (int t = 0; t < cfg.random_unimodular; ++t)
      cands.push_back(
          single_scalar_element(alg, k, random_unit_scalar(b.kind, rng)));
  }
  for (const Element& x : cands) cand_ids.push_back(rows.add(x, cfg.tol));

  std::set<int> selected;  // row ids of triple members and adjoined X
  for (int a = 0; a < fl.s; ++a)
    for (int b = a + 1; b < fl.s; ++b)
      for (int c = b + 1; c < fl.s; ++c) {
        const int triple[3] = {a, b, c};
        bool triple_hit = false;
        for (std::size_t xi = 0; xi < cands.size(); ++xi) {
          bool all_fl = true;
          for (int drop : triple) {
            std::vector<int> ids{cand_ids[xi]};
            for (int i = 0; i < fl.s; ++i)
              if (i != drop) ids.push_back(fl_ids[static_cast<std::size_t>(i)]);
            if (!has_property_FL(rows.kernel(ids).intersect(p))) {
              all_fl = false;
              break;
            }
          }
          if (all_fl) {
            triple_hit = true;
            selected.insert(cand_ids[xi]);
          }
        }
        if (triple_hit)
          for (int i : triple)
            selected.insert(fl_ids[static_cast<std::size_t>(i)]);
      }
  if (selected.empty()) return p;
  return rows.kernel(std::vector<int>(selected.begin(), selected.end()))
      .intersect(p);
}

// ---------------------------------------------------------------------------
// Signatures and reports.
// ---------------------------------------------------------------------------

/// Recovered invariants of an algebra. For the pseudo-abelian summand these
/// are the base field (or its undecidability in dimension one) and the block
/// counts (r, c, h); the nonpseudo-abelian part is carried as the multiset
/// of its blocks.
struct ClassificationReport {
  bool field_undecidable = false;
  FieldTag field = FieldTag::Real;
  int ell = 0;  ///< number of pseudo-abelian blocks
  int s = 0;    ///< minimal FL-set size
  int dim = 0;  ///< dimension of the pseudo-abelian summand over F
  int r = 0;
  int c = 0;
  int h = 0;
  Subspace pseudo;
  Subspace nonpseudo;
  Subspace abelian;
  std::vector<BlockSpec> nonpseudo_blocks;  ///< sorted multiset
  Provenance provenance = Provenance::BJProcedure;

  ClassificationReport(const AlgebraPtr& alg)
      : pseudo(Subspace::zero_space(alg)),
        nonpseudo(Subspace::zero_space(alg)),
        abelian(Subspace::zero_space(alg)) {}

  void check_consistency() const {
    if (field_undecidable) return;
    if (r < 0 || c < 0 || h < 0 || r + c + h != ell || dim != s + ell)
      throw Error("classification report fails its arithmetic identities");
    if (field == FieldTag::Complex) {
      // complex homogeneity: no FL set needed, every block is complex
      if (h != 0 || r != 0 || s != 0 || c != ell)
        throw Error("complex report fails its arithmetic identities");
    } else if (s != c + 3 * h) {
      throw Error("classification report fails its arithmetic identities");
    }
  }
};

[[nodiscard]] inline std::vector<BlockSpec> sorted_big_blocks(
    const AlgebraDescriptor& alg) {
  std::vector<BlockSpec> big;
  for (const BlockSpec& b : alg.blocks())
    if (b.n > 1) big.push_back(b);
  std::sort(big.begin(), big.end(), [](const BlockSpec& x, const BlockSpec& y) {
    return x.n != y.n ? x.n < y.n : real_dim(x.kind) < real_dim(y.kind);
  });
  return big;
}

/// Ground truth read off the descriptor.
[[nodiscard]] inline ClassificationReport structural_signature(
    const AlgebraPtr& alg) {
  ClassificationReport rep(alg);
  rep.provenance = Provenance::Structural;
  for (const BlockSpec& b : alg->blocks()) {
    if (b.n != 1) continue;
    ++rep.ell;
    if (b.kind == ScalarKind::Real) ++rep.r;
    if (b.kind == ScalarKind::Complex) ++rep.c;
    if (b.kind == ScalarKind::Quaternion) ++rep.h;
  }
  rep.field = alg->field();
  rep.s = rep.c + 3 * rep.h;
  rep.dim = rep.s + rep.ell;
  if (alg->field() == FieldTag::Complex) {
    rep.s = 0;
    rep.dim = rep.ell;  // dimension over C
  }
  rep.field_undecidable = rep.dim == 1 && rep.ell == 1;
  rep.pseudo = structural_block_span(alg, [](const BlockSpec& b) {
    return b.n == 1;
  });
  rep.nonpseudo = structural_block_span(alg, [](const BlockSpec& b) {
    return b.n > 1;
  });
  rep.abelian = structural_block_span(alg, [](const BlockSpec& b) {
    return b.n == 1 && b.kind != ScalarKind::Quaternion;
  });
  rep.nonpseudo_blocks = sorted_big_blocks(*alg);
  if (!rep.field_undecidable) rep.check_consistency();
  return rep;
}

/// Full BJ-procedural signature: summand split, field detection, block and
/// dimension counts, real-block count, abelian summand, and the solved
/// (r, c, h). Inconsistent counts raise instead of degrading silently.
[[nodiscard]] inline ClassificationReport signature(
    const AlgebraPtr& alg, const ClassifyConfig& cfg = {}) {
  if (cfg.mode == Provenance::Structural) return structural_signature(alg);
  ClassificationReport rep(alg);
  rep.provenance = Provenance::BJProcedure;
  const SummandSplit split = pseudo_abelian_summand(alg, cfg);
  rep.pseudo = split.pseudo;
  rep.nonpseudo = split.nonpseudo;
  rep.nonpseudo_blocks = sorted_big_blocks(*alg);
  const Subspace& p = split.pseudo;
  if (p.is_zero()) {
    rep.abelian = Subspace::zero_space(alg);
    rep.field = alg->field();
    return rep;
  }
  bool undecidable = false;
  try {
    rep.field = detect_field_relative(p, cfg.seed, cfg.tol);
  } catch (const FieldUndecidable&) {
    undecidable = true;
  }
  if (undecidable) {
    rep.field_undecidable = true;
    rep.ell = 1;
    rep.s = 0;
    rep.dim = 1;
    rep.r = 1;  // normalized representative of the one-dimensional class
    rep.abelian = p;
    return rep;
  }
  const FlSet fl = minimal_fl_set_relative(alg, p, cfg.tol);
  rep.s = fl.s;
  rep.ell = count_blocks_relative(fl, cfg.tol);
  rep.dim = rep.s + rep.ell;
  if (rep.field == FieldTag::Complex) {
    if (rep.s != 0)
      throw Error("complex pseudo-abelian summand with a nonzero FL set");
    rep.r = 0;
    rep.h = 0;
    rep.c = rep.ell;
    rep.abelian = p;
  } else {
    rep.r = count_real_blocks_relative(alg, p, fl, cfg).r;
    const int twice_h = rep.s - (rep.ell - rep.r);
    if (twice_h < 0 || twice_h % 2 != 0)
      throw Error("block counting produced a non-integer quaternion count");
    rep.h = twice_h / 2;
    rep.c = rep.ell - rep.r - rep.h;
    rep.abelian = abelian_summand_relative(alg, p, cfg);
  }
  rep.check_consistency();
  return rep;
}

/// Signature equality: equal base fields (with the one-dimensional classes
/// identified) and equal (r, c, h), plus equal multisets of nonpseudo-abelian
/// blocks. For pseudo-abelian algebras this is a complete isomorphism
/// invariant.
[[nodiscard]] inline bool signatures_equal(const ClassificationReport& a,
                                           const ClassificationReport& b) {
  if (a.nonpseudo_blocks.size() != b.nonpseudo_blocks.size()) return false;
  for (std::size_t i = 0; i < a.nonpseudo_blocks.size(); ++i)
    if (!(a.nonpseudo_blocks[i] == b.nonpseudo_blocks[i])) return false;
  if (a.field_undecidable != b.field_undecidable) return false;
  if (a.field_undecidable) return true;
  return a.field == b.field && a.r == b.r && a.c == b.c && a.h == b.h;
}

// ---------------------------------------------------------------------------
// Standalone operation fronts (pseudo-abelian algebras).
// ---------------------------------------------------------------------------

namespace detail {
inline void require_pseudo_abelian(const AlgebraDescriptor& alg,
                                   const char* op) {
  if (!alg.is_pseudo_abelian())
    throw Error(std::string(op) + ": algebra is not pseudo-abelian");
}
}  // namespace detail

[[nodiscard]] inline FlSet minimal_fl_set(const AlgebraPtr& alg,
                                          double tol = kDefaultTol) {
  detail::require_pseudo_abelian(*alg, "minimal_fl_set");
  return minimal_fl_set_relative(alg, Subspace::full(alg), tol);
}

[[nodiscard]] inline int count_blocks(const AlgebraPtr& alg,
                                      double tol = kDefaultTol) {
  detail::require_pseudo_abelian(*alg, "count_blocks");
  return count_blocks_relative(minimal_fl_set(alg, tol), tol);
}

[[nodiscard]] inline int dimension_bj(const AlgebraPtr& alg,
                                      double tol = kDefaultTol) {
  detail::require_pseudo_abelian(*alg, "dimension_bj");
  const FlSet fl = minimal_fl_set(alg, tol);
  return fl.s + count_blocks_relative(fl, tol);
}

[[nodiscard]] inline FieldTag detect_field(const AlgebraPtr& alg,
                                           std::uint64_t seed = 1,
                                           double tol = kDefaultTol) {
  detail::require_pseudo_abelian(*alg, "detect_field");
  return detect_field_relative(Subspace::full(alg), seed, tol);
}

[[nodiscard]] inline RealBlockCount count_real_blocks(
    const AlgebraPtr& alg, const ClassifyConfig& cfg = {}) {
  detail::require_pseudo_abelian(*alg, "count_real_blocks");
  return count_real_blocks_relative(
      alg, Subspace::full(alg), minimal_fl_set(alg, cfg.tol), cfg);
}

[[nodiscard]] inline Subspace abelian_summand(const AlgebraPtr& alg,
                                              const ClassifyConfig& cfg = {}) {
  const SummandSplit split = pseudo_abelian_summand(alg, cfg);
  return abelian_summand_relative(alg, split.pseudo, cfg);
}

}  // namespace bjclass
