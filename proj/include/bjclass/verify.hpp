#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "bjclass/catalog.hpp"
#include "bjclass/json_io.hpp"

namespace bjclass {

struct CheckResult {
  std::string id;
  bool pass = true;
  std::string detail;
};

struct VerificationSuite {
  std::string name;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

[[nodiscard]] inline json to_json(const VerificationSuite& s) {
  json checks = json::array();
  for (const CheckResult& c : s.checks)
    checks.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", s.name},
          {"seed", s.seed},
          {"tol", s.tol},
          {"all_pass", s.all_pass()},
          {"checks", std::move(checks)}};
}

struct VerifyOptions {
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  int threads = 0;  ///< 0: BJCLASS_THREADS env or hardware concurrency
  int max_dim = 12;
  bool include_composites = true;
  int orth_pairs_total = 10000;
  int symmetry_elements = 500;
  int left_trials = 300;
  int smooth_elements = 200;
  int kernel_samples = 250;

  /// Scales the element budgets, keeping floors that still exercise every
  /// code path.
  void scale(double f) {
    orth_pairs_total = std::max(500, static_cast<int>(orth_pairs_total * f));
    symmetry_elements = std::max(20, static_cast<int>(symmetry_elements * f));
    smooth_elements = std::max(10, static_cast<int>(smooth_elements * f));
    kernel_samples = std::max(25, static_cast<int>(kernel_samples * f));
  }
};

/// Test-only instrumentation: wraps the fast orthogonality verdict inside the
/// oracle-agreement check so the harness itself can be validated against an
/// intentionally corrupted predicate.
struct VerifyHooks {
  std::function<bool(const Element&, const Element&, bool)> orth_override;
};

namespace detail {

[[nodiscard]] inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BJCLASS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(i) for i in [0, n) on worker threads; results keep index order,
/// so reports are deterministic regardless of scheduling.
template <typename Fn>
[[nodiscard]] std::vector<std::string> parallel_collect(std::size_t n,
                                                        int threads, Fn&& fn) {
  std::vector<std::string> out(n);
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min(worker_count(threads), static_cast<int>(n)));
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        out[i] = std::string("exception: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
  return out;
}

[[nodiscard]] inline CheckResult aggregate(const std::string& id,
                                           const std::vector<AlgebraPtr>& algs,
                                           std::vector<std::string> failures) {
  CheckResult res{id, true, ""};
  int bad = 0;
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (failures[i].empty()) continue;
    ++bad;
    if (bad <= 3)
      os << (bad > 1 ? " | " : "") << format_algebra(*algs[i]) << ": "
         << failures[i];
  }
  if (bad == 0) {
    os << "ok over " << algs.size() << " algebras";
  } else {
    res.pass = false;
    if (bad > 3) os << " | (+" << (bad - 3) << " more)";
  }
  res.detail = os.str();
  return res;
}

/// Element mix for the symmetry checks: Gaussians plus constructed cases
/// that stress every verdict (left-symmetric scalars, unitary multiples,
/// truncations, two-block norm ties, rank-one compressions, zero).
[[nodiscard]] inline Element mixed_test_element(const AlgebraPtr& alg,
                                                Rng& rng, int t) {
  const int nblocks = alg->block_count();
  switch (t % 8) {
    case 0: {  // single-block scalar (left-symmetric when the block is 1x1)
      const int k = rng.index(nblocks);
      const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
      return Element::single_block(
          alg, k, random_kmatrix(b.kind, b.n, b.n, rng));
    }
    case 1:  // scalar multiple of a unitary
      return random_unitary(alg, rng) * std::exp(rng.uniform(-1.0, 1.0));
    case 2: {  // rank-one compression in one block
      const int k = rng.index(nblocks);
      const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
      return Element::single_block(
          alg, k,
          rank_one(random_unit_vector(b.kind, b.n, rng),
                   random_unit_vector(b.kind, b.n, rng)));
    }
    case 3: {  // two blocks tied at the top norm
      Element e = Element::zero(alg);
      const int k1 = rng.index(nblocks);
      const int k2 = rng.index(nblocks);
      for (int k : {k1, k2}) {
        const BlockSpec& b = alg->blocks()[static_cast<std::size_t>(k)];
        KMatrix u = random_unitary_block(b.kind, b.n, rng);
        e.blocks[static_cast<std::size_t>(k)] = u;
      }
      return e;
    }
    case 4:
      return t % 16 == 4 ? Element::zero(alg) : random_element(alg, rng);
    default:
      return random_element(alg, rng);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Orthogonality suite.
// ---------------------------------------------------------------------------

[[nodiscard]] inline CheckResult check_oracle_agreement(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt,
    const VerifyHooks& hooks) {
  const int per_alg = std::max(
      8, static_cast<int>((opt.orth_pairs_total + algs.size() - 1) /
                          std::max<std::size_t>(1, algs.size())));
  std::atomic<int> pairs{0};
  std::atomic<int> disagreements{0};
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x0aacu * (i + 1));
        for (int t = 0; t < per_alg; ++t) {
          const Element a = random_element(alg, rng);
          const Element b =
              t % 2 == 0 ? random_element(alg, rng)
                         : random_orthogonal_successor(a, analyze(a), rng);
          bool fast = is_bj_orthogonal(a, b, opt.tol).orthogonal;
          if (hooks.orth_override) fast = hooks.orth_override(a, b, fast);
          const bool slow = bj_oracle(a, b, opt.tol).orthogonal;
          pairs.fetch_add(1);
          if (fast != slow) {
            disagreements.fetch_add(1);
            // must be tolerance-attributable: retest 10x tighter
            bool fast10 = is_bj_orthogonal(a, b, opt.tol / 10).orthogonal;
            if (hooks.orth_override)
              fast10 = hooks.orth_override(a, b, fast10);
            const bool slow10 = bj_oracle(a, b, opt.tol / 10).orthogonal;
            if (fast10 != slow10)
              return "predicate/oracle disagreement survives 10x tighter "
                     "tolerance (pair " +
                     std::to_string(t) + ")";
          }
        }
        return "";
      });
  CheckResult res = detail::aggregate("orthogonality-oracle-agreement", algs,
                                      std::move(failures));
  const int p = pairs.load(), d = disagreements.load();
  res.detail += "; pairs=" + std::to_string(p) +
                " disagreements=" + std::to_string(d);
  if (p > 0 && d * 1000 > p) {  // 99.9 percent agreement floor
    res.pass = false;
    res.detail += "; agreement below 99.9%";
  }
  return res;
}

[[nodiscard]] inline CheckResult check_orth_invariances(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x10e0u * (i + 1));
        for (int t = 0; t < 20; ++t) {
          const Element a = random_element(alg, rng);
          const Element b =
              t % 2 == 0 ? random_element(alg, rng)
                         : random_orthogonal_successor(a, analyze(a), rng);
          const bool base = is_bj_orthogonal(a, b, opt.tol).orthogonal;
          // homogeneity
          const double mu = std::exp(rng.uniform(-2.0, 2.0));
          const double la = std::exp(rng.uniform(-2.0, 2.0));
          if (is_bj_orthogonal(a * mu, b * la, opt.tol).orthogonal != base)
            return "homogeneity violated";
          // isometry invariance
          const Element u = random_unitary(alg, rng);
          const Element v = random_unitary(alg, rng);
          if (is_bj_orthogonal(apply_isometry(a, u, v),
                               apply_isometry(b, u, v), opt.tol)
                  .orthogonal != base)
            return "isometry invariance violated";
        }
        // zero conventions
        const Element z = Element::zero(alg);
        const Element a = random_element(alg, rng);
        if (!is_bj_orthogonal(z, a, opt.tol).orthogonal ||
            !is_bj_orthogonal(a, z, opt.tol).orthogonal ||
            is_bj_orthogonal(a, a, opt.tol).orthogonal ||
            !is_bj_orthogonal(z, z, opt.tol).orthogonal)
          return "zero-element conventions violated";
        return "";
      });
  return detail::aggregate("orthogonality-invariances", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_subnorm_block_drop(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        if (alg->block_count() < 2) return "";
        Rng rng = Rng::derived(opt.seed, 0xd0b + i);
        for (int t = 0; t < 15; ++t) {
          const Element a = random_element(alg, rng);
          const ElementAnalysis an = analyze(a, opt.tol);
          Element dropped = a;
          bool any = false;
          for (std::size_t k = 0; k < a.blocks.size(); ++k)
            if (!an.frame.attains(static_cast<int>(k))) {
              dropped.blocks[k] =
                  KMatrix::zero(a.blocks[k].kind(), a.blocks[k].rows(),
                                a.blocks[k].cols());
              any = true;
            }
          if (!any) continue;
          if (!neighborhood_equal(a, dropped, opt.tol))
            return "dropping sub-norm blocks changed the neighborhood";
        }
        return "";
      });
  return detail::aggregate("subnorm-block-drop", algs, std::move(failures));
}

[[nodiscard]] inline CheckResult check_norm_oracle(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x2070 + i);
        for (int t = 0; t < 200; ++t) {
          const Element a = random_element(alg, rng);
          const double via_svd = svd(a).norm();
          double maxblock = 0.0;
          for (const KMatrix& b : a.blocks)
            maxblock = std::max(maxblock, operator_norm_block(b));
          if (std::abs(via_svd - maxblock) > 1e-9 * std::max(via_svd, 1.0))
            return "SVD norm disagrees with the blockwise maximum";
          const double brute = norm_bruteforce(a, rng);
          if (std::abs(via_svd - brute) > 1e-6 * std::max(via_svd, 1e-12))
            return "SVD norm disagrees with the sampled supremum";
        }
        return "";
      });
  return detail::aggregate("operator-norm-oracle", algs, std::move(failures));
}

[[nodiscard]] inline CheckResult check_witness_validity(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x817 + i);
        for (int t = 0; t < 25; ++t) {
          const Element a = random_element(alg, rng);
          const ElementAnalysis an = analyze(a, opt.tol);
          const Element b = random_orthogonal_successor(a, an, rng);
          const OrthResult r = is_bj_orthogonal(a, b, an, opt.tol);
          if (!r.orthogonal) return "constructed successor not orthogonal";
          if (r.witness.kind != OrthWitness::Kind::Vector)
            return "missing vector witness";
          const double scale =
              std::max(an.norm * operator_norm(b), 1e-300);
          const Scalar v =
              inner_product_F(a.apply(r.witness.x), b.apply(r.witness.x),
                              *alg);
          if (v.modulus() > 1e-7 * scale)
            return "witness fails its defining identity";
        }
        return "";
      });
  return detail::aggregate("orthogonality-witness-validity", algs,
                           std::move(failures));
}

// ---------------------------------------------------------------------------
// Symmetry suite.
// ---------------------------------------------------------------------------

[[nodiscard]] inline CheckResult check_left_symmetry_agreement(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x1e57 + i);
        for (int t = 0; t < opt.symmetry_elements; ++t) {
          const Element a = detail::mixed_test_element(alg, rng, t);
          const bool structural = is_left_symmetric_structural(a, opt.tol);
          const bool sampled =
              is_left_symmetric_sampled(a, opt.left_trials,
                                        opt.seed + 31 * t + i, opt.tol)
                  .verdict;
          if (structural != sampled)
            return "left-symmetry disagreement (structural=" +
                   std::to_string(structural) + ") at element " +
                   std::to_string(t);
        }
        return "";
      });
  return detail::aggregate("left-symmetry-structural-vs-sampled", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_right_symmetry_agreement(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x2177 + i);
        for (int t = 0; t < opt.symmetry_elements; ++t) {
          const Element a = detail::mixed_test_element(alg, rng, t);
          if (is_right_symmetric(a, opt.tol) !=
              is_right_symmetric_bj(a, opt.tol))
            return "right-symmetry disagreement at element " +
                   std::to_string(t);
        }
        return "";
      });
  return detail::aggregate("right-symmetry-unitary-equivalence", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_smoothness_agreement(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x500 + i);
        for (int t = 0; t < opt.smooth_elements; ++t) {
          const Element a = detail::mixed_test_element(alg, rng, t);
          const ElementAnalysis an = analyze(a, opt.tol);
          const bool smooth = is_smooth(an);
          if (smooth != is_smooth_bj(a, opt.tol))
            return "smoothness disagreement at element " + std::to_string(t);
          if (!smooth) continue;
          const SupportingFunctional f = supporting_functional(a, an);
          if (std::abs(f.value(a).re() - an.norm) > 1e-8 * an.norm)
            return "supporting functional misses the norm";
          // kernel = neighborhood: kernel samples succeed, others fail
          const int on = opt.kernel_samples * 4 / 5;
          for (int s = 0; s < opt.kernel_samples; ++s) {
            Element g = random_element(alg, rng);
            if (s < on) {
              const double before = g.frobenius();
              g -= scale_field(a, f.value(g) * (1.0 / f.value(a).re()));
              // the projection may cancel g entirely (one-dimensional
              // kernels); the rounding residue is not a sample
              if (g.frobenius() <= 1e-10 * std::max(before, 1.0))
                g = Element::zero(alg);
              if (!is_bj_orthogonal(a, g, an, opt.tol).orthogonal)
                return "kernel sample not in the neighborhood";
            } else {
              if (f.value(g).modulus() < 0.05 * operator_norm(g)) continue;
              if (is_bj_orthogonal(a, g, an, opt.tol).orthogonal)
                return "off-kernel sample in the neighborhood";
            }
          }
        }
        return "";
      });
  return detail::aggregate("smooth-functional-kernel-agreement", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_symmetry_invariance(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x1150 + i);
        // a legal permutation: swap the first pair of equal blocks, if any
        std::vector<int> perm(static_cast<std::size_t>(alg->block_count()));
        for (std::size_t k = 0; k < perm.size(); ++k)
          perm[k] = static_cast<int>(k);
        for (int x = 0; x < alg->block_count(); ++x)
          for (int y = x + 1; y < alg->block_count(); ++y)
            if (alg->blocks()[static_cast<std::size_t>(x)] ==
                    alg->blocks()[static_cast<std::size_t>(y)] &&
                perm[static_cast<std::size_t>(x)] == x) {
              std::swap(perm[static_cast<std::size_t>(x)],
                        perm[static_cast<std::size_t>(y)]);
            }
        for (int t = 0; t < 10; ++t) {
          const Element a = detail::mixed_test_element(alg, rng, t);
          const Element u = random_unitary(alg, rng);
          const Element v = random_unitary(alg, rng);
          const Element b = block_permute(apply_isometry(a, u, v), perm);
          const bool checks[3][2] = {
              {is_left_symmetric_structural(a, opt.tol),
               is_left_symmetric_structural(b, opt.tol)},
              {is_right_symmetric(a, opt.tol), is_right_symmetric(b, opt.tol)},
              {is_smooth(a, opt.tol), is_smooth(b, opt.tol)}};
          for (const auto& pair : checks)
            if (pair[0] != pair[1])
              return "verdict changed under isometry/permutation";
        }
        return "";
      });
  return detail::aggregate("symmetry-isometry-permutation-invariance", algs,
                           std::move(failures));
}

// ---------------------------------------------------------------------------
// Neighborhood suite.
// ---------------------------------------------------------------------------

[[nodiscard]] inline CheckResult check_neighborhood_semantics(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0xbd5 + i);
        for (int t = 0; t < 10; ++t) {
          const Element a = random_element(alg, rng);
          // scaling leaves the neighborhood unchanged
          if (!neighborhood_equal(a, a * std::exp(rng.uniform(-1.0, 1.0)),
                                  opt.tol))
            return "scaling changed the neighborhood";
          // the polar envelope contains it; containment certified by samples
          const Element c = polar_unitary_envelope(a, svd(a));
          if (!neighborhood_contained(a, c, opt.tol))
            return "polar envelope fails containment";
          const ElementAnalysis an_a = analyze(a, opt.tol);
          const ElementAnalysis an_c = analyze(c, opt.tol);
          for (int s = 0; s < 20; ++s) {
            const Element x = random_orthogonal_successor(a, an_a, rng);
            if (!is_bj_orthogonal(c, x, an_c, opt.tol).orthogonal)
              return "sampled successor escapes the containing neighborhood";
          }
        }
        return "";
      });
  return detail::aggregate("neighborhood-containment-semantics", algs,
                           std::move(failures));
}

// ---------------------------------------------------------------------------
// Classification suite.
// ---------------------------------------------------------------------------

[[nodiscard]] inline CheckResult check_signatures_match_structure(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        ClassifyConfig cfg;
        cfg.seed = opt.seed + 977 * i;
        cfg.tol = opt.tol;
        const ClassificationReport bj = signature(alg, cfg);
        const ClassificationReport truth = structural_signature(alg);
        if (!signatures_equal(bj, truth)) return "signature mismatch";
        if (!bj.field_undecidable &&
            (bj.ell != truth.ell || bj.s != truth.s || bj.dim != truth.dim ||
             bj.r != truth.r || bj.c != truth.c || bj.h != truth.h))
          return "count mismatch (ell/s/dim/r/c/h)";
        if (principal_angle_residual(bj.nonpseudo, truth.nonpseudo) > 1e-8)
          return "nonpseudo-abelian summand off by more than 1e-8";
        if (principal_angle_residual(bj.pseudo, truth.pseudo) > 1e-8)
          return "pseudo-abelian summand off by more than 1e-8";
        if (principal_angle_residual(bj.abelian, truth.abelian) > 1e-8)
          return "abelian summand off by more than 1e-8";
        return "";
      });
  return detail::aggregate("signature-matches-structure", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_field_detection(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  std::vector<AlgebraPtr> pa;
  for (const AlgebraPtr& a : algs)
    if (a->is_pseudo_abelian()) pa.push_back(a);
  auto failures = detail::parallel_collect(
      pa.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = pa[i];
        const ClassificationReport truth = structural_signature(alg);
        try {
          const FieldTag f = detect_field(alg, opt.seed + i, opt.tol);
          if (truth.dim < 2) return "dimension one should be undecidable";
          if (f != alg->field()) return "wrong field";
        } catch (const FieldUndecidable&) {
          if (truth.dim >= 2) return "undecidable above dimension one";
        }
        return "";
      });
  return detail::aggregate("field-detection", pa, std::move(failures));
}

[[nodiscard]] inline CheckResult check_summand_characterizations(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        ClassifyConfig cfg;
        cfg.seed = opt.seed + 1409 * i;
        cfg.tol = opt.tol;
        const SummandSplit split = pseudo_abelian_summand(alg, cfg);
        const bool full = split.pseudo.dim() == alg->real_dimension();
        if (full != alg->is_pseudo_abelian())
          return "pseudo-abelian iff double perp is everything failed";
        const Subspace ab = abelian_summand_relative(alg, split.pseudo, cfg);
        bool truly_abelian = alg->is_pseudo_abelian();
        for (const BlockSpec& b : alg->blocks())
          truly_abelian = truly_abelian && b.kind != ScalarKind::Quaternion;
        if ((ab.dim() == alg->real_dimension()) != truly_abelian)
          return "abelian iff double perp full with h = 0 failed";
        const Subspace ab_truth =
            structural_block_span(alg, [](const BlockSpec& b) {
              return b.n == 1 && b.kind != ScalarKind::Quaternion;
            });
        if (principal_angle_residual(ab, ab_truth) > 1e-8)
          return "abelian summand off by more than 1e-8";
        return "";
      });
  return detail::aggregate("summand-characterizations", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_signature_invariance(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  auto failures = detail::parallel_collect(
      algs.size(), opt.threads, [&](std::size_t i) -> std::string {
        const AlgebraPtr& alg = algs[i];
        Rng rng = Rng::derived(opt.seed, 0x51f + i);
        // a reshuffled presentation of the same algebra
        std::vector<BlockSpec> blocks = alg->blocks();
        for (std::size_t k = blocks.size(); k > 1; --k)
          std::swap(blocks[k - 1],
                    blocks[static_cast<std::size_t>(rng.index(
                        static_cast<int>(k)))]);
        const AlgebraPtr shuffled = make_algebra(alg->field(), blocks);
        ClassifyConfig ca, cb;
        ca.seed = opt.seed + 11 * i;
        cb.seed = opt.seed + 13 * i + 7;
        ca.tol = cb.tol = opt.tol;
        if (!signatures_equal(signature(alg, ca), signature(shuffled, cb)))
          return "signature changed under block permutation/reseeding";
        return "";
      });
  return detail::aggregate("signature-permutation-invariance", algs,
                           std::move(failures));
}

[[nodiscard]] inline CheckResult check_pairwise_signature_equality(
    const std::vector<AlgebraPtr>& algs, const VerifyOptions& opt) {
  std::vector<AlgebraPtr> pa;
  for (const AlgebraPtr& a : algs)
    if (a->is_pseudo_abelian()) pa.push_back(a);
  // one BJ signature per algebra (parallel), then every pair (cheap)
  std::vector<std::optional<ClassificationReport>> reps(pa.size());
  auto sig_failures = detail::parallel_collect(
      pa.size(), opt.threads, [&](std::size_t i) -> std::string {
        ClassifyConfig cfg;
        cfg.seed = opt.seed + 601 * i;
        cfg.tol = opt.tol;
        reps[i].emplace(signature(pa[i], cfg));
        return "";
      });
  for (const std::string& f : sig_failures)
    if (!f.empty())
      return CheckResult{"pairwise-signature-equivalence", false, f};
  std::string fail;
  for (std::size_t i = 0; i < pa.size() && fail.empty(); ++i)
    for (std::size_t j = i; j < pa.size(); ++j) {
      const ClassificationReport& a = *reps[i];
      const ClassificationReport& b = *reps[j];
      const bool same_class =
          (a.field_undecidable && b.field_undecidable) ||
          (!a.field_undecidable && !b.field_undecidable &&
           a.field == b.field && a.r == b.r && a.c == b.c && a.h == b.h);
      if (signatures_equal(a, b) != same_class) {
        fail = "pair (" + format_algebra(*pa[i]) + ", " +
               format_algebra(*pa[j]) + ") breaks the equivalence";
        break;
      }
    }
  return CheckResult{
      "pairwise-signature-equivalence", fail.empty(),
      fail.empty() ? "ok over " +
                         std::to_string(pa.size() * (pa.size() + 1) / 2) +
                         " pairs"
                   : fail};
}

// ---------------------------------------------------------------------------
// Suite driver.
// ---------------------------------------------------------------------------

[[nodiscard]] inline VerificationSuite run_suite(const std::string& name,
                                                 const VerifyOptions& opt = {},
                                                 const VerifyHooks& hooks = {}) {
  VerificationSuite suite{name, opt.seed, opt.tol, {}};
  const std::vector<AlgebraPtr> algs =
      standard_catalog(opt.max_dim, opt.include_composites);
  const bool all = name == "all";
  if (all || name == "orthogonality") {
    suite.checks.push_back(check_norm_oracle(algs, opt));
    suite.checks.push_back(check_oracle_agreement(algs, opt, hooks));
    suite.checks.push_back(check_orth_invariances(algs, opt));
    suite.checks.push_back(check_subnorm_block_drop(algs, opt));
    suite.checks.push_back(check_witness_validity(algs, opt));
  }
  if (all || name == "symmetry") {
    suite.checks.push_back(check_left_symmetry_agreement(algs, opt));
    suite.checks.push_back(check_right_symmetry_agreement(algs, opt));
    suite.checks.push_back(check_smoothness_agreement(algs, opt));
    suite.checks.push_back(check_symmetry_invariance(algs, opt));
  }
  if (all || name == "neighborhoods") {
    suite.checks.push_back(check_neighborhood_semantics(algs, opt));
  }
  if (all || name == "classify") {
    suite.checks.push_back(check_signatures_match_structure(algs, opt));
    suite.checks.push_back(check_field_detection(algs, opt));
    suite.checks.push_back(check_summand_characterizations(algs, opt));
    suite.checks.push_back(check_signature_invariance(algs, opt));
    suite.checks.push_back(check_pairwise_signature_equality(algs, opt));
  }
  if (suite.checks.empty())
    throw Error("unknown suite '" + name +
                "' (expected orthogonality, symmetry, neighborhoods, "
                "classify or all)");
  return suite;
}

/// Human-readable table, one row per check.
[[nodiscard]] inline std::string format_table(const VerificationSuite& s) {
  std::ostringstream os;
  os << "suite " << s.name << " (seed " << s.seed << ", tol " << s.tol
     << ")\n";
  for (const CheckResult& c : s.checks)
    os << (c.pass ? "  PASS  " : "  FAIL  ") << c.id << "  " << c.detail
       << "\n";
  os << (s.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

}  // namespace bjclass
