// Acceptance suite: runs every top-level requirement at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>

#include "bjclass/verify.hpp"

using namespace bjclass;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("criterion-%02d %s  %s%s%s\n", n, pass ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  VerifyOptions opt;  // acceptance thresholds: the defaults are the contract
  opt.seed = 20240811;
  const std::vector<AlgebraPtr> catalog =
      standard_catalog(opt.max_dim, opt.include_composites);
  const std::vector<AlgebraPtr> pa = pseudo_abelian_catalog(opt.max_dim);

  // 1. fast predicate vs definitional oracle, >= 10^4 pairs, < 2 minutes
  {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult c = check_oracle_agreement(catalog, opt, {});
    const double dt = seconds_since(t0);
    report(1, c.pass && dt < 120.0,
           "oracle equivalence over >= 10^4 pairs at tol 1e-9 in < 2 min",
           c.detail + "; elapsed " + std::to_string(dt) + " s");
  }

  // 2. structural vs sampled left symmetry, 500 elements x 300 trials
  {
    const CheckResult c = check_left_symmetry_agreement(catalog, opt);
    report(2, c.pass,
           "left-symmetric verdicts: structural == sampled (500 x 300)",
           c.detail);
  }

  // 3. right-symmetric iff scalar multiple of a unitary, 500 elements
  {
    const CheckResult c = check_right_symmetry_agreement(catalog, opt);
    report(3, c.pass, "right-symmetric == scalar-multiple-of-unitary (500)",
           c.detail);
  }

  // 4. smoothness agreement and supporting-functional uniqueness
  {
    const CheckResult c = check_smoothness_agreement(catalog, opt);
    report(4, c.pass,
           "smooth == smooth-bj, functional kernel == neighborhood (200/250)",
           c.detail);
  }

  // 5. dimension and FL-count identities, exact integers
  {
    std::string fail;
    for (std::size_t i = 0; i < pa.size() && fail.empty(); ++i) {
      ClassifyConfig cfg;
      cfg.seed = opt.seed + 41 * i;
      try {
        const ClassificationReport rep = signature(pa[i], cfg);
        const ClassificationReport truth = structural_signature(pa[i]);
        if (rep.dim != rep.s + rep.ell) fail = "dim != s + ell";
        if (!rep.field_undecidable) {
          if (rep.field == FieldTag::Real && rep.s != rep.c + 3 * rep.h)
            fail = "s != c + 3h";
          if (rep.field == FieldTag::Complex &&
              (rep.s != 0 || rep.c != rep.ell))
            fail = "complex identities broken";
          if (rep.s != truth.s || rep.ell != truth.ell || rep.dim != truth.dim)
            fail = "s/ell/dim differ from ground truth";
        }
      } catch (const std::exception& e) {
        fail = e.what();
      }
      if (!fail.empty()) fail += " on " + format_algebra(*pa[i]);
    }
    report(5, fail.empty(),
           "dim = s + ell and s = c + 3h (real case) exact on " +
               std::to_string(pa.size()) + " pseudo-abelian algebras",
           fail);
  }

  // 6. field detection with the one-dimensional undecidable case
  {
    const CheckResult c = check_field_detection(catalog, opt);
    report(6, c.pass, "field detection (dim >= 2) and undecidable (dim = 1)",
           c.detail);
  }

  // 7. L^perp / L^perpperp equal the structural summands to 1e-8
  {
    auto failures = detail::parallel_collect(
        catalog.size(), opt.threads, [&](std::size_t i) -> std::string {
          ClassifyConfig cfg;
          cfg.seed = opt.seed + 73 * i;
          const SummandSplit split = pseudo_abelian_summand(catalog[i], cfg);
          const Subspace np_truth = structural_block_span(
              catalog[i], [](const BlockSpec& b) { return b.n > 1; });
          const Subspace pa_truth = structural_block_span(
              catalog[i], [](const BlockSpec& b) { return b.n == 1; });
          if (principal_angle_residual(split.nonpseudo, np_truth) > 1e-8)
            return "nonpseudo residual exceeds 1e-8";
          if (principal_angle_residual(split.pseudo, pa_truth) > 1e-8)
            return "pseudo residual exceeds 1e-8";
          return "";
        });
    const CheckResult c =
        detail::aggregate("summands", catalog, std::move(failures));
    report(7, c.pass,
           "left-symmetric perps match both summands (residual <= 1e-8)",
           c.detail);
  }

  // 8. abelian extraction on real algebras with quaternionic content
  {
    std::vector<AlgebraPtr> with_h;
    for (const AlgebraPtr& alg : catalog) {
      if (alg->field() != FieldTag::Real) continue;
      for (const BlockSpec& b : alg->blocks())
        if (b.n == 1 && b.kind == ScalarKind::Quaternion) {
          with_h.push_back(alg);
          break;
        }
    }
    auto failures = detail::parallel_collect(
        with_h.size(), opt.threads, [&](std::size_t i) -> std::string {
          ClassifyConfig cfg;
          cfg.seed = opt.seed + 97 * i;
          const Subspace ab = abelian_summand(with_h[i], cfg);
          const Subspace truth = structural_block_span(
              with_h[i], [](const BlockSpec& b) {
                return b.n == 1 && b.kind != ScalarKind::Quaternion;
              });
          if (principal_angle_residual(ab, truth) > 1e-8)
            return "abelian summand misses the R/C block sum";
          for (int k = 0; k < with_h[i]->block_count(); ++k)
            if (with_h[i]->blocks()[static_cast<std::size_t>(k)].kind ==
                    ScalarKind::Quaternion &&
                ab.block_dim(k) != 0)
              return "quaternionic block survived extraction";
          return "";
        });
    const CheckResult c =
        detail::aggregate("abelian", with_h, std::move(failures));
    report(8, c.pass,
           "abelian summand equals the R/C block sum on " +
               std::to_string(with_h.size()) + " quaternionic algebras",
           c.detail);
  }

  // 9. signature equality is the (field, r, c, h) equivalence; invariance
  {
    const CheckResult pairs = check_pairwise_signature_equality(catalog, opt);
    const CheckResult inv = check_signature_invariance(catalog, opt);
    report(9, pairs.pass && inv.pass,
           "signatures_equal iff identical class; invariant under "
           "permutation and reseeding",
           pairs.detail + " / " + inv.detail);
  }

  // 10. full verify-all wall time and determinism
  {
    const auto t0 = std::chrono::steady_clock::now();
    const VerificationSuite all = run_suite("all", opt);
    const double dt = seconds_since(t0);
    VerifyOptions redo = opt;
    const std::string once = to_json(run_suite("neighborhoods", redo)).dump();
    const std::string twice = to_json(run_suite("neighborhoods", redo)).dump();
    const bool deterministic = once == twice;
    report(10, all.all_pass() && dt < 600.0 && deterministic,
           "verify all under 10 minutes, deterministic at fixed seed",
           std::string(all.all_pass() ? "all checks pass" : "check failures") +
               "; elapsed " + std::to_string(dt) + " s; deterministic=" +
               (deterministic ? "yes" : "no"));
  }

  std::printf("%s\n", g_failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS"
                                      : "ACCEPTANCE: FAILURES PRESENT");
  return g_failures == 0 ? 0 : 1;
}
