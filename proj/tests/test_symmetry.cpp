#include <catch_amalgamated.hpp>

#include "bjclass/symmetry.hpp"

using namespace bjclass;

namespace {

Element single_scalar(const AlgebraPtr& alg, int block, const Scalar& s) {
  KMatrix m(alg->blocks()[static_cast<std::size_t>(block)].kind, 1, 1);
  m.at(0, 0) = s;
  return Element::single_block(alg, block, m);
}

}  // namespace

TEST_CASE("structural left symmetry") {
  const AlgebraPtr alg = parse_algebra_text("field=R; R + M2(R)");
  SECTION("single 1x1 block support") {
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(5);
    CHECK(is_left_symmetric_structural(a));
  }
  SECTION("simple algebras have no nonzero left-symmetric elements") {
    const AlgebraPtr m2c = parse_algebra_text("field=C; M2(C)");
    Rng rng(1);
    for (int t = 0; t < 20; ++t)
      CHECK_FALSE(is_left_symmetric_structural(random_element(m2c, rng)));
    CHECK(is_left_symmetric_structural(Element::zero(m2c)));
  }
  SECTION("two nonzero 1x1 blocks fail") {
    const AlgebraPtr rralg = parse_algebra_text("field=R; R + R + M2(R)");
    Element a(rralg);
    a.blocks[0].at(0, 0) = Scalar::real(1);
    a.blocks[1].at(0, 0) = Scalar::real(1);
    CHECK_FALSE(is_left_symmetric_structural(a));
  }
  SECTION("support inside a big block fails") {
    Element a(alg);
    a.blocks[1].at(0, 0) = Scalar::real(1);
    CHECK_FALSE(is_left_symmetric_structural(a));
  }
}

TEST_CASE("sampled left symmetry") {
  const AlgebraPtr alg = parse_algebra_text("field=R; R + M2(R)");

  SECTION("zero is vacuously left-symmetric") {
    CHECK(is_left_symmetric_sampled(Element::zero(alg), 10, 3).verdict);
  }

  SECTION("single 1x1 block survives 500 trials") {
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(5);
    const SampledVerdict v = is_left_symmetric_sampled(a, 500, 11);
    CHECK(v.verdict);
    CHECK(v.trials == 500);
  }

  SECTION("rank-one projection in M2(R) fails with a counterexample") {
    const AlgebraPtr m2 = parse_algebra_text("field=R; M2(R)");
    Element a(m2);
    a.blocks[0].at(0, 0) = Scalar::real(1);  // e1 e1^*
    const SampledVerdict v = is_left_symmetric_sampled(a, 500, 13);
    REQUIRE_FALSE(v.verdict);
    REQUIRE(v.counterexample.has_value());
    const Element& b = *v.counterexample;
    CHECK(is_bj_orthogonal(a, b).orthogonal);
    CHECK_FALSE(is_bj_orthogonal(b, a).orthogonal);
  }

  SECTION("two nonzero 1x1 blocks fail") {
    const AlgebraPtr rr = parse_algebra_text("field=R; R + R + M2(R)");
    Element a(rr);
    a.blocks[0].at(0, 0) = Scalar::real(1);
    a.blocks[1].at(0, 0) = Scalar::real(1);
    CHECK_FALSE(is_left_symmetric_sampled(a, 500, 17).verdict);
  }

  SECTION("structural and sampled verdicts agree on mixed elements") {
    const AlgebraPtr mix = parse_algebra_text("field=R; R + C + M2(R)");
    Rng rng(23);
    int trues = 0;
    for (int t = 0; t < 60; ++t) {
      Element a = random_element(mix, rng);
      if (t % 4 == 0) {
        const int blk = rng.index(2);
        a = single_scalar(
            mix, blk,
            random_scalar(mix->blocks()[static_cast<std::size_t>(blk)].kind,
                          rng));
      }
      const bool structural = is_left_symmetric_structural(a);
      const bool sampled = is_left_symmetric_sampled(a, 300, 1000 + t).verdict;
      REQUIRE(structural == sampled);
      trues += structural ? 1 : 0;
    }
    CHECK(trues > 5);
  }
}

TEST_CASE("right symmetry") {
  SECTION("identity and unitary multiples") {
    const AlgebraPtr alg = parse_algebra_text("field=C; M2(C)");
    CHECK(is_right_symmetric(Element::identity(alg)));
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::complex(0, 3);
    a.blocks[0].at(1, 1) = Scalar::complex(3, 0);
    CHECK(is_right_symmetric(a));  // 3 diag(i, 1)
    Element b(alg);
    b.blocks[0].at(0, 0) = Scalar::complex(1, 0);
    CHECK_FALSE(is_right_symmetric(b));  // diag(1, 0)
  }

  SECTION("structural and BJ-level verdicts coincide") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + H");
    Rng rng(31);
    int trues = 0;
    for (int t = 0; t < 40; ++t) {
      Element a = t % 3 == 0 ? random_unitary(alg, rng) *
                                   std::exp(rng.uniform(-1.0, 1.0))
                             : random_element(alg, rng);
      const bool structural = is_right_symmetric(a);
      const bool bj = is_right_symmetric_bj(a);
      REQUIRE(structural == bj);
      trues += structural ? 1 : 0;
    }
    CHECK(trues >= 13);
    CHECK(is_right_symmetric(Element::zero(alg)));
    CHECK(is_right_symmetric_bj(Element::zero(alg)));
  }

  SECTION("the polar envelope always contains the neighborhood") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(H) + C");
    Rng rng(37);
    for (int t = 0; t < 15; ++t) {
      const Element a = random_element(alg, rng);
      const Element c = polar_unitary_envelope(a, svd(a));
      CHECK(neighborhood_contained(a, c));
    }
  }
}

TEST_CASE("smoothness") {
  SECTION("matrix units are smooth") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + M3(R)");
    Element a(alg);
    a.blocks[0].at(0, 1) = Scalar::real(1);  // E_12 in the first block
    CHECK(is_smooth(a));
    CHECK(is_smooth_bj(a));
  }

  SECTION("the identity of M2(R) is not smooth") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R)");
    CHECK_FALSE(is_smooth(Element::identity(alg)));
    CHECK_FALSE(is_smooth_bj(Element::identity(alg)));
  }

  SECTION("zero is not smooth") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R)");
    CHECK_FALSE(is_smooth(Element::zero(alg)));
    CHECK_FALSE(is_smooth_bj(Element::zero(alg)));
    CHECK_THROWS_AS(supporting_functional(Element::zero(alg)), Error);
  }

  SECTION("two norm-attaining blocks break smoothness") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + M2(R)");
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(1);
    a.blocks[1].at(1, 1) = Scalar::real(1);
    CHECK_FALSE(is_smooth(a));
    CHECK_FALSE(is_smooth_bj(a));
  }

  SECTION("(0, 1) in R + C over the reals is smooth") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + C");
    const Element a = single_scalar(alg, 1, Scalar::complex(1, 0));
    REQUIRE(is_smooth(a));
    REQUIRE(is_smooth_bj(a));
    const SupportingFunctional f = supporting_functional(a);
    CHECK(f.block == 1);
    CHECK(f.value(a).re() == Catch::Approx(1.0));
    // A^perp equals the neighborhood of the rank-one compression
    const Element compressed =
        Element::single_block(a.alg, 1, rank_one(a.blocks[1] * f.x, f.x));
    CHECK(neighborhood_equal(a, compressed));
  }

  SECTION("sampled and BJ smoothness agree on random elements") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + C");
    const AlgebraPtr algc = parse_algebra_text("field=C; M2(C) + C");
    Rng rng(41);
    for (int t = 0; t < 25; ++t) {
      const Element a = random_element(alg, rng);
      CHECK(is_smooth(a) == is_smooth_bj(a));
      const Element ac = random_element(algc, rng);
      CHECK(is_smooth(ac) == is_smooth_bj(ac));
    }
  }
}

TEST_CASE("supporting functional kernel matches the neighborhood") {
  const char* specs[] = {"field=R; M2(R) + C", "field=R; M2(H)",
                         "field=C; M2(C) + C"};
  for (const char* spec : specs) {
    const AlgebraPtr alg = parse_algebra_text(spec);
    Rng rng =
        Rng::derived(53, static_cast<std::uint64_t>(alg->real_dimension()));
    int smooth_seen = 0;
    for (int t = 0; t < 12; ++t) {
      const Element a = random_element(alg, rng);
      const ElementAnalysis an = analyze(a);
      if (!is_smooth(an)) continue;
      ++smooth_seen;
      const SupportingFunctional f = supporting_functional(a, an);
      CHECK(f.value(a).re() == Catch::Approx(an.norm));
      // norm one via the Cauchy-Schwarz equality case; sample the bound
      for (int s = 0; s < 25; ++s) {
        const Element g = random_element(alg, rng);
        CHECK(f.value(g).modulus() <= operator_norm(g) * (1 + 1e-9));
      }
      // kernel samples are orthogonality successors
      for (int s = 0; s < 80; ++s) {
        Element g = random_element(alg, rng);
        const Scalar fg = f.value(g);
        const Scalar fa = f.value(a);
        g -= scale_field(a, fg * (1.0 / fa.re()));
        REQUIRE(f.value(g).modulus() < 1e-9);
        CHECK(is_bj_orthogonal(a, g, an).orthogonal);
      }
      // off-kernel samples fail
      for (int s = 0; s < 20; ++s) {
        const Element g = random_element(alg, rng);
        if (f.value(g).modulus() < 0.05 * operator_norm(g)) continue;
        CHECK_FALSE(is_bj_orthogonal(a, g, an).orthogonal);
      }
    }
    CHECK(smooth_seen >= 10);  // random elements are smooth generically
  }
}

TEST_CASE("symmetry verdicts are isometry and permutation invariant") {
  const AlgebraPtr alg = parse_algebra_text("field=R; R + R + M2(R)");
  Rng rng(61);
  for (int t = 0; t < 12; ++t) {
    Element a = random_element(alg, rng);
    if (t % 3 == 0) a = single_scalar(alg, rng.index(2), Scalar::real(2));
    const Element u = random_unitary(alg, rng);
    const Element v = random_unitary(alg, rng);
    const Element b = block_permute(apply_isometry(a, u, v), {1, 0, 2});
    const SymmetryVerdict va =
        symmetry_verdict(a, SymmetryMode::Both, 120, 7 + t);
    const SymmetryVerdict vb =
        symmetry_verdict(b, SymmetryMode::Both, 120, 9 + t);
    CHECK(va.modes_agree);
    CHECK(vb.modes_agree);
    CHECK(va.left == vb.left);
    CHECK(va.right == vb.right);
    CHECK(va.smooth == vb.smooth);
  }
}
