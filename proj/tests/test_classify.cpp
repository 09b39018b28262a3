#include <catch_amalgamated.hpp>

#include "bjclass/catalog.hpp"

using namespace bjclass;

namespace {

ClassifyConfig cfg_with_seed(std::uint64_t seed) {
  ClassifyConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("pseudo-abelian summand extraction") {
  SECTION("R + M2(R)") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + M2(R)");
    const SummandSplit split = pseudo_abelian_summand(alg, cfg_with_seed(3));
    const Subspace pseudo_truth =
        structural_block_span(alg, [](const BlockSpec& b) { return b.n == 1; });
    const Subspace nonpseudo_truth =
        structural_block_span(alg, [](const BlockSpec& b) { return b.n > 1; });
    CHECK(subspace_equal(split.pseudo, pseudo_truth));
    CHECK(subspace_equal(split.nonpseudo, nonpseudo_truth));
    CHECK(principal_angle_residual(split.pseudo, pseudo_truth) < 1e-8);
  }

  SECTION("purely matricial algebras have zero pseudo-abelian summand") {
    const AlgebraPtr alg = parse_algebra_text("field=C; M2(C) + M3(C)");
    const SummandSplit split = pseudo_abelian_summand(alg, cfg_with_seed(5));
    CHECK(split.pseudo.dim() == 0);
    CHECK(split.nonpseudo.dim() == alg->real_dimension());
  }

  SECTION("abelian complex algebras are their own summand") {
    const AlgebraPtr alg = parse_algebra_text("field=C; C + C + C");
    const SummandSplit split = pseudo_abelian_summand(alg, cfg_with_seed(7));
    CHECK(split.pseudo.dim() == alg->real_dimension());
    CHECK(split.nonpseudo.dim() == 0);
  }

  SECTION("mixed real algebra") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + C + M2(R) + H");
    const SummandSplit split = pseudo_abelian_summand(alg, cfg_with_seed(9));
    CHECK(split.pseudo.block_dims() == std::vector<int>{1, 2, 0, 4});
    CHECK(split.nonpseudo.block_dims() == std::vector<int>{0, 0, 4, 0});
  }
}

TEST_CASE("property FL") {
  const AlgebraPtr alg = parse_algebra_text("field=R; C + C");
  SECTION("real lines inside complex blocks have FL") {
    // kernel of the two imaginary-unit functionals: R + R inside C^2
    const std::vector<Element> gens = {
        single_scalar_element(alg, 0, Scalar::complex(0, 1)),
        single_scalar_element(alg, 1, Scalar::complex(0, 1))};
    const Subspace s = perp_subspace(alg, gens);
    CHECK(s.block_dims() == std::vector<int>{1, 1});
    CHECK(has_property_FL(s));
    CHECK(fl_sampled_crosscheck(s, 11));
  }
  SECTION("a full complex block breaks FL") {
    const std::vector<Element> gens = {
        single_scalar_element(alg, 0, Scalar::complex(0, 1))};
    const Subspace s = perp_subspace(alg, gens);
    CHECK(s.block_dims() == std::vector<int>{1, 2});
    CHECK_FALSE(has_property_FL(s));
    CHECK_FALSE(fl_sampled_crosscheck(s, 13));
  }
  SECTION("the zero subspace has FL") {
    CHECK(has_property_FL(Subspace::zero_space(alg)));
    CHECK(fl_sampled_crosscheck(Subspace::zero_space(alg), 17));
  }
}

TEST_CASE("minimal FL sets") {
  SECTION("R^3 needs nothing") {
    const FlSet fl = minimal_fl_set(parse_algebra_text("field=R; R + R + R"));
    CHECK(fl.s == 0);
    CHECK(fl.core.dim() == 3);
  }
  SECTION("H needs three elements") {
    const FlSet fl = minimal_fl_set(parse_algebra_text("field=R; H"));
    CHECK(fl.s == 3);
    CHECK(fl.core.dim() == 1);
  }
  SECTION("R + C + H needs four and leaves one line per block") {
    const FlSet fl = minimal_fl_set(parse_algebra_text("field=R; R + C + H"));
    CHECK(fl.s == 4);
    CHECK(fl.core.block_dims() == std::vector<int>{1, 1, 1});
    CHECK(has_property_FL(fl.core));
  }
  SECTION("complex algebras need nothing") {
    const FlSet fl = minimal_fl_set(parse_algebra_text("field=C; C + C"));
    CHECK(fl.s == 0);
  }
  SECTION("non-pseudo-abelian input is rejected") {
    CHECK_THROWS_AS(minimal_fl_set(parse_algebra_text("field=R; M2(R)")),
                    Error);
  }
}

TEST_CASE("block counts and dimension") {
  CHECK(count_blocks(parse_algebra_text("field=R; R + C + H")) == 3);
  CHECK(dimension_bj(parse_algebra_text("field=R; R + C + H")) == 7);
  CHECK(count_blocks(parse_algebra_text("field=C; C + C + C + C")) == 4);
  CHECK(dimension_bj(parse_algebra_text("field=C; C + C + C + C")) == 4);
  CHECK(count_blocks(parse_algebra_text("field=R; R")) == 1);
  CHECK(dimension_bj(parse_algebra_text("field=R; R")) == 1);
  CHECK(dimension_bj(parse_algebra_text("field=R; H + H")) == 8);
}

TEST_CASE("field detection") {
  CHECK(detect_field(parse_algebra_text("field=R; R + R")) == FieldTag::Real);
  CHECK(detect_field(parse_algebra_text("field=C; C + C")) ==
        FieldTag::Complex);
  // C as a real algebra has dimension two and stays real
  CHECK(detect_field(parse_algebra_text("field=R; C")) == FieldTag::Real);
  CHECK(detect_field(parse_algebra_text("field=R; H + R")) == FieldTag::Real);
  CHECK(detect_field(parse_algebra_text("field=C; C + C + C")) ==
        FieldTag::Complex);
  // dimension one is undecidable in both presentations
  CHECK_THROWS_AS(detect_field(parse_algebra_text("field=R; R")),
                  FieldUndecidable);
  CHECK_THROWS_AS(detect_field(parse_algebra_text("field=C; C")),
                  FieldUndecidable);
}

TEST_CASE("real block counting") {
  SECTION("R^2 + C") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + R + C");
    const RealBlockCount rc = count_real_blocks(alg, cfg_with_seed(3));
    CHECK(rc.r == 2);
    CHECK(rc.omega.block_dims() == std::vector<int>{1, 1, 0});
  }
  SECTION("H alone") {
    const RealBlockCount rc =
        count_real_blocks(parse_algebra_text("field=R; H"), cfg_with_seed(5));
    CHECK(rc.r == 0);
    CHECK(rc.omega.dim() == 0);
  }
  SECTION("R alone") {
    const RealBlockCount rc =
        count_real_blocks(parse_algebra_text("field=R; R"), cfg_with_seed(7));
    CHECK(rc.r == 1);
    CHECK(rc.omega.dim() == 1);
  }
  SECTION("complex field is rejected") {
    CHECK_THROWS_AS(
        count_real_blocks(parse_algebra_text("field=C; C + C")), Error);
  }
}

TEST_CASE("abelian summand extraction") {
  SECTION("R + H keeps the real line") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + H");
    const Subspace a = abelian_summand(alg, cfg_with_seed(3));
    CHECK(a.block_dims() == std::vector<int>{1, 0});
  }
  SECTION("complex algebras are their own abelian summand") {
    const AlgebraPtr alg = parse_algebra_text("field=C; C + C + C");
    CHECK(abelian_summand(alg, cfg_with_seed(5)).dim() == 6);
  }
  SECTION("H alone vanishes") {
    const AlgebraPtr alg = parse_algebra_text("field=R; H");
    CHECK(abelian_summand(alg, cfg_with_seed(7)).dim() == 0);
  }
  SECTION("R + C + H keeps the real and complex parts") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + C + H");
    const Subspace a = abelian_summand(alg, cfg_with_seed(9));
    CHECK(a.block_dims() == std::vector<int>{1, 2, 0});
  }
  SECTION("two quaternionic blocks both vanish") {
    const AlgebraPtr alg = parse_algebra_text("field=R; H + H");
    CHECK(abelian_summand(alg, cfg_with_seed(11)).dim() == 0);
  }
  SECTION("inside a bigger algebra") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + H + M2(R)");
    const Subspace a = abelian_summand(alg, cfg_with_seed(13));
    CHECK(a.block_dims() == std::vector<int>{1, 0, 0});
  }
}

TEST_CASE("signature pipeline") {
  SECTION("R^2 + C + H") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R + R + C + H");
    const ClassificationReport rep = signature(alg, cfg_with_seed(3));
    CHECK_FALSE(rep.field_undecidable);
    CHECK(rep.field == FieldTag::Real);
    CHECK(rep.ell == 4);
    CHECK(rep.s == 4);
    CHECK(rep.dim == 8);
    CHECK(rep.r == 2);
    CHECK(rep.c == 1);
    CHECK(rep.h == 1);
    const ClassificationReport truth = structural_signature(alg);
    CHECK(signatures_equal(rep, truth));
    CHECK(principal_angle_residual(rep.pseudo, truth.pseudo) < 1e-8);
    CHECK(principal_angle_residual(rep.abelian, truth.abelian) < 1e-8);
  }

  SECTION("one-dimensional algebras are signature-equal across fields") {
    const ClassificationReport rr =
        signature(parse_algebra_text("field=R; R"), cfg_with_seed(5));
    const ClassificationReport cc =
        signature(parse_algebra_text("field=C; C"), cfg_with_seed(5));
    CHECK(rr.field_undecidable);
    CHECK(cc.field_undecidable);
    CHECK(signatures_equal(rr, cc));
  }

  SECTION("R + C versus the complex plane differ") {
    const ClassificationReport a =
        signature(parse_algebra_text("field=R; R + C"), cfg_with_seed(7));
    const ClassificationReport b =
        signature(parse_algebra_text("field=C; C"), cfg_with_seed(7));
    CHECK_FALSE(signatures_equal(a, b));
  }

  SECTION("C over R versus R^2 differ despite equal dimension") {
    const ClassificationReport a =
        signature(parse_algebra_text("field=R; C"), cfg_with_seed(9));
    const ClassificationReport b =
        signature(parse_algebra_text("field=R; R + R"), cfg_with_seed(9));
    CHECK(a.field == FieldTag::Real);
    CHECK(b.field == FieldTag::Real);
    CHECK_FALSE(signatures_equal(a, b));
  }

  SECTION("signatures see through the block order") {
    const ClassificationReport a =
        signature(parse_algebra_text("field=R; H + C + R"), cfg_with_seed(11));
    const ClassificationReport b =
        signature(parse_algebra_text("field=R; R + C + H"), cfg_with_seed(13));
    CHECK(signatures_equal(a, b));
  }
}

TEST_CASE("catalog enumeration") {
  const std::vector<AlgebraPtr> cat = standard_catalog(12, true);
  CHECK(cat.size() > 140);
  std::set<std::string> seen;
  int pseudo = 0;
  for (const AlgebraPtr& alg : cat) {
    CHECK(seen.insert(format_algebra(*alg)).second);  // no duplicates
    pseudo += alg->is_pseudo_abelian() ? 1 : 0;
  }
  CHECK(pseudo_abelian_catalog(12).size() == 89);
  // every multiset respects the bound except the declared composites
  const std::vector<AlgebraPtr> base = standard_catalog(12, false);
  for (const AlgebraPtr& alg : base) CHECK(alg->real_dimension() <= 12);
}

TEST_CASE("signature matches ground truth on a catalog slice") {
  const std::vector<AlgebraPtr> algs = {
      parse_algebra_text("field=R; R + R + R"),
      parse_algebra_text("field=R; C + C"),
      parse_algebra_text("field=R; H + C"),
      parse_algebra_text("field=R; H + R + R"),
      parse_algebra_text("field=C; C + C + C"),
      parse_algebra_text("field=R; R + C + M2(R)"),
      parse_algebra_text("field=R; H + M2(H)"),
      parse_algebra_text("field=C; C + M2(C)"),
  };
  int idx = 0;
  for (const AlgebraPtr& alg : algs) {
    const ClassificationReport bj = signature(alg, cfg_with_seed(100 + idx++));
    const ClassificationReport truth = structural_signature(alg);
    INFO(format_algebra(*alg));
    CHECK(signatures_equal(bj, truth));
    CHECK(principal_angle_residual(bj.pseudo, truth.pseudo) < 1e-8);
    CHECK(principal_angle_residual(bj.nonpseudo, truth.nonpseudo) < 1e-8);
    CHECK(principal_angle_residual(bj.abelian, truth.abelian) < 1e-8);
  }
}
