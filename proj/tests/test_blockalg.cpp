#include <catch_amalgamated.hpp>

#include "bjclass/orthogonality.hpp"

using namespace bjclass;

namespace {

Element reconstruct(const Element& a, const SvdResult& sv) {
  Element r(a.alg);
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const BlockSvd& b = sv.blocks[k];
    KMatrix m(a.blocks[k].kind(), a.blocks[k].rows(), a.blocks[k].cols());
    for (std::size_t i = 0; i < b.sigma.size(); ++i)
      m += rank_one(b.left.col(static_cast<int>(i)),
                    b.right.col(static_cast<int>(i))) *
           b.sigma[i];
    r.blocks[k] = m;
  }
  return r;
}

double frame_orthonormality_residual(const KMatrix& f) {
  if (f.cols() == 0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < f.cols(); ++i)
    for (int j = 0; j < f.cols(); ++j) {
      const Scalar ip = inner(f.col(i), f.col(j));
      const Scalar expect =
          i == j ? Scalar::one(f.kind()) : Scalar::zero(f.kind());
      worst = std::max(worst, (ip - expect).modulus());
    }
  return worst;
}

}  // namespace

TEST_CASE("real and complex embeddings") {
  SECTION("1x1 complex gives the rotation-scaling form") {
    KMatrix m(ScalarKind::Complex, 1, 1);
    m.at(0, 0) = Scalar::complex(3, -2);
    const MatrixXd r = embed_real(m);
    REQUIRE(r.rows() == 2);
    CHECK(r(0, 0) == 3.0);
    CHECK(r(0, 1) == 2.0);
    CHECK(r(1, 0) == -2.0);
    CHECK(r(1, 1) == 3.0);
  }

  SECTION("identity of M_n(H) embeds to the identity of M_2n(C)") {
    const KMatrix id = KMatrix::identity(ScalarKind::Quaternion, 3);
    const MatrixXcd e = embed_complex(id);
    CHECK((e - MatrixXcd::Identity(6, 6)).norm() < 1e-15);
  }

  SECTION("embedding is a *-homomorphism") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      const KMatrix a = random_kmatrix(ScalarKind::Quaternion, 2, 2, rng);
      const KMatrix b = random_kmatrix(ScalarKind::Quaternion, 2, 2, rng);
      CHECK((embed_complex(a * b) - embed_complex(a) * embed_complex(b)).norm() <
            1e-12);
      CHECK((embed_complex(a.adjoint()) - embed_complex(a).adjoint()).norm() <
            1e-12);
      CHECK((embed_real(a * b) - embed_real(a) * embed_real(b)).norm() < 1e-12);
      CHECK((embed_real(a.adjoint()) - embed_real(a).transpose()).norm() <
            1e-12);
    }
  }

  SECTION("embedding is an isometry against the brute-force norm") {
    Rng rng(5);
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(H)");
    for (int t = 0; t < 10; ++t) {
      const Element q = random_element(alg, rng);
      const double via_embed =
          embed_complex(q.blocks[0]).jacobiSvd().singularValues()(0);
      Rng probe = Rng::derived(99, static_cast<std::uint64_t>(t));
      const double brute = norm_bruteforce(q, probe);
      CHECK(via_embed == Catch::Approx(brute).epsilon(1e-6));
    }
  }

  SECTION("vector correspondence intertwines the adjoint form") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      const KMatrix a = random_kmatrix(ScalarKind::Quaternion, 3, 3, rng);
      const KMatrix x = random_kmatrix(ScalarKind::Quaternion, 3, 1, rng);
      const VectorXcd lhs = quat_to_c2n(a * x);
      const VectorXcd rhs = complex_adjoint_form(a) * quat_to_c2n(x);
      CHECK((lhs - rhs).norm() < 1e-12);
      CHECK((quat_to_c2n(quat_from_c2n(quat_to_c2n(x))) - quat_to_c2n(x))
                .norm() < 1e-15);
    }
  }
}

TEST_CASE("block SVD") {
  SECTION("diagonal real block") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R)");
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(2);
    a.blocks[0].at(1, 1) = Scalar::real(1);
    const SvdResult sv = svd(a);
    CHECK(sv.blocks[0].sigma[0] == Catch::Approx(2.0));
    CHECK(sv.blocks[0].sigma[1] == Catch::Approx(1.0));
  }

  SECTION("1x1 quaternion 3i") {
    const AlgebraPtr alg = parse_algebra_text("field=R; H");
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::quaternion(0, 3, 0, 0);
    CHECK(svd(a).norm() == Catch::Approx(3.0));
  }

  SECTION("reconstruction and frame orthonormality on random elements") {
    Rng rng(11);
    for (const char* spec :
         {"field=R; M2(R)", "field=R; M2(C)", "field=R; M2(H)",
          "field=R; M3(R) + H", "field=C; M3(C)", "field=R; M2(H) + M2(H)"}) {
      const AlgebraPtr alg = parse_algebra_text(spec);
      for (int t = 0; t < 30; ++t) {
        const Element a = random_element(alg, rng);
        const SvdResult sv = svd(a);
        const Element diff = a - reconstruct(a, sv);
        REQUIRE(diff.frobenius() < 1e-8 * (1.0 + a.frobenius()));
        for (const BlockSvd& b : sv.blocks) {
          CHECK(frame_orthonormality_residual(b.left) < 1e-10);
          CHECK(frame_orthonormality_residual(b.right) < 1e-10);
        }
      }
    }
  }

  SECTION("degenerate quaternionic spectra keep valid frames") {
    Rng rng(13);
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(H)");
    Element u = random_unitary(alg, rng);
    Element a = u * 1.5;  // sigma = (1.5, 1.5) over H, embedded multiplicity 4
    const SvdResult sv = svd(a);
    CHECK(sv.blocks[0].sigma[0] == Catch::Approx(1.5));
    CHECK(sv.blocks[0].sigma[1] == Catch::Approx(1.5));
    CHECK(frame_orthonormality_residual(sv.blocks[0].right) < 1e-10);
    const Element diff = a - reconstruct(a, sv);
    CHECK(diff.frobenius() < 1e-8);
  }
}

TEST_CASE("operator norm properties") {
  Rng rng(17);
  const AlgebraPtr alg = parse_algebra_text("field=R; R + C + M2(R) + H");
  for (int t = 0; t < 40; ++t) {
    const Element a = random_element(alg, rng);
    const double n = operator_norm(a);
    double maxblock = 0.0;
    for (const KMatrix& b : a.blocks)
      maxblock = std::max(maxblock, operator_norm_block(b));
    CHECK(n == Catch::Approx(maxblock));
    // C*-identity
    CHECK(operator_norm(a.adjoint() * a) == Catch::Approx(n * n).epsilon(1e-8));
    // definitional oracle
    Rng probe = Rng::derived(23, static_cast<std::uint64_t>(t));
    CHECK(norm_bruteforce(a, probe) == Catch::Approx(n).epsilon(1e-6));
  }
}

TEST_CASE("norm frames") {
  SECTION("sub-norm block has empty frame") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + R");
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(1);
    a.blocks[1].at(0, 0) = Scalar::real(0.5);
    const NormFrame f = norm_frame(a);
    REQUIRE(f.frame_dim(0) == 1);
    CHECK(f.frame_dim(1) == 0);
    CHECK(std::abs(f.frames[0].at(0, 0).modulus() - 1.0) < 1e-12);
    CHECK(f.frames[0].at(1, 0).modulus() < 1e-12);
  }

  SECTION("identity attains everywhere") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + C + H");
    const NormFrame f = norm_frame(Element::identity(alg));
    CHECK(f.frame_dim(0) == 2);
    CHECK(f.frame_dim(1) == 1);
    CHECK(f.frame_dim(2) == 1);
  }

  SECTION("near-degenerate singular values cluster at tolerance") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R)");
    Element a(alg);
    a.blocks[0].at(0, 0) = Scalar::real(1.0);
    a.blocks[0].at(1, 1) = Scalar::real(1.0 - 1e-12);
    CHECK(norm_frame(a, 1e-9).frame_dim(0) == 2);
    CHECK(norm_frame(a, 1e-14).frame_dim(0) == 1);
  }

  SECTION("zero element attains everywhere by convention") {
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + H");
    const NormFrame f = norm_frame(Element::zero(alg));
    CHECK(f.norm == 0.0);
    CHECK(f.frame_dim(0) == 2);
    CHECK(f.frame_dim(1) == 1);
  }

  SECTION("frame vectors attain the norm") {
    Rng rng(29);
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(H) + M2(R)");
    for (int t = 0; t < 20; ++t) {
      const Element a = random_element(alg, rng);
      const ElementAnalysis an = analyze(a);
      for (std::size_t k = 0; k < a.blocks.size(); ++k) {
        const KMatrix& f = an.frame.frames[k];
        for (int j = 0; j < f.cols(); ++j) {
          const double attained = (a.blocks[k] * f.col(j)).frobenius();
          CHECK(attained >= (1.0 - 1e-8) * an.norm);
        }
      }
    }
  }

  SECTION("unit vectors orthogonal to the frame fall below the norm") {
    Rng rng(43);
    const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + C + M2(H)");
    int exercised = 0;
    for (int t = 0; t < 40; ++t) {
      const Element a = random_element(alg, rng);
      const ElementAnalysis an = analyze(a);
      for (std::size_t k = 0; k < a.blocks.size(); ++k) {
        const KMatrix& frame = an.frame.frames[k];
        const int n = a.blocks[k].rows();
        // random unit vector in block k with its frame component removed
        KMatrix x = random_unit_vector(a.blocks[k].kind(), n, rng);
        for (int j = 0; j < frame.cols(); ++j)
          x -= frame.col(j).scale_right(inner(x, frame.col(j)));
        const double nx = x.frobenius();
        if (nx < 1e-6) continue;  // frame spans the block
        x = x * (1.0 / nx);
        ++exercised;
        CHECK((a.blocks[k] * x).frobenius() < an.norm * (1.0 - 1e-12));
      }
    }
    CHECK(exercised > 50);
  }
}

TEST_CASE("isometries and block permutations") {
  Rng rng(31);
  const AlgebraPtr alg = parse_algebra_text("field=R; M2(R) + M2(R) + H");

  SECTION("identity isometry is the identity") {
    const Element a = random_element(alg, rng);
    const Element id = Element::identity(alg);
    CHECK((apply_isometry(a, id, id) - a).frobenius() < 1e-14);
  }

  SECTION("isometries preserve the norm") {
    for (int t = 0; t < 25; ++t) {
      const Element a = random_element(alg, rng);
      const Element u = random_unitary(alg, rng);
      const Element v = random_unitary(alg, rng);
      CHECK(operator_norm(apply_isometry(a, u, v)) ==
            Catch::Approx(operator_norm(a)).epsilon(1e-10));
    }
  }

  SECTION("block permutation swaps entries") {
    const AlgebraPtr rr = parse_algebra_text("field=R; R + R");
    Element a(rr);
    a.blocks[0].at(0, 0) = Scalar::real(1);
    a.blocks[1].at(0, 0) = Scalar::real(2);
    const Element p = block_permute(a, {1, 0});
    CHECK(p.blocks[0].at(0, 0).re() == 2.0);
    CHECK(p.blocks[1].at(0, 0).re() == 1.0);
  }

  SECTION("illegal inputs are rejected") {
    const Element a = random_element(alg, rng);
    Element bad = Element::identity(alg);
    bad.blocks[0].at(0, 0) = Scalar::real(2);
    CHECK_THROWS_AS(apply_isometry(a, bad, Element::identity(alg)), Error);
    CHECK_THROWS_AS(block_permute(a, {2, 1, 0}), Error);  // unequal blocks
    CHECK_THROWS_AS(block_permute(a, {0, 0, 2}), Error);  // not a permutation
  }
}

TEST_CASE("algebra spec grammar") {
  SECTION("basic parse") {
    const AlgebraPtr alg = parse_algebra_text("field=R; R+C+H");
    REQUIRE(alg->block_count() == 3);
    CHECK(alg->blocks()[0].kind == ScalarKind::Real);
    CHECK(alg->blocks()[1].kind == ScalarKind::Complex);
    CHECK(alg->blocks()[2].kind == ScalarKind::Quaternion);
    CHECK(alg->real_dimension() == 7);
  }

  SECTION("whitespace-insensitive") {
    const AlgebraPtr a = parse_algebra_text("  field = R ;  M2( C ) + H ");
    CHECK(format_algebra(*a) == "field=R; M2(C) + H");
  }

  SECTION("complex algebras reject non-complex blocks") {
    CHECK_THROWS_AS(parse_algebra_text("field=C; M2(H)"), Error);
    CHECK_THROWS_AS(parse_algebra_text("field=C; R"), Error);
  }

  SECTION("malformed input carries a position") {
    try {
      (void)parse_algebra_text("field=R; M2(C) + Q");
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }

  SECTION("parse-print-parse is the identity") {
    Rng rng(37);
    for (int t = 0; t < 50; ++t) {
      std::vector<BlockSpec> blocks;
      const int nb = 1 + rng.index(4);
      for (int k = 0; k < nb; ++k)
        blocks.push_back(BlockSpec{1 + rng.index(3),
                                   static_cast<ScalarKind>(rng.index(3))});
      const AlgebraPtr alg = make_algebra(FieldTag::Real, blocks);
      const AlgebraPtr back = parse_algebra_text(format_algebra(*alg));
      CHECK(*alg == *back);
    }
  }
}
