#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qdip/cyclic.hpp"
#include "qdip/qecc.hpp"
#include "qdip/wold.hpp"

using namespace qdip;
using test::coord_range;
using test::coord_span;
using test::truncated_shift;

namespace {

constexpr double kTight = 1e-12;

// Three coordinate shift chains of lengths 4, 4, 3 on C^11: wandering space
// span{e0, e4, e8}, multiplicity 3.
Matrix chains443() { return direct_sum({truncated_shift(4), truncated_shift(4), truncated_shift(3)}); }

}  // namespace

TEST_CASE("matrix_power", "[wold]") {
  const Matrix s = truncated_shift(3);
  CHECK((matrix_power(s, 0) - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((matrix_power(s, 1) - s).norm() == 0.0);
  Matrix s2 = Matrix::Zero(3, 3);
  s2(2, 0) = 1.0;
  CHECK((matrix_power(s, 2) - s2).norm() == 0.0);
  CHECK(matrix_power(s, 3).norm() == 0.0);
  CHECK_THROWS_AS(matrix_power(s, -1), std::invalid_argument);
  CHECK_THROWS_AS(matrix_power(Matrix::Zero(2, 3), 2), std::invalid_argument);
}

TEST_CASE("wandering space and multiplicity", "[wold]") {
  SECTION("cycle plus ladder on C^15") {
    const auto [l, m] = wandering_space(example_v15());
    CHECK(subspace_equal(l, coord_span(15, {4, 5, 6})));
    CHECK(m == 3);
  }

  SECTION("single truncated chain") {
    const auto [l, m] = wandering_space(truncated_shift(4));
    CHECK(subspace_equal(l, coord_span(4, {0})));
    CHECK(m == 3);
  }

  SECTION("unitary operators have no wandering vectors") {
    const auto [l, m] = wandering_space(shift_operator(5));
    CHECK(l.is_zero());
    CHECK(m == 0);
  }

  SECTION("the zero operator wanders everywhere and dies immediately") {
    const auto [l, m] = wandering_space(Matrix::Zero(3, 3));
    CHECK(l.dim() == 3);
    CHECK(m == 0);
  }

  SECTION("non-partial-isometries are refused") {
    Matrix bad = Matrix::Identity(2, 2);
    bad(1, 1) = 0.5;
    CHECK_THROWS_AS(wandering_space(bad), NotPartialIsometryError);
  }
}

TEST_CASE("Wold decomposition of the 15-dimensional example", "[wold]") {
  const Matrix v = example_v15();
  const WoldDecomposition w = wold_decompose(v);

  CHECK(w.multiplicity == 3);
  CHECK(subspace_equal(w.wandering, coord_span(15, {4, 5, 6})));
  CHECK(subspace_equal(w.shift_part, coord_range(15, 4, 14)));   // dim 11
  CHECK(subspace_equal(w.unitary_part, coord_range(15, 0, 3)));  // the 4-cycle
  CHECK_FALSE(is_unilateral_shift(v));

  // v_shift keeps only the ladder action, v_unitary only the cycle.
  CHECK((w.v_shift * test::basis_vec(15, 4) - test::basis_vec(15, 7)).norm() <= kTight);
  CHECK((w.v_shift * test::basis_vec(15, 0)).norm() <= kTight);
  CHECK((w.v_unitary * test::basis_vec(15, 3) - test::basis_vec(15, 0)).norm() <= kTight);
  CHECK((w.v_unitary * test::basis_vec(15, 4)).norm() <= kTight);
  CHECK((w.v_shift + w.v_unitary - v).norm() <= kTight);

  // The compression of v to the unitary part is genuinely unitary.
  const Matrix f = w.unitary_part.frame();
  const Matrix compressed = f.adjoint() * v * f;
  CHECK((compressed.adjoint() * compressed - Matrix::Identity(4, 4)).norm() <= kTight);
}

TEST_CASE("Wold decomposition limiting cases", "[wold]") {
  SECTION("unitary input: everything is unitary part") {
    Rng rng = make_rng(14);
    const Matrix u = random_unitary(5, rng);
    const WoldDecomposition w = wold_decompose(u);
    CHECK(w.shift_part.is_zero());
    CHECK(w.unitary_part.dim() == 5);
    CHECK((w.v_unitary - u).norm() <= kTight);
    CHECK_FALSE(is_unilateral_shift(u));
  }

  SECTION("truncated chain: everything is shift part") {
    const WoldDecomposition w = wold_decompose(truncated_shift(5));
    CHECK(w.unitary_part.is_zero());
    CHECK(w.shift_part.dim() == 5);
    CHECK(is_unilateral_shift(truncated_shift(5)));
  }

  SECTION("the zero operator is the trivial shift") {
    CHECK(is_unilateral_shift(Matrix::Zero(4, 4)));
    const WoldDecomposition w = wold_decompose(Matrix::Zero(4, 4));
    CHECK(w.wandering.dim() == 4);
    CHECK(w.multiplicity == 0);
    CHECK(w.shift_part.dim() == 4);
  }
}

TEST_CASE("Wold decomposition recovers planted structure", "[wold]") {
  Rng rng = make_rng(2026);
  for (int rep = 0; rep < 8; ++rep) {
    const test::WoldInstance inst = test::random_wold_instance(12, rng);
    const WoldDecomposition w = wold_decompose(inst.v);
    INFO("unitary_dim=" << inst.unitary_dim << " chains=" << inst.chain_lengths.size());
    CHECK(w.wandering.dim() == inst.wandering_dim);
    CHECK(w.multiplicity == inst.multiplicity);
    CHECK(w.unitary_part.dim() == inst.unitary_part_dim);
    CHECK(w.shift_part.dim() + w.unitary_part.dim() == inst.v.rows());

    // Both parts are invariant: v maps the shift part into itself and acts
    // invertibly on the unitary part.
    const Matrix pk = w.shift_part.projector();
    const Matrix pu = w.unitary_part.projector();
    const Index d = inst.v.rows();
    CHECK(((Matrix::Identity(d, d) - pk) * inst.v * pk).norm() <= 1e-9);
    CHECK(((Matrix::Identity(d, d) - pu) * inst.v * pu).norm() <= 1e-9);
    if (inst.unitary_dim > 0) {
      CHECK(projector_distance(w.unitary_part, inst.partition.blocks.front()) <= 1e-8);
      const auto kind = is_partial_isometry(w.v_unitary).kind;
      CHECK((kind == IsometryKind::partial_unitary || kind == IsometryKind::unitary));
    }
  }
}

TEST_CASE("shift-power codes on coordinate chains", "[wold]") {
  const Matrix v = chains443();

  SECTION("t = 2: the whole wandering space survives") {
    const ShiftPowerCode spc = shift_power_code(v, 2);
    CHECK(subspace_equal(spc.code, coord_span(11, {0, 4, 8})));
    REQUIRE(spc.noise.size() == 3);
    CHECK((spc.noise.basis[0] - Matrix::Identity(11, 11)).norm() == 0.0);
    CHECK((spc.noise.basis[2] - matrix_power(v, 2)).norm() == 0.0);

    const GramResult kl = kl_check(spc.code, spc.noise);
    REQUIRE(kl.ok());
    CHECK((kl.gram - Matrix::Identity(3, 3)).norm() <= kTight);

    CorrectingCode cc;
    cc.code = spc.code;
    cc.noise = spc.noise;
    cc.decoding_basis = spc.noise;
    cc.channel = synthesize_channel(spc.code, spc.noise);
    CHECK(verify_decoding(cc, 40, 19) <= 1e-9);
  }

  SECTION("t = 3: only starts of the longest chains survive") {
    const ShiftPowerCode spc = shift_power_code(v, 3);
    CHECK(subspace_equal(spc.code, coord_span(11, {0, 4})));
  }

  SECTION("t = 0: the code is the full wandering space, noise is scalar") {
    const ShiftPowerCode spc = shift_power_code(v, 0);
    CHECK(subspace_equal(spc.code, coord_span(11, {0, 4, 8})));
    CHECK(spc.noise.size() == 1);
  }

  SECTION("refusals") {
    CHECK_THROWS_AS(shift_power_code(v, 4), std::invalid_argument);  // t > m
    CHECK_THROWS_AS(shift_power_code(example_v15(), 1), NotUnilateralShiftError);
  }
}

TEST_CASE("code bound for power noise", "[wold]") {
  const Matrix v = example_v15();
  CHECK(subspace_equal(code_bound(v, 2), coord_range(15, 0, 8)));
  CHECK(subspace_equal(code_bound(v, 3), coord_range(15, 0, 5)));
  CHECK(code_bound(v, 0).dim() == 15);
  CHECK_THROWS_AS(code_bound(v, 4), std::invalid_argument);

  SECTION("for a pure shift at t = m the bound is the canonical code itself") {
    const Matrix s = chains443();
    CHECK(subspace_equal(code_bound(s, 3), shift_power_code(s, 3).code));
  }

  SECTION("canonical codes always sit inside the bound") {
    const Matrix s = chains443();
    for (Index t = 0; t <= 3; ++t)
      CHECK(containment_residual(shift_power_code(s, t).code, code_bound(s, t)) <= 1e-9);
  }
}

TEST_CASE("shift-power codes on random conjugated shifts", "[wold]") {
  Rng rng = make_rng(404);
  int built = 0;
  for (int rep = 0; rep < 6; ++rep) {
    const test::WoldInstance inst = test::random_wold_instance(10, rng, /*with_unitary=*/false);
    REQUIRE(is_unilateral_shift(inst.v));
    for (Index t = 0; t <= inst.multiplicity; ++t) {
      const ShiftPowerCode spc = shift_power_code(inst.v, t);
      ++built;
      // Codes correct the planted noise exactly and respect the bound.
      const GramResult kl = kl_check(spc.code, spc.noise);
      REQUIRE(kl.ok());
      CHECK((kl.gram - Matrix::Identity(t + 1, t + 1)).norm() <= 1e-9);
      CHECK(containment_residual(spc.code, code_bound(inst.v, t)) <= 1e-8);

      CorrectingCode cc;
      cc.code = spc.code;
      cc.noise = spc.noise;
      cc.decoding_basis = spc.noise;
      cc.channel = synthesize_channel(spc.code, spc.noise);
      CHECK(verify_decoding(cc, 20, 7000 + static_cast<std::uint64_t>(rep)) <= 1e-9);
    }
  }
  CHECK(built >= 6);
}
