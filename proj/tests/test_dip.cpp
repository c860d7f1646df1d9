#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/random.hpp"

using namespace qdip;
using test::basis_vec;
using test::coord_span;
using test::matrix_unit_span;
using test::oracle_gram_entry;

namespace {

constexpr double kTight = 1e-12;

Matrix matrix_unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

// Code span{e0, e1} in C^4 with noise {identity, shift-by-two}: the shift
// moves the code onto an orthogonal copy, so the decoding Gram is exactly I.
struct FlatPair {
  Subspace code = coord_span(4, {0, 1});
  OperatorSpan noise;

  FlatPair() {
    noise.ambient = 4;
    noise.basis.push_back(Matrix::Identity(4, 4));
    noise.basis.push_back(matrix_unit(4, 2, 0) + matrix_unit(4, 3, 1));
  }
};

}  // namespace

TEST_CASE("vec and unvec are the column-major bridge", "[dip]") {
  Matrix m(2, 2);
  m << Complex(1.0), Complex(3.0), Complex(2.0, -1.0), Complex(4.0);
  const Vector v = vec(m);
  REQUIRE(v.size() == 4);
  CHECK(v(0) == m(0, 0));
  CHECK(v(1) == m(1, 0));  // column-major: (1,0) comes second
  CHECK(v(2) == m(0, 1));
  CHECK(v(3) == m(1, 1));
  CHECK((unvec(v, 2, 2) - m).norm() == 0.0);
  CHECK_THROWS_AS(unvec(v, 3, 2), std::invalid_argument);

  // HS inner product equals the C^{d^2} inner product of vectorizations.
  Rng rng = make_rng(7);
  const Matrix a = random_gaussian(3, 3, rng);
  const Matrix b = random_gaussian(3, 3, rng);
  CHECK(std::abs(hs_inner(a, b) - vec(a).dot(vec(b))) <= kTight);
}

TEST_CASE("matrix units are an HS-orthonormal operator basis", "[dip]") {
  const OperatorSpan units = matrix_unit_span(3);
  CHECK((hs_gram(units) - Matrix::Identity(9, 9)).norm() <= kTight);
  CHECK_NOTHROW(validate_operator_span(units));
}

TEST_CASE("validate_operator_span rejects malformed spans", "[dip]") {
  OperatorSpan bad;
  bad.ambient = 2;
  CHECK_THROWS_AS(validate_operator_span(bad), std::invalid_argument);  // empty

  bad.basis.push_back(Matrix::Identity(3, 3));
  CHECK_THROWS_AS(validate_operator_span(bad), std::invalid_argument);  // shape

  OperatorSpan dep;
  dep.ambient = 2;
  dep.basis.push_back(Matrix::Identity(2, 2));
  dep.basis.push_back(2.0 * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(validate_operator_span(dep), std::invalid_argument);  // dependent
}

TEST_CASE("hs_orthonormalize keeps the leading direction", "[dip]") {
  OperatorSpan s;
  s.ambient = 2;
  s.basis.push_back(Matrix::Identity(2, 2));
  s.basis.push_back(matrix_unit(2, 0, 0));
  const OperatorSpan q = hs_orthonormalize(s);
  REQUIRE(q.size() == 2);
  CHECK((hs_gram(q) - Matrix::Identity(2, 2)).norm() <= kTight);
  // First element is I/sqrt(2); second is the orthogonalized remainder
  // E00 - I/2, normalized: diag(1, -1)/sqrt(2).
  CHECK((q.basis[0] - Matrix::Identity(2, 2) / std::sqrt(2.0)).norm() <= kTight);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0 / std::sqrt(2.0);
  expect(1, 1) = -1.0 / std::sqrt(2.0);
  CHECK((q.basis[1] - expect).norm() <= kTight);
}

TEST_CASE("split_negligible separates operators that annihilate the code", "[dip]") {
  // Code span{e0} in C^3. E10 acts on the code; E21 annihilates it. Feed the
  // span in a mixed basis so the split actually has to solve for the parts.
  const Subspace code = coord_span(3, {0});
  const Matrix n_eff = matrix_unit(3, 1, 0);
  const Matrix n_neg = matrix_unit(3, 2, 1);
  OperatorSpan mixed;
  mixed.ambient = 3;
  mixed.basis.push_back(n_eff + n_neg);
  mixed.basis.push_back(n_eff - n_neg);

  const NoiseSplit split = split_negligible(code, mixed);
  REQUIRE(split.negligible.size() == 1);
  REQUIRE(split.effective.size() == 1);
  CHECK((split.negligible.basis[0] * code.projector()).norm() <= 1e-10);
  // Each part is a unit multiple of the corresponding matrix unit.
  CHECK(std::abs(std::abs(hs_inner(n_neg, split.negligible.basis[0])) - 1.0) <= 1e-10);
  CHECK(std::abs(std::abs(hs_inner(n_eff, split.effective.basis[0])) - 1.0) <= 1e-10);

  SECTION("all-effective and all-negligible extremes") {
    OperatorSpan eff_only;
    eff_only.ambient = 3;
    eff_only.basis.push_back(Matrix::Identity(3, 3));
    const NoiseSplit s1 = split_negligible(code, eff_only);
    CHECK(s1.negligible.empty());
    CHECK(s1.effective.size() == 1);

    OperatorSpan neg_only;
    neg_only.ambient = 3;
    neg_only.basis.push_back(n_neg);
    const NoiseSplit s2 = split_negligible(code, neg_only);
    CHECK(s2.effective.empty());
    CHECK(s2.negligible.size() == 1);
  }

  SECTION("the two parts are HS-orthogonal (random spans)") {
    Rng rng = make_rng(17);
    for (int rep = 0; rep < 10; ++rep) {
      const Subspace c = random_subspace_of(Subspace::full(5), 2, rng);
      OperatorSpan s;
      s.ambient = 5;
      for (int j = 0; j < 4; ++j) s.basis.push_back(random_gaussian(5, 5, rng));
      // Plant one negligible direction: a random operator times (I - P_C).
      s.basis.push_back(random_gaussian(5, 5, rng) *
                        (Matrix::Identity(5, 5) - c.projector()));
      const NoiseSplit sp = split_negligible(c, s);
      CHECK(sp.negligible.size() >= 1);
      CHECK(sp.effective.size() + sp.negligible.size() == 5);
      for (const Matrix& n : sp.negligible.basis)
        CHECK((n * c.projector()).norm() <= 1e-9);
      for (const Matrix& e : sp.effective.basis)
        for (const Matrix& n : sp.negligible.basis)
          CHECK(std::abs(hs_inner(e, n)) <= 1e-9);
    }
  }
}

TEST_CASE("compute_gram on a correctable pair", "[dip]") {
  const FlatPair fp;
  const GramResult res = compute_gram(fp.code, fp.noise);
  REQUIRE(res.ok());
  CHECK((res.gram - Matrix::Identity(2, 2)).norm() <= kTight);
  CHECK(res.worst_residual <= kTight);
  CHECK(res.min_eigenvalue == Catch::Approx(1.0));

  SECTION("entries agree with the dense projector-identity oracle") {
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 2; ++k) {
        const auto oracle =
            oracle_gram_entry(fp.code, fp.noise.basis[static_cast<std::size_t>(j)],
                              fp.noise.basis[static_cast<std::size_t>(k)]);
        CHECK(std::abs(res.gram(j, k) - oracle.lambda) <= kTight);
        CHECK(oracle.residual <= kTight);
      }
  }

  SECTION("basis change transforms the Gram as A* G A") {
    Rng rng = make_rng(23);
    const Matrix a = random_gaussian(2, 2, rng);  // generically invertible
    OperatorSpan mixed;
    mixed.ambient = 4;
    for (Index j = 0; j < 2; ++j) mixed.basis.push_back(combine(fp.noise, a.col(j)));
    const GramResult res2 = compute_gram(fp.code, mixed);
    REQUIRE(res2.ok());
    CHECK((res2.gram - a.adjoint() * res.gram * a).norm() <= 1e-10);
  }

  SECTION("unitary conjugation leaves the Gram invariant") {
    Rng rng = make_rng(29);
    const Matrix u = random_unitary(4, rng);
    OperatorSpan conj;
    conj.ambient = 4;
    for (const Matrix& n : fp.noise.basis) conj.basis.push_back(u * n * u.adjoint());
    const Subspace moved = Subspace::span_of(u * fp.code.frame());
    const GramResult res3 = compute_gram(moved, conj);
    REQUIRE(res3.ok());
    CHECK((res3.gram - res.gram).norm() <= 1e-10);
  }
}

TEST_CASE("compute_gram reports non-decodable pairs with the worst violation", "[dip]") {
  // On the full space C^2, {I, E00} is not correctable: the compression of
  // E00 to the code is diag(1, 0), which is no multiple of the identity.
  OperatorSpan noise;
  noise.ambient = 2;
  noise.basis.push_back(Matrix::Identity(2, 2));
  noise.basis.push_back(matrix_unit(2, 0, 0));
  const GramResult res = compute_gram(Subspace::full(2), noise);
  CHECK(res.status == GramStatus::not_decodable);
  CHECK_FALSE(res.ok());
  // || diag(1,0) - (1/2) I ||_F = sqrt(1/2).
  CHECK(res.worst_residual == Catch::Approx(std::sqrt(0.5)));
  CHECK(res.worst_k == 1);
}

TEST_CASE("compute_gram refuses spans with negligible directions as degenerate", "[dip]") {
  const Subspace code = coord_span(2, {0});
  OperatorSpan noise;
  noise.ambient = 2;
  noise.basis.push_back(matrix_unit(2, 1, 0));  // maps e0 -> e1
  noise.basis.push_back(matrix_unit(2, 0, 1));  // annihilates the code
  const GramResult res = compute_gram(code, noise);
  CHECK(res.status == GramStatus::degenerate);
  CHECK((res.gram - (Matrix(2, 2) << 1, 0, 0, 0).finished()).norm() <= kTight);
  CHECK(std::abs(res.min_eigenvalue) <= kTight);

  SECTION("splitting first repairs the computation") {
    const NoiseSplit split = split_negligible(code, noise);
    const GramResult fixed = compute_gram(code, split.effective);
    REQUIRE(fixed.ok());
    CHECK((fixed.gram - Matrix::Identity(1, 1)).norm() <= kTight);
  }
}

TEST_CASE("verify_equivalences confirms a valid Gram and flags a wrong one", "[dip]") {
  const FlatPair fp;
  const GramResult res = compute_gram(fp.code, fp.noise);
  REQUIRE(res.ok());

  const EquivalenceReport good = verify_equivalences(fp.code, fp.noise, res.gram, 60, 101);
  CHECK(good.samples == 60);
  CHECK(good.pass());
  CHECK(good.max_residual() <= 1e-9);

  const EquivalenceReport bad =
      verify_equivalences(fp.code, fp.noise, 2.0 * res.gram, 60, 101);
  CHECK_FALSE(bad.pass());
  CHECK(bad.pairing_residual > 0.1);
  CHECK(bad.state_residual > 0.1);
}

TEST_CASE("phi_onb produces the two distinguished bases with sorted weights", "[dip]") {
  // Code span{e0} in C^3 with HS-orthogonal noise operators of different
  // Hilbert-Schmidt size but unit phi-norm: N1 = E00 + E11, N2 = E10 + 2 E21.
  // The decoding Gram is I; the weights of the HS-onb are 1/2 and 1/5.
  const Subspace code = coord_span(3, {0});
  OperatorSpan noise;
  noise.ambient = 3;
  noise.basis.push_back(matrix_unit(3, 0, 0) + matrix_unit(3, 1, 1));
  noise.basis.push_back(matrix_unit(3, 1, 0) + 2.0 * matrix_unit(3, 2, 1));
  const GramResult res = compute_gram(code, noise);
  REQUIRE(res.ok());
  CHECK((res.gram - Matrix::Identity(2, 2)).norm() <= kTight);

  const PhiOnbResult onb = phi_onb(noise, res.gram, Tolerance{}, &code);
  REQUIRE(onb.weights.size() == 2);
  CHECK(onb.weights(0) == Catch::Approx(0.5));
  CHECK(onb.weights(1) == Catch::Approx(0.2));
  CHECK_FALSE(onb.near_degenerate_weights);
  CHECK(onb.code_isometry_residual >= 0.0);
  CHECK(onb.code_isometry_residual <= 1e-9);

  SECTION("phi-orthonormality of phi_onb against the dense oracle") {
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 2; ++k) {
        const auto o = oracle_gram_entry(code, onb.phi_onb.basis[static_cast<std::size_t>(j)],
                                         onb.phi_onb.basis[static_cast<std::size_t>(k)]);
        CHECK(o.residual <= 1e-10);
        CHECK(std::abs(o.lambda - (j == k ? Complex(1.0) : Complex(0.0))) <= 1e-10);
      }
  }

  SECTION("hs_onb is HS-orthonormal and diagonalizes phi with the weights") {
    CHECK((hs_gram(onb.hs_onb) - Matrix::Identity(2, 2)).norm() <= 1e-10);
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 2; ++k) {
        const auto o = oracle_gram_entry(code, onb.hs_onb.basis[static_cast<std::size_t>(j)],
                                         onb.hs_onb.basis[static_cast<std::size_t>(k)]);
        CHECK(o.residual <= 1e-10);
        const Complex expect = (j == k) ? Complex(onb.weights(j)) : Complex(0.0);
        CHECK(std::abs(o.lambda - expect) <= 1e-10);
      }
  }

  SECTION("equal weights are flagged as near-degenerate") {
    OperatorSpan sym;
    sym.ambient = 3;
    sym.basis.push_back(matrix_unit(3, 0, 0) + matrix_unit(3, 1, 1));
    sym.basis.push_back(matrix_unit(3, 1, 0) + matrix_unit(3, 2, 1));
    const GramResult r2 = compute_gram(code, sym);
    REQUIRE(r2.ok());
    const PhiOnbResult o2 = phi_onb(sym, r2.gram);
    CHECK(o2.near_degenerate_weights);
    CHECK(o2.code_isometry_residual < 0.0);  // no code supplied: unchecked
  }

  SECTION("singular Gram is refused") {
    Matrix singular = Matrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(phi_onb(noise, singular), DegenerateGramError);
  }
}

TEST_CASE("positive weights on an HS-onb define a decoding-style inner product", "[dip]") {
  OperatorSpan onb;
  onb.ambient = 2;
  onb.basis.push_back(matrix_unit(2, 0, 0));
  onb.basis.push_back(matrix_unit(2, 1, 0));
  RealVector w(2);
  w << 2.0, 0.5;
  const DecodingGram g = inner_product_from_positive(onb, w);
  CHECK((g.gram - (Matrix(2, 2) << 2.0, 0, 0, 0.5).finished()).norm() <= kTight);

  // Round trip: the Gram the construction defines is recovered by the
  // compression identity on the code the basis decodes (span{e0}).
  const Subspace code = coord_span(2, {0});
  const GramResult back = compute_gram(code, onb);
  REQUIRE(back.ok());
  CHECK((back.gram - Matrix::Identity(2, 2)).norm() <= kTight);  // units are phi-onb here

  OperatorSpan not_onb;
  not_onb.ambient = 2;
  not_onb.basis.push_back(Matrix::Identity(2, 2));  // HS norm sqrt(2)
  RealVector w1(1);
  w1 << 1.0;
  CHECK_THROWS_AS(inner_product_from_positive(not_onb, w1), std::invalid_argument);

  RealVector wneg(2);
  wneg << 1.0, -1.0;
  CHECK_THROWS_AS(inner_product_from_positive(onb, wneg), std::invalid_argument);
}

TEST_CASE("dimension bound t * k <= d for correctable pairs", "[dip]") {
  const FlatPair fp;
  const DimensionBound b = dimension_bound(fp.code, fp.noise);
  CHECK(b.holds);
  CHECK(b.code_dim == 2);
  CHECK(b.noise_dim == 2);
  CHECK(b.ambient == 4);

  OperatorSpan three = fp.noise;
  three.basis.push_back(matrix_unit(4, 1, 0));
  CHECK_FALSE(dimension_bound(fp.code, three).holds);

  SECTION("correctable pairs never violate the bound (random search)") {
    // Random codes and random correctable noise never land above the bound;
    // conversely a violating configuration can never have an ok Gram.
    Rng rng = make_rng(41);
    for (int rep = 0; rep < 20; ++rep) {
      const Index d = 6;
      const Subspace c = random_subspace_of(Subspace::full(d), 2, rng);
      OperatorSpan s;
      s.ambient = d;
      for (int j = 0; j < 4; ++j) s.basis.push_back(random_gaussian(d, d, rng));
      const GramResult r = compute_gram(c, s);
      if (r.ok()) CHECK(dimension_bound(c, s).holds);  // 4 * 2 > 6 -> must not be ok
      CHECK_FALSE(r.ok());  // generic spans on a small space cannot be correctable here
    }
  }
}
