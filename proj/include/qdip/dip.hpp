// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <optional>
#include <vector>

#include "qdip/linalg.hpp"
#include "qdip/random.hpp"

namespace qdip {

//------------------------------------------------------------------------------
// Operator spans
//------------------------------------------------------------------------------

// A finite-dimensional operator space N on C^d, held as an explicit basis of
// d x d matrices. The basis is required to be linearly independent wherever a
// span enters a Gram computation (validate_operator_span); intermediate
// results (e.g. the negligible part of a split) may carry an empty basis.
struct OperatorSpan {
  Index ambient = 0;
  std::vector<Matrix> basis;

  Index size() const { return static_cast<Index>(basis.size()); }
  bool empty() const { return basis.empty(); }
};

// Column-major vectorization; the bridge between operator-space geometry and
// ordinary column geometry (Hilbert-Schmidt inner product = C^{d^2} inner
// product of the vectorizations).
inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// d^2 x t matrix whose columns are the vectorized basis elements.
inline Matrix span_columns(const OperatorSpan& s) {
  Matrix out(s.ambient * s.ambient, s.size());
  for (Index j = 0; j < s.size(); ++j) out.col(j) = vec(s.basis[static_cast<std::size_t>(j)]);
  return out;
}

inline OperatorSpan span_from_columns(Index ambient, const Matrix& cols) {
  OperatorSpan s;
  s.ambient = ambient;
  s.basis.reserve(static_cast<std::size_t>(cols.cols()));
  for (Index j = 0; j < cols.cols(); ++j) s.basis.push_back(unvec(cols.col(j), ambient, ambient));
  return s;
}

// Hilbert-Schmidt Gram matrix S_{jk} = tr(N_j* N_k) of the basis.
inline Matrix hs_gram(const OperatorSpan& s) {
  const Matrix c = span_columns(s);
  return c.adjoint() * c;
}

// Checks shapes and linear independence (HS Gram numerically full rank).
inline void validate_operator_span(const OperatorSpan& s, const Tolerance& tol = {}) {
  if (s.ambient < 1) throw std::invalid_argument("OperatorSpan: ambient dimension must be >= 1");
  if (s.empty()) throw std::invalid_argument("OperatorSpan: basis is empty");
  for (const Matrix& n : s.basis)
    if (n.rows() != s.ambient || n.cols() != s.ambient)
      throw std::invalid_argument("OperatorSpan: element shape does not match ambient dimension");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hs_gram(s));
  const double lmax = eig.eigenvalues().maxCoeff();
  if (lmax <= 0.0 || eig.eigenvalues().minCoeff() <= tol.rank_eps * lmax)
    throw std::invalid_argument("OperatorSpan: basis is linearly dependent");
}

// Linear combination sum_j coeffs_j N_j.
inline Matrix combine(const OperatorSpan& s, const Vector& coeffs) {
  if (coeffs.size() != s.size()) throw std::invalid_argument("combine: coefficient count mismatch");
  Matrix out = Matrix::Zero(s.ambient, s.ambient);
  for (Index j = 0; j < s.size(); ++j) out += coeffs(j) * s.basis[static_cast<std::size_t>(j)];
  return out;
}

// Gram-Schmidt in operator space: returns a Hilbert-Schmidt-orthonormal basis
// of the same span (dependents dropped).
inline OperatorSpan hs_orthonormalize(const OperatorSpan& s, const Tolerance& tol = {}) {
  return span_from_columns(s.ambient, orthonormalize_columns(span_columns(s), tol));
}

//------------------------------------------------------------------------------
// Negligible noise
//------------------------------------------------------------------------------

// Split of a noise span against a code: `negligible` collects the operators
// that annihilate the code (N P_C = 0) and therefore cannot be seen by any
// decoding inner product; `effective` is its Hilbert-Schmidt-orthogonal
// complement inside the span. Either part may be empty. Both parts are
// returned HS-orthonormalized.
struct NoiseSplit {
  OperatorSpan effective;
  OperatorSpan negligible;
};

inline NoiseSplit split_negligible(const Subspace& code, const OperatorSpan& noise,
                                   const Tolerance& tol = {}) {
  validate_operator_span(noise, tol);
  if (code.ambient() != noise.ambient)
    throw std::invalid_argument("split_negligible: ambient mismatch");
  const Index t = noise.size();

  // Coefficient vectors c with (sum_j c_j N_j) P_C = 0 form the null space of
  // the stacked map c -> vec(sum_j c_j N_j P_C).
  Matrix stacked(noise.ambient * code.dim(), t);
  for (Index j = 0; j < t; ++j)
    stacked.col(j) = vec(noise.basis[static_cast<std::size_t>(j)] * code.frame());
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const Index r = detail::svd_rank(svd.singularValues(), tol.rank_eps);
  const Matrix neg_coeffs = svd.matrixV().rightCols(t - r);

  // The effective part is the HS-orthogonal complement of the negligible part
  // inside the span: coefficients x with x* S y = 0 for all negligible y,
  // i.e. the null space of Y* S.
  const Matrix s_gram = hs_gram(noise);
  Matrix eff_coeffs;
  if (neg_coeffs.cols() == 0) {
    eff_coeffs = Matrix::Identity(t, t);
  } else {
    Eigen::JacobiSVD<Matrix> svd2(neg_coeffs.adjoint() * s_gram, Eigen::ComputeFullV);
    const Index r2 = detail::svd_rank(svd2.singularValues(), tol.rank_eps);
    eff_coeffs = svd2.matrixV().rightCols(t - r2);
  }

  NoiseSplit out;
  out.negligible.ambient = noise.ambient;
  out.effective.ambient = noise.ambient;
  for (Index j = 0; j < neg_coeffs.cols(); ++j)
    out.negligible.basis.push_back(combine(noise, neg_coeffs.col(j)));
  for (Index j = 0; j < eff_coeffs.cols(); ++j)
    out.effective.basis.push_back(combine(noise, eff_coeffs.col(j)));
  if (!out.negligible.empty()) out.negligible = hs_orthonormalize(out.negligible, tol);
  if (!out.effective.empty()) out.effective = hs_orthonormalize(out.effective, tol);

  if (out.negligible.size() + out.effective.size() != t)
    throw InternalMismatchError("split_negligible: part dimensions do not add up");
  return out;
}

//------------------------------------------------------------------------------
// Decoding Gram matrix
//------------------------------------------------------------------------------

// The sesquilinear form phi on the noise span defined by the decoding
// identity  P_C N* M P_C = phi(N, M) P_C, tabulated on the given basis:
// G_{jk} = phi(N_j, N_k). Existence of phi (all residuals vanish) is
// equivalent to the code being correctable for the span, and phi is then an
// inner product on the effective span (G positive definite).
struct DecodingGram {
  Matrix gram;        // t x t, Hermitian positive definite
  OperatorSpan basis; // the basis the entries are expressed in
};

enum class GramStatus {
  ok,          // phi exists and is positive definite on the span
  not_decodable,  // some pair fails the compression identity
  degenerate,  // phi exists but is singular: span still contains negligible noise
};

struct GramResult {
  GramStatus status = GramStatus::not_decodable;
  Matrix gram;                  // candidate Gram (diagnostic even on failure)
  double worst_residual = 0.0;  // max over pairs of ||P N_j* N_k P - G_jk P||_F
  Index worst_j = -1, worst_k = -1;
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the candidate Gram

  bool ok() const { return status == GramStatus::ok; }
};

// Tabulates the candidate Gram by the trace estimate
//   G_jk = tr(P_C N_j* N_k P_C) / dim C
// and validates the compression identity pairwise. Spans that still contain
// negligible directions are refused with `degenerate` (split_negligible must
// be applied first); spans for which no inner product exists at all are
// reported `not_decodable` with the worst-violating pair.
inline GramResult compute_gram(const Subspace& code, const OperatorSpan& noise,
                               const Tolerance& tol = {}) {
  validate_operator_span(noise, tol);
  if (code.ambient() != noise.ambient)
    throw std::invalid_argument("compute_gram: ambient mismatch");
  if (code.is_zero()) throw std::invalid_argument("compute_gram: code is the zero subspace");

  const Index t = noise.size();
  const Index k = code.dim();
  const Matrix& f = code.frame();

  GramResult out;
  out.gram = Matrix::Zero(t, t);
  // Work with the compressed representative f* N_j* N_k f (k x k): the full
  // identity P N* M P = g P holds iff the compression equals g I_k.
  std::vector<Matrix> nf(static_cast<std::size_t>(t));
  for (Index j = 0; j < t; ++j) nf[static_cast<std::size_t>(j)] = noise.basis[static_cast<std::size_t>(j)] * f;
  for (Index j = 0; j < t; ++j) {
    for (Index kk = j; kk < t; ++kk) {
      const Matrix comp = nf[static_cast<std::size_t>(j)].adjoint() * nf[static_cast<std::size_t>(kk)];
      const Complex g = comp.trace() / static_cast<double>(k);
      const double resid = (comp - g * Matrix::Identity(k, k)).norm();
      out.gram(j, kk) = g;
      out.gram(kk, j) = std::conj(g);
      if (resid > out.worst_residual) {
        out.worst_residual = resid;
        out.worst_j = j;
        out.worst_k = kk;
      }
    }
  }
  if (out.worst_residual > tol.check_eps) {
    out.status = GramStatus::not_decodable;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(out.gram);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  out.status = (lmax > 0.0 && out.min_eigenvalue > tol.rank_eps * lmax) ? GramStatus::ok
                                                                        : GramStatus::degenerate;
  return out;
}

//------------------------------------------------------------------------------
// Equivalent characterizations of the decoding inner product
//------------------------------------------------------------------------------

// Sampled residuals for three equivalent formulations of the defining
// identity, given a Gram matrix that is claimed to be the decoding inner
// product of (code, noise):
//  * pairing:   <N u, M v> = phi(N, M) <u, v>          (vectors in the code)
//  * state:     tr(rho N* M) = phi(N, M)               (states on the code)
//  * isometry:  phi(N, N)^{-1/2} N P_F is a partial isometry with support F
//               for every subspace F of the code.
struct EquivalenceReport {
  double pairing_residual = 0.0;
  double state_residual = 0.0;
  double isometry_residual = 0.0;
  int samples = 0;

  double max_residual() const {
    return std::max({pairing_residual, state_residual, isometry_residual});
  }
  bool pass(const Tolerance& tol = {}) const { return max_residual() <= tol.check_eps; }
};

inline EquivalenceReport verify_equivalences(const Subspace& code, const OperatorSpan& noise,
                                             const Matrix& gram, int samples, std::uint64_t seed,
                                             const Tolerance& tol = {}) {
  validate_operator_span(noise, tol);
  if (gram.rows() != noise.size() || gram.cols() != noise.size())
    throw std::invalid_argument("verify_equivalences: Gram shape mismatch");
  if (code.is_zero()) throw std::invalid_argument("verify_equivalences: code is the zero subspace");
  Rng rng = make_rng(seed);
  EquivalenceReport rep;
  rep.samples = samples;
  std::uniform_int_distribution<Index> dim_dist(1, code.dim());
  for (int s = 0; s < samples; ++s) {
    const Vector a = random_unit_coefficients(noise.size(), rng);
    const Vector b = random_unit_coefficients(noise.size(), rng);
    const Matrix n = combine(noise, a);
    const Matrix m = combine(noise, b);
    const Complex phi_nm = a.dot(gram * b);  // conjugate-linear in the first slot

    const Vector u = random_unit_vector_in(code, rng);
    const Vector v = random_unit_vector_in(code, rng);
    rep.pairing_residual = std::max(
        rep.pairing_residual, std::abs((n * u).dot(m * v) - phi_nm * u.dot(v)));

    const Matrix rho = random_density_in(code, rng, tol);
    rep.state_residual =
        std::max(rep.state_residual, std::abs((rho * n.adjoint() * m).trace() - phi_nm));

    const double phi_nn = std::real(a.dot(gram * a));
    if (phi_nn > tol.rank_eps) {
      const Subspace f = random_subspace_of(code, dim_dist(rng), rng, tol);
      const Matrix iso = (n * f.projector()) / std::sqrt(phi_nn);
      rep.isometry_residual =
          std::max(rep.isometry_residual, (iso.adjoint() * iso - f.projector()).norm());
    }
  }
  return rep;
}

//------------------------------------------------------------------------------
// phi-orthonormal bases
//------------------------------------------------------------------------------

// Two distinguished bases extracted from a decoding Gram matrix:
//  * phi_onb: a basis that is orthonormal for phi (new basis = old * G^{-1/2});
//  * hs_onb:  a Hilbert-Schmidt-orthonormal basis that simultaneously
//    diagonalizes phi, with the positive weights w_j = phi(U_j, U_j) sorted
//    descending. Every decoding inner product arises this way from positive
//    weights on an HS-orthonormal basis, and conversely.
struct PhiOnbResult {
  OperatorSpan phi_onb;
  OperatorSpan hs_onb;
  RealVector weights;
  bool near_degenerate_weights = false;  // some weight gap below rank_eps * w_max
  // When a code is supplied: max_{j,k} ||(w_j^{-1/2} U_j P_C)*(w_k^{-1/2} U_k P_C)
  // - delta_{jk} P_C||, i.e. the scaled basis elements are partial isometries
  // with support C and mutually orthogonal ranges. Negative when not checked.
  double code_isometry_residual = -1.0;
};

namespace detail {

// Hermitian inverse square root; throws DegenerateGramError if not positive
// definite at the relative rank_eps threshold.
inline Matrix inverse_sqrt_psd(const Matrix& g, double rank_eps, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  const RealVector& lam = eig.eigenvalues();
  const double lmax = lam.maxCoeff();
  if (lmax <= 0.0 || lam.minCoeff() <= rank_eps * lmax)
    throw DegenerateGramError(std::string(what) + ": matrix is not positive definite");
  RealVector inv_sqrt = lam.array().sqrt().inverse();
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace detail

inline PhiOnbResult phi_onb(const OperatorSpan& noise, const Matrix& gram,
                            const Tolerance& tol = {}, const Subspace* code = nullptr) {
  validate_operator_span(noise, tol);
  const Index t = noise.size();
  if (gram.rows() != t || gram.cols() != t)
    throw std::invalid_argument("phi_onb: Gram shape mismatch");
  if ((gram - gram.adjoint()).norm() > 10.0 * tol.check_eps * std::max(1.0, gram.norm()))
    throw std::invalid_argument("phi_onb: Gram matrix is not Hermitian");

  PhiOnbResult out;

  // phi-orthonormal basis: columns of G^{-1/2} as coefficient vectors.
  const Matrix g_inv_sqrt = detail::inverse_sqrt_psd(gram, tol.rank_eps, "phi_onb");
  out.phi_onb.ambient = noise.ambient;
  for (Index j = 0; j < t; ++j) out.phi_onb.basis.push_back(combine(noise, g_inv_sqrt.col(j)));

  // HS-orthonormal basis diagonalizing phi: first pass to an HS-onb of the
  // span (coefficients S^{-1/2}), then diagonalize the transported Gram.
  const Matrix s_inv_sqrt = detail::inverse_sqrt_psd(hs_gram(noise), tol.rank_eps, "phi_onb[hs]");
  const Matrix g_hs = s_inv_sqrt.adjoint() * gram * s_inv_sqrt;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g_hs);
  // Flip to descending order for a deterministic, largest-weight-first layout.
  out.weights = eig.eigenvalues().reverse();
  const Matrix x = eig.eigenvectors().rowwise().reverse();
  const Matrix hs_coeffs = s_inv_sqrt * x;
  out.hs_onb.ambient = noise.ambient;
  for (Index j = 0; j < t; ++j) out.hs_onb.basis.push_back(combine(noise, hs_coeffs.col(j)));

  const double wmax = out.weights(0);
  for (Index j = 0; j + 1 < t; ++j)
    if (out.weights(j) - out.weights(j + 1) <= tol.rank_eps * wmax)
      out.near_degenerate_weights = true;

  if (code != nullptr) {
    const Matrix pc = code->projector();
    std::vector<Matrix> scaled(static_cast<std::size_t>(t));
    for (Index j = 0; j < t; ++j)
      scaled[static_cast<std::size_t>(j)] =
          (out.hs_onb.basis[static_cast<std::size_t>(j)] * pc) / std::sqrt(out.weights(j));
    double worst = 0.0;
    for (Index j = 0; j < t; ++j)
      for (Index kk = 0; kk < t; ++kk) {
        const Matrix lhs = scaled[static_cast<std::size_t>(j)].adjoint() *
                           scaled[static_cast<std::size_t>(kk)];
        const Matrix rhs = (j == kk) ? pc : Matrix::Zero(pc.rows(), pc.cols());
        worst = std::max(worst, (lhs - rhs).norm());
      }
    out.code_isometry_residual = worst;
  }
  return out;
}

// Converse direction: positive weights on a Hilbert-Schmidt-orthonormal basis
// always define a decoding-style inner product on the span; returns it as a
// DecodingGram over that basis.
inline DecodingGram inner_product_from_positive(const OperatorSpan& hs_onb,
                                                const RealVector& weights,
                                                const Tolerance& tol = {}) {
  validate_operator_span(hs_onb, tol);
  if (weights.size() != hs_onb.size())
    throw std::invalid_argument("inner_product_from_positive: weight count mismatch");
  const Index t = hs_onb.size();
  if ((hs_gram(hs_onb) - Matrix::Identity(t, t)).norm() > 10.0 * tol.check_eps)
    throw std::invalid_argument("inner_product_from_positive: basis is not HS-orthonormal");
  for (Index j = 0; j < t; ++j)
    if (!(weights(j) > 0.0))
      throw std::invalid_argument("inner_product_from_positive: weights must be positive");
  DecodingGram out;
  out.basis = hs_onb;
  out.gram = Matrix::Zero(t, t);
  out.gram.diagonal() = weights.cast<Complex>();
  return out;
}

//------------------------------------------------------------------------------
// Dimension bound
//------------------------------------------------------------------------------

// For a correctable pair, dim N * dim C <= dim H (the translates N_j C are
// mutually orthogonal copies of C inside H).
struct DimensionBound {
  Index code_dim = 0;
  Index noise_dim = 0;
  Index ambient = 0;
  bool holds = false;
};

inline DimensionBound dimension_bound(const Subspace& code, const OperatorSpan& noise) {
  if (code.ambient() != noise.ambient)
    throw std::invalid_argument("dimension_bound: ambient mismatch");
  DimensionBound out;
  out.code_dim = code.dim();
  out.noise_dim = noise.size();
  out.ambient = code.ambient();
  out.holds = out.code_dim * out.noise_dim <= out.ambient;
  return out;
}

}  // namespace qdip
