// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/random.hpp"

namespace qdip {

//------------------------------------------------------------------------------
// Channels and states
//------------------------------------------------------------------------------

// Completely positive trace-preserving map in Kraus form. The convention
// verified throughout is sum_j K_j* K_j = I (trace preservation); note the
// adjoint is on the left factor -- the ranges of the K_j need not resolve the
// identity and in general sum_j K_j K_j* != I.
struct QuantumChannel {
  Index ambient = 0;
  std::vector<Matrix> kraus;

  double completeness_residual() const {
    Matrix s = Matrix::Zero(ambient, ambient);
    for (const Matrix& k : kraus) s += k.adjoint() * k;
    return (s - Matrix::Identity(ambient, ambient)).norm();
  }

  Matrix apply(const Matrix& rho) const {
    if (rho.rows() != ambient || rho.cols() != ambient)
      throw std::invalid_argument("QuantumChannel::apply: shape mismatch");
    Matrix out = Matrix::Zero(ambient, ambient);
    for (const Matrix& k : kraus) out += k * rho * k.adjoint();
    return out;
  }
};

struct DensityState {
  Matrix rho;
};

// Hermitian, positive semidefinite (to tolerance), unit trace.
inline void validate_density(const DensityState& state, const Tolerance& tol = {}) {
  const Matrix& r = state.rho;
  if (r.rows() != r.cols()) throw std::invalid_argument("DensityState: matrix not square");
  if ((r - r.adjoint()).norm() > 10.0 * tol.check_eps)
    throw std::invalid_argument("DensityState: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(r);
  if (eig.eigenvalues().minCoeff() < -10.0 * tol.check_eps)
    throw std::invalid_argument("DensityState: matrix not positive semidefinite");
  if (std::abs(r.trace() - Complex(1.0, 0.0)) > 10.0 * tol.check_eps)
    throw std::invalid_argument("DensityState: trace is not 1");
}

inline DensityState apply_channel(const QuantumChannel& channel, const DensityState& state) {
  return DensityState{channel.apply(state.rho)};
}

// Natural matrix representation sum_j conj(K_j) (x) K_j acting on vec(rho);
// two channels are equal as maps iff their representations are equal.
inline Matrix superoperator_matrix(const QuantumChannel& channel) {
  const Index d = channel.ambient;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const Matrix& k : channel.kraus)
    s += Eigen::kroneckerProduct(k.conjugate(), k).eval();
  return s;
}

//------------------------------------------------------------------------------
// Knill-Laflamme check
//------------------------------------------------------------------------------

// Decides correctability of (code, noise) by tabulating the candidate scalars
// lambda_{jk} = tr(P_C N_j* N_k P_C)/dim C and validating the compression
// identity P_C N_j* N_k P_C = lambda_{jk} P_C. Two independent residual
// routes are evaluated -- the compressed k x k form (via compute_gram) and the
// explicit d x d projector form -- and the worst of both is reported, so a
// disagreement between the two routes can never silently pass.
inline GramResult kl_check(const Subspace& code, const OperatorSpan& noise,
                           const Tolerance& tol = {}) {
  GramResult out = compute_gram(code, noise, tol);
  const Matrix pc = code.projector();
  const Index t = noise.size();
  for (Index j = 0; j < t; ++j)
    for (Index k = j; k < t; ++k) {
      const Matrix lhs = pc * noise.basis[static_cast<std::size_t>(j)].adjoint() *
                         noise.basis[static_cast<std::size_t>(k)] * pc;
      const double resid = (lhs - out.gram(j, k) * pc).norm();
      if (resid > out.worst_residual) {
        out.worst_residual = resid;
        out.worst_j = j;
        out.worst_k = k;
      }
    }
  if (out.status == GramStatus::ok && out.worst_residual > tol.check_eps)
    out.status = GramStatus::not_decodable;
  return out;
}

//------------------------------------------------------------------------------
// Decoding noise bases
//------------------------------------------------------------------------------

// max_{j,k} ||(N_j P_C)*(N_k P_C) - delta_{jk} P_C||: zero iff every N_j P_C
// is a partial isometry with support C and the ranges N_j C are mutually
// orthogonal, i.e. the family is a decoding noise basis for C.
inline double decoding_basis_residual(const Subspace& code, const OperatorSpan& basis) {
  if (code.ambient() != basis.ambient)
    throw std::invalid_argument("decoding_basis_residual: ambient mismatch");
  const Matrix pc = code.projector();
  std::vector<Matrix> nf(basis.basis.size());
  for (std::size_t j = 0; j < basis.basis.size(); ++j) nf[j] = basis.basis[j] * code.frame();
  double worst = 0.0;
  const Matrix ident = Matrix::Identity(code.dim(), code.dim());
  for (std::size_t j = 0; j < nf.size(); ++j)
    for (std::size_t k = 0; k < nf.size(); ++k) {
      // (N_j P)*(N_k P) - delta P = f (f* N_j* N_k f - delta I) f*, and the
      // isometric frame factors preserve the Frobenius norm.
      const Matrix comp = nf[j].adjoint() * nf[k];
      const Matrix rhs = (j == k) ? ident : Matrix::Zero(code.dim(), code.dim());
      worst = std::max(worst, (comp - rhs).norm());
    }
  return worst;
}

// Orthonormalizes the noise span for the decoding inner product: the returned
// family is a decoding noise basis (each element maps C isometrically onto a
// range orthogonal to all others). Throws when the pair is not correctable.
inline OperatorSpan decoding_noise_basis(const Subspace& code, const OperatorSpan& noise,
                                         const Tolerance& tol = {}) {
  const GramResult kl = kl_check(code, noise, tol);
  if (kl.status == GramStatus::degenerate)
    throw DegenerateGramError(
        "decoding_noise_basis: span contains negligible noise (split it first); smallest Gram "
        "eigenvalue " +
        std::to_string(kl.min_eigenvalue));
  if (kl.status != GramStatus::ok)
    throw NotDecodableError("decoding_noise_basis: no decoding inner product exists; worst pair (" +
                            std::to_string(kl.worst_j) + "," + std::to_string(kl.worst_k) +
                            ") residual " + std::to_string(kl.worst_residual));
  OperatorSpan onb = phi_onb(noise, kl.gram, tol).phi_onb;
  const double resid = decoding_basis_residual(code, onb);
  if (resid > 10.0 * tol.check_eps)
    throw InternalMismatchError("decoding_noise_basis: extracted basis fails the isometry "
                                "postcondition (residual " +
                                std::to_string(resid) + ")");
  return onb;
}

//------------------------------------------------------------------------------
// Channel synthesis
//------------------------------------------------------------------------------

// Builds the correcting channel of a decoding noise basis {N_1..N_t}:
//   K_j = P_C N_j*           (transport the j-th error range back onto C)
//   K_last = I - sum_j K_j* K_j   (projection onto the unreached complement)
// The Kraus list has t+1 entries in basis order with the complement last (the
// complement may be the zero matrix). Each K_j* K_j is the projection onto
// N_j C; trace preservation follows from their mutual orthogonality.
inline QuantumChannel synthesize_channel(const Subspace& code, const OperatorSpan& basis,
                                         const Tolerance& tol = {}) {
  validate_operator_span(basis, tol);
  if (code.ambient() != basis.ambient)
    throw std::invalid_argument("synthesize_channel: ambient mismatch");
  const double basis_resid = decoding_basis_residual(code, basis);
  if (basis_resid > 10.0 * tol.check_eps)
    throw NotDecodableError("synthesize_channel: family is not a decoding noise basis (residual " +
                            std::to_string(basis_resid) + ")");
  const Index d = basis.ambient;
  const Matrix pc = code.projector();
  QuantumChannel ch;
  ch.ambient = d;
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& n : basis.basis) {
    Matrix k = pc * n.adjoint();
    sum += k.adjoint() * k;
    ch.kraus.push_back(std::move(k));
  }
  ch.kraus.push_back(Matrix::Identity(d, d) - sum);
  const double resid = ch.completeness_residual();
  if (resid > tol.check_eps)
    throw CompletenessViolationError("synthesize_channel: Kraus completeness residual " +
                                     std::to_string(resid));
  return ch;
}

//------------------------------------------------------------------------------
// Decoding verification
//------------------------------------------------------------------------------

// A correctable pair packaged with its certificate: the decoding noise basis
// and the synthesized correcting channel.
struct CorrectingCode {
  Subspace code;
  OperatorSpan noise;
  OperatorSpan decoding_basis;
  QuantumChannel channel;

  CorrectingCode() : code(1) {}
};

// Max over samples of || Phi(N rho N*) - tr(rho N* N) rho ||_F for random
// states rho on the code and random unit-coefficient noise elements N: the
// channel restores every corrupted code state up to the scalar weight
// tr(rho N* N) of the noise element.
inline double verify_decoding(const CorrectingCode& cc, int samples, std::uint64_t seed,
                              const Tolerance& tol = {}) {
  Rng rng = make_rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix rho = random_density_in(cc.code, rng, tol);
    const Vector a = random_unit_coefficients(cc.noise.size(), rng);
    const Matrix n = combine(cc.noise, a);
    const Matrix corrupted = n * rho * n.adjoint();
    const Complex weight = (rho * n.adjoint() * n).trace();
    worst = std::max(worst, (cc.channel.apply(corrupted) - weight * rho).norm());
  }
  return worst;
}

// Action distance between two channels: max Frobenius difference over random
// full-space density matrices.
inline double channel_action_distance(const QuantumChannel& a, const QuantumChannel& b,
                                      int samples, std::uint64_t seed, const Tolerance& tol = {}) {
  if (a.ambient != b.ambient)
    throw std::invalid_argument("channel_action_distance: ambient mismatch");
  Rng rng = make_rng(seed);
  const Subspace full = Subspace::full(a.ambient);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix rho = random_density_in(full, rng, tol);
    worst = std::max(worst, (a.apply(rho) - b.apply(rho)).norm());
  }
  return worst;
}

//------------------------------------------------------------------------------
// Limiting cases
//------------------------------------------------------------------------------

// The two degenerate regimes: the whole space is a correctable code exactly
// when the noise span is one-dimensional and spanned by (a scalar multiple
// of) a unitary; and a code correcting all of B(H) exists exactly when
// dim H = 1.
struct LimitingCases {
  Index ambient = 0;
  bool whole_space_correctable = false;  // C = H works for this span
  bool noise_spans_full_algebra = false; // dim N = (dim H)^2
  bool full_algebra_admits_code = false; // some code corrects all of B(H)
};

inline LimitingCases limiting_cases(const OperatorSpan& noise, const Tolerance& tol = {}) {
  validate_operator_span(noise, tol);
  LimitingCases out;
  out.ambient = noise.ambient;
  const Index d = noise.ambient;
  if (noise.size() == 1) {
    // Scalar multiples of a unitary are exactly the operators with A*A
    // proportional to the identity (with a nonzero constant).
    const Matrix& a = noise.basis.front();
    const double scale = hs_norm(a);
    if (scale > 0.0) {
      const Matrix b = a * (std::sqrt(static_cast<double>(d)) / scale);
      out.whole_space_correctable =
          (b.adjoint() * b - Matrix::Identity(d, d)).norm() <= tol.check_eps;
    }
  }
  out.noise_spans_full_algebra = noise.size() == d * d;
  out.full_algebra_admits_code = d == 1;
  return out;
}

//------------------------------------------------------------------------------
// Random instances
//------------------------------------------------------------------------------

// Synthesizes a random correctable instance: a Haar-random code frame, one
// orthogonal image frame per noise element, random unitaries C -> image_j as
// transport maps, and a final random unitary recombination (which keeps the
// family a decoding noise basis: the Gram matrix stays the identity). The
// request must respect the dimension bound noise_count * code_dim <= ambient.
inline CorrectingCode random_instance(Index ambient, Index code_dim, Index noise_count,
                                      std::uint64_t seed, const Tolerance& tol = {}) {
  if (ambient < 1 || code_dim < 1 || noise_count < 1)
    throw std::invalid_argument("random_instance: dimensions must be >= 1");
  if (noise_count * code_dim > ambient)
    throw std::invalid_argument("random_instance: dimension bound violated (noise_count * "
                                "code_dim must be <= ambient)");
  Rng rng = make_rng(seed);
  const Matrix u = random_unitary(ambient, rng);

  CorrectingCode cc;
  cc.code = Subspace::from_frame(u.leftCols(code_dim), tol);
  const Matrix code_adj = cc.code.frame().adjoint();

  std::vector<Matrix> transports;
  transports.reserve(static_cast<std::size_t>(noise_count));
  for (Index j = 0; j < noise_count; ++j) {
    const Matrix image = u.middleCols(j * code_dim, code_dim);
    transports.push_back(image * random_unitary(code_dim, rng) * code_adj);
  }
  const Matrix mix = random_unitary(noise_count, rng);
  OperatorSpan span;
  span.ambient = ambient;
  for (Index i = 0; i < noise_count; ++i) {
    Matrix n = Matrix::Zero(ambient, ambient);
    for (Index j = 0; j < noise_count; ++j)
      n += mix(j, i) * transports[static_cast<std::size_t>(j)];
    span.basis.push_back(std::move(n));
  }
  cc.noise = span;
  cc.decoding_basis = span;
  cc.channel = synthesize_channel(cc.code, cc.decoding_basis, tol);
  return cc;
}

}  // namespace qdip
