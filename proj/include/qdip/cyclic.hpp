// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <numbers>
#include <vector>

#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"

namespace qdip {

//------------------------------------------------------------------------------
// Cyclic frame: roots of unity and the entangled basis
//------------------------------------------------------------------------------

// Precomputed data for the cyclic structure on C^m: the m-th roots of unity
// (each evaluated once from its angle; powers are then looked up by index
// arithmetic mod m, avoiding phase drift from repeated multiplication) and
// the entangled basis phi_j = F* e_j, stored as columns.
class CyclicFrame {
public:
  explicit CyclicFrame(Index m) : dim_(m) {
    if (m < 1) throw std::invalid_argument("CyclicFrame: dimension must be >= 1");
    roots_.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j)
      roots_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                            static_cast<double>(m)));
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    entangled_ = Matrix(m, m);
    for (Index j = 0; j < m; ++j)
      for (Index r = 0; r < m; ++r) entangled_(r, j) = scale * root(-j * r);
  }

  Index dim() const { return dim_; }

  // zeta^k for any integer k (reduced mod m).
  Complex root(Index k) const {
    const Index r = ((k % dim_) + dim_) % dim_;
    return roots_[static_cast<std::size_t>(r)];
  }

  // Column j is the entangled basis vector phi_j.
  const Matrix& entangled() const { return entangled_; }
  Vector entangled_vector(Index j) const { return entangled_.col(((j % dim_) + dim_) % dim_); }

private:
  Index dim_;
  std::vector<Complex> roots_;
  Matrix entangled_;
};

//------------------------------------------------------------------------------
// The three canonical operators
//------------------------------------------------------------------------------

// Cyclic shift U e_j = e_{j+1 mod m}.
inline Matrix shift_operator(Index m) {
  if (m < 1) throw std::invalid_argument("shift_operator: dimension must be >= 1");
  Matrix u = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) u((j + 1) % m, j) = 1.0;
  return u;
}

// Clock (phase) operator V e_j = zeta^j e_j.
inline Matrix clock_operator(Index m) {
  const CyclicFrame frame(m);
  Matrix v = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) v(j, j) = frame.root(j);
  return v;
}

// Discrete Fourier operator F_{rj} = zeta^{rj} / sqrt(m). It exchanges the
// two bases: phi_j = F* e_j and e_j = F phi_j, and conjugates the clock into
// the shift: U = F* V F.
inline Matrix fourier_operator(Index m) {
  const CyclicFrame frame(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix f(m, m);
  for (Index j = 0; j < m; ++j)
    for (Index r = 0; r < m; ++r) f(r, j) = scale * frame.root(r * j);
  return f;
}

//------------------------------------------------------------------------------
// Flat-coefficient codes
//------------------------------------------------------------------------------

// One-dimensional codes correctable against all shift powers {U^r} are
// exactly the spans of vectors with flat entangled-basis coefficients
// |<phi_j, f>| = 1/sqrt(m); dually, codes for all clock powers {V^t} are the
// spans of vectors with flat standard-basis coefficients.
struct FlatCodeCheck {
  bool is_code = false;
  double flatness = 0.0;  // max_j |c_j| - min_j |c_j| over the coefficients
  std::string reason;
};

namespace detail {

inline FlatCodeCheck flat_check(const Subspace& code, const Matrix& basis_adjoint,
                                const Tolerance& tol) {
  FlatCodeCheck out;
  if (code.dim() != 1) {
    out.reason = "code is not one-dimensional";
    return out;
  }
  const Vector c = basis_adjoint * code.frame().col(0);
  const RealVector mods = c.cwiseAbs();
  out.flatness = mods.maxCoeff() - mods.minCoeff();
  out.is_code = out.flatness <= tol.check_eps;
  if (!out.is_code) out.reason = "coefficient moduli are not flat";
  return out;
}

}  // namespace detail

// Code for the shift powers: flat in the entangled basis.
inline FlatCodeCheck is_shift_code(const Subspace& code, const Tolerance& tol = {}) {
  const CyclicFrame frame(code.ambient());
  return detail::flat_check(code, frame.entangled().adjoint(), tol);
}

// Code for the clock powers: flat in the standard basis.
inline FlatCodeCheck is_clock_code(const Subspace& code, const Tolerance& tol = {}) {
  return detail::flat_check(code, Matrix::Identity(code.ambient(), code.ambient()), tol);
}

// span{ (1/sqrt m) sum_j e^{i theta_j} phi_j }: the general shift code.
inline Subspace make_shift_code(Index m, const RealVector& thetas, const Tolerance& tol = {}) {
  if (thetas.size() != m) throw std::invalid_argument("make_shift_code: need one phase per index");
  const CyclicFrame frame(m);
  Vector f = Vector::Zero(m);
  for (Index j = 0; j < m; ++j) f += std::polar(1.0, thetas(j)) * frame.entangled_vector(j);
  f /= std::sqrt(static_cast<double>(m));
  return Subspace::from_frame(f, tol);
}

// span{ (1/sqrt m) sum_j e^{i theta_j} e_j }: the general clock code.
inline Subspace make_clock_code(Index m, const RealVector& thetas, const Tolerance& tol = {}) {
  if (thetas.size() != m) throw std::invalid_argument("make_clock_code: need one phase per index");
  Vector f(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index j = 0; j < m; ++j) f(j) = scale * std::polar(1.0, thetas(j));
  return Subspace::from_frame(f, tol);
}

//------------------------------------------------------------------------------
// Closed-form decoders
//------------------------------------------------------------------------------

// Correcting channel for the standard-basis code span{e_j} against all shift
// powers: K_r = |e_j><e_{j+r}| transports the r-shifted line back onto the
// code. Exactly m Kraus operators; their K_r* K_r are the standard rank-one
// projectors, which resolve the identity (no complement term needed). Note
// completeness holds in the sum_r K_r* K_r = I convention; the reversed
// ordering sum_r K_r K_r* equals m |e_j><e_j| and is not the identity.
inline QuantumChannel shift_decoder(Index m, Index j, const Tolerance& tol = {}) {
  if (m < 1 || j < 0 || j >= m) throw std::invalid_argument("shift_decoder: need 0 <= j < m");
  QuantumChannel ch;
  ch.ambient = m;
  for (Index r = 0; r < m; ++r) {
    Matrix k = Matrix::Zero(m, m);
    k(j, (j + r) % m) = 1.0;
    ch.kraus.push_back(std::move(k));
  }
  const double resid = ch.completeness_residual();
  if (resid > tol.check_eps)
    throw CompletenessViolationError("shift_decoder: completeness residual " +
                                     std::to_string(resid));
  return ch;
}

// Correcting channel for the entangled-basis code span{phi_j} against all
// clock powers: the clock moves the entangled basis downward (V phi_i =
// phi_{i-1}), so the r-th corrupted line is phi_{j-r} and
// K_r = |phi_j><phi_{j-r}|.
inline QuantumChannel clock_decoder(Index m, Index j, const Tolerance& tol = {}) {
  if (m < 1 || j < 0 || j >= m) throw std::invalid_argument("clock_decoder: need 0 <= j < m");
  const CyclicFrame frame(m);
  QuantumChannel ch;
  ch.ambient = m;
  const Vector target = frame.entangled_vector(j);
  for (Index r = 0; r < m; ++r)
    ch.kraus.push_back(target * frame.entangled_vector(j - r).adjoint());
  const double resid = ch.completeness_residual();
  if (resid > tol.check_eps)
    throw CompletenessViolationError("clock_decoder: completeness residual " +
                                     std::to_string(resid));
  return ch;
}

//------------------------------------------------------------------------------
// Weyl operators on direct sums
//------------------------------------------------------------------------------

// W_{(r,t)} = (+)_s U_s^{r_s} V_s^{t_s}: block-diagonal direct sum of the
// shift/clock monomials of each cyclic summand. Each W is unitary, so
// <W, W>_2 = dim H. For a single summand the family {W_{(r,t)}} is a
// Hilbert-Schmidt-orthogonal basis of B(C^m); across two or more summands
// the direct sums are *not* mutually orthogonal -- a pair agreeing on the
// indices of a subset S of blocks has <W, W'>_2 = sum_{s in S} m_s, because
// tr(U^a V^b) = m delta_{a0} delta_{b0} on each block.
inline Matrix weyl_operator(const std::vector<Index>& dims, const std::vector<Index>& r,
                            const std::vector<Index>& t) {
  if (dims.empty()) throw std::invalid_argument("weyl_operator: need at least one summand");
  if (r.size() != dims.size() || t.size() != dims.size())
    throw std::invalid_argument("weyl_operator: index tuples must match the summand count");
  std::vector<Matrix> blocks;
  blocks.reserve(dims.size());
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const Index m = dims[s];
    if (m < 1) throw std::invalid_argument("weyl_operator: summand dimensions must be >= 1");
    const CyclicFrame frame(m);
    // U^r V^t maps e_j to zeta^{j t} e_{j+r}: fill directly by index.
    Matrix block = Matrix::Zero(m, m);
    for (Index j = 0; j < m; ++j) block((((j + r[s]) % m) + m) % m, j) = frame.root(j * t[s]);
    blocks.push_back(std::move(block));
  }
  return direct_sum(blocks);
}

}  // namespace qdip
