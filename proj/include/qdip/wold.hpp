// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <utility>

#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"

namespace qdip {

inline Matrix matrix_power(const Matrix& a, Index n) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_power: matrix not square");
  if (n < 0) throw std::invalid_argument("matrix_power: negative exponent");
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (Index i = 0; i < n; ++i) out = out * a;
  return out;
}

//------------------------------------------------------------------------------
// Wandering space and multiplicity
//------------------------------------------------------------------------------

// The wandering space of a partial isometry v is L = H ominus ran v, and its
// multiplicity is m = max{ n >= 0 : v^n L != 0 } -- the length of the longest
// surviving translate chain. For unitary v (L = {0}) the convention is
// (L, m) = ({0}, 0). A non-partial-isometry input is refused.
inline std::pair<Subspace, Index> wandering_space(const Matrix& v, const Tolerance& tol = {}) {
  const PartialIsometryCheck check = is_partial_isometry(v, tol);
  if (!check.is_partial_isometry)
    throw NotPartialIsometryError("wandering_space: operator is not a partial isometry (residual " +
                                  std::to_string(check.residual) + ")");
  const Index d = v.rows();
  const Subspace wandering = orthogonal_complement(range(v, tol), tol);
  if (wandering.is_zero()) return {wandering, 0};

  // Push the wandering frame through successive powers; the chain is dead
  // when the largest singular value of v^n * frame(L) vanishes (columns of
  // the initial frame are orthonormal, so the scale reference is 1).
  Index m = 0;
  Matrix cur = wandering.frame();
  while (true) {
    cur = v * cur;
    Eigen::JacobiSVD<Matrix> svd(cur);
    const double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    if (smax <= tol.rank_eps) break;
    ++m;
    if (m > d)
      throw InternalMismatchError("wandering_space: translate chain exceeds ambient dimension");
  }
  return {wandering, m};
}

//------------------------------------------------------------------------------
// Shift / unitary decomposition
//------------------------------------------------------------------------------

// H splits orthogonally into K = (+)_{j=0..m} v^j L, on which v acts as a
// unilateral shift, and K_perp = ran v^{m+1}, on which v acts unitarily.
struct WoldDecomposition {
  Subspace wandering;    // L
  Index multiplicity;    // m
  Subspace shift_part;   // K
  Subspace unitary_part; // K_perp
  Matrix v_shift;        // v restricted to (= compressed onto) K
  Matrix v_unitary;      // v restricted to K_perp

  WoldDecomposition() : wandering(1), multiplicity(0), shift_part(1), unitary_part(1) {}
};

inline WoldDecomposition wold_decompose(const Matrix& v, const Tolerance& tol = {}) {
  WoldDecomposition out;
  auto [wandering, m] = wandering_space(v, tol);
  const Index d = v.rows();
  out.wandering = wandering;
  out.multiplicity = m;

  if (wandering.is_zero()) {
    out.shift_part = Subspace::zero(d);
  } else {
    Matrix frames(d, wandering.dim() * (m + 1));
    Matrix cur = wandering.frame();
    Index at = 0;
    for (Index j = 0; j <= m; ++j) {
      frames.middleCols(at, cur.cols()) = cur;
      at += cur.cols();
      cur = v * cur;
    }
    out.shift_part = Subspace::span_of(frames.leftCols(at), tol);
  }

  // Independent route to the complement: the range of v^{m+1}. The two
  // computations must tile H exactly; a disagreement means the input was not
  // numerically a partial isometry after all.
  out.unitary_part = range(matrix_power(v, m + 1), tol);
  const double tiling =
      (out.shift_part.projector() + out.unitary_part.projector() - Matrix::Identity(d, d)).norm();
  if (out.shift_part.dim() + out.unitary_part.dim() != d || tiling > tol.check_eps)
    throw InternalMismatchError(
        "wold_decompose: shift part and unitary part do not tile the space (residual " +
        std::to_string(tiling) + ")");

  out.v_shift = v * out.shift_part.projector();
  out.v_unitary = v * out.unitary_part.projector();
  return out;
}

// v is a unilateral shift iff the unitary part is absent (K = H). The zero
// operator is the trivial shift (L = H, m = 0).
inline bool is_unilateral_shift(const Matrix& v, const Tolerance& tol = {}) {
  return wold_decompose(v, tol).unitary_part.is_zero();
}

//------------------------------------------------------------------------------
// Shift-power codes
//------------------------------------------------------------------------------

// For a unilateral shift v of multiplicity m and 0 <= t <= m, the subspace
//   C_t = L ominus ker(v^t)
// is correctable for the noise span of the powers {v^0, ..., v^t}, and those
// powers are already a decoding noise basis for it (identity Gram matrix).
struct ShiftPowerCode {
  Subspace code;
  OperatorSpan noise;

  ShiftPowerCode() : code(1) {}
};

inline ShiftPowerCode shift_power_code(const Matrix& v, Index t, const Tolerance& tol = {}) {
  const WoldDecomposition wold = wold_decompose(v, tol);
  if (!wold.unitary_part.is_zero())
    throw NotUnilateralShiftError("shift_power_code: operator has a nonzero unitary part (dim " +
                                  std::to_string(wold.unitary_part.dim()) + ")");
  if (t < 0 || t > wold.multiplicity)
    throw std::invalid_argument("shift_power_code: power must satisfy 0 <= t <= multiplicity");

  ShiftPowerCode out;
  out.code = ominus(wold.wandering, kernel(matrix_power(v, t), tol), tol);
  if (out.code.is_zero())
    throw EmptyCodeError("shift_power_code: construction produced the zero subspace");
  out.noise.ambient = v.rows();
  for (Index j = 0; j <= t; ++j) out.noise.basis.push_back(matrix_power(v, j));

  // The powers must form a decoding noise basis outright: Gram = identity.
  const GramResult kl = kl_check(out.code, out.noise, tol);
  if (!kl.ok() ||
      (kl.gram - Matrix::Identity(t + 1, t + 1)).norm() > 10.0 * tol.check_eps)
    throw InternalMismatchError("shift_power_code: power family failed its own decoding check");
  return out;
}

// Containment bound for every code correctable against {v^0..v^t}: any such
// code lies inside
//   ran v^{m+1}  (+)  [ ((+)_{j=0..m-t} v^j L) ominus ker(v^t) ]
// (the first summand is absent when v is a unilateral shift). For t = m and a
// unilateral shift the bound coincides with the largest code L ominus ker v^m.
inline Subspace code_bound(const Matrix& v, Index t, const Tolerance& tol = {}) {
  auto [wandering, m] = wandering_space(v, tol);
  if (t < 0 || t > m) throw std::invalid_argument("code_bound: power must satisfy 0 <= t <= m");
  const Index d = v.rows();

  Subspace stack = Subspace::zero(d);
  if (!wandering.is_zero()) {
    Matrix frames(d, wandering.dim() * (m - t + 1));
    Matrix cur = wandering.frame();
    Index at = 0;
    for (Index j = 0; j <= m - t; ++j) {
      frames.middleCols(at, cur.cols()) = cur;
      at += cur.cols();
      cur = v * cur;
    }
    stack = Subspace::span_of(frames.leftCols(at), tol);
  }
  const Subspace trimmed = ominus(stack, kernel(matrix_power(v, t), tol), tol);

  const Subspace unitary_range = range(matrix_power(v, m + 1), tol);
  if (unitary_range.is_zero()) return trimmed;
  Matrix joined(d, unitary_range.dim() + trimmed.dim());
  joined << unitary_range.frame(), trimmed.frame();
  return Subspace::span_of(joined, tol);
}

//------------------------------------------------------------------------------
// Worked 15-dimensional example
//------------------------------------------------------------------------------

// A partial isometry on C^15 combining a 4-cycle with an 8-step ladder:
//   e_j -> e_{j+1 mod 4}   for j in {0,1,2,3}   (unitary part)
//   e_k -> e_{k+3}         for k in {4,...,11}  (three shift chains)
// Its wandering space is span{e4,e5,e6} with multiplicity 3.
inline Matrix example_v15() {
  Matrix v = Matrix::Zero(15, 15);
  for (Index j = 0; j < 4; ++j) v((j + 1) % 4, j) = 1.0;
  for (Index k = 4; k <= 11; ++k) v(k + 3, k) = 1.0;
  return v;
}

}  // namespace qdip
