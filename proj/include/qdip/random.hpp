// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <random>

#include "qdip/linalg.hpp"

namespace qdip {

// All randomized routines in the library take an explicit engine so that runs
// are reproducible from a single seed.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Matrix with i.i.d. standard complex Gaussian entries.
inline Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

// Haar-distributed unitary: QR of a complex Gaussian with the phases of the
// diagonal of R folded into Q (Mezzadri's recipe).
inline Matrix random_unitary(Index dim, Rng& rng) {
  if (dim == 0) return Matrix(0, 0);
  const Matrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

// Unit vector drawn uniformly from the unit sphere of the subspace.
inline Vector random_unit_vector_in(const Subspace& s, Rng& rng) {
  if (s.is_zero()) throw std::invalid_argument("random_unit_vector_in: zero subspace");
  const Matrix c = random_gaussian(s.dim(), 1, rng);
  Vector v = s.frame() * c;
  return v / v.norm();
}

// Random subspace of `s` of the given dimension (uniformly oriented inside s).
inline Subspace random_subspace_of(const Subspace& s, Index dim, Rng& rng,
                                   const Tolerance& tol = {}) {
  if (dim < 0 || dim > s.dim()) throw std::invalid_argument("random_subspace_of: bad dimension");
  if (dim == 0) return Subspace::zero(s.ambient());
  const Matrix g = random_gaussian(s.dim(), dim, rng);
  return Subspace::from_frame(s.frame() * orthonormalize_columns(g, tol), tol);
}

// Density matrix supported in the subspace: a complex-Gaussian frame inside
// the subspace is orthonormalized and its rank-one projectors are mixed with
// flat-Dirichlet weights. Covers pure-like and fully mixed states.
inline Matrix random_density_in(const Subspace& s, Rng& rng, const Tolerance& tol = {}) {
  if (s.is_zero()) throw std::invalid_argument("random_density_in: zero subspace");
  const Index k = s.dim();
  const Matrix w = s.frame() * orthonormalize_columns(random_gaussian(k, k, rng), tol);
  std::exponential_distribution<double> e(1.0);
  RealVector weights(w.cols());
  for (Index j = 0; j < w.cols(); ++j) weights(j) = e(rng);
  weights /= weights.sum();
  Matrix rho = Matrix::Zero(s.ambient(), s.ambient());
  for (Index j = 0; j < w.cols(); ++j) rho += weights(j) * (w.col(j) * w.col(j).adjoint());
  return rho;
}

// Coefficient vector on the unit sphere of C^n (used to draw random operators
// from an operator span with a scale-free normalization).
inline Vector random_unit_coefficients(Index n, Rng& rng) {
  Vector c = random_gaussian(n, 1, rng);
  return c / c.norm();
}

}  // namespace qdip
