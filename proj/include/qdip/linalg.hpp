// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qdip {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

//------------------------------------------------------------------------------
// Errors
//
// Two failure families, mirrored by the CLI exit-code contract:
//  * MathError and derived types signal that the input is well-formed but the
//    requested mathematical object does not exist (exit code 1);
//  * std::invalid_argument (and JSON parse errors) signal malformed or
//    inconsistent input (exit code 2).
//------------------------------------------------------------------------------

class MathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operator fails v*v = P_supp within tolerance.
class NotPartialIsometryError : public MathError {
public:
  using MathError::MathError;
};

// Operator is a partial isometry but not a unilateral shift.
class NotUnilateralShiftError : public MathError {
public:
  using MathError::MathError;
};

// No decoding inner product exists for the requested (code, noise) pair.
class NotDecodableError : public MathError {
public:
  using MathError::MathError;
};

// Candidate Gram matrix is not positive definite (residual negligible noise).
class DegenerateGramError : public MathError {
public:
  using MathError::MathError;
};

// Synthesized Kraus family fails the completeness sum within tolerance.
class CompletenessViolationError : public MathError {
public:
  using MathError::MathError;
};

// Two independent computations of the same object disagree.
class InternalMismatchError : public MathError {
public:
  using MathError::MathError;
};

// A construction guaranteed non-trivial produced the zero subspace.
class EmptyCodeError : public MathError {
public:
  using MathError::MathError;
};

// A partition does not reduce the operator.
class NotReducingError : public MathError {
public:
  using MathError::MathError;
};

//------------------------------------------------------------------------------
// Tolerances
//------------------------------------------------------------------------------

// All numerical decisions in the library go through one of these two knobs:
//  * rank_eps  -- relative SVD cutoff for rank / kernel / support decisions
//                 (relative to the largest singular value of the matrix);
//  * check_eps -- absolute Frobenius-norm bound for residual checks of
//                 operator identities (projector equations, Gram residuals,
//                 completeness sums, ...).
struct Tolerance {
  double rank_eps = 1e-10;
  double check_eps = 1e-9;
};

//------------------------------------------------------------------------------
// Subspace: a linear subspace of C^d held as an orthonormal column frame.
//------------------------------------------------------------------------------

// Frames are d x k with orthonormal columns (k = 0 encodes the zero subspace,
// which is a legal value everywhere). Construction through from_frame checks
// orthonormality; span_of orthonormalizes arbitrary generating columns first.
class Subspace {
public:
  // Zero subspace of C^d.
  explicit Subspace(Index ambient_dim)
      : ambient_(ambient_dim), frame_(Matrix::Zero(ambient_dim, 0)) {
    if (ambient_dim < 1) throw std::invalid_argument("Subspace: ambient dimension must be >= 1");
  }

  static Subspace zero(Index ambient_dim) { return Subspace(ambient_dim); }

  static Subspace full(Index ambient_dim) {
    Subspace s(ambient_dim);
    s.frame_ = Matrix::Identity(ambient_dim, ambient_dim);
    return s;
  }

  // Wraps a frame whose columns are already orthonormal (validated).
  static Subspace from_frame(Matrix frame, const Tolerance& tol = {}) {
    if (frame.rows() < 1) throw std::invalid_argument("Subspace: frame must have >= 1 row");
    const Index k = frame.cols();
    const double resid = (frame.adjoint() * frame - Matrix::Identity(k, k)).norm();
    if (resid > 10.0 * tol.check_eps)
      throw std::invalid_argument("Subspace: frame columns are not orthonormal (residual " +
                                  std::to_string(resid) + ")");
    Subspace s(frame.rows());
    s.frame_ = std::move(frame);
    return s;
  }

  // Spans arbitrary generating columns (orthonormalized, dependents dropped).
  static Subspace span_of(const Matrix& generators, const Tolerance& tol = {});

  Index ambient() const { return ambient_; }
  Index dim() const { return frame_.cols(); }
  bool is_zero() const { return frame_.cols() == 0; }
  const Matrix& frame() const { return frame_; }

  // Orthogonal projection onto the subspace.
  Matrix projector() const { return frame_ * frame_.adjoint(); }

private:
  Index ambient_;
  Matrix frame_;
};

//------------------------------------------------------------------------------
// Basic scalar and norm helpers
//------------------------------------------------------------------------------

// Hilbert-Schmidt inner product tr(a* b), conjugate-linear in the first slot.
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

inline double hs_norm(const Matrix& a) { return a.norm(); }

// Frobenius distance between the projectors of two subspaces; the metric used
// everywhere for "these subspaces are equal".
inline double projector_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("projector_distance: ambient mismatch");
  return (a.projector() - b.projector()).norm();
}

inline bool subspace_equal(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
  return a.dim() == b.dim() && projector_distance(a, b) <= tol.check_eps;
}

// ||(I - P_b) P_a||: zero iff a is contained in b.
inline double containment_residual(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("containment_residual: ambient mismatch");
  if (a.is_zero()) return 0.0;
  return (a.frame() - b.projector() * a.frame()).norm();
}

inline bool subspace_contains(const Subspace& outer, const Subspace& inner,
                              const Tolerance& tol = {}) {
  return containment_residual(inner, outer) <= tol.check_eps;
}

//------------------------------------------------------------------------------
// Orthonormalization (modified Gram-Schmidt, one re-orthogonalization pass)
//------------------------------------------------------------------------------

// Orthonormalizes the columns of `generators` in input order; a column whose
// residual after projection falls below rank_eps times its original norm is
// declared dependent and dropped (ties resolved by input order: first wins).
inline Matrix orthonormalize_columns(const Matrix& generators, const Tolerance& tol = {}) {
  const Index d = generators.rows();
  Matrix q(d, generators.cols());
  Index k = 0;
  for (Index c = 0; c < generators.cols(); ++c) {
    Vector w = generators.col(c);
    const double orig = w.norm();
    if (orig == 0.0) continue;
    // Two projection sweeps: plain MGS plus one re-orthogonalization pass to
    // keep the accepted frame orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (Index j = 0; j < k; ++j) w -= q.col(j) * q.col(j).dot(w);
    const double rem = w.norm();
    if (rem > tol.rank_eps * orig) q.col(k++) = w / rem;
  }
  return q.leftCols(k);
}

inline std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                          const Tolerance& tol = {}) {
  if (vectors.empty()) return {};
  const Index d = vectors.front().size();
  Matrix gen(d, static_cast<Index>(vectors.size()));
  for (Index c = 0; c < gen.cols(); ++c) {
    if (vectors[static_cast<std::size_t>(c)].size() != d)
      throw std::invalid_argument("orthonormalize: inconsistent vector dimensions");
    gen.col(c) = vectors[static_cast<std::size_t>(c)];
  }
  Matrix q = orthonormalize_columns(gen, tol);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(q.cols()));
  for (Index c = 0; c < q.cols(); ++c) out.push_back(q.col(c));
  return out;
}

inline Subspace Subspace::span_of(const Matrix& generators, const Tolerance& tol) {
  if (generators.rows() < 1) throw std::invalid_argument("span_of: ambient dimension must be >= 1");
  Subspace s(generators.rows());
  s.frame_ = orthonormalize_columns(generators, tol);
  return s;
}

//------------------------------------------------------------------------------
// SVD-based rank, support, kernel, range
//------------------------------------------------------------------------------

namespace detail {

// Number of singular values above the cutoff rank_eps * max(1, sigma_max).
// The floor at 1 matters: operators in this library are built from unit
// frames, unitaries and projectors, so a matrix that is mathematically zero
// still carries conjugation noise around 1e-16 -- a purely relative cutoff
// would declare it full rank.
inline Index svd_rank(const RealVector& sigma, double rank_eps) {
  if (sigma.size() == 0) return 0;
  const double cutoff = rank_eps * std::max(1.0, sigma(0));
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cutoff) ++r;
  return r;
}

}  // namespace detail

// Support supp t = (ker t)^perp = ran t*, as the span of the right singular
// vectors with non-negligible singular value.
inline Subspace support(const Matrix& t, const Tolerance& tol = {}) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullV);
  const Index r = detail::svd_rank(svd.singularValues(), tol.rank_eps);
  return Subspace::from_frame(svd.matrixV().leftCols(r), tol);
}

// Kernel of t: right singular vectors at (numerically) zero singular value.
inline Subspace kernel(const Matrix& t, const Tolerance& tol = {}) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullV);
  const Index r = detail::svd_rank(svd.singularValues(), tol.rank_eps);
  return Subspace::from_frame(svd.matrixV().rightCols(t.cols() - r), tol);
}

// Range ran t = supp t*, as the span of the left singular vectors.
inline Subspace range(const Matrix& t, const Tolerance& tol = {}) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU);
  const Index r = detail::svd_rank(svd.singularValues(), tol.rank_eps);
  return Subspace::from_frame(svd.matrixU().leftCols(r), tol);
}

inline Matrix projector(const Subspace& s) { return s.projector(); }

// Orthonormal basis of the orthogonal complement, by completing the frame to a
// full unitary with a Householder QR.
inline Subspace orthogonal_complement(const Subspace& s, const Tolerance& tol = {}) {
  const Index d = s.ambient();
  if (s.is_zero()) return Subspace::full(d);
  if (s.dim() == d) return Subspace::zero(d);
  Eigen::HouseholderQR<Matrix> qr(s.frame());
  Matrix q = qr.householderQ();  // d x d unitary; first dim(s) columns span s
  return Subspace::from_frame(q.rightCols(d - s.dim()), tol);
}

//------------------------------------------------------------------------------
// ominus and intersection
//------------------------------------------------------------------------------

// a "minus" b in the lattice sense: a ominus b = a intersect b^perp. Computed
// as A * null(B* A): a unit vector A x lies in b^perp iff B* A x = 0. The
// singular values of B* A are cosines of principal angles (all <= 1), so the
// null-space cutoff is taken absolutely at rank_eps rather than relative to
// the largest singular value -- a relative cutoff would misclassify the case
// where a is entirely orthogonal to b (all cosines tiny).
inline Subspace ominus(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ominus: ambient mismatch");
  if (a.is_zero() || b.is_zero()) return a;
  const Matrix m = b.frame().adjoint() * a.frame();  // dim(b) x dim(a)
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  Index r = 0;
  while (r < sigma.size() && sigma(r) > tol.rank_eps) ++r;
  const Matrix null_coeffs = svd.matrixV().rightCols(a.dim() - r);
  // Coefficient columns are orthonormal and the frame of a is orthonormal, so
  // the product frame is orthonormal without further work.
  return Subspace::from_frame(a.frame() * null_coeffs, tol);
}

// a intersect b = a ominus b^perp.
inline Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
  return ominus(a, orthogonal_complement(b, tol), tol);
}

//------------------------------------------------------------------------------
// Direct sums
//------------------------------------------------------------------------------

// Block-diagonal direct sum of square or rectangular blocks.
inline Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Index rows = 0, cols = 0;
  for (const Matrix& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const Matrix& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

// Embeds a block-local matrix (acting on coordinates [offset, offset+rows)) as
// an ambient-dimension column stack; used to lift block frames.
inline Matrix embed_rows(const Matrix& block, Index offset, Index total_rows) {
  if (offset < 0 || offset + block.rows() > total_rows)
    throw std::invalid_argument("embed_rows: block does not fit");
  Matrix out = Matrix::Zero(total_rows, block.cols());
  out.block(offset, 0, block.rows(), block.cols()) = block;
  return out;
}

//------------------------------------------------------------------------------
// Partial isometries
//------------------------------------------------------------------------------

enum class IsometryKind {
  none,            // not a partial isometry at all
  general,         // partial isometry, supp != ran
  partial_unitary, // partial isometry with supp = ran != full space
  unitary,         // supp = ran = full space
};

struct PartialIsometryCheck {
  bool is_partial_isometry = false;
  IsometryKind kind = IsometryKind::none;
  double residual = 0.0;  // || v* v - P_supp ||_F
};

// v is a partial isometry iff v* v equals the projector onto supp v; the
// classification refines by comparing supp and ran.
inline PartialIsometryCheck is_partial_isometry(const Matrix& v, const Tolerance& tol = {}) {
  if (v.rows() != v.cols()) throw std::invalid_argument("is_partial_isometry: matrix not square");
  PartialIsometryCheck out;
  const Subspace supp = support(v, tol);
  out.residual = (v.adjoint() * v - supp.projector()).norm();
  out.is_partial_isometry = out.residual <= tol.check_eps;
  if (!out.is_partial_isometry) return out;
  if (supp.dim() == v.rows()) {
    out.kind = IsometryKind::unitary;
  } else {
    const Subspace ran = range(v, tol);
    const bool pu = ran.dim() == supp.dim() && projector_distance(supp, ran) <= tol.check_eps;
    out.kind = pu ? IsometryKind::partial_unitary : IsometryKind::general;
  }
  return out;
}

}  // namespace qdip
