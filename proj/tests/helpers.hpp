// Shared test utilities: fixed small constructions with hand-checkable
// structure, randomized generators that expose their construction data for
// oracle comparisons, and brute-force re-computations of library results.

#pragma once

#include <initializer_list>
#include <vector>

#include "qdip/cyclic.hpp"
#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"
#include "qdip/random.hpp"
#include "qdip/reducing.hpp"
#include "qdip/wold.hpp"

namespace qdip::test {

inline Vector basis_vec(Index d, Index j) {
  Vector v = Vector::Zero(d);
  v(j) = 1.0;
  return v;
}

// Subspace spanned by a set of standard basis vectors.
inline Subspace coord_span(Index d, std::initializer_list<Index> idx) {
  Matrix f = Matrix::Zero(d, static_cast<Index>(idx.size()));
  Index c = 0;
  for (Index j : idx) f(j, c++) = 1.0;
  return Subspace::from_frame(f);
}

inline Subspace coord_range(Index d, Index first, Index last) {  // inclusive
  Matrix f = Matrix::Zero(d, last - first + 1);
  for (Index j = first; j <= last; ++j) f(j, j - first) = 1.0;
  return Subspace::from_frame(f);
}

// Truncated shift chain on C^n: e_i -> e_{i+1}, e_{n-1} -> 0. A unilateral
// shift with one-dimensional wandering space span{e_0} and multiplicity n-1.
inline Matrix truncated_shift(Index n) {
  Matrix s = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

// Matrix units E_{ij}, the standard HS-orthonormal basis of B(C^d).
inline OperatorSpan matrix_unit_span(Index d) {
  OperatorSpan s;
  s.ambient = d;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      s.basis.push_back(std::move(e));
    }
  return s;
}

// Span of the powers {v^0, ..., v^t}.
inline OperatorSpan power_span(const Matrix& v, Index t) {
  OperatorSpan s;
  s.ambient = v.rows();
  for (Index j = 0; j <= t; ++j) s.basis.push_back(matrix_power(v, j));
  return s;
}

// Randomized partial isometry assembled from known pieces -- a Haar unitary
// block plus truncated-shift chains of random lengths -- conjugated by a
// global Haar unitary. The construction data is kept so tests can predict
// wandering dimension, multiplicity, and the block partition exactly.
struct WoldInstance {
  Matrix v;
  Partition partition;              // conjugated block partition (one block per piece)
  Index unitary_dim = 0;            // 0 if absent
  std::vector<Index> chain_lengths; // truncated-shift chain lengths
  Index wandering_dim = 0;          // = number of chains
  Index multiplicity = 0;           // = max chain length - 1 (0 if no chains)
  Index unitary_part_dim = 0;       // = unitary_dim

  WoldInstance() : partition() {}
};

inline WoldInstance random_wold_instance(Index max_dim, Rng& rng, bool with_unitary = true,
                                         bool conjugate = true) {
  std::uniform_int_distribution<Index> dim_dist(2, max_dim);
  const Index d = dim_dist(rng);
  WoldInstance inst;

  Index remaining = d;
  if (with_unitary) {
    std::uniform_int_distribution<Index> u_dist(0, d - 1);
    inst.unitary_dim = u_dist(rng);
    remaining -= inst.unitary_dim;
  }
  while (remaining > 0) {
    std::uniform_int_distribution<Index> c_dist(1, remaining);
    const Index len = c_dist(rng);
    inst.chain_lengths.push_back(len);
    remaining -= len;
  }
  inst.wandering_dim = static_cast<Index>(inst.chain_lengths.size());
  for (Index len : inst.chain_lengths) inst.multiplicity = std::max(inst.multiplicity, len - 1);
  inst.unitary_part_dim = inst.unitary_dim;

  std::vector<Matrix> blocks;
  if (inst.unitary_dim > 0) blocks.push_back(random_unitary(inst.unitary_dim, rng));
  for (Index len : inst.chain_lengths) blocks.push_back(truncated_shift(len));
  Matrix v = direct_sum(blocks);
  const Matrix q = conjugate ? random_unitary(d, rng) : Matrix(Matrix::Identity(d, d));
  inst.v = q * v * q.adjoint();

  inst.partition.ambient = d;
  Index offset = 0;
  for (const Matrix& b : blocks) {
    inst.partition.blocks.push_back(
        Subspace::from_frame(q.middleCols(offset, b.rows())));
    offset += b.rows();
  }
  return inst;
}

// Brute-force candidate Gram entry: tr(P N* M P) / dim C with dense products,
// plus the full-matrix residual of the compression identity. Independent of
// the library path (no frame compression).
struct OracleGramEntry {
  Complex lambda;
  double residual;
};

inline OracleGramEntry oracle_gram_entry(const Subspace& code, const Matrix& n, const Matrix& m) {
  const Matrix p = code.projector();
  const Matrix lhs = p * n.adjoint() * m * p;
  const Complex lambda = lhs.trace() / static_cast<double>(code.dim());
  return {lambda, (lhs - lambda * p).norm()};
}

// Frobenius distance between the superoperator matrices of two channels;
// zero iff the channels are equal as maps.
inline double superop_distance(const QuantumChannel& a, const QuantumChannel& b) {
  return (superoperator_matrix(a) - superoperator_matrix(b)).norm();
}

}  // namespace qdip::test
