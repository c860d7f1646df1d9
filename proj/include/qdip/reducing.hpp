// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include "qdip/cyclic.hpp"
#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"
#include "qdip/wold.hpp"

namespace qdip {

//------------------------------------------------------------------------------
// Partitions and reduced families
//------------------------------------------------------------------------------

// An orthogonal decomposition H = (+)_j H_j into nonzero blocks.
struct Partition {
  Index ambient = 0;
  std::vector<Subspace> blocks;

  Index size() const { return static_cast<Index>(blocks.size()); }
};

inline void validate_partition(const Partition& p, const Tolerance& tol = {}) {
  if (p.ambient < 1) throw std::invalid_argument("Partition: ambient dimension must be >= 1");
  if (p.blocks.empty()) throw std::invalid_argument("Partition: no blocks");
  Index total = 0;
  for (const Subspace& b : p.blocks) {
    if (b.ambient() != p.ambient) throw std::invalid_argument("Partition: block ambient mismatch");
    if (b.is_zero()) throw std::invalid_argument("Partition: blocks must be nonzero");
    total += b.dim();
  }
  if (total != p.ambient)
    throw std::invalid_argument("Partition: block dimensions do not sum to the ambient dimension");
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < p.blocks.size(); ++j)
      if ((p.blocks[i].frame().adjoint() * p.blocks[j].frame()).norm() > 10.0 * tol.check_eps)
        throw std::invalid_argument("Partition: blocks are not mutually orthogonal");
}

// An operator together with a partition that reduces it. `reduced` holds the
// ambient-space reduced operators V_j = V P_j; `restricted` holds the same
// operators compressed to block-local coordinates (F_j* V F_j).
struct ReducedFamily {
  Matrix v;
  Partition partition;
  std::vector<Matrix> reduced;
  std::vector<Matrix> restricted;

  Index size() const { return partition.size(); }
};

struct ReducingProbe {
  bool reducing = false;
  Index worst_block = -1;
  double worst_residual = 0.0;  // max over blocks of the invariance residuals
};

// A block H_j reduces v iff v maps H_j into H_j and H_j-perp into H_j-perp,
// i.e. both off-corner compressions (I-P_j) v P_j and P_j v (I-P_j) vanish.
inline ReducingProbe reducing_residual(const Matrix& v, const Partition& p,
                                       const Tolerance& tol = {}) {
  validate_partition(p, tol);
  if (v.rows() != p.ambient || v.cols() != p.ambient)
    throw std::invalid_argument("reducing_residual: shape mismatch");
  ReducingProbe out;
  const Matrix ident = Matrix::Identity(p.ambient, p.ambient);
  for (Index j = 0; j < p.size(); ++j) {
    const Matrix pj = p.blocks[static_cast<std::size_t>(j)].projector();
    const double r = std::max(((ident - pj) * v * pj).norm(), (pj * v * (ident - pj)).norm());
    if (r > out.worst_residual) {
      out.worst_residual = r;
      out.worst_block = j;
    }
  }
  out.reducing = out.worst_residual <= tol.check_eps;
  return out;
}

// Validates the partition against the operator and assembles the reduced and
// restricted families. Throws NotReducingError naming the worst block.
inline ReducedFamily check_reducing(const Matrix& v, const Partition& p,
                                    const Tolerance& tol = {}) {
  const ReducingProbe probe = reducing_residual(v, p, tol);
  if (!probe.reducing)
    throw NotReducingError("check_reducing: block " + std::to_string(probe.worst_block) +
                           " does not reduce the operator (residual " +
                           std::to_string(probe.worst_residual) + ")");
  ReducedFamily fam;
  fam.v = v;
  fam.partition = p;
  fam.reduced.reserve(static_cast<std::size_t>(p.size()));
  fam.restricted.reserve(static_cast<std::size_t>(p.size()));
  for (const Subspace& b : p.blocks) {
    fam.reduced.push_back(v * b.projector());
    fam.restricted.push_back(b.frame().adjoint() * v * b.frame());
  }
  return fam;
}

//------------------------------------------------------------------------------
// Blockwise classification
//------------------------------------------------------------------------------

// Classification of each restricted operator, cross-checked against the
// classification of the global operator: v is a partial isometry / partial
// unitary / unilateral shift exactly when every restricted block is, the
// global wandering space is the direct sum of the block wandering spaces, and
// the global multiplicity is the max of the block multiplicities.
struct BlockClassification {
  std::vector<PartialIsometryCheck> blocks;
  PartialIsometryCheck global;
  bool all_partial_isometries = false;
  // Filled only when all blocks are partial isometries:
  std::vector<Subspace> block_wanderings;  // ambient-embedded L_j
  std::vector<Index> block_multiplicities; // m_j
  std::vector<bool> block_shifts;          // restricted op is a unilateral shift
  Subspace global_wandering;
  Index global_multiplicity = 0;
  bool global_shift = false;

  BlockClassification() : global_wandering(1) {}
};

inline BlockClassification block_classify(const ReducedFamily& fam, const Tolerance& tol = {}) {
  BlockClassification out;
  out.global = is_partial_isometry(fam.v, tol);
  bool all_pi = true;
  bool all_pu = true;
  for (Index j = 0; j < fam.size(); ++j) {
    const PartialIsometryCheck c =
        is_partial_isometry(fam.restricted[static_cast<std::size_t>(j)], tol);
    all_pi = all_pi && c.is_partial_isometry;
    all_pu = all_pu &&
             (c.kind == IsometryKind::partial_unitary || c.kind == IsometryKind::unitary);
    out.blocks.push_back(c);
  }
  out.all_partial_isometries = all_pi;

  if (out.global.is_partial_isometry != all_pi)
    throw InternalMismatchError(
        "block_classify: blockwise and global partial-isometry verdicts disagree");
  if (!all_pi) return out;
  const bool global_pu = out.global.kind == IsometryKind::partial_unitary ||
                         out.global.kind == IsometryKind::unitary;
  if (global_pu != all_pu)
    throw InternalMismatchError(
        "block_classify: blockwise and global partial-unitary verdicts disagree");

  const Index d = fam.v.rows();
  Matrix wandering_frames(d, d);
  Index at = 0;
  bool all_shift = true;
  for (Index j = 0; j < fam.size(); ++j) {
    const Matrix& b = fam.restricted[static_cast<std::size_t>(j)];
    const auto [lj, mj] = wandering_space(b, tol);
    const Matrix ambient_frame =
        fam.partition.blocks[static_cast<std::size_t>(j)].frame() * lj.frame();
    out.block_wanderings.push_back(
        lj.is_zero() ? Subspace::zero(d) : Subspace::from_frame(ambient_frame, tol));
    out.block_multiplicities.push_back(mj);
    const bool shift_j = is_unilateral_shift(b, tol);
    out.block_shifts.push_back(shift_j);
    all_shift = all_shift && shift_j;
    wandering_frames.middleCols(at, lj.dim()) = ambient_frame;
    at += lj.dim();
  }

  const auto [gl, gm] = wandering_space(fam.v, tol);
  out.global_wandering = gl;
  out.global_multiplicity = gm;
  out.global_shift = is_unilateral_shift(fam.v, tol);

  const Subspace assembled = at == 0 ? Subspace::zero(d)
                                     : Subspace::from_frame(wandering_frames.leftCols(at), tol);
  Index max_m = 0;
  for (Index j = 0; j < fam.size(); ++j)
    max_m = std::max(max_m, out.block_multiplicities[static_cast<std::size_t>(j)]);
  if (!subspace_equal(assembled, gl, tol) || max_m != gm || all_shift != out.global_shift)
    throw InternalMismatchError(
        "block_classify: blockwise wandering data disagrees with the global computation");
  return out;
}

//------------------------------------------------------------------------------
// Blockwise shift / unitary decomposition
//------------------------------------------------------------------------------

// Per-block decompositions (in block-local coordinates) assembled into the
// global one and cross-checked against the direct global computation.
struct BlockWold {
  std::vector<WoldDecomposition> blocks;  // block-local coordinates
  WoldDecomposition global;               // ambient coordinates
};

inline BlockWold block_wold(const ReducedFamily& fam, const Tolerance& tol = {}) {
  BlockWold out;
  const Index d = fam.v.rows();
  Matrix shift_frames(d, d), unitary_frames(d, d);
  Index ns = 0, nu = 0;
  for (Index j = 0; j < fam.size(); ++j) {
    WoldDecomposition w = wold_decompose(fam.restricted[static_cast<std::size_t>(j)], tol);
    const Matrix& bf = fam.partition.blocks[static_cast<std::size_t>(j)].frame();
    shift_frames.middleCols(ns, w.shift_part.dim()) = bf * w.shift_part.frame();
    ns += w.shift_part.dim();
    unitary_frames.middleCols(nu, w.unitary_part.dim()) = bf * w.unitary_part.frame();
    nu += w.unitary_part.dim();
    out.blocks.push_back(std::move(w));
  }

  out.global = wold_decompose(fam.v, tol);
  const Subspace assembled_shift =
      ns == 0 ? Subspace::zero(d) : Subspace::from_frame(shift_frames.leftCols(ns), tol);
  const Subspace assembled_unitary =
      nu == 0 ? Subspace::zero(d) : Subspace::from_frame(unitary_frames.leftCols(nu), tol);
  if (!subspace_equal(assembled_shift, out.global.shift_part, tol) ||
      !subspace_equal(assembled_unitary, out.global.unitary_part, tol))
    throw InternalMismatchError(
        "block_wold: assembled block decomposition disagrees with the global one");
  return out;
}

//------------------------------------------------------------------------------
// Blockwise shift-power codes
//------------------------------------------------------------------------------

// Codes hosted by the individual blocks of a blockwise unilateral shift, all
// correctable against the *global* power span {v^0..v^t}, plus the global
// containment bound. Blocks whose reduced operator is zero (multiplicity 0)
// host no code for t >= 1 and are skipped in the per-block list; they still
// enter the bound, contributing H_j at t = 0 and nothing for t >= 1.
struct BlockShiftCodes {
  std::vector<Index> block_indices;   // blocks that emitted a code
  std::vector<Index> block_powers;    // t_j = min(t, m_j)
  std::vector<Subspace> block_codes;  // ambient-embedded C_{t_j}
  OperatorSpan noise;                 // global {v^0..v^t}
  Subspace bound;                     // containment bound for all {v^r}-codes
  Index multiplicity = 0;             // global m = max_j m_j

  BlockShiftCodes() : bound(1) {}
};

inline BlockShiftCodes block_shift_codes(const ReducedFamily& fam, Index t,
                                         const Tolerance& tol = {}) {
  const Index d = fam.v.rows();
  BlockShiftCodes out;

  std::vector<std::pair<Subspace, Index>> wanderings;  // block-local (L_j, m_j)
  Index m = 0;
  for (Index j = 0; j < fam.size(); ++j) {
    const Matrix& b = fam.restricted[static_cast<std::size_t>(j)];
    if (!is_unilateral_shift(b, tol))
      throw NotUnilateralShiftError("block_shift_codes: restricted block " + std::to_string(j) +
                                    " is not a unilateral shift");
    wanderings.push_back(wandering_space(b, tol));
    m = std::max(m, wanderings.back().second);
  }
  out.multiplicity = m;
  if (t < 0 || t > m)
    throw std::invalid_argument("block_shift_codes: power must satisfy 0 <= t <= max multiplicity");

  out.noise.ambient = d;
  for (Index r = 0; r <= t; ++r) out.noise.basis.push_back(matrix_power(fam.v, r));

  Matrix bound_frames(d, d);
  Index at = 0;
  for (Index j = 0; j < fam.size(); ++j) {
    const Matrix& b = fam.restricted[static_cast<std::size_t>(j)];
    const Matrix& bf = fam.partition.blocks[static_cast<std::size_t>(j)].frame();
    const auto& [lj, mj] = wanderings[static_cast<std::size_t>(j)];

    if (mj > 0) {
      const Index tj = std::min(t, mj);
      const ShiftPowerCode local = shift_power_code(b, tj, tol);
      const Subspace code = Subspace::from_frame(bf * local.code.frame(), tol);
      // The block code must be correctable against the global powers with the
      // identity Gram (the global power acts on the block as the local one).
      OperatorSpan local_noise;
      local_noise.ambient = d;
      for (Index r = 0; r <= tj; ++r) local_noise.basis.push_back(out.noise.basis[static_cast<std::size_t>(r)]);
      const GramResult kl = kl_check(code, local_noise, tol);
      if (!kl.ok() || (kl.gram - Matrix::Identity(tj + 1, tj + 1)).norm() > 10.0 * tol.check_eps)
        throw InternalMismatchError("block_shift_codes: block " + std::to_string(j) +
                                    " code failed the global power check");
      out.block_indices.push_back(j);
      out.block_powers.push_back(tj);
      out.block_codes.push_back(code);
    }

    // Bound contribution ((+)_{r<=m-t} b^r L_j) ominus ker b^t, in local
    // coordinates, then embedded.
    if (!lj.is_zero()) {
      const Index bd = b.rows();
      Matrix frames(bd, lj.dim() * (m - t + 1));
      Matrix cur = lj.frame();
      Index n = 0;
      for (Index r = 0; r <= m - t; ++r) {
        frames.middleCols(n, cur.cols()) = cur;
        n += cur.cols();
        cur = b * cur;
      }
      const Subspace stack = Subspace::span_of(frames.leftCols(n), tol);
      const Subspace trimmed = ominus(stack, kernel(matrix_power(b, t), tol), tol);
      bound_frames.middleCols(at, trimmed.dim()) = bf * trimmed.frame();
      at += trimmed.dim();
    }
  }
  out.bound = at == 0 ? Subspace::zero(d)
                      : Subspace::from_frame(bound_frames.leftCols(at), tol);
  return out;
}

//------------------------------------------------------------------------------
// Direct sums of decoding bases
//------------------------------------------------------------------------------

// A code with a decoding noise basis, living on one summand of a direct sum.
struct BlockCode {
  Subspace code;
  OperatorSpan basis;

  BlockCode() : code(1) {}
};

struct DirectSumCode {
  Subspace code;      // (+)_s C_s
  OperatorSpan basis; // { (+)_s N_{s,r} }_{r < truncated_to}
  Index truncated_to = 0;

  DirectSumCode() : code(1) {}
};

// Direct sums of decoding noise bases are decoding noise bases for the sum of
// the codes; families of unequal length are truncated to the shortest (the
// first `truncated_to` elements of each are kept, in order).
inline DirectSumCode direct_sum_decoding_basis(const std::vector<BlockCode>& blocks,
                                               const Tolerance& tol = {}) {
  if (blocks.empty()) throw std::invalid_argument("direct_sum_decoding_basis: no blocks");
  Index total = 0;
  Index n = blocks.front().basis.size();
  for (const BlockCode& b : blocks) {
    if (b.code.ambient() != b.basis.ambient)
      throw std::invalid_argument("direct_sum_decoding_basis: block ambient mismatch");
    if (b.code.is_zero()) throw std::invalid_argument("direct_sum_decoding_basis: zero block code");
    const double resid = decoding_basis_residual(b.code, b.basis);
    if (resid > 10.0 * tol.check_eps)
      throw NotDecodableError(
          "direct_sum_decoding_basis: a block family is not a decoding noise basis (residual " +
          std::to_string(resid) + ")");
    total += b.code.ambient();
    n = std::min(n, b.basis.size());
  }
  if (n < 1) throw std::invalid_argument("direct_sum_decoding_basis: empty block basis");

  DirectSumCode out;
  out.truncated_to = n;
  std::vector<Matrix> code_frames;
  code_frames.reserve(blocks.size());
  for (const BlockCode& b : blocks) code_frames.push_back(b.code.frame());
  out.code = Subspace::from_frame(direct_sum(code_frames), tol);
  out.basis.ambient = total;
  for (Index r = 0; r < n; ++r) {
    std::vector<Matrix> ops;
    ops.reserve(blocks.size());
    for (const BlockCode& b : blocks) ops.push_back(b.basis.basis[static_cast<std::size_t>(r)]);
    out.basis.basis.push_back(direct_sum(ops));
  }

  const double resid = decoding_basis_residual(out.code, out.basis);
  if (resid > 10.0 * tol.check_eps)
    throw InternalMismatchError(
        "direct_sum_decoding_basis: assembled family fails the decoding-basis check (residual " +
        std::to_string(resid) + ")");
  return out;
}

//------------------------------------------------------------------------------
// Block decoders for cyclic direct sums
//------------------------------------------------------------------------------

enum class CyclicDecoderKind { shift, clock };

// Correcting channel for the direct-sum code (+)_s span{e^s_{j_s}} (shift
// kind, standard basis) or (+)_s span{phi^s_{j_s}} (clock kind, entangled
// bases) on H = (+)_s C^{m_s}, against the direct-sum monomials
// { (+)_s U_s^r }_{r < min m_s} (resp. clock powers). The transport Kraus
// operators sum over blocks -- one operator per power r, not one per (block,
// power) pair, which is what preserves cross-block coherences of code states:
//   K_r = sum_s |e^s_{j_s}><e^s_{j_s + r mod m_s}|        (shift kind)
//   K_r = sum_s |phi^s_{j_s}><phi^s_{j_s - r mod m_s}|    (clock kind)
// for r in Z_{min m_s}. When the summand dimensions differ, the lines not
// reached by any K_r are passed through by a final complementary projection
// (omitted when zero), giving min_s m_s (+1) Kraus operators. This is exactly
// the channel synthesized from the direct-sum decoding basis.
inline QuantumChannel block_decoder(const std::vector<Index>& dims, const std::vector<Index>& js,
                                    CyclicDecoderKind kind, const Tolerance& tol = {}) {
  if (dims.empty()) throw std::invalid_argument("block_decoder: need at least one summand");
  if (js.size() != dims.size())
    throw std::invalid_argument("block_decoder: need one code index per summand");
  Index d = 0, m = dims.front();
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (dims[s] < 1) throw std::invalid_argument("block_decoder: summand dimensions must be >= 1");
    if (js[s] < 0 || js[s] >= dims[s])
      throw std::invalid_argument("block_decoder: need 0 <= j_s < m_s");
    d += dims[s];
    m = std::min(m, dims[s]);
  }

  // Basis lines per block: column x of lines[s] is e^s_x or phi^s_x embedded.
  std::vector<Matrix> lines;
  Index offset = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    Matrix local = kind == CyclicDecoderKind::shift
                       ? Matrix(Matrix::Identity(dims[s], dims[s]))
                       : CyclicFrame(dims[s]).entangled();
    lines.push_back(embed_rows(local, offset, d));
    offset += dims[s];
  }
  const auto line = [&](std::size_t s, Index x) {
    return lines[s].col(((x % dims[s]) + dims[s]) % dims[s]);
  };

  QuantumChannel ch;
  ch.ambient = d;
  for (Index r = 0; r < m; ++r) {
    Matrix k = Matrix::Zero(d, d);
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const Index src = kind == CyclicDecoderKind::shift ? js[s] + r : js[s] - r;
      k += line(s, js[s]) * line(s, src).adjoint();
    }
    ch.kraus.push_back(std::move(k));
  }
  Matrix tail = Matrix::Zero(d, d);
  for (std::size_t s = 0; s < dims.size(); ++s)
    for (Index r = m; r < dims[s]; ++r) {
      const Index src = kind == CyclicDecoderKind::shift ? js[s] + r : js[s] - r;
      tail += line(s, src) * line(s, src).adjoint();
    }
  if (tail.norm() > 0.0) ch.kraus.push_back(std::move(tail));

  const double resid = ch.completeness_residual();
  if (resid > tol.check_eps)
    throw CompletenessViolationError("block_decoder: completeness residual " +
                                     std::to_string(resid));
  return ch;
}

}  // namespace qdip
