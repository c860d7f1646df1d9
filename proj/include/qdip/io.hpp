// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qdip/dip.hpp"
#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"
#include "qdip/reducing.hpp"
#include "qdip/wold.hpp"

namespace qdip {

using Json = nlohmann::json;

//------------------------------------------------------------------------------
// Matrices
//
// { "rows": r, "cols": c, "data": [[re, im], ...] } with `data` holding
// rows*cols entries in row-major order.
//------------------------------------------------------------------------------

inline Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("matrix: expected object with rows, cols, data");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimensions");
  const Json& data = j.at("data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix: data length does not match rows*cols");
  Matrix m(rows, cols);
  Index at = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index jj = 0; jj < cols; ++jj, ++at) {
      const Json& e = data.at(static_cast<std::size_t>(at));
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix: each entry must be a [re, im] pair");
      m(i, jj) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

//------------------------------------------------------------------------------
// Subspaces, operator spans, partitions
//------------------------------------------------------------------------------

inline Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient", s.ambient()}, {"frame", matrix_to_json(s.frame())}};
}

inline Subspace subspace_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("frame"))
    throw std::invalid_argument("subspace: expected object with ambient, frame");
  const Index ambient = j.at("ambient").get<Index>();
  const Matrix frame = matrix_from_json(j.at("frame"));
  if (frame.rows() != ambient)
    throw std::invalid_argument("subspace: frame row count does not match ambient dimension");
  if (frame.cols() == 0) return Subspace::zero(ambient);
  return Subspace::from_frame(frame, tol);
}

inline Json span_to_json(const OperatorSpan& s) {
  Json basis = Json::array();
  for (const Matrix& n : s.basis) basis.push_back(matrix_to_json(n));
  return Json{{"ambient", s.ambient}, {"basis", std::move(basis)}};
}

inline OperatorSpan span_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
    throw std::invalid_argument("operator span: expected object with ambient, basis");
  OperatorSpan s;
  s.ambient = j.at("ambient").get<Index>();
  for (const Json& n : j.at("basis")) s.basis.push_back(matrix_from_json(n));
  validate_operator_span(s, tol);
  return s;
}

inline Json partition_to_json(const Partition& p) {
  Json blocks = Json::array();
  for (const Subspace& b : p.blocks) blocks.push_back(subspace_to_json(b));
  return Json{{"ambient", p.ambient}, {"blocks", std::move(blocks)}};
}

inline Partition partition_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("blocks"))
    throw std::invalid_argument("partition: expected object with ambient, blocks");
  Partition p;
  p.ambient = j.at("ambient").get<Index>();
  for (const Json& b : j.at("blocks")) p.blocks.push_back(subspace_from_json(b, tol));
  validate_partition(p, tol);
  return p;
}

//------------------------------------------------------------------------------
// Channels, bundles, decompositions
//------------------------------------------------------------------------------

inline Json channel_to_json(const QuantumChannel& ch) {
  Json kraus = Json::array();
  for (const Matrix& k : ch.kraus) kraus.push_back(matrix_to_json(k));
  return Json{{"ambient", ch.ambient}, {"kraus", std::move(kraus)}};
}

inline QuantumChannel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("kraus"))
    throw std::invalid_argument("channel: expected object with ambient, kraus");
  QuantumChannel ch;
  ch.ambient = j.at("ambient").get<Index>();
  for (const Json& k : j.at("kraus")) {
    Matrix m = matrix_from_json(k);
    if (m.rows() != ch.ambient || m.cols() != ch.ambient)
      throw std::invalid_argument("channel: Kraus operator shape mismatch");
    ch.kraus.push_back(std::move(m));
  }
  if (ch.kraus.empty()) throw std::invalid_argument("channel: no Kraus operators");
  return ch;
}

// A correctable instance bundled with its certificate, as produced by the
// synthesize pipeline and consumed by verification.
inline Json bundle_to_json(const CorrectingCode& cc) {
  return Json{{"code", subspace_to_json(cc.code)},
              {"noise", span_to_json(cc.noise)},
              {"decoding_basis", span_to_json(cc.decoding_basis)},
              {"channel", channel_to_json(cc.channel)}};
}

inline CorrectingCode bundle_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("code") || !j.contains("noise") ||
      !j.contains("decoding_basis") || !j.contains("channel"))
    throw std::invalid_argument("bundle: expected code, noise, decoding_basis, channel");
  CorrectingCode cc;
  cc.code = subspace_from_json(j.at("code"), tol);
  cc.noise = span_from_json(j.at("noise"), tol);
  cc.decoding_basis = span_from_json(j.at("decoding_basis"), tol);
  cc.channel = channel_from_json(j.at("channel"));
  if (cc.noise.ambient != cc.code.ambient() || cc.decoding_basis.ambient != cc.code.ambient() ||
      cc.channel.ambient != cc.code.ambient())
    throw std::invalid_argument("bundle: ambient dimensions disagree");
  if (cc.code.is_zero()) throw std::invalid_argument("bundle: code is the zero subspace");
  return cc;
}

inline Json wold_to_json(const WoldDecomposition& w) {
  return Json{{"wandering", subspace_to_json(w.wandering)},
              {"multiplicity", w.multiplicity},
              {"shift_part", subspace_to_json(w.shift_part)},
              {"unitary_part", subspace_to_json(w.unitary_part)},
              {"v_shift", matrix_to_json(w.v_shift)},
              {"v_unitary", matrix_to_json(w.v_unitary)}};
}

//------------------------------------------------------------------------------
// Files
//------------------------------------------------------------------------------

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qdip
