// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

// Regenerates the fixtures/ directory from the worked 15-dimensional example:
// a 4-cycle on e0..e3 glued to three shift chains of lengths 4, 4, 3. The
// files are committed to the repository; a test regenerates them into a
// scratch directory and compares, so the shipped fixtures can never drift
// from the library that consumes them.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "qdip/dip.hpp"
#include "qdip/io.hpp"
#include "qdip/qecc.hpp"
#include "qdip/wold.hpp"

namespace {

using namespace qdip;

Vector basis_vec(Index dim, Index j) {
  Vector e = Vector::Zero(dim);
  e(j) = Complex(1.0, 0.0);
  return e;
}

Subspace coord_span(Index dim, std::initializer_list<Index> coords) {
  Matrix frame(dim, static_cast<Index>(coords.size()));
  Index c = 0;
  for (Index j : coords) frame.col(c++) = basis_vec(dim, j);
  return Subspace::from_frame(frame);
}

OperatorSpan power_span(const Matrix& v, Index t) {
  OperatorSpan s;
  s.ambient = v.rows();
  for (Index a = 0; a <= t; ++a) s.basis.push_back(matrix_power(v, a));
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  const auto path = [&](const std::string& name) { return dir + "/" + name; };

  const Matrix v = example_v15();
  save_json(path("example_operator.json"), matrix_to_json(v));

  // Partition into the 4-cycle block and the three glued chains.
  Partition p;
  p.ambient = 15;
  p.blocks = {coord_span(15, {0, 1, 2, 3}),
              coord_span(15, {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14})};
  save_json(path("example_partition.json"), partition_to_json(p));

  // Shift-power codes of the chain part: at t = 2 every chain start survives
  // v^2; at t = 3 the length-3 chain drops out.
  const Subspace code_t2 = coord_span(15, {4, 5, 6});
  const Subspace code_t3 = coord_span(15, {4, 5});
  save_json(path("example_code_t2.json"), subspace_to_json(code_t2));
  save_json(path("example_code_t3.json"), subspace_to_json(code_t3));
  save_json(path("example_noise_t2.json"), span_to_json(power_span(v, 2)));
  save_json(path("example_noise_t3.json"), span_to_json(power_span(v, 3)));

  // Fully synthesized correcting code for the t = 3 pair.
  CorrectingCode cc;
  cc.code = code_t3;
  cc.noise = power_span(v, 3);
  cc.decoding_basis = decoding_noise_basis(cc.code, cc.noise);
  cc.channel = synthesize_channel(cc.code, cc.decoding_basis);
  save_json(path("example_bundle.json"), bundle_to_json(cc));

  // Degenerate inputs for the exit-code contract.
  save_json(path("identity_operator.json"), matrix_to_json(Matrix::Identity(4, 4)));
  Matrix bad = Matrix::Zero(3, 3);
  bad(0, 0) = Complex(1.0, 0.0);
  bad(1, 1) = Complex(0.5, 0.0);
  save_json(path("nonisometry_operator.json"), matrix_to_json(bad));

  {
    std::ofstream out(path("malformed.json"), std::ios::binary);
    out << "{\"rows\": 15, \"cols\": 15, \"data\": [[1.0, 0.0],";
  }

  std::cout << "wrote fixtures to " << dir << "\n";
  return 0;
}
