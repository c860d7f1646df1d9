// This code is part of qdip: quantum error correction via decoding inner
// products on finite-dimensional Hilbert spaces.
//
// (C) Copyright 2026 the qdip developers.
//
// This code is licensed under the Apache License, Version 2.0. You may obtain
// a copy of this license in the LICENSE file in the root directory of this
// source tree or at http://www.apache.org/licenses/LICENSE-2.0.

// Command-line front end. Exit code contract:
//   0  success
//   1  mathematical failure (not decodable, not a partial isometry, residual
//      breach, ...)
//   2  usage or I/O failure (bad flags, malformed JSON, unreadable files)
// The environment variable QECC_SEED, when set, overrides the --seed flag of
// every subcommand.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qdip/cyclic.hpp"
#include "qdip/dip.hpp"
#include "qdip/io.hpp"
#include "qdip/linalg.hpp"
#include "qdip/qecc.hpp"
#include "qdip/reducing.hpp"
#include "qdip/wold.hpp"

namespace {

using namespace qdip;

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

// Options shared by every subcommand.
struct CommonConfig {
  Tolerance tol;
  std::uint64_t seed = 20240915;
  int samples = 100;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--rank-eps", cfg.tol.rank_eps, "Relative rank cutoff");
  cmd->add_option("--check-eps", cfg.tol.check_eps, "Residual acceptance threshold");
  cmd->add_option("--seed", cfg.seed, "Seed for sampled verifications");
  cmd->add_option("--samples", cfg.samples, "Sample count for sampled verifications")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
}

std::uint64_t effective_seed(const CommonConfig& cfg) {
  if (const char* env = std::getenv("QECC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("QECC_SEED is not an unsigned integer: " + std::string(env));
    }
  }
  return cfg.seed;
}

// Scientific notation with three significant digits.
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

std::string gram_status_name(GramStatus s) {
  switch (s) {
    case GramStatus::ok: return "ok";
    case GramStatus::not_decodable: return "not_decodable";
    case GramStatus::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::none: return "none";
    case IsometryKind::general: return "partial_isometry";
    case IsometryKind::partial_unitary: return "partial_unitary";
    case IsometryKind::unitary: return "unitary";
  }
  return "unknown";
}

void print_complex_matrix(const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    std::string line = "  ";
    for (Index c = 0; c < m.cols(); ++c) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "(%+.6g%+.6gi) ", std::real(m(r, c)), std::imag(m(r, c)));
      line += buf;
    }
    std::cout << line << "\n";
  }
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; exceptions are
// rethrown on the caller thread. Results must be written into pre-sized
// per-index slots so the output order never depends on the thread count.
void parallel_for(Index count, int jobs, const std::function<void(Index)>& fn) {
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (threads == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (Index i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

//------------------------------------------------------------------------------
// kl-check
//------------------------------------------------------------------------------

int cmd_kl_check(const std::string& code_file, const std::string& noise_file,
                 const CommonConfig& cfg) {
  const Subspace code = subspace_from_json(load_json(code_file), cfg.tol);
  const OperatorSpan noise = span_from_json(load_json(noise_file), cfg.tol);
  const GramResult res = kl_check(code, noise, cfg.tol);

  if (cfg.format == "json") {
    Json out{{"status", gram_status_name(res.status)},
             {"gram", matrix_to_json(res.gram)},
             {"worst_residual", res.worst_residual},
             {"min_eigenvalue", res.min_eigenvalue}};
    if (!res.ok()) out["worst_pair"] = Json::array({res.worst_j, res.worst_k});
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "status: " << gram_status_name(res.status) << "\n";
    std::cout << "code dim: " << code.dim() << ", noise dim: " << noise.size()
              << ", ambient: " << noise.ambient << "\n";
    std::cout << "worst residual: " << sci(res.worst_residual) << "\n";
    if (res.status == GramStatus::not_decodable) {
      std::cout << "worst pair: (" << res.worst_j << ", " << res.worst_k << ")\n";
    } else {
      std::cout << "gram min eigenvalue: " << sci(res.min_eigenvalue) << "\n";
      std::cout << "gram matrix:\n";
      print_complex_matrix(res.gram);
    }
  }
  return res.ok() ? kExitOk : kExitMath;
}

//------------------------------------------------------------------------------
// synthesize
//------------------------------------------------------------------------------

int cmd_synthesize(const std::string& code_file, const std::string& noise_file,
                   const std::string& out_file, const CommonConfig& cfg) {
  const Subspace code = subspace_from_json(load_json(code_file), cfg.tol);
  const OperatorSpan noise = span_from_json(load_json(noise_file), cfg.tol);

  CorrectingCode cc;
  cc.code = code;
  cc.noise = noise;
  cc.decoding_basis = decoding_noise_basis(code, noise, cfg.tol);  // throws on failure
  cc.channel = synthesize_channel(code, cc.decoding_basis, cfg.tol);
  const double residual = verify_decoding(cc, cfg.samples, effective_seed(cfg), cfg.tol);
  if (residual > cfg.tol.check_eps)
    throw InternalMismatchError("synthesize: decoding residual " + sci(residual) +
                                " exceeds tolerance");

  save_json(out_file, bundle_to_json(cc));
  std::cout << "kraus operators: " << cc.channel.kraus.size() << "\n";
  std::cout << "completeness residual: " << sci(cc.channel.completeness_residual()) << "\n";
  std::cout << "decoding residual (" << cfg.samples << " samples): " << sci(residual) << "\n";
  std::cout << "wrote " << out_file << "\n";
  return kExitOk;
}

//------------------------------------------------------------------------------
// verify
//------------------------------------------------------------------------------

struct VerifyReport {
  std::string file;
  double basis_residual = 0.0;
  double completeness_residual = 0.0;
  double decoding_residual = 0.0;
  bool pass = false;

  double max_residual() const {
    return std::max({basis_residual, completeness_residual, decoding_residual});
  }
};

int cmd_verify(const std::vector<std::string>& bundle_files, int jobs, const CommonConfig& cfg) {
  const std::uint64_t seed = effective_seed(cfg);
  std::vector<VerifyReport> reports(bundle_files.size());
  // Each bundle is verified with a seed derived from its position, so reports
  // do not depend on the thread count.
  parallel_for(static_cast<Index>(bundle_files.size()), jobs, [&](Index i) {
    const std::size_t at = static_cast<std::size_t>(i);
    const CorrectingCode cc = bundle_from_json(load_json(bundle_files[at]), cfg.tol);
    VerifyReport& r = reports[at];
    r.file = bundle_files[at];
    r.basis_residual = decoding_basis_residual(cc.code, cc.decoding_basis);
    r.completeness_residual = cc.channel.completeness_residual();
    r.decoding_residual =
        verify_decoding(cc, cfg.samples, seed + static_cast<std::uint64_t>(i), cfg.tol);
    r.pass = r.max_residual() <= cfg.tol.check_eps;
  });

  bool all = true;
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const VerifyReport& r : reports) {
      all = all && r.pass;
      arr.push_back(Json{{"file", r.file},
                         {"pass", r.pass},
                         {"basis_residual", r.basis_residual},
                         {"completeness_residual", r.completeness_residual},
                         {"decoding_residual", r.decoding_residual}});
    }
    std::cout << Json{{"bundles", std::move(arr)}, {"pass", all}}.dump(2) << "\n";
  } else {
    for (const VerifyReport& r : reports) {
      all = all && r.pass;
      std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.file
                << " basis=" << sci(r.basis_residual)
                << " completeness=" << sci(r.completeness_residual)
                << " decoding=" << sci(r.decoding_residual) << "\n";
    }
    std::cout << "max residual: "
              << sci(std::accumulate(reports.begin(), reports.end(), 0.0,
                                     [](double acc, const VerifyReport& r) {
                                       return std::max(acc, r.max_residual());
                                     }))
              << "\n";
  }
  return all ? kExitOk : kExitMath;
}

//------------------------------------------------------------------------------
// wold
//------------------------------------------------------------------------------

int cmd_wold(const std::string& op_file, const std::string& partition_file,
             const std::string& out_file, const CommonConfig& cfg) {
  const Matrix v = matrix_from_json(load_json(op_file));
  const PartialIsometryCheck check = is_partial_isometry(v, cfg.tol);
  const WoldDecomposition w = wold_decompose(v, cfg.tol);  // throws if not a partial isometry

  std::cout << "kind: " << kind_name(check.kind)
            << " (residual " << sci(check.residual) << ")\n";
  std::cout << "wandering dim: " << w.wandering.dim() << "\n";
  std::cout << "multiplicity: " << w.multiplicity << "\n";
  std::cout << "shift part dim: " << w.shift_part.dim() << "\n";
  std::cout << "unitary part dim: " << w.unitary_part.dim() << "\n";
  std::cout << "unilateral shift: " << (w.unitary_part.is_zero() ? "yes" : "no") << "\n";

  if (!partition_file.empty()) {
    const Partition p = partition_from_json(load_json(partition_file), cfg.tol);
    const ReducedFamily fam = check_reducing(v, p, cfg.tol);
    const BlockWold bw = block_wold(fam, cfg.tol);
    for (Index j = 0; j < fam.size(); ++j) {
      const WoldDecomposition& b = bw.blocks[static_cast<std::size_t>(j)];
      std::cout << "block " << j << ": shift dim " << b.shift_part.dim() << " unitary dim "
                << b.unitary_part.dim() << " multiplicity " << b.multiplicity << "\n";
    }
  }
  if (!out_file.empty()) {
    save_json(out_file, wold_to_json(w));
    std::cout << "wrote " << out_file << "\n";
  }
  return kExitOk;
}

//------------------------------------------------------------------------------
// blocks
//------------------------------------------------------------------------------

int cmd_blocks(const std::string& op_file, const std::string& partition_file,
               const std::string& task, Index t, const std::string& out_file,
               const CommonConfig& cfg) {
  const Matrix v = matrix_from_json(load_json(op_file));
  const Partition p = partition_from_json(load_json(partition_file), cfg.tol);
  const ReducedFamily fam = check_reducing(v, p, cfg.tol);  // throws NotReducingError

  if (task == "classify") {
    const BlockClassification cls = block_classify(fam, cfg.tol);
    for (Index j = 0; j < fam.size(); ++j) {
      const auto& c = cls.blocks[static_cast<std::size_t>(j)];
      std::cout << "block " << j << ": dim " << p.blocks[static_cast<std::size_t>(j)].dim()
                << " kind " << kind_name(c.kind);
      if (cls.all_partial_isometries)
        std::cout << " wandering " << cls.block_wanderings[static_cast<std::size_t>(j)].dim()
                  << " multiplicity " << cls.block_multiplicities[static_cast<std::size_t>(j)]
                  << " shift " << (cls.block_shifts[static_cast<std::size_t>(j)] ? "yes" : "no");
      std::cout << "\n";
    }
    std::cout << "global: kind " << kind_name(cls.global.kind);
    if (cls.all_partial_isometries)
      std::cout << " wandering " << cls.global_wandering.dim() << " multiplicity "
                << cls.global_multiplicity << " shift " << (cls.global_shift ? "yes" : "no");
    std::cout << "\n";
    return kExitOk;
  }

  if (task == "wold") {
    const BlockWold bw = block_wold(fam, cfg.tol);
    for (Index j = 0; j < fam.size(); ++j) {
      const WoldDecomposition& w = bw.blocks[static_cast<std::size_t>(j)];
      std::cout << "block " << j << ": shift dim " << w.shift_part.dim() << " unitary dim "
                << w.unitary_part.dim() << " multiplicity " << w.multiplicity << "\n";
    }
    std::cout << "global: shift dim " << bw.global.shift_part.dim() << " unitary dim "
              << bw.global.unitary_part.dim() << " multiplicity " << bw.global.multiplicity
              << "\n";
    if (!out_file.empty()) {
      save_json(out_file, wold_to_json(bw.global));
      std::cout << "wrote " << out_file << "\n";
    }
    return kExitOk;
  }

  // task == "codes"
  const BlockShiftCodes codes = block_shift_codes(fam, t, cfg.tol);
  std::cout << "multiplicity: " << codes.multiplicity << "\n";
  for (std::size_t i = 0; i < codes.block_codes.size(); ++i)
    std::cout << "block " << codes.block_indices[i] << ": power " << codes.block_powers[i]
              << " code dim " << codes.block_codes[i].dim() << "\n";
  std::cout << "bound dim: " << codes.bound.dim() << "\n";
  if (!out_file.empty()) {
    Json block_list = Json::array();
    for (std::size_t i = 0; i < codes.block_codes.size(); ++i)
      block_list.push_back(Json{{"block", codes.block_indices[i]},
                                {"power", codes.block_powers[i]},
                                {"code", subspace_to_json(codes.block_codes[i])}});
    save_json(out_file, Json{{"blocks", std::move(block_list)},
                             {"noise", span_to_json(codes.noise)},
                             {"bound", subspace_to_json(codes.bound)}});
    std::cout << "wrote " << out_file << "\n";
  }
  return kExitOk;
}

//------------------------------------------------------------------------------
// cyclic
//------------------------------------------------------------------------------

struct CyclicOptions {
  std::string op;
  Index dim = 0;
  std::vector<Index> dims;
  std::vector<Index> r;
  std::vector<Index> t;
  std::vector<double> thetas;
  Index line = 0;
  bool check = false;
  std::string out_file;
};

// All m powers of the cyclic shift (standard basis) or clock (entangled
// basis) on C^m, the noise family the flat codes and closed-form decoders
// are built against.
OperatorSpan cyclic_power_span(Index m, bool shift) {
  const Matrix u = shift ? shift_operator(m) : clock_operator(m);
  OperatorSpan s;
  s.ambient = m;
  Matrix p = Matrix::Identity(m, m);
  for (Index r = 0; r < m; ++r) {
    s.basis.push_back(p);
    p = u * p;
  }
  return s;
}

int cmd_cyclic(const CyclicOptions& opt, const CommonConfig& cfg) {
  // "code" defaults to the standard-basis (shift-noise) picture.
  const std::string op = opt.op == "code" ? "shift-code" : opt.op;

  const auto need_dim = [&]() {
    if (opt.dim < 1) throw std::invalid_argument("cyclic: --dim is required for --op " + opt.op);
    return opt.dim;
  };

  if (op == "shift" || op == "clock" || op == "fourier") {
    const Index m = need_dim();
    const Matrix out = op == "shift"    ? shift_operator(m)
                       : op == "clock"  ? clock_operator(m)
                                        : fourier_operator(m);
    std::cout << op << " operator, dim " << m << "\n";
    if (opt.check) {
      const double resid = (out.adjoint() * out - Matrix::Identity(m, m)).norm();
      std::cout << "unitarity residual: " << sci(resid) << "\n";
      if (resid > cfg.tol.check_eps) return kExitMath;
    }
    if (!opt.out_file.empty()) {
      save_json(opt.out_file, matrix_to_json(out));
      std::cout << "wrote " << opt.out_file << "\n";
    } else {
      print_complex_matrix(out);
    }
    return kExitOk;
  }

  if (op == "weyl") {
    // --dims lists the cyclic summands; a bare --dim means a single summand.
    std::vector<Index> dims = opt.dims;
    if (dims.empty() && opt.dim >= 1) dims = {opt.dim};
    if (dims.empty())
      throw std::invalid_argument("cyclic: --dims (or --dim) is required for --op weyl");
    const Matrix w = weyl_operator(dims, opt.r, opt.t);
    std::cout << "weyl operator on " << dims.size() << " summand(s), total dim " << w.rows()
              << "\n";
    if (opt.check) {
      const double resid = (w.adjoint() * w - Matrix::Identity(w.rows(), w.cols())).norm();
      std::cout << "unitarity residual: " << sci(resid) << "\n";
      if (resid > cfg.tol.check_eps) return kExitMath;
    }
    if (!opt.out_file.empty()) {
      save_json(opt.out_file, matrix_to_json(w));
      std::cout << "wrote " << opt.out_file << "\n";
    } else {
      print_complex_matrix(w);
    }
    return kExitOk;
  }

  if (op == "shift-code" || op == "clock-code") {
    const Index m = need_dim();
    RealVector thetas = RealVector::Zero(m);
    if (!opt.thetas.empty()) {
      if (static_cast<Index>(opt.thetas.size()) != m)
        throw std::invalid_argument("cyclic: --thetas must list one phase per index");
      for (Index j = 0; j < m; ++j) thetas(j) = opt.thetas[static_cast<std::size_t>(j)];
    }
    const bool shift_noise = op == "shift-code";
    const Subspace code = shift_noise ? make_shift_code(m, thetas, cfg.tol)
                                      : make_clock_code(m, thetas, cfg.tol);
    const FlatCodeCheck check =
        shift_noise ? is_shift_code(code, cfg.tol) : is_clock_code(code, cfg.tol);
    std::cout << op << ", dim " << m << ", flatness " << sci(check.flatness) << "\n";
    bool pass = check.is_code;
    if (opt.check) {
      // Certificate run: the full power family must carry a decoding inner
      // product whose Gram is the identity, i.e. be a decoding noise basis
      // for the line (flatness and this are equivalent).
      const GramResult gram = kl_check(code, cyclic_power_span(m, shift_noise), cfg.tol);
      const double gram_dist =
          (gram.gram - Matrix::Identity(gram.gram.rows(), gram.gram.cols())).norm();
      const bool basis_ok = gram.ok() && gram_dist <= 1e3 * cfg.tol.check_eps;
      std::cout << "power-family check: status " << gram_status_name(gram.status)
                << ", distance to identity gram " << sci(gram_dist)
                << (basis_ok ? " (decoding noise basis)" : " (not a decoding noise basis)")
                << "\n";
      pass = pass && basis_ok;
    }
    if (!opt.out_file.empty()) {
      save_json(opt.out_file, subspace_to_json(code));
      std::cout << "wrote " << opt.out_file << "\n";
    }
    return pass ? kExitOk : kExitMath;
  }

  if (op == "shift-decoder" || op == "clock-decoder") {
    const Index m = need_dim();
    const bool shift_noise = op == "shift-decoder";
    const QuantumChannel ch = shift_noise ? shift_decoder(m, opt.line, cfg.tol)
                                          : clock_decoder(m, opt.line, cfg.tol);
    std::cout << op << ", dim " << m << ", line " << opt.line << ", kraus "
              << ch.kraus.size() << ", completeness residual "
              << sci(ch.completeness_residual()) << "\n";
    if (opt.check) {
      // Certificate run: the decoder restores random corrupted states on the
      // line it was built for.
      CorrectingCode cc;
      if (shift_noise) {
        Vector e = Vector::Zero(m);
        e(opt.line) = 1.0;
        cc.code = Subspace::from_frame(e, cfg.tol);
      } else {
        cc.code = Subspace::from_frame(CyclicFrame(m).entangled_vector(opt.line), cfg.tol);
      }
      cc.noise = cyclic_power_span(m, shift_noise);
      cc.decoding_basis = cc.noise;
      cc.channel = ch;
      const double worst = verify_decoding(cc, cfg.samples, effective_seed(cfg), cfg.tol);
      std::cout << "decoding residual over " << cfg.samples << " samples: " << sci(worst)
                << "\n";
      if (worst > cfg.tol.check_eps) return kExitMath;
    }
    if (!opt.out_file.empty()) {
      save_json(opt.out_file, channel_to_json(ch));
      std::cout << "wrote " << opt.out_file << "\n";
    }
    return kExitOk;
  }

  throw std::invalid_argument("cyclic: unknown --op " + opt.op);
}

//------------------------------------------------------------------------------
// simulate
//------------------------------------------------------------------------------

struct SimulateOptions {
  Index ambient = 8;
  Index code_dim = 2;
  Index noise_count = 3;
  Index instances = 10;
  int jobs = 1;
};

int cmd_simulate(const SimulateOptions& opt, const CommonConfig& cfg) {
  const std::uint64_t seed = effective_seed(cfg);
  struct Row {
    double residual = 0.0;
    bool pass = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(opt.instances));
  parallel_for(opt.instances, opt.jobs, [&](Index i) {
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
    const CorrectingCode cc =
        random_instance(opt.ambient, opt.code_dim, opt.noise_count, instance_seed, cfg.tol);
    Row& row = rows[static_cast<std::size_t>(i)];
    row.residual = verify_decoding(cc, cfg.samples, instance_seed ^ 0x9e3779b97f4a7c15ull, cfg.tol);
    row.pass = row.residual <= cfg.tol.check_eps;
  });

  bool all = true;
  double worst = 0.0;
  for (const Row& r : rows) {
    all = all && r.pass;
    worst = std::max(worst, r.residual);
  }
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (Index i = 0; i < opt.instances; ++i)
      arr.push_back(Json{{"instance", i},
                         {"residual", rows[static_cast<std::size_t>(i)].residual},
                         {"pass", rows[static_cast<std::size_t>(i)].pass}});
    std::cout << Json{{"ambient", opt.ambient},
                      {"code_dim", opt.code_dim},
                      {"noise_count", opt.noise_count},
                      {"seed", seed},
                      {"instances", std::move(arr)},
                      {"worst_residual", worst},
                      {"pass", all}}
                     .dump(2)
              << "\n";
  } else {
    for (Index i = 0; i < opt.instances; ++i) {
      const Row& r = rows[static_cast<std::size_t>(i)];
      std::cout << (r.pass ? "PASS" : "FAIL") << " instance " << i << " residual "
                << sci(r.residual) << "\n";
    }
    std::cout << "instances: " << opt.instances << ", seed: " << seed
              << ", worst residual: " << sci(worst) << "\n";
  }
  return all ? kExitOk : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum error-correcting codes via decoding inner products"};
  app.require_subcommand(1);

  // kl-check
  CommonConfig kl_cfg;
  std::string kl_code, kl_noise;
  CLI::App* kl = app.add_subcommand("kl-check", "Decide correctability of a (code, noise) pair");
  kl->add_option("--code", kl_code, "Subspace JSON file")->required();
  kl->add_option("--noise", kl_noise, "Operator span JSON file")->required();
  add_common(kl, kl_cfg);

  // synthesize
  CommonConfig sy_cfg;
  std::string sy_code, sy_noise, sy_out;
  CLI::App* sy = app.add_subcommand("synthesize", "Build and verify the correcting channel");
  sy->add_option("--code", sy_code, "Subspace JSON file")->required();
  sy->add_option("--noise", sy_noise, "Operator span JSON file")->required();
  sy->add_option("--out", sy_out, "Output bundle JSON file")->required();
  add_common(sy, sy_cfg);

  // verify
  CommonConfig ve_cfg;
  std::vector<std::string> ve_bundles;
  int ve_jobs = 1;
  CLI::App* ve = app.add_subcommand("verify", "Re-verify stored correcting-code bundles");
  ve->add_option("bundles", ve_bundles, "Bundle JSON files")->required()->expected(-1);
  ve->add_option("--jobs", ve_jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_common(ve, ve_cfg);

  // wold
  CommonConfig wo_cfg;
  std::string wo_op, wo_partition, wo_out;
  CLI::App* wo = app.add_subcommand("wold", "Shift/unitary decomposition of a partial isometry");
  wo->add_option("--op", wo_op, "Operator (matrix) JSON file")->required();
  wo->add_option("--partition", wo_partition,
                 "Optional reducing partition JSON file for per-block decompositions");
  wo->add_option("--out", wo_out, "Optional output JSON file for the decomposition");
  add_common(wo, wo_cfg);

  // blocks
  CommonConfig bl_cfg;
  std::string bl_op, bl_partition, bl_task = "classify", bl_out;
  Index bl_t = 0;
  CLI::App* bl = app.add_subcommand("blocks", "Blockwise analysis over a reducing partition");
  bl->add_option("--op", bl_op, "Operator (matrix) JSON file")->required();
  bl->add_option("--partition", bl_partition, "Partition JSON file")->required();
  bl->add_option("--task", bl_task, "What to compute")
      ->check(CLI::IsMember({"classify", "wold", "codes"}));
  bl->add_option("--t", bl_t, "Noise power for --task codes")->check(CLI::NonNegativeNumber);
  bl->add_option("--out", bl_out, "Optional output JSON file");
  add_common(bl, bl_cfg);

  // cyclic
  CommonConfig cy_cfg;
  CyclicOptions cy;
  CLI::App* cy_cmd = app.add_subcommand("cyclic", "Cyclic operators, codes and decoders");
  cy_cmd->add_option("--op", cy.op, "What to build")
      ->required()
      ->check(CLI::IsMember({"shift", "clock", "fourier", "weyl", "code", "shift-code",
                             "clock-code", "shift-decoder", "clock-decoder"}));
  cy_cmd->add_option("--dim", cy.dim, "Cyclic dimension m");
  cy_cmd->add_option("--dims", cy.dims, "Summand dimensions (weyl)")->delimiter(',');
  cy_cmd->add_option("--r", cy.r, "Shift exponents per summand (weyl)")->delimiter(',');
  cy_cmd->add_option("--t", cy.t, "Clock exponents per summand (weyl)")->delimiter(',');
  cy_cmd->add_option("--thetas", cy.thetas, "Phases for code construction")->delimiter(',');
  cy_cmd->add_option("--j,--line", cy.line, "Basis line index j for decoders");
  cy_cmd->add_flag("--check", cy.check, "Run the matching certificate test");
  cy_cmd->add_option("--out", cy.out_file, "Output JSON file");
  add_common(cy_cmd, cy_cfg);

  // simulate
  CommonConfig si_cfg;
  SimulateOptions si;
  CLI::App* si_cmd = app.add_subcommand("simulate", "Seeded random correctable instances");
  si_cmd->add_option("--ambient", si.ambient, "Ambient dimension")->check(CLI::PositiveNumber);
  si_cmd->add_option("--code-dim", si.code_dim, "Code dimension")->check(CLI::PositiveNumber);
  si_cmd->add_option("--noise-count", si.noise_count, "Noise span dimension")
      ->check(CLI::PositiveNumber);
  si_cmd->add_option("--instances", si.instances, "Number of instances")
      ->check(CLI::PositiveNumber);
  si_cmd->add_option("--jobs", si.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_common(si_cmd, si_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (kl->parsed()) return cmd_kl_check(kl_code, kl_noise, kl_cfg);
    if (sy->parsed()) return cmd_synthesize(sy_code, sy_noise, sy_out, sy_cfg);
    if (ve->parsed()) return cmd_verify(ve_bundles, ve_jobs, ve_cfg);
    if (wo->parsed()) return cmd_wold(wo_op, wo_partition, wo_out, wo_cfg);
    if (bl->parsed()) return cmd_blocks(bl_op, bl_partition, bl_task, bl_t, bl_out, bl_cfg);
    if (cy_cmd->parsed()) return cmd_cyclic(cy, cy_cfg);
    if (si_cmd->parsed()) return cmd_simulate(si, si_cfg);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
