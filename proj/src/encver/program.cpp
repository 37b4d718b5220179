// Copyright 2026 The qzk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "qzk/encver/encver.hpp"
#include "qzk/qsim/gates.hpp"

namespace qzk::encver {

namespace {

namespace gates = qsim::gates;

// log2 of a power of two, or -1.
int ilog2_exact(int m) {
  if (m < 1) return -1;
  int w = 0;
  while ((1 << w) < m) ++w;
  return (1 << w) == m ? w : -1;
}

qsim::GateOp g1(const std::string& name, int wire) {
  return qsim::GateOp{gates::by_name(name), {wire}};
}

qsim::GateOp gcnot(int control, int target) {
  return qsim::GateOp{gates::CNOT(), {control, target}};
}

qsim::GateOp gcz(int control, int target) {
  return qsim::GateOp{gates::CZ(), {control, target}};
}

int count_t_gates(const qsat::Circuit& circuit) {
  int c = 0;
  for (const auto& g : circuit) c += (g.name == "T") ? 1 : 0;
  return c;
}

// Shifts a gate's wires by per-wire lookup.
qsim::GateOp remap(const qsim::GateOp& g, const std::vector<int>& wire_of) {
  qsim::GateOp out = g;
  for (auto& w : out.targets) w = wire_of[static_cast<std::size_t>(w)];
  for (auto& w : out.controls) w = wire_of[static_cast<std::size_t>(w)];
  return out;
}

std::vector<int> block_wires(int start, int width) {
  std::vector<int> w(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) w[static_cast<std::size_t>(j)] = start + j;
  return w;
}

// The elementary gate list of the encoded test for one check: undo the pad
// on the touched data wires, then the fault-tolerant check circuit with T
// gates routed through the magic blocks. At kappa = 1 the T fix-up is a
// structural placeholder (empty matrix over both blocks); it is never
// executed numerically.
std::vector<qsim::GateOp> encoded_test_gates(
    const EncodedVerifierProgram& p, int check) {
  const int n = p.instance.n;
  const int k = p.instance.k;
  const int N = p.block;
  const auto& subset = p.instance.subsets[static_cast<std::size_t>(check)];
  const auto& circuit = p.instance.circuits[static_cast<std::size_t>(check)];

  auto data_block = [&](int u) { return p.register_wire("Edata", u); };
  auto otp_block = [&](int u) { return p.register_wire("Eotp", u); };
  auto anc_block = [&](int j) { return p.register_wire("Eanc", j); };
  auto magic_block = [&](int j) { return p.register_wire("Emagic", j); };
  // Circuit wire w -> first physical wire of its block.
  auto wire_block = [&](int w) {
    return w < k ? data_block(subset[static_cast<std::size_t>(w)])
                 : anc_block(w - k);
  };

  std::vector<qsim::GateOp> out;
  for (int u : subset) {
    for (int j = 0; j < N; ++j) out.push_back(gcnot(otp_block(u) + j,
                                                    data_block(u) + j));
  }
  for (int u : subset) {
    for (int j = 0; j < N; ++j) out.push_back(gcz(otp_block(n + u) + j,
                                                  data_block(u) + j));
  }

  int t_used = 0;
  for (const auto& g : circuit) {
    if (g.name == "CNOT") {
      const int c = wire_block(g.wires[0]);
      const int t = wire_block(g.wires[1]);
      for (int j = 0; j < N; ++j) out.push_back(gcnot(c + j, t + j));
    } else if (g.name == "H") {
      const int w = wire_block(g.wires[0]);
      for (int j = 0; j < N; ++j) out.push_back(g1("H", w + j));
    } else if (g.name == "P") {
      // The transversal phase gate at level >= 1 is Pdg per wire.
      const int w = wire_block(g.wires[0]);
      const std::string phys = p.code.kappa == 0 ? "P" : "Pdg";
      for (int j = 0; j < N; ++j) out.push_back(g1(phys, w + j));
    } else if (g.name == "T") {
      const int w = wire_block(g.wires[0]);
      const int m = magic_block(t_used++);
      if (p.code.kappa == 0) {
        out.push_back(gcnot(m, w));
        Eigen::MatrixXcd sx = gates::P() * gates::X();
        out.push_back(qsim::GateOp{gates::controlled(sx), {w, m}});
        out.push_back(qsim::GateOp{gates::by_name("SWAP"), {w, m}});
      } else {
        for (int j = 0; j < N; ++j) out.push_back(gcnot(m + j, w + j));
        // Coherent flagged fix-up across both blocks; structural only.
        qsim::GateOp fixup;
        std::vector<int> both = block_wires(w, N);
        std::vector<int> mb = block_wires(m, N);
        both.insert(both.end(), mb.begin(), mb.end());
        fixup.targets = std::move(both);
        out.push_back(std::move(fixup));
      }
    } else {
      throw ValidationError("unsupported check gate: " + g.name);
    }
  }
  return out;
}

// Splits `gates` into exactly `parts` consecutive chunks, front-loading the
// remainder; trailing chunks may be empty (identity padding).
std::vector<std::vector<qsim::GateOp>> chunk_gates(
    const std::vector<qsim::GateOp>& gates, int parts) {
  const int total = static_cast<int>(gates.size());
  const int base = total / parts;
  const int extra = total % parts;
  std::vector<std::vector<qsim::GateOp>> out;
  out.reserve(static_cast<std::size_t>(parts));
  int at = 0;
  for (int c = 0; c < parts; ++c) {
    const int len = base + (c < extra ? 1 : 0);
    out.emplace_back(gates.begin() + at, gates.begin() + at + len);
    at += len;
  }
  return out;
}

std::vector<int> gate_wires_union(const std::vector<qsim::GateOp>& gs) {
  std::set<int> w;
  for (const auto& g : gs) {
    w.insert(g.targets.begin(), g.targets.end());
    w.insert(g.controls.begin(), g.controls.end());
  }
  return std::vector<int>(w.begin(), w.end());
}

// Adds the index-register controls for branch `i` to every branch gate,
// producing the executable form of an indexed step (vanilla mode).
std::vector<qsim::GateOp> with_index_controls(
    const EncodedVerifierProgram& p, const std::vector<qsim::GateOp>& branch,
    int i) {
  const std::vector<int> idx = p.index_wires();
  std::uint64_t pattern = 0;
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const int bit = (i >> (p.index_width - 1 - static_cast<int>(c))) & 1;
    pattern |= static_cast<std::uint64_t>(bit) << c;
  }
  std::vector<qsim::GateOp> out;
  out.reserve(branch.size());
  for (const auto& g : branch) {
    qsim::GateOp cg = g;
    cg.controls.insert(cg.controls.end(), idx.begin(), idx.end());
    cg.control_pattern = pattern;  // prior gates carry no controls here
    out.push_back(std::move(cg));
  }
  return out;
}

}  // namespace

int EncodedVerifierProgram::register_wire(const std::string& name,
                                          int logical_wire) const {
  const auto r = layout.range(name);
  const int stride = (name == "Echk") ? (block - 1) : block;
  const int wire = r.start + logical_wire * std::max(stride, 1);
  if (logical_wire < 0 || wire >= r.end()) {
    throw ValidationError("logical wire outside register " + name);
  }
  return wire;
}

std::vector<int> EncodedVerifierProgram::index_wires() const {
  return layout.qubits("Eidx");
}

int EncodedVerifierProgram::decision_wire() const {
  return layout.range("Eanc").start;
}

qsim::PureState canonical_witness(const qsat::QsatInstance& inst) {
  qsim::PureState maximizer(inst.n > 0 ? inst.n : 1);
  qsat::val_max(inst, &maximizer);
  return maximizer;
}

EncodedVerifierProgram build_program(const qsat::QsatInstance& inst_in,
                                     const steane::CodeParams& params,
                                     const BuildOptions& options) {
  if (params.kappa > 1) {
    throw CapacityError(
        "program synthesis supports concatenation level <= 1");
  }
  if (options.c_test < 1) throw ValidationError("c_test must be positive");
  qsat::QsatInstance inst = qsat::normalized(inst_in);

  EncodedVerifierProgram p;
  p.instance = inst;
  p.code = params;
  p.c_test = options.c_test;
  p.block = params.block_size();
  p.index_width = ilog2_exact(inst.m);
  if (p.index_width < 0) {
    throw ValidationError(
        "m must be a power of two; apply the power-of-two padding first");
  }
  for (const auto& c : inst.circuits) {
    if (count_t_gates(c) > inst.gamma) {
      throw ValidationError(
          "a check uses more T gates than available magic blocks");
    }
  }

  const int n = inst.n;
  const int k = inst.k;
  const int gamma = inst.gamma;
  const int N = p.block;
  const int iw = p.index_width;
  p.layout.add("Edata", N * n);
  p.layout.add("Eotp", 2 * N * n);
  p.layout.add("Echk", 3 * k * (N - 1));
  p.layout.add("Eidx", N * iw);
  p.layout.add("Emidx", N * iw);
  p.layout.add("Emagic", gamma * N);
  p.layout.add("Eanc", gamma * N);
  p.state_qubits = p.layout.total();
  p.witness_qubits = 3 * N * n;

  const auto lengths = steane::sequence_lengths(params.kappa);
  const auto pad1 = [](long long v) { return static_cast<int>(std::max(v, 1LL)); };
  const int l_enc = pad1(lengths.enc);
  const int l_h = pad1(lengths.transversal_1q);
  const int l_cnot = pad1(lengths.transversal_cnot);
  const int l_chk = pad1(lengths.chk);
  const int l_dec = pad1(lengths.dec);
  const int l_etest = options.c_test * gamma;

  auto begin_phase = [&](int phase, const std::string& name, int length) {
    PhaseInfo info;
    info.phase = phase;
    info.name = name;
    info.length = length;
    info.first_step = static_cast<int>(p.steps.size()) + 1;
    p.phases.push_back(info);
  };
  auto plain_step = [&](int phase, int j, std::vector<qsim::GateOp> gs) {
    SubStep s;
    s.phase = phase;
    s.index_in_phase = j;
    s.gates = std::move(gs);
    p.steps.push_back(std::move(s));
  };

  // Phase 1: magic-state preparation on the bare block inputs.
  begin_phase(1, "magic-prep", 2);
  for (const std::string gname : {"H", "T"}) {
    std::vector<qsim::GateOp> gs;
    for (int g = 0; g < gamma; ++g) {
      gs.push_back(g1(gname, p.register_wire("Emagic", g)));
    }
    plain_step(1, gname == "H" ? 1 : 2, std::move(gs));
  }

  // Phase 2: encode the ancilla-side registers block by block.
  begin_phase(2, "encode", l_enc);
  if (params.kappa == 0) {
    plain_step(2, 1, {});
  } else {
    const auto enc = steane::encoding_sequence(params);
    std::vector<int> starts;
    for (int g = 0; g < gamma; ++g) starts.push_back(p.register_wire("Eanc", g));
    for (int g = 0; g < gamma; ++g) {
      starts.push_back(p.register_wire("Emagic", g));
    }
    for (int b = 0; b < iw; ++b) starts.push_back(p.register_wire("Eidx", b));
    for (int b = 0; b < iw; ++b) starts.push_back(p.register_wire("Emidx", b));
    for (int j = 0; j < l_enc; ++j) {
      std::vector<qsim::GateOp> gs;
      for (int s0 : starts) {
        gs.push_back(remap(enc.gates[static_cast<std::size_t>(j)],
                           block_wires(s0, N)));
      }
      plain_step(2, j + 1, std::move(gs));
    }
  }

  // Phase 3: index-register superposition (logical Hadamards).
  begin_phase(3, "index-superpose", l_h);
  for (int j = 0; j < l_h; ++j) {
    std::vector<qsim::GateOp> gs;
    for (int b = 0; b < iw; ++b) {
      gs.push_back(g1("H", p.register_wire("Eidx", b) + j));
    }
    plain_step(3, j + 1, std::move(gs));
  }

  // Phase 4: copy the index into the mirror register.
  begin_phase(4, "index-copy", l_cnot);
  for (int j = 0; j < l_cnot; ++j) {
    std::vector<qsim::GateOp> gs;
    for (int b = 0; b < iw; ++b) {
      gs.push_back(gcnot(p.register_wire("Eidx", b) + j,
                         p.register_wire("Emidx", b) + j));
    }
    plain_step(4, j + 1, std::move(gs));
  }

  // Phase 5: syndrome extraction for the three check families, indexed by
  // the branch's selected wires.
  begin_phase(5, "check-encode", 3 * k * l_chk);
  steane::GateSequence chk;
  if (params.kappa >= 1) chk = steane::syndrome_sequence(params);
  for (int tau = 0; tau < 3 * k; ++tau) {
    for (int j = 0; j < l_chk; ++j) {
      SubStep s;
      s.phase = 5;
      s.index_in_phase = tau * l_chk + j + 1;
      s.indexed = true;
      for (int i = 0; i < inst.m; ++i) {
        const auto& subset = inst.subsets[static_cast<std::size_t>(i)];
        const int u = subset[static_cast<std::size_t>(tau % k)];
        int target_block = 0;
        if (tau / k == 0) {
          target_block = p.register_wire("Edata", u);
        } else if (tau / k == 1) {
          target_block = p.register_wire("Eotp", u);
        } else {
          target_block = p.register_wire("Eotp", n + u);
        }
        std::vector<int> support = block_wires(target_block, N);
        std::vector<qsim::GateOp> branch;
        if (params.kappa >= 1) {
          std::vector<int> wire_of = block_wires(target_block, N);
          const int chk_start = p.register_wire("Echk", tau);
          for (int w = 0; w < N - 1; ++w) wire_of.push_back(chk_start + w);
          branch.push_back(remap(chk.gates[static_cast<std::size_t>(j)],
                                 wire_of));
          for (int w = 0; w < N - 1; ++w) support.push_back(chk_start + w);
        }
        s.branch_support.push_back(std::move(support));
        s.branch_gates.push_back(std::move(branch));
      }
      // Vanilla branches are identities, so the executable gate list stays
      // empty; encoded branches are structural and never folded/executed.
      p.steps.push_back(std::move(s));
    }
  }

  // Phase 6: the encoded test, chunked into c_test * gamma sub-unitaries.
  begin_phase(6, "encoded-test", l_etest);
  std::vector<std::vector<std::vector<qsim::GateOp>>> chunks;
  for (int i = 0; i < inst.m; ++i) {
    chunks.push_back(chunk_gates(encoded_test_gates(p, i), l_etest));
  }
  for (int j = 0; j < l_etest; ++j) {
    SubStep s;
    s.phase = 6;
    s.index_in_phase = j + 1;
    s.indexed = true;
    for (int i = 0; i < inst.m; ++i) {
      auto branch = chunks[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)];
      s.branch_support.push_back(gate_wires_union(branch));
      if (params.kappa == 0) {
        auto exec = with_index_controls(p, branch, i);
        s.gates.insert(s.gates.end(), exec.begin(), exec.end());
      }
      s.branch_gates.push_back(std::move(branch));
    }
    p.steps.push_back(std::move(s));
  }

  // Phase 7: decode the decision block.
  begin_phase(7, "decode", l_dec);
  if (params.kappa == 0) {
    plain_step(7, 1, {});
  } else {
    const auto dec = steane::decoding_sequence(params);
    const auto wire_of = block_wires(p.register_wire("Eanc", 0), N);
    for (int j = 0; j < l_dec; ++j) {
      plain_step(7, j + 1,
                 {remap(dec.gates[static_cast<std::size_t>(j)], wire_of)});
    }
  }

  return p;
}

qsim::PureState otp_witness(const EncodedVerifierProgram& program,
                            const qsim::PureState& phi,
                            const std::vector<int>& a,
                            const std::vector<int>& b) {
  const int n = program.instance.n;
  if (phi.num_qubits() != n) {
    throw ValidationError("witness qubit count must match the instance");
  }
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
    throw ValidationError("pad bit vectors must have n entries each");
  }
  qsim::PureState padded = phi;
  for (int u = 0; u < n; ++u) {
    if (b[static_cast<std::size_t>(u)]) {
      qsim::apply_gate_inplace(padded, g1("Z", u));
    }
  }
  for (int u = 0; u < n; ++u) {
    if (a[static_cast<std::size_t>(u)]) {
      qsim::apply_gate_inplace(padded, g1("X", u));
    }
  }
  std::uint64_t abits = 0, bbits = 0;
  for (int u = 0; u < n; ++u) {
    abits = (abits << 1) | static_cast<std::uint64_t>(
                               a[static_cast<std::size_t>(u)] & 1);
    bbits = (bbits << 1) | static_cast<std::uint64_t>(
                               b[static_cast<std::size_t>(u)] & 1);
  }
  // Logical layout: data wires, then the a-pads, then the b-pads.
  qsim::PureState logical(3 * n);
  auto& amps = logical.amplitudes();
  std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
  for (std::uint64_t d = 0; d < padded.dim(); ++d) {
    const std::uint64_t idx = (d << (2 * n)) |
                              (abits << n) | bbits;
    amps[idx] = padded.amplitude(d);
  }
  return steane::encode_state(logical, program.code);
}

std::vector<std::pair<double, qsim::PureState>> otp_witness_uniform(
    const EncodedVerifierProgram& program, const qsim::PureState& phi) {
  const int n = program.instance.n;
  std::vector<std::pair<double, qsim::PureState>> out;
  const int pads = 1 << (2 * n);
  const double w = 1.0 / static_cast<double>(pads);
  for (int pad = 0; pad < pads; ++pad) {
    std::vector<int> a(static_cast<std::size_t>(n));
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
      a[static_cast<std::size_t>(u)] = (pad >> (2 * n - 1 - u)) & 1;
      b[static_cast<std::size_t>(u)] = (pad >> (n - 1 - u)) & 1;
    }
    out.emplace_back(w, otp_witness(program, phi, a, b));
  }
  return out;
}

double run_venc(const EncodedVerifierProgram& program,
                const qsim::PureState& witness) {
  if (program.code.kappa != 0) {
    throw CapacityError("numeric execution requires vanilla mode (kappa 0)");
  }
  if (witness.num_qubits() != program.witness_qubits) {
    throw ValidationError("witness register size mismatch");
  }
  const int ns = program.state_qubits;
  const int n2 = ns - program.witness_qubits;
  qsim::PureState state(ns);
  auto& amps = state.amplitudes();
  std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
  for (std::uint64_t w = 0; w < witness.dim(); ++w) {
    amps[w << n2] = witness.amplitude(w);
  }
  for (const auto& step : program.steps) {
    for (const auto& g : step.gates) qsim::apply_gate_inplace(state, g);
  }
  const int out_wire = program.decision_wire();
  const auto chk = program.layout.qubits("Echk");
  double accept = 0.0;
  for (std::uint64_t g = 0; g < state.dim(); ++g) {
    if (state.bit(g, out_wire) != 1) continue;
    bool zeros = true;
    for (int w : chk) zeros = zeros && state.bit(g, w) == 0;
    if (zeros) accept += std::norm(state.amplitude(g));
  }
  return accept;
}

double run_venc(const EncodedVerifierProgram& program,
                const std::vector<std::pair<double, qsim::PureState>>& mix) {
  double total = 0.0;
  for (const auto& [w, psi] : mix) total += w * run_venc(program, psi);
  return total;
}

clockham::UnitarySequence to_unitary_sequence(
    const EncodedVerifierProgram& program) {
  if (program.code.kappa != 0) {
    throw CapacityError("dense folding requires vanilla mode (kappa 0)");
  }
  clockham::UnitarySequence seq;
  seq.n1 = program.witness_qubits;
  seq.n2 = program.state_qubits - program.witness_qubits;
  for (const std::string name :
       {"Eidx", "Emidx", "Eanc", "Emagic", "Echk"}) {
    std::vector<int> rel;
    for (int w : program.layout.qubits(name)) {
      rel.push_back(w - program.witness_qubits);
    }
    seq.partition.push_back(std::move(rel));
  }
  for (const auto& step : program.steps) {
    std::vector<int> wires = gate_wires_union(step.gates);
    const int w = static_cast<int>(wires.size());
    if (w == 0) {
      seq.steps.push_back(
          qsim::GateOp{Eigen::MatrixXcd::Identity(1, 1), {}});
      continue;
    }
    if (w > kMaxMixedQubits) {
      throw CapacityError("folded step block exceeds dense limits");
    }
    std::vector<int> pos(static_cast<std::size_t>(program.state_qubits), -1);
    for (int j = 0; j < w; ++j) {
      pos[static_cast<std::size_t>(wires[static_cast<std::size_t>(j)])] = j;
    }
    const auto dim = std::uint64_t{1} << w;
    Eigen::MatrixXcd dense(static_cast<Eigen::Index>(dim),
                           static_cast<Eigen::Index>(dim));
    CVec col(dim);
    for (std::uint64_t c = 0; c < dim; ++c) {
      std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
      col[c] = 1.0;
      for (const auto& g : step.gates) {
        qsim::GateOp local = g;
        for (auto& t : local.targets) {
          t = pos[static_cast<std::size_t>(t)];
        }
        for (auto& t : local.controls) {
          t = pos[static_cast<std::size_t>(t)];
        }
        qsim::apply_gate_inplace(col, w, local);
      }
      for (std::uint64_t r = 0; r < dim; ++r) {
        dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            col[r];
      }
    }
    seq.steps.push_back(qsim::GateOp{std::move(dense), std::move(wires)});
  }
  return seq;
}

int structural_step_count(const qsat::QsatInstance& inst,
                          const steane::CodeParams& params,
                          const BuildOptions& options) {
  const auto lengths = steane::sequence_lengths(params.kappa);
  const auto pad1 = [](long long v) {
    return static_cast<int>(std::max(v, 1LL));
  };
  return 2 + pad1(lengths.enc) + pad1(lengths.transversal_1q) +
         pad1(lengths.transversal_cnot) + 3 * inst.k * pad1(lengths.chk) +
         options.c_test * inst.gamma + pad1(lengths.dec);
}

int structural_term_count(const qsat::QsatInstance& inst,
                          const steane::CodeParams& params,
                          const BuildOptions& options) {
  return 2 * structural_step_count(inst, params, options) + 5 + 1;
}

MConstants m_constants(const steane::CodeParams& params, int c_test) {
  const auto lengths = steane::sequence_lengths(params.kappa);
  const auto pad1 = [](long long v) {
    return static_cast<int>(std::max(v, 1LL));
  };
  const int base = 2 + pad1(lengths.enc) + pad1(lengths.transversal_1q) +
                   pad1(lengths.transversal_cnot) + pad1(lengths.dec);
  MConstants c;
  c.a = 6 * pad1(lengths.chk);
  c.b = 2 * c_test;
  c.c = 2 * base + 6;
  return c;
}

std::string program_summary_json(const EncodedVerifierProgram& program) {
  nlohmann::json j;
  j["schema"] = "qzk-encver-program/1";
  j["kappa"] = program.code.kappa;
  j["block"] = program.block;
  j["n"] = program.instance.n;
  j["m"] = program.instance.m;
  j["k"] = program.instance.k;
  j["gamma"] = program.instance.gamma;
  j["c_test"] = program.c_test;
  j["T"] = program.step_count();
  j["state_qubits"] = program.state_qubits;
  j["witness_qubits"] = program.witness_qubits;
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& [name, range] : program.layout.entries()) {
    regs.push_back({{"name", name},
                    {"start", range.start},
                    {"width", range.width}});
  }
  j["registers"] = regs;
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& ph : program.phases) {
    phases.push_back({{"phase", ph.phase},
                      {"name", ph.name},
                      {"length", ph.length},
                      {"first_step", ph.first_step}});
  }
  j["phases"] = phases;
  return j.dump(2);
}

}  // namespace qzk::encver
