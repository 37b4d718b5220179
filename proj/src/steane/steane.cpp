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

#include "qzk/steane/steane.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qzk/qsim/gates.hpp"

namespace qzk::steane {

namespace {

// Parity-check supports of the [7,4] Hamming code, zero-indexed. The three
// bit-parity and three phase-parity stabilizers share these supports.
const std::vector<std::vector<int>> kChecks = {
    {0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};

int ipow(int base, int exp) {
  int v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

long long llpow(long long base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

void require_numeric_level(const CodeParams& params) {
  if (params.kappa < 0 || params.kappa > 1) {
    throw CapacityError("numeric paths support concatenation level <= 1");
  }
}

qsim::GateOp cnot(int control, int target) {
  return qsim::GateOp{qsim::gates::CNOT(), {control, target}};
}

qsim::GateOp one_wire(const Eigen::MatrixXcd& u, int wire) {
  return qsim::GateOp{u, {wire}};
}

// S X as a single block: flip, then phase.
Eigen::MatrixXcd sx_matrix() {
  return qsim::gates::P() * qsim::gates::X();
}

// Tensor product of two registers, `a` on the high wires.
qsim::PureState tensor(const qsim::PureState& a, const qsim::PureState& b) {
  qsim::PureState out(a.num_qubits() + b.num_qubits());
  auto& amp = out.amplitudes();
  std::fill(amp.begin(), amp.end(), Complex{0.0, 0.0});
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    Complex ai = a.amplitude(i);
    if (ai == Complex{0.0, 0.0}) continue;
    for (std::uint64_t j = 0; j < b.dim(); ++j) {
      amp[(i << b.num_qubits()) | j] = ai * b.amplitude(j);
    }
  }
  return out;
}

int logical_wires(const std::string& gate) {
  if (gate == "CNOT") return 2;
  if (gate == "H" || gate == "P" || gate == "T" || gate == "I") return 1;
  throw ValidationError("unsupported logical gate: " + gate);
}

// Parity projectors (I +- Z...Z)/2 over `w` wires as dense diagonals.
std::vector<Eigen::MatrixXcd> parity_effects(int w) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << w);
  Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd odd = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t g = 0; g < static_cast<std::uint64_t>(dim); ++g) {
    int ones = 0;
    for (int b = 0; b < w; ++b) ones += static_cast<int>((g >> b) & 1ULL);
    if (ones % 2 == 0) {
      even(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g)) = 1.0;
    } else {
      odd(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g)) = 1.0;
    }
  }
  return {even, odd};
}

// Spanning set of one-qubit inputs whose real span is the full Hermitian
// space: Z basis, plus |+> and |+i>.
std::vector<qsim::PureState> spanning_states() {
  using qsim::PureState;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<PureState> out;
  out.push_back(PureState::basis(1, 0));
  out.push_back(PureState::basis(1, 1));
  out.push_back(PureState(1, CVec{Complex{r, 0.0}, Complex{r, 0.0}}));
  out.push_back(PureState(1, CVec{Complex{r, 0.0}, Complex{0.0, r}}));
  return out;
}

}  // namespace

int CodeParams::block_size() const { return ipow(7, kappa); }
int CodeParams::distance() const { return ipow(3, kappa); }

CodeParams make_code_params(int kappa) {
  if (kappa < 0) throw ValidationError("negative concatenation level");
  CodeParams p;
  p.kappa = kappa;
  p.s_max_static = p.distance() - 1;
  p.s_max_midgate = kappa >= 1 ? 2 : 0;
  return p;
}

SequenceLengths sequence_lengths(int kappa) {
  if (kappa < 0) throw ValidationError("negative concatenation level");
  SequenceLengths l;
  const long long n = llpow(7, kappa);
  l.transversal_1q = n;
  l.transversal_cnot = n;
  l.t_gate = kappa == 0 ? 3 : n + 1;  // transversal half plus the fix-up
  if (kappa >= 1) {
    // Each level encodes seven sub-blocks, then runs the 14-gate (30-gate
    // for checks) layer transversally at the lower level.
    l.enc = 14 * kappa * llpow(7, kappa - 1);
    l.dec = l.enc;
    l.chk = 30 * kappa * llpow(7, kappa - 1);
  }
  return l;
}

GateSequence encoding_sequence(const CodeParams& params) {
  require_numeric_level(params);
  GateSequence seq;
  seq.wires = params.block_size();
  if (params.kappa == 0) return seq;
  // Seed the logical bit across the minimal-weight codeword support, then
  // superpose the three stabilizer generators {0,2,4,6}, {1,2,5,6} and
  // their third independent combination {0,1,3,6}.
  seq.gates.push_back(cnot(0, 1));
  seq.gates.push_back(cnot(0, 2));
  seq.gates.push_back(one_wire(qsim::gates::H(), 4));
  seq.gates.push_back(cnot(4, 0));
  seq.gates.push_back(cnot(4, 2));
  seq.gates.push_back(cnot(4, 6));
  seq.gates.push_back(one_wire(qsim::gates::H(), 5));
  seq.gates.push_back(cnot(5, 1));
  seq.gates.push_back(cnot(5, 2));
  seq.gates.push_back(cnot(5, 6));
  seq.gates.push_back(one_wire(qsim::gates::H(), 3));
  seq.gates.push_back(cnot(3, 0));
  seq.gates.push_back(cnot(3, 1));
  seq.gates.push_back(cnot(3, 6));
  return seq;
}

GateSequence decoding_sequence(const CodeParams& params) {
  GateSequence enc = encoding_sequence(params);
  GateSequence dec;
  dec.wires = enc.wires;
  for (auto it = enc.gates.rbegin(); it != enc.gates.rend(); ++it) {
    dec.gates.push_back(it->adjoint());
  }
  return dec;
}

GateSequence syndrome_sequence(const CodeParams& params) {
  require_numeric_level(params);
  GateSequence seq;
  const int n = params.block_size();
  seq.wires = n + (n - 1);
  if (params.kappa == 0) return seq;  // no checks on the identity code
  // Bit-parity checks copy data parities onto wires 7..9.
  for (int c = 0; c < 3; ++c) {
    for (int q : kChecks[c]) seq.gates.push_back(cnot(q, 7 + c));
  }
  // Phase-parity checks run in the conjugate basis onto wires 10..12.
  for (int c = 0; c < 3; ++c) {
    const int s = 10 + c;
    seq.gates.push_back(one_wire(qsim::gates::H(), s));
    for (int q : kChecks[c]) seq.gates.push_back(cnot(s, q));
    seq.gates.push_back(one_wire(qsim::gates::H(), s));
  }
  return seq;
}

GateSequence transversal_sequence(const std::string& gate,
                                  const CodeParams& params) {
  require_numeric_level(params);
  const int n = params.block_size();
  GateSequence seq;
  if (gate == "I") {
    seq.wires = n;
    return seq;
  }
  if (gate == "CNOT") {
    seq.wires = 2 * n;
    for (int i = 0; i < n; ++i) seq.gates.push_back(cnot(i, n + i));
    return seq;
  }
  if (gate == "H") {
    seq.wires = n;
    for (int i = 0; i < n; ++i) {
      seq.gates.push_back(one_wire(qsim::gates::H(), i));
    }
    return seq;
  }
  if (gate == "P") {
    seq.wires = n;
    // The codeword weights force the inverse phase physically.
    const Eigen::MatrixXcd u =
        params.kappa == 0 ? qsim::gates::P() : qsim::gates::Pdg();
    for (int i = 0; i < n; ++i) seq.gates.push_back(one_wire(u, i));
    return seq;
  }
  if (gate == "T") {
    seq.magic_arity = 1;
    seq.wires = 2 * n;
    if (params.kappa == 0) {
      // Coherent magic-state gadget: entangle, phase-correct, swap back.
      seq.gates.push_back(cnot(1, 0));
      qsim::GateOp csx{qsim::gates::controlled(sx_matrix()), {0, 1}};
      seq.gates.push_back(csx);
      seq.gates.push_back(qsim::GateOp{qsim::gates::SWAP(), {0, 1}});
      return seq;
    }
    // Level 1: transversal entangling half, then the flagged
    // measurement-conditioned Clifford fix-up.
    for (int i = 0; i < n; ++i) seq.gates.push_back(cnot(n + i, i));
    seq.correction_index = static_cast<int>(seq.gates.size());
    return seq;
  }
  throw ValidationError("unsupported logical gate: " + gate);
}

qsim::PureState encode_state(const qsim::PureState& logical,
                             const CodeParams& params) {
  require_numeric_level(params);
  if (params.kappa == 0) return logical;
  const int blocks = logical.num_qubits();
  const int n = params.block_size();
  const int total = blocks * n;
  qsim::PureState out(total);
  auto& amp = out.amplitudes();
  std::fill(amp.begin(), amp.end(), Complex{0.0, 0.0});
  for (std::uint64_t a = 0; a < logical.dim(); ++a) {
    Complex c = logical.amplitude(a);
    if (c == Complex{0.0, 0.0}) continue;
    std::uint64_t idx = 0;
    for (int b = 0; b < blocks; ++b) {
      if ((a >> (blocks - 1 - b)) & 1ULL) {
        idx |= std::uint64_t{1} << (total - 1 - b * n);  // data wire of block b
      }
    }
    amp[idx] = c;
  }
  GateSequence enc = encoding_sequence(params);
  for (int b = 0; b < blocks; ++b) {
    for (const auto& g : enc.gates) {
      qsim::GateOp shifted = g;
      for (auto& w : shifted.targets) w += b * n;
      qsim::apply_gate_inplace(out, shifted);
    }
  }
  return out;
}

qsim::PureState encoded_magic_state(const CodeParams& params) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex omega = std::exp(Complex{0.0, M_PI / 4.0});
  qsim::PureState magic(1, CVec{Complex{r, 0.0}, omega * r});
  return encode_state(magic, params);
}

std::vector<qsim::MeasureBranch> run_t_with_correction(
    const qsim::PureState& input, const CodeParams& params) {
  require_numeric_level(params);
  if (params.kappa != 1) {
    throw ValidationError("the flagged correction applies at level 1 only");
  }
  const int n = params.block_size();
  if (input.num_qubits() != 2 * n) {
    throw ValidationError("expected one data block and one magic block");
  }
  GateSequence seq = transversal_sequence("T", params);
  qsim::PureState cur = input;
  for (const auto& g : seq.gates) qsim::apply_gate_inplace(cur, g);

  // Logical bit-parity measurement of the data block.
  std::vector<int> data_wires;
  for (int i = 0; i < n; ++i) data_wires.push_back(i);
  auto branches =
      qsim::measure_branches(cur, data_wires, parity_effects(n), 1e-12);
  for (auto& br : branches) {
    if (br.outcome == 1) {
      for (int i = 0; i < n; ++i) {
        qsim::apply_gate_inplace(br.post,
                                 one_wire(qsim::gates::X(), n + i));
      }
      for (int i = 0; i < n; ++i) {
        qsim::apply_gate_inplace(br.post,
                                 one_wire(qsim::gates::Pdg(), n + i));
      }
    }
    for (int i = 0; i < n; ++i) {
      qsim::apply_gate_inplace(
          br.post, qsim::GateOp{qsim::gates::SWAP(), {i, n + i}});
    }
  }
  return branches;
}

qsim::MixedState sim_marginal(const std::string& gate, int t,
                              const std::vector<int>& s,
                              const CodeParams& params) {
  require_numeric_level(params);
  GateSequence seq = transversal_sequence(gate, params);
  const int block = params.block_size();
  const int k_g = logical_wires(gate);
  const int total = block * (k_g + seq.magic_arity);

  const int unitary_len = seq.correction_index >= 0
                              ? seq.correction_index
                              : static_cast<int>(seq.gates.size());
  if (t < 0 || t > unitary_len) {
    throw ValidationError(
        "step index must stop at a unitary sequence boundary");
  }
  std::map<int, int> per_block;
  for (int w : s) {
    if (w < 0 || w >= total) throw ValidationError("subset wire range");
    per_block[w / block] += 1;
  }
  const int s_max = t == 0 ? params.s_max_static : params.s_max_midgate;
  for (const auto& [b, count] : per_block) {
    if (count > s_max) {
      throw ValidationError("per-block subset size exceeds the simulable cap");
    }
  }
  if (s.empty()) {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = 1.0;
    return qsim::MixedState(0, one);
  }

  // Run every spanning logical input through the first t gates; all the
  // reduced states must coincide for the marginal to be input-independent.
  std::vector<qsim::PureState> span = spanning_states();
  bool have = false;
  qsim::MixedState common(static_cast<int>(s.size()));
  const std::uint64_t combos = std::uint64_t{1} << (2 * k_g);
  for (std::uint64_t combo = 0; combo < combos; ++combo) {
    qsim::PureState logical = span[combo & 3];
    for (int w = 1; w < k_g; ++w) {
      logical = tensor(logical, span[(combo >> (2 * w)) & 3]);
    }
    qsim::PureState physical = encode_state(logical, params);
    if (seq.magic_arity > 0) {
      physical = tensor(physical, encoded_magic_state(params));
    }
    for (int i = 0; i < t; ++i) {
      qsim::apply_gate_inplace(physical, seq.gates[i]);
    }
    qsim::MixedState reduced = qsim::reduced_density(physical, s);
    if (!have) {
      common = reduced;
      have = true;
    } else if ((common.matrix() - reduced.matrix()).cwiseAbs().maxCoeff() >
               1e-9) {
      throw NonSimulableError("marginal depends on the logical input for " +
                              gate + " at step " + std::to_string(t));
    }
  }
  return common;
}

qsim::MixedState sim_marginal_blocks(int n, const std::vector<int>& s,
                                     const CodeParams& params) {
  require_numeric_level(params);
  const int block = params.block_size();
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (s.empty()) {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = 1.0;
    return qsim::MixedState(0, one);
  }
  std::map<int, std::vector<int>> per_block;
  for (int w : sorted) {
    if (w < 0 || w >= n * block) throw ValidationError("subset wire range");
    per_block[w / block].push_back(w % block);
  }
  Eigen::MatrixXcd acc(1, 1);
  acc(0, 0) = 1.0;
  for (const auto& [b, rel] : per_block) {
    qsim::MixedState piece = sim_marginal("I", 0, rel, params);
    acc = qsim::gates::kron(acc, piece.matrix());
  }
  return qsim::MixedState(static_cast<int>(sorted.size()), std::move(acc));
}

double cross_term_norm(const std::string& a, const std::string& b,
                       const std::vector<int>& s, const CodeParams& params) {
  require_numeric_level(params);
  if (a.size() != b.size() || a.empty()) {
    throw ValidationError("bitstrings must be non-empty and equally long");
  }
  const int blocks = static_cast<int>(a.size());
  auto parse = [blocks](const std::string& str) {
    std::uint64_t v = 0;
    for (char c : str) {
      if (c != '0' && c != '1') throw ValidationError("bitstring digits");
      v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return qsim::PureState::basis(blocks, v);
  };
  qsim::PureState ea = encode_state(parse(a), params);
  qsim::PureState eb = encode_state(parse(b), params);
  Eigen::MatrixXcd m = qsim::cross_marginal(ea, eb, s);
  return m.cwiseAbs().maxCoeff();
}

}  // namespace qzk::steane
