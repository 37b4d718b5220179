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

#ifndef QZK_STEANE_STEANE_HPP_
#define QZK_STEANE_STEANE_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qzk/common.hpp"
#include "qzk/qsim/ops.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::steane {

// Concatenated [[7,1,3]] code parameters. Level 0 is the identity code
// (one physical qubit per logical qubit); every level multiplies the block
// size by 7 and the distance by 3. Numeric paths support kappa <= 1.
struct CodeParams {
  int kappa = 0;
  int s_max_static = 0;   // largest per-block subset for resting marginals
  int s_max_midgate = 0;  // largest per-block subset during a gate sequence

  int block_size() const;  // 7^kappa
  int distance() const;    // 3^kappa
};

CodeParams make_code_params(int kappa);

// A flat physical gate list. `correction_index`, when >= 0, marks the point
// where a measurement-conditioned transversal Clifford fix-up happens (the
// level-1 T gate); everything else is plain unitary steps.
struct GateSequence {
  std::vector<qsim::GateOp> gates;
  int wires = 0;            // total wires the sequence addresses
  int magic_arity = 0;      // logical magic qubits consumed (T: 1)
  int correction_index = -1;
};

// Structural sequence lengths per concatenation level (no gates emitted).
struct SequenceLengths {
  long long enc = 0;
  long long dec = 0;
  long long chk = 0;
  long long transversal_1q = 0;  // H / P at this level
  long long transversal_cnot = 0;
  long long t_gate = 0;
};
SequenceLengths sequence_lengths(int kappa);

// Encode: block wires [0, N); the logical input sits on wire 0, the other
// N-1 wires must be |0>. Decode is the reversed adjoint sequence.
GateSequence encoding_sequence(const CodeParams& params);
GateSequence decoding_sequence(const CodeParams& params);

// Syndrome extraction onto N-1 fresh wires [N, 2N-1): first the three
// bit-parity checks, then the three phase-parity checks.
GateSequence syndrome_sequence(const CodeParams& params);

// Transversal logical gate. Register layout: data blocks first (CNOT:
// control block then target block), then one magic block for T.
GateSequence transversal_sequence(const std::string& gate,
                                  const CodeParams& params);

// Encodes an arbitrary logical state: data wire per block carries the
// logical amplitude, then the encoder runs on each block.
qsim::PureState encode_state(const qsim::PureState& logical,
                             const CodeParams& params);

// The magic state T|+> encoded at the given level.
qsim::PureState encoded_magic_state(const CodeParams& params);

// Runs the level-1 T sequence including the flagged measurement correction;
// returns one branch per logical measurement outcome.
std::vector<qsim::MeasureBranch> run_t_with_correction(
    const qsim::PureState& input, const CodeParams& params);

// sigma-independent marginal of (first t gates of G's sequence) applied to
// Enc(sigma (x) magic), reduced to the physical wires S. Verified over a
// spanning set of logical inputs; throws NonSimulableError if the spanning
// marginals disagree.
qsim::MixedState sim_marginal(const std::string& gate, int t,
                              const std::vector<int>& s,
                              const CodeParams& params);

// Static codeword marginal over n blocks: tensor of per-block marginals;
// S holds global physical indices (sorted internally).
qsim::MixedState sim_marginal_blocks(int n, const std::vector<int>& s,
                                     const CodeParams& params);

// Max entry magnitude of the entrywise partial trace of Enc(|a><b|) on S.
double cross_term_norm(const std::string& a, const std::string& b,
                       const std::vector<int>& s, const CodeParams& params);

}  // namespace qzk::steane

#endif  // QZK_STEANE_STEANE_HPP_
