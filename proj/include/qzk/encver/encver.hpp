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

#ifndef QZK_ENCVER_ENCVER_HPP_
#define QZK_ENCVER_ENCVER_HPP_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qzk/clockham/clockham.hpp"
#include "qzk/common.hpp"
#include "qzk/qsat/qsat.hpp"
#include "qzk/qsim/ops.hpp"
#include "qzk/qsim/state.hpp"
#include "qzk/steane/steane.hpp"

namespace qzk::encver {

// Tunables for program synthesis. `c_test` scales the number of encoded-test
// sub-unitaries per ancilla (phase 6 holds c_test * gamma of them); larger
// values spread the test circuit across more, smaller steps.
struct BuildOptions {
  int c_test = 4;
};

// One sub-unitary of the compiled verifier: an ordered gate list applied as
// a single step of the certified computation. Indexed steps (phases 5 and 6)
// act as sum_i U_i (x) |i><i| on the index register; `branch_gates[i]` holds
// the conditioned gate list with the index controls stripped, and
// `branch_support[i]` the state wires the branch formally acts on (kept even
// when the gates degenerate to identity at kappa = 0).
struct SubStep {
  int phase = 0;           // 1..7
  int index_in_phase = 0;  // 1-based j within the phase
  std::vector<qsim::GateOp> gates;  // executable form (index controls folded)
  bool indexed = false;
  std::vector<std::vector<qsim::GateOp>> branch_gates;
  std::vector<std::vector<int>> branch_support;
};

struct PhaseInfo {
  int phase = 0;
  std::string name;
  int length = 0;
  int first_step = 0;  // 1-based position of the phase's first sub-unitary
};

// The compiled encoded verifier: register layout, the seven-phase step list,
// and the instance/code parameters it was built from. Wires are state-local
// (0 .. state_qubits-1) in layout order; the witness registers come first.
struct EncodedVerifierProgram {
  qsat::QsatInstance instance;
  steane::CodeParams code;
  int c_test = 4;
  int block = 1;  // physical qubits per logical wire (7^kappa)

  qsim::RegisterMap layout;  // Edata, Eotp, Echk, Eidx, Emidx, Emagic, Eanc
  int state_qubits = 0;
  int witness_qubits = 0;  // Edata + Eotp
  int index_width = 0;     // log2(m) logical index wires

  std::vector<PhaseInfo> phases;
  std::vector<SubStep> steps;

  int step_count() const { return static_cast<int>(steps.size()); }

  // First physical wire of logical wire `w` in a block-structured register.
  int register_wire(const std::string& name, int logical_wire) const;
  std::vector<int> index_wires() const;  // all Eidx physical wires
  int decision_wire() const;             // Eanc(1)
};

// Maximizing witness of the instance value (the canonical honest witness).
qsim::PureState canonical_witness(const qsat::QsatInstance& inst);

// Builds the seven-phase program. Requires m to be a power of two (pad the
// instance first) and every check to use at most gamma T gates.
EncodedVerifierProgram build_program(const qsat::QsatInstance& inst,
                                     const steane::CodeParams& params,
                                     const BuildOptions& options = {});

// Enc(|a,b> (x) X^a Z^b |phi>) laid out as Edata then Eotp. Vectors a and b
// each hold n bits. The uniform variant returns the 4^n-element pad
// ensemble whose average is the one-time-padded witness.
qsim::PureState otp_witness(const EncodedVerifierProgram& program,
                            const qsim::PureState& phi,
                            const std::vector<int>& a,
                            const std::vector<int>& b);
std::vector<std::pair<double, qsim::PureState>> otp_witness_uniform(
    const EncodedVerifierProgram& program, const qsim::PureState& phi);

// Exact acceptance probability (decision wire 1, all check wires 0) of the
// full program run on witness (x) |0...0>. Vanilla mode only.
double run_venc(const EncodedVerifierProgram& program,
                const qsim::PureState& witness);
double run_venc(const EncodedVerifierProgram& program,
                const std::vector<std::pair<double, qsim::PureState>>& mix);

// Folds every sub-unitary into a single dense step for the history
// construction; vanilla mode only (encoded steps exceed dense-block limits).
clockham::UnitarySequence to_unitary_sequence(
    const EncodedVerifierProgram& program);

// The certified-computation Hamiltonian: propagation, clock-stabilizer and
// initialization terms from clockham, the final-decision penalty, and an
// explicit zero slot so the term count matches the 2T + B + 1 law used by
// the uniform-sampling verifier.
struct EncodedHamiltonian {
  clockham::HistoryHamiltonian ham;
  int M = 0;
  int B = 5;
  int T = 0;
  std::vector<int> indexed_terms;  // indices into ham.terms (phase 5/6 prop)

  // Program step backing a prop term, or -1 for non-prop terms.
  std::vector<int> term_step;
};

EncodedHamiltonian build_encoded_hamiltonian(
    const EncodedVerifierProgram& program);

// Coefficients of the closed-form term count M = a*k + b*gamma + c at the
// given code level and c_test.
struct MConstants {
  int a = 0;
  int b = 0;
  int c = 0;
};
MConstants m_constants(const steane::CodeParams& params, int c_test);

// Structural step / term counts without materializing dense blocks.
int structural_step_count(const qsat::QsatInstance& inst,
                          const steane::CodeParams& params,
                          const BuildOptions& options = {});
int structural_term_count(const qsat::QsatInstance& inst,
                          const steane::CodeParams& params,
                          const BuildOptions& options = {});

// Exhaustive branch calculus of the two-round adaptive verifier: for each
// term, the exact rejection probability of the measurement it prescribes
// (index-register readout first for indexed terms). The overall rejection
// probability is the per-term average.
struct VerifyBreakdown {
  double reject_probability = 0.0;
  std::vector<double> per_term;
};
VerifyBreakdown venc_h_verify_exhaustive(
    const EncodedVerifierProgram& program, const EncodedHamiltonian& h,
    const qsim::PureState& state);

// One sampled run: uniform term choice, then the prescribed measurements.
struct VerifySample {
  bool accept = true;
  int term_index = -1;    // tau_0, 0-based into ham.terms
  int measured_index = -1;  // index-register outcome, -1 if not measured
};
VerifySample venc_h_verify_sampled(const EncodedVerifierProgram& program,
                                   const EncodedHamiltonian& h,
                                   const qsim::PureState& state,
                                   std::mt19937_64& rng);

// The support the view simulator reports on: supp(J) for plain terms,
// supp(J_branch) plus the index register for indexed terms. Global wires
// (clock first, then state).
std::vector<int> view_support(const EncodedVerifierProgram& program,
                              const EncodedHamiltonian& h, int term_index,
                              int branch = -1);

// The honest history state's reduced density matrix on a term's support,
// computed without the witness: ensemble bookkeeping over the one-time pad
// and, where the construction is not witness-independent, the canonical
// maximizing witness of the public instance. case_label records which phase
// regime the term falls in (1 unentangled, 2 check, 3 encoded test,
// 4 decode); alpha is the decode-phase approximation bound 1 - val.
struct TermView {
  Eigen::MatrixXcd view;
  std::vector<int> support;
  int case_label = 1;
  double alpha = 0.0;
};
TermView simulate_term_view(const EncodedVerifierProgram& program,
                            const EncodedHamiltonian& h, int term_index,
                            int branch = -1);

// Two-round query bookkeeping and promise-gap accounting for the wrapped
// uniform-term verifier.
struct QueryRounds {
  std::vector<int> round1;
  std::vector<int> round2;
};
struct SimQmaReduction {
  EncodedVerifierProgram program;
  EncodedHamiltonian ham;
  int M = 0;
  double value = 0.0;       // val of the padded instance
  double alpha_bar = 0.0;   // 1 - val upper bound on lambda_min
  double beta_bar = 0.0;    // measured lambda_min
  double completeness = 0.0;  // 1 - alpha_bar / M
  double soundness = 0.0;     // 1 - beta_bar / M
  std::vector<QueryRounds> queries;  // per term
};
SimQmaReduction reduce_localqma(qsat::QsatInstance inst,
                                const steane::CodeParams& params,
                                const BuildOptions& options = {});

// JSON summaries (phase table / term table, M, locality histogram).
std::string program_summary_json(const EncodedVerifierProgram& program);
std::string hamiltonian_summary_json(const EncodedHamiltonian& h);

}  // namespace qzk::encver

#endif  // QZK_ENCVER_ENCVER_HPP_
