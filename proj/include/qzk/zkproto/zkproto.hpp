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

#ifndef QZK_ZKPROTO_ZKPROTO_HPP_
#define QZK_ZKPROTO_ZKPROTO_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qzk/haar/haar.hpp"
#include "qzk/merkle/merkle.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::zkproto {

/// One adaptive round of an interactive local verifier: measure the POVM on
/// the witness qubits listed in `subset`.  `subset[0]` is the most
/// significant qubit of the POVM matrices.
struct RoundQuery {
  std::vector<int> subset;                   // 0-based witness qubit indices
  std::vector<Eigen::MatrixXcd> povm;        // one PSD effect per outcome
};

/// An adaptive multi-round local verifier.  The verifier draws a uniform
/// dummy outcome tau_0, then runs `rounds` measurement rounds; `plan` maps
/// the outcome prefix (tau_0, ..., tau_{i-1}) to round i's query, and
/// `decision` accepts or rejects the full outcome string (tau_0 first).
/// Round subsets must stay pairwise disjoint along every outcome path and
/// contain at most `query_budget` qubits each.
struct SimVerifierSpec {
  int witness_qubits = 0;    // N: qubits of the claimed witness
  int outcome_alphabet = 0;  // number of POVM outcomes per round
  int rounds = 0;            // measurement rounds after the commitment
  int query_budget = 0;      // max |subset| per round
  std::function<RoundQuery(const std::vector<int>&)> plan;
  std::function<bool(const std::vector<int>&)> decision;
  std::optional<qsim::PureState> honest_witness;
};

enum class Direction { prover_to_verifier, verifier_to_prover };

/// One protocol message: either classical bits or a list of tree registers.
struct Message {
  Direction direction = Direction::prover_to_verifier;
  int classical_bits = 0;      // nonzero only for verifier outcome messages
  std::vector<int> registers;  // node labels handed over (ascending)
  int qubits = 0;              // registers.size() * b
};

struct Transcript {
  std::vector<Message> messages;
  int qubits_sent = 0;
  int bits_sent = 0;
  std::uint64_t oracle_queries_prover = 0;
  std::uint64_t oracle_queries_verifier = 0;
  std::uint64_t oracle_seed = 0;
};

/// Optional malicious hook for the exact runner: called right before the
/// prover hands over round `round`'s registers (`outgoing` node labels); may
/// mutate the joint state on prover-owned wires.
using TamperHook =
    std::function<void(int round, qsim::PureState& state,
                       const merkle::CommitmentRegisters& regs,
                       const std::vector<int>& outgoing)>;

struct ExactRunResult {
  double acceptance = 0.0;
  Transcript transcript;
};

/// Runs the commit-then-open protocol with an honest prover holding `sigma`,
/// enumerating every verifier measurement branch (syndrome and POVM alike)
/// for the fixed oracle.  Returns the exact acceptance probability and the
/// transcript of the largest-communication branch (all branches coincide for
/// non-adaptive plans).  Syndrome failures reject immediately; they carry
/// probability zero when the prover is honest.
ExactRunResult run_protocol_exact(const SimVerifierSpec& spec,
                                  const qsim::PureState& sigma,
                                  haar::OracleHandle& oracle,
                                  const TamperHook& tamper = {});

/// Direct density-matrix evaluation of the verifier on sigma, with no
/// commitment layer: the reference point for protocol faithfulness.
double evaluate_verifier(const SimVerifierSpec& spec,
                         const qsim::PureState& sigma);

/// A pluggable prover for sampled runs.  `commit` produces the full
/// committed tree (the first message hands register 1 and its children to
/// the verifier).  `respond`, if set, is called before each round's second
/// turn with the registers the verifier expects; it may mutate the joint
/// state on prover-owned wires and returns the node labels it actually
/// sends.  Returning anything other than the expected set aborts the run
/// and the verifier rejects.  The expected set is public information (it is
/// determined by the shared query plan and the outcome prefix), so passing
/// it to the prover grants no extra power.
struct ProverStrategy {
  std::function<merkle::CommitmentRegisters(haar::OracleHandle&)> commit;
  std::function<std::vector<int>(
      int round, int tau_prev, qsim::PureState& state,
      const merkle::CommitmentRegisters& regs,
      const std::vector<int>& requested, haar::OracleHandle& oracle)>
      respond;
};

/// Honest prover: commits to sigma and echoes every requested register.
ProverStrategy honest_prover(const qsim::PureState& sigma);

/// Prover that commits fresh |0> registers without querying the oracle.
ProverStrategy empty_prover(int n_leaves);

struct SampledRunResult {
  bool accepted = false;
  bool aborted = false;  // protocol-shape violation by the prover
  Transcript transcript;
};

/// One sampled protocol run: syndrome and POVM outcomes are drawn with
/// `rng`, and the prover's oracle queries are metered separately from the
/// verifier's.
SampledRunResult run_protocol_sampled(const SimVerifierSpec& spec,
                                      const ProverStrategy& prover,
                                      haar::OracleHandle& oracle,
                                      std::mt19937_64& rng);

struct CommParams {
  int k = 0;       // per-round query budget
  int ell_L = 0;   // rounds
  int n = 0;       // leaf count of the tree
  int lambda = 0;  // oracle width (3b)
};

struct CommCost {
  int qubits = 0;
  int bits = 0;
  double bound = 0.0;  // lambda * (1 + ell_L * k * 2 * (log2(n) + 1))
  bool within_bound = false;
};

/// Totals a transcript against the explicit communication bound: a leaf path
/// has at most log2(n)+1 nodes, each contributing itself and at most one
/// sibling pair, so each opened qubit costs at most 2*(log2(n)+1) registers
/// of b = lambda/3 qubits; the leading lambda covers the first message.
CommCost comm_cost(const Transcript& transcript, const CommParams& params);

/// Two-round Bell fixture: four witness qubits holding two Bell pairs,
/// round i measures pair i in the Bell basis, accept iff both outcomes are
/// Phi+.  The honest witness passes with probability one.
SimVerifierSpec toy_bell_spec();
qsim::PureState toy_bell_witness();

/// JSON export (schema "qzk-transcript/1"): messages, totals, bound check.
std::string transcript_json(const Transcript& transcript,
                            const CommCost& cost);

}  // namespace qzk::zkproto

#endif  // QZK_ZKPROTO_ZKPROTO_HPP_
