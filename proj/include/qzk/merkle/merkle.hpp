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

#ifndef QZK_MERKLE_MERKLE_HPP_
#define QZK_MERKLE_MERKLE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "qzk/common.hpp"
#include "qzk/haar/haar.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::merkle {

// Binary tree of b-qubit node registers over one joint state. Nodes are
// labeled 1..2*ell-1 heap-style: parent(u) = u/2, children are 2u and 2u+1,
// leaves are ell..2*ell-1. Registers are serialized node-label ascending,
// qubit position ascending.
struct TreeLayout {
  int ell = 1;  // leaf count (power of two)
  int b = 1;    // qubits per node register

  int node_count() const { return 2 * ell - 1; }
  int total_qubits() const { return node_count() * b; }
  bool is_leaf(int u) const { return u >= ell && u < 2 * ell; }
  // Leaf label holding the data qubit of index i (0-based).
  int leaf_label(int i) const { return ell + i; }
  // Wires of node u's register, ascending.
  std::vector<int> node_wires(int u) const;
};

// The label set {u, parent(u), ..., 1}, in leaf-to-root order.
std::vector<int> path_set(int u, int ell);

// Union over u in s of the path nodes plus their in-range children,
// ascending. These are exactly the registers needed to open the leaves in s.
std::vector<int> r_set_of(const std::vector<int>& s, int ell);

enum class Owner { prover, verifier };

// A committed tree: the joint register state plus per-node ownership marks
// (index 0 unused). Single-writer; protocol runs own a value exclusively.
struct CommitmentRegisters {
  TreeLayout layout;
  qsim::PureState state{1};
  std::vector<Owner> owner;
};

// Stores sigma's qubit i at position 1 of leaf ell+i, pads every other
// register qubit with |0>, then applies the oracle to (2u, 2u+1, u) for
// u = ell-1 down to 1. Uses exactly ell-1 oracle queries.
CommitmentRegisters commit(const qsim::PureState& sigma, int n_leaves,
                           int lambda, haar::OracleHandle& oracle);

struct DecommitResult {
  bool ok = true;        // false: a syndrome came out nonzero (reject)
  int failed_node = -1;  // node whose measurement failed, when !ok
  // Internal nodes uncomputed by this call, ascending (root first); the
  // call's oracle query count equals its size.
  std::vector<int> uncomputed;
  // Exact probability of the all-zero outcome at each uncomputed node,
  // conditioned on the zeros observed before it.
  std::vector<double> zero_probabilities;
  // Serialized wires of the opened leaf registers (when ok).
  std::vector<int> opened_wires;
};

// Opens the leaves in s_new given that s_old was opened by a prior call:
// walks the internal nodes of P(s_new) \ P(s_old) from the smallest label
// downward, applying the inverse oracle to (2u, 2u+1, u) and measuring node
// u; any nonzero outcome aborts with ok = false. Measurement outcomes are
// sampled exactly from the branch distribution via rng.
DecommitResult decommit(CommitmentRegisters& regs,
                        const std::vector<int>& s_old,
                        const std::vector<int>& s_new,
                        haar::OracleHandle& oracle, std::mt19937_64& rng);

}  // namespace qzk::merkle

#endif  // QZK_MERKLE_MERKLE_HPP_
