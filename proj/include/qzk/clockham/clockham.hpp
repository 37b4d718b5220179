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

#ifndef QZK_CLOCKHAM_CLOCKHAM_HPP_
#define QZK_CLOCKHAM_CLOCKHAM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qzk/common.hpp"
#include "qzk/qsim/ops.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::clockham {

// An ordered gate list whose product is the computation to certify, plus the
// witness/ancilla split of the state register and a partition of the
// ancillas used for the initialization terms. Step supports are relative to
// the state register (witness wires first, then ancillas); control lists
// must be folded into the blocks.
struct UnitarySequence {
  std::vector<qsim::GateOp> steps;
  int n1 = 0;  // witness qubits
  int n2 = 0;  // ancilla qubits
  std::vector<std::vector<int>> partition;  // B disjoint sets covering [n2)
};

// One Hamiltonian term. Dense terms carry a local block on `support`
// (most-significant-first). Diagonal terms are the product of an anchor
// pattern projector and, optionally, (identity minus a veto pattern
// projector); both evaluate matrix-free on any register size.
struct HamTerm {
  std::string kind;  // prop | stab | in | out | check
  int index = 0;     // step t for prop/stab, partition i for in
  std::vector<int> support;

  bool is_dense = false;
  Eigen::MatrixXcd dense;

  bool is_diagonal = false;
  std::vector<int> anchor_wires;
  std::uint64_t anchor_pattern = 0;
  bool has_veto = false;
  std::vector<int> veto_wires;
  std::uint64_t veto_pattern = 0;

  bool is_zero = false;  // explicit zero slot

  // Diagonal entry (0 or 1) at global basis label g of an n-qubit register.
  double diagonal_entry(std::uint64_t g, int n) const;
};

struct HistoryHamiltonian {
  int clock_width = 0;  // T
  int n1 = 0;
  int n2 = 0;
  std::vector<HamTerm> terms;

  int total_qubits() const { return clock_width + n1 + n2; }
};

// The clock basis state with t ones followed by T-t zeros.
qsim::PureState unary_clock(int t, int T);

// Wires of the full register: clock first, then witness, then ancilla.
int clock_wire(const HistoryHamiltonian& h, int slot);        // slot in [1,T]
int state_wire(const HistoryHamiltonian& h, int state_index); // in [0,n1+n2)

void validate_sequence(const UnitarySequence& seq);

// Emits the T propagation + (T-1) clock-stabilizer + B initialization terms.
HistoryHamiltonian build_history_hamiltonian(const UnitarySequence& seq);

// (1/sqrt(T+1)) sum_t |unary(t)> (x) U_[1,t] (phi (x) |0...0>).
qsim::PureState history_state(const UnitarySequence& seq,
                              const qsim::PureState& phi);

double term_energy(const HamTerm& term, const qsim::PureState& psi);
double energy(const HistoryHamiltonian& h, const qsim::PureState& psi);

// Applies the summed operator matrix-free (for the eigensolver).
void apply_hamiltonian(const HistoryHamiltonian& h, const CVec& in, CVec& out);

// Least trace distance from psi to any history state of the sequence,
// sqrt(1 - |W^dag psi|^2) for the history isometry W.
double history_subspace_distance(const UnitarySequence& seq,
                                 const qsim::PureState& psi);

struct MinEigenResult {
  double value = 0.0;
  qsim::PureState vector;
  double residual = 0.0;
};

// Smallest eigenvalue and eigenvector of the summed term list. A good
// warm-start vector (for example a candidate low-energy state) can cut the
// Krylov iteration count substantially.
MinEigenResult min_eigenvalue(const HistoryHamiltonian& h, double tol = 1e-9,
                              const qsim::PureState* warm_start = nullptr);

}  // namespace qzk::clockham

#endif  // QZK_CLOCKHAM_CLOCKHAM_HPP_
