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

#ifndef QZK_QSAT_QSAT_HPP_
#define QZK_QSAT_QSAT_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qzk/common.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::qsat {

// Largest witness register accepted by the exact value solver.
inline constexpr int kMaxValQubits = 12;

// One gate of a check circuit. Wires 0..k-1 address the selected data
// qubits in subset order; wires k..k+gamma-1 are ancillas, with wire k the
// output.
struct Gate {
  std::string name;        // one of CNOT, P, H, T
  std::vector<int> wires;  // CNOT: {control, target}; others: {wire}
};

using Circuit = std::vector<Gate>;

// A local-check satisfiability instance: m circuits, each reading k witness
// qubits named by its subset plus gamma fresh ancillas.
struct QsatInstance {
  int n = 0;
  int m = 0;
  int k = 0;
  int gamma = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<Circuit> circuits;
};

// The four-gate always-accept circuit (turns the output ancilla into |1>).
Circuit always_accept_circuit(int k);

// Throws ValidationError unless the instance satisfies every structural
// invariant (gate names, arities, wire ranges, subset sizes).
void validate_instance(const QsatInstance& inst);

// Pads undersized subsets with unused witness wires so that |S_i| = k.
QsatInstance normalized(QsatInstance inst);

// The 2x2 or 4x4 matrix of a named gate.
Eigen::MatrixXcd gate_matrix(const Gate& g);

// POVM effect M with Tr[M sigma] = acceptance probability of the circuit on
// data state sigma: run with ancillas at |0>, project the output onto |1>,
// then trace the ancillas out.
Eigen::MatrixXcd accept_effect(const Circuit& circuit, int k, int gamma);

// (1/m) * sum_i Tr[M_i sigma_{S_i}].
double val_of_state(const QsatInstance& inst, const qsim::MixedState& sigma);
double val_of_state(const QsatInstance& inst, const qsim::PureState& sigma);

// Exact instance value: the top eigenvalue of (1/m) * sum_i M_i embedded on
// S_i. Optionally returns the maximizing witness.
double val_max(const QsatInstance& inst,
               qsim::PureState* maximizer = nullptr);

// Appends always-accept checks until m is a power of two. The value moves
// exactly to (m'-m)/m' + (m/m')*val.
QsatInstance pad_to_power_of_two(QsatInstance inst);

// Human-editable JSON form {n, m, k, gamma, subsets, circuits}.
std::string to_json_string(const QsatInstance& inst);
QsatInstance from_json_string(const std::string& text);

}  // namespace qzk::qsat

#endif  // QZK_QSAT_QSAT_HPP_
