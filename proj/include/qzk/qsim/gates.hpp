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

#pragma once

#include <Eigen/Dense>
#include <string>

#include "qzk/common.hpp"

namespace qzk::qsim::gates {

Eigen::MatrixXcd I(int dim = 2);
Eigen::MatrixXcd X();
Eigen::MatrixXcd Y();
Eigen::MatrixXcd Z();
Eigen::MatrixXcd H();
/// Phase gate diag(1, i) (often written S).
Eigen::MatrixXcd P();
Eigen::MatrixXcd Pdg();
Eigen::MatrixXcd T();
Eigen::MatrixXcd Tdg();
/// Two-qubit gates; wire 0 of the local block is the most significant bit.
Eigen::MatrixXcd CNOT();  // control = wire 0, target = wire 1
Eigen::MatrixXcd CZ();
Eigen::MatrixXcd SWAP();

/// diag-block controlled gate: |0><0| (x) I + |1><1| (x) U, control = wire 0.
Eigen::MatrixXcd controlled(const Eigen::MatrixXcd& u);

/// Named single- and two-qubit gates: "I","X","Y","Z","H","P","Pdg","T",
/// "Tdg","CNOT","CZ","SWAP".  Throws ValidationError on unknown names.
Eigen::MatrixXcd by_name(const std::string& name);

/// Kronecker product (a's wires become the most significant block).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Rank-1 projector |index><index| of the given dimension.
Eigen::MatrixXcd basis_projector(int dim, int index);

/// The four Bell states on two qubits in the order
/// Phi+ = (|00>+|11>)/sqrt2, Phi- , Psi+ = (|01>+|10>)/sqrt2, Psi-.
Eigen::VectorXcd bell_state(int which);

bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

}  // namespace qzk::qsim::gates
