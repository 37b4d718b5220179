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

#include "qzk/qsim/gates.hpp"

#include <cmath>

namespace qzk::qsim::gates {

namespace {
const Complex kI{0.0, 1.0};
}

Eigen::MatrixXcd I(int dim) { return Eigen::MatrixXcd::Identity(dim, dim); }

Eigen::MatrixXcd X() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Eigen::MatrixXcd Y() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::MatrixXcd Z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Eigen::MatrixXcd H() {
  Eigen::MatrixXcd m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::MatrixXcd P() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

Eigen::MatrixXcd Pdg() { return P().adjoint(); }

Eigen::MatrixXcd T() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, std::exp(kI * (M_PI / 4.0));
  return m;
}

Eigen::MatrixXcd Tdg() { return T().adjoint(); }

Eigen::MatrixXcd CNOT() { return controlled(X()); }

Eigen::MatrixXcd CZ() { return controlled(Z()); }

Eigen::MatrixXcd SWAP() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Eigen::MatrixXcd controlled(const Eigen::MatrixXcd& u) {
  const Eigen::Index d = u.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = Eigen::MatrixXcd::Identity(d, d);
  m.bottomRightCorner(d, d) = u;
  return m;
}

Eigen::MatrixXcd by_name(const std::string& name) {
  if (name == "I") return I();
  if (name == "X") return X();
  if (name == "Y") return Y();
  if (name == "Z") return Z();
  if (name == "H") return H();
  if (name == "P") return P();
  if (name == "Pdg") return Pdg();
  if (name == "T") return T();
  if (name == "Tdg") return Tdg();
  if (name == "CNOT") return CNOT();
  if (name == "CZ") return CZ();
  if (name == "SWAP") return SWAP();
  throw ValidationError("unknown gate name: " + name);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd basis_projector(int dim, int index) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(index, index) = 1.0;
  return m;
}

Eigen::VectorXcd bell_state(int which) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0:  // Phi+
      v(0) = s;
      v(3) = s;
      break;
    case 1:  // Phi-
      v(0) = s;
      v(3) = -s;
      break;
    case 2:  // Psi+
      v(1) = s;
      v(2) = s;
      break;
    case 3:  // Psi-
      v(1) = s;
      v(2) = -s;
      break;
    default:
      throw ValidationError("bell_state index must be 0..3");
  }
  return v;
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Eigen::MatrixXcd d = u.adjoint() * u -
                       Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qzk::qsim::gates
