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

#include "qzk/qsim/state.hpp"

#include <cmath>

namespace qzk::qsim {

RegisterMap::Range RegisterMap::add(const std::string& name, int width) {
  if (width < 0) throw ValidationError("register width must be >= 0");
  if (contains(name)) throw ValidationError("duplicate register name: " + name);
  Range r{total_, width};
  entries_.emplace_back(name, r);
  total_ += width;
  return r;
}

RegisterMap::Range RegisterMap::range(const std::string& name) const {
  for (const auto& [n, r] : entries_) {
    if (n == name) return r;
  }
  throw ValidationError("unknown register: " + name);
}

bool RegisterMap::contains(const std::string& name) const {
  for (const auto& [n, r] : entries_) {
    (void)r;
    if (n == name) return true;
  }
  return false;
}

std::vector<int> RegisterMap::qubits(const std::string& name) const {
  Range r = range(name);
  std::vector<int> out(r.width);
  for (int i = 0; i < r.width; ++i) out[i] = r.start + i;
  return out;
}

namespace {
void check_pure_capacity(int n) {
  if (n < 1) throw ValidationError("state needs at least one qubit");
  if (n > kMaxPureQubits) {
    throw CapacityError("pure state exceeds " +
                        std::to_string(kMaxPureQubits) + " qubits");
  }
}
void check_mixed_capacity(int n) {
  // n = 0 is allowed: a scalar "state" used for empty marginals.
  if (n < 0) throw ValidationError("negative qubit count");
  if (n > kMaxMixedQubits) {
    throw CapacityError("mixed state exceeds " +
                        std::to_string(kMaxMixedQubits) + " qubits");
  }
}
}  // namespace

PureState::PureState(int n) : n_(n) {
  check_pure_capacity(n);
  amp_.assign(std::uint64_t{1} << n, Complex{0.0, 0.0});
  amp_[0] = Complex{1.0, 0.0};
}

PureState::PureState(int n, CVec amplitudes) : n_(n), amp_(std::move(amplitudes)) {
  check_pure_capacity(n);
  if (amp_.size() != (std::uint64_t{1} << n)) {
    throw ValidationError("amplitude vector size does not match qubit count");
  }
}

PureState PureState::basis(int n, std::uint64_t index) {
  PureState s(n);
  if (index >= s.dim()) throw ValidationError("basis index out of range");
  s.amp_[0] = Complex{0.0, 0.0};
  s.amp_[index] = Complex{1.0, 0.0};
  return s;
}

double PureState::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void PureState::normalize() {
  double nrm = norm();
  if (nrm <= 0.0) throw ValidationError("cannot normalize the zero vector");
  for (auto& a : amp_) a /= nrm;
}

MixedState::MixedState(int n) : n_(n) {
  check_mixed_capacity(n);
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  rho_ = Eigen::MatrixXcd::Zero(d, d);
  rho_(0, 0) = Complex{1.0, 0.0};
}

MixedState::MixedState(int n, Eigen::MatrixXcd rho) : n_(n), rho_(std::move(rho)) {
  check_mixed_capacity(n);
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  if (rho_.rows() != d || rho_.cols() != d) {
    throw ValidationError("density matrix size does not match qubit count");
  }
}

MixedState MixedState::from_pure(const PureState& psi) {
  check_mixed_capacity(psi.num_qubits());
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amplitude(i);
  MixedState out(psi.num_qubits(), v * v.adjoint());
  out.labels = psi.labels;
  return out;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("inner product of states with different sizes");
  }
  Complex s{0.0, 0.0};
  for (std::uint64_t g = 0; g < a.dim(); ++g) {
    s += std::conj(a.amplitude(g)) * b.amplitude(g);
  }
  return s;
}

}  // namespace qzk::qsim
