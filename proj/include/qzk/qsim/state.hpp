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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qzk/common.hpp"

namespace qzk::qsim {

/// Named, contiguous qubit ranges laid out over one state.
///
/// Ranges are allocated in call order and tile the qubit indices without
/// gaps, so the map is a bijection onto {0, ..., num_qubits-1}.
class RegisterMap {
 public:
  struct Range {
    int start = 0;
    int width = 0;
    int end() const { return start + width; }
  };

  /// Appends a register of `width` qubits and returns its range.
  Range add(const std::string& name, int width);

  /// Looks up a register by name; throws ValidationError if absent.
  Range range(const std::string& name) const;

  bool contains(const std::string& name) const;

  /// Qubit indices of a register, in ascending order.
  std::vector<int> qubits(const std::string& name) const;

  /// Total number of qubits allocated so far.
  int total() const { return total_; }

  const std::vector<std::pair<std::string, Range>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, Range>> entries_;
  int total_ = 0;
};

/// Dense state vector over `num_qubits` qubits.
///
/// Qubit 0 is the MOST significant bit of the basis label: for a basis index
/// g, the bit of qubit q is (g >> (num_qubits-1-q)) & 1.  Amplitudes are
/// stored in basis-label order.  Value semantics throughout: operations
/// return new states and never mutate their inputs unless named `_inplace`.
class PureState {
 public:
  /// |0...0> on n qubits.
  explicit PureState(int n);

  /// State with explicit amplitudes (size must be 2^n).
  PureState(int n, CVec amplitudes);

  /// Computational basis state |index> on n qubits.
  static PureState basis(int n, std::uint64_t index);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }

  const CVec& amplitudes() const { return amp_; }
  CVec& amplitudes() { return amp_; }

  Complex amplitude(std::uint64_t g) const { return amp_[g]; }

  double norm() const;
  void normalize();

  /// Bit of qubit q in basis label g (qubit 0 = most significant).
  bool bit(std::uint64_t g, int q) const {
    return (g >> (n_ - 1 - q)) & 1ULL;
  }

  /// Optional named-register labels for this state.
  std::optional<RegisterMap> labels;

 private:
  int n_;
  CVec amp_;
};

/// Dense density matrix over `num_qubits` qubits; same bit convention as
/// PureState.  Row/column basis labels use qubit 0 as the most significant
/// bit.
class MixedState {
 public:
  /// |0...0><0...0| on n qubits.
  explicit MixedState(int n);

  MixedState(int n, Eigen::MatrixXcd rho);

  static MixedState from_pure(const PureState& psi);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& matrix() { return rho_; }

  double trace_real() const { return rho_.trace().real(); }

  std::optional<RegisterMap> labels;

 private:
  int n_;
  Eigen::MatrixXcd rho_;
};

Complex inner_product(const PureState& a, const PureState& b);

}  // namespace qzk::qsim
