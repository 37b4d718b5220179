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
#include <random>
#include <vector>

#include "qzk/qsim/state.hpp"

namespace qzk::qsim {

/// A unitary applied to an ordered list of target qubits, optionally
/// conditioned on classical-basis values of control qubits.
///
/// `targets[0]` is the most significant bit of the gate's local basis label,
/// matching the global convention that lower qubit indices are more
/// significant.  When `controls` is non-empty the gate acts only on basis
/// states whose control bits equal `control_pattern`; bit c of the pattern
/// (LSB first) corresponds to controls[c].
struct GateOp {
  Eigen::MatrixXcd matrix;
  std::vector<int> targets;
  std::vector<int> controls;
  std::uint64_t control_pattern = 0;

  GateOp() = default;
  GateOp(Eigen::MatrixXcd m, std::vector<int> t)
      : matrix(std::move(m)), targets(std::move(t)) {}
  GateOp(Eigen::MatrixXcd m, std::vector<int> t, std::vector<int> c,
         std::uint64_t pattern)
      : matrix(std::move(m)),
        targets(std::move(t)),
        controls(std::move(c)),
        control_pattern(pattern) {}

  GateOp adjoint() const;
};

/// Returns U|psi> (or the controlled version).  Throws ValidationError if the
/// matrix is not unitary on its block or wires are out of range/duplicated.
PureState apply_gate(const PureState& psi, const GateOp& g);

/// Returns U rho U^dag.
MixedState apply_gate(const MixedState& rho, const GateOp& g);

/// In-place variants used by inner loops.
void apply_gate_inplace(PureState& psi, const GateOp& g);
void apply_gate_inplace(CVec& amp, int n, const GateOp& g);

/// Applies a (not necessarily unitary) linear block to the target qubits.
/// Used for effect operators and Hamiltonian pieces; no unitarity check.
void apply_linear_inplace(CVec& amp, int n, const Eigen::MatrixXcd& block,
                          const std::vector<int>& targets);

/// <psi| Op |psi> for a Hermitian operator block on `targets`.
double expectation(const PureState& psi, const Eigen::MatrixXcd& block,
                   const std::vector<int>& targets);

/// Reduced density matrix of a pure state on `keep` (ascending qubit
/// indices); the output qubit order follows `keep`.
MixedState reduced_density(const PureState& psi, const std::vector<int>& keep);

// Entrywise partial trace of the rank-one operator |u><v| onto `keep`
// (generally not Hermitian, so the result is a plain matrix).
Eigen::MatrixXcd cross_marginal(const PureState& u, const PureState& v,
                                const std::vector<int>& keep);

/// Partial trace of a density matrix onto `keep` (ascending); qubit order
/// preserved.
MixedState partial_trace(const MixedState& rho, const std::vector<int>& keep);

/// Entry-wise partial trace of an arbitrary (not necessarily Hermitian)
/// operator onto `keep`.  Same summation as partial_trace but without the
/// density-matrix interpretation.
Eigen::MatrixXcd partial_trace_operator(const Eigen::MatrixXcd& op, int n,
                                        const std::vector<int>& keep);

/// Trace distance (1/2)||a - b||_1 in [0, 1].
double trace_distance(const MixedState& a, const MixedState& b);
double trace_distance(const PureState& a, const PureState& b);

/// One measurement branch of a POVM.
struct MeasureBranch {
  int outcome = 0;
  double probability = 0.0;
  PureState post;
};

/// Measures the POVM given by `effects` (positive operators on `targets`
/// summing to the identity) and returns every branch with its Born
/// probability and Lueders post-state sqrt(E)|psi>/||.||.  Branches with
/// probability below `prob_floor` are dropped (their post-state is not
/// defined numerically).
std::vector<MeasureBranch> measure_branches(
    const PureState& psi, const std::vector<int>& targets,
    const std::vector<Eigen::MatrixXcd>& effects, double prob_floor = 1e-14);

/// Samples one branch using `rng`; returns {outcome, probability, post}.
MeasureBranch measure(const PureState& psi, const std::vector<int>& targets,
                      const std::vector<Eigen::MatrixXcd>& effects,
                      std::mt19937_64& rng);

/// Computational-basis measurement of `targets`.  Outcome bits are ordered
/// with targets[0] as the most significant bit.
std::vector<MeasureBranch> measure_computational_branches(
    const PureState& psi, const std::vector<int>& targets,
    double prob_floor = 1e-14);
MeasureBranch measure_computational(const PureState& psi,
                                    const std::vector<int>& targets,
                                    std::mt19937_64& rng);

/// Builds |sigma> placed on `positions` of a `total`-qubit register, other
/// qubits |0>; positions[j] receives sigma's qubit j.
PureState embed_state(const PureState& sigma, int total,
                      const std::vector<int>& positions);

/// Dense matrix of a GateOp embedded on n qubits (test/oracle helper; n
/// small).
Eigen::MatrixXcd embed_matrix(int n, const GateOp& g);

}  // namespace qzk::qsim
