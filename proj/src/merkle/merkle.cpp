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

#include <algorithm>
#include <set>

#include "qzk/merkle/merkle.hpp"
#include "qzk/qsim/ops.hpp"

namespace qzk::merkle {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_node(int u, int ell) {
  if (u < 1 || u >= 2 * ell) {
    throw ValidationError("node label out of range");
  }
}

}  // namespace

std::vector<int> TreeLayout::node_wires(int u) const {
  check_node(u, ell);
  std::vector<int> w(static_cast<std::size_t>(b));
  for (int j = 0; j < b; ++j) w[static_cast<std::size_t>(j)] = (u - 1) * b + j;
  return w;
}

std::vector<int> path_set(int u, int ell) {
  if (!is_power_of_two(ell)) {
    throw ValidationError("leaf count must be a power of two");
  }
  check_node(u, ell);
  std::vector<int> out;
  for (int v = u; v >= 1; v /= 2) out.push_back(v);
  return out;
}

std::vector<int> r_set_of(const std::vector<int>& s, int ell) {
  if (!is_power_of_two(ell)) {
    throw ValidationError("leaf count must be a power of two");
  }
  std::set<int> out;
  for (int u : s) {
    for (int v : path_set(u, ell)) {
      out.insert(v);
      if (2 * v < 2 * ell) out.insert(2 * v);
      if (2 * v + 1 < 2 * ell) out.insert(2 * v + 1);
    }
  }
  return std::vector<int>(out.begin(), out.end());
}

CommitmentRegisters commit(const qsim::PureState& sigma, int n_leaves,
                           int lambda, haar::OracleHandle& oracle) {
  if (lambda % 3 != 0 || lambda <= 0) {
    throw ValidationError("oracle width must be three qubits per register");
  }
  if (!is_power_of_two(n_leaves)) {
    throw ValidationError("leaf count must be a power of two");
  }
  if (sigma.num_qubits() != n_leaves) {
    throw ValidationError("state size must match the leaf count");
  }
  if (oracle.lambda != lambda) {
    throw ValidationError("oracle width mismatch");
  }

  CommitmentRegisters regs;
  regs.layout.ell = n_leaves;
  regs.layout.b = lambda / 3;
  const int total = regs.layout.total_qubits();
  if (total > kMaxPureQubits) {
    throw CapacityError("tree register exceeds the pure-state cap");
  }
  regs.owner.assign(static_cast<std::size_t>(2 * n_leaves), Owner::prover);

  // Scatter sigma's qubits onto position 0 of each leaf register.
  regs.state = qsim::PureState(total);
  auto& amps = regs.state.amplitudes();
  std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
  for (std::uint64_t d = 0; d < sigma.dim(); ++d) {
    const Complex a = sigma.amplitude(d);
    if (a == Complex{0.0, 0.0}) continue;
    std::uint64_t label = 0;
    for (int i = 0; i < n_leaves; ++i) {
      if (sigma.bit(d, i)) {
        const int wire = (regs.layout.leaf_label(i) - 1) * regs.layout.b;
        label |= std::uint64_t{1} << (total - 1 - wire);
      }
    }
    amps[label] = a;
  }

  for (int u = n_leaves - 1; u >= 1; --u) {
    std::vector<int> targets = regs.layout.node_wires(2 * u);
    for (int w : regs.layout.node_wires(2 * u + 1)) targets.push_back(w);
    for (int w : regs.layout.node_wires(u)) targets.push_back(w);
    haar::query_inplace(oracle, regs.state, targets);
  }
  return regs;
}

DecommitResult decommit(CommitmentRegisters& regs,
                        const std::vector<int>& s_old,
                        const std::vector<int>& s_new,
                        haar::OracleHandle& oracle, std::mt19937_64& rng) {
  const int ell = regs.layout.ell;
  for (int u : s_old) {
    check_node(u, ell);
    if (!regs.layout.is_leaf(u)) {
      throw ValidationError("opened sets must contain leaf labels");
    }
  }
  std::set<int> skip;
  for (int u : s_old) {
    for (int v : path_set(u, ell)) skip.insert(v);
  }
  std::set<int> todo;
  for (int u : s_new) {
    check_node(u, ell);
    if (!regs.layout.is_leaf(u)) {
      throw ValidationError("opened sets must contain leaf labels");
    }
    for (int v : path_set(u, ell)) {
      if (v < ell && skip.count(v) == 0) todo.insert(v);
    }
  }

  DecommitResult out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int u : todo) {  // ascending: root-downward along the new paths
    std::vector<int> targets = regs.layout.node_wires(2 * u);
    for (int w : regs.layout.node_wires(2 * u + 1)) targets.push_back(w);
    for (int w : regs.layout.node_wires(u)) targets.push_back(w);
    haar::query_inplace(oracle, regs.state, targets, /*inverse=*/true);
    out.uncomputed.push_back(u);

    const auto branches = qsim::measure_computational_branches(
        regs.state, regs.layout.node_wires(u));
    double zero_prob = 0.0;
    for (const auto& br : branches) {
      if (br.outcome == 0) zero_prob = br.probability;
    }
    out.zero_probabilities.push_back(zero_prob);

    // Sample the syndrome outcome exactly.
    double roll = unit(rng);
    const auto* picked = &branches.back();
    for (const auto& br : branches) {
      if (roll < br.probability) {
        picked = &br;
        break;
      }
      roll -= br.probability;
    }
    regs.state = picked->post;
    if (picked->outcome != 0) {
      out.ok = false;
      out.failed_node = u;
      return out;
    }
  }

  for (int u : std::set<int>(s_new.begin(), s_new.end())) {
    for (int w : regs.layout.node_wires(u)) out.opened_wires.push_back(w);
  }
  return out;
}

}  // namespace qzk::merkle
