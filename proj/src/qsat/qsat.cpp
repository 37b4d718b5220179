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

#include "qzk/qsat/qsat.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <json.hpp>

#include "qzk/linalg/lanczos.hpp"
#include "qzk/qsim/gates.hpp"
#include "qzk/qsim/ops.hpp"

namespace qzk::qsat {

namespace {

using nlohmann::json;

bool known_gate(const std::string& name) {
  return name == "CNOT" || name == "P" || name == "H" || name == "T";
}

int gate_arity(const std::string& name) { return name == "CNOT" ? 2 : 1; }

void validate_circuit(const Circuit& c, int k, int gamma) {
  const int width = k + gamma;
  for (const Gate& g : c) {
    if (!known_gate(g.name)) {
      throw ValidationError("gate outside the CNOT/P/H/T set: " + g.name);
    }
    if (static_cast<int>(g.wires.size()) != gate_arity(g.name)) {
      throw ValidationError("wrong wire count for gate " + g.name);
    }
    std::set<int> seen;
    for (int w : g.wires) {
      if (w < 0) throw ValidationError("negative circuit wire");
      if (w >= width) {
        throw ValidationError("circuit wire exceeds the ancilla budget");
      }
      if (!seen.insert(w).second) {
        throw ValidationError("repeated wire within one gate");
      }
    }
  }
}

}  // namespace

Circuit always_accept_circuit(int k) {
  // H P P H on the output wire equals a bit flip, so |0> -> |1> always.
  const int out = k;
  return Circuit{{"H", {out}}, {"P", {out}}, {"P", {out}}, {"H", {out}}};
}

void validate_instance(const QsatInstance& inst) {
  if (inst.n < 1) throw ValidationError("instance needs at least one qubit");
  if (inst.m < 1) throw ValidationError("instance needs at least one check");
  if (inst.k < 1 || inst.k > inst.n) {
    throw ValidationError("locality k must lie in [1, n]");
  }
  if (inst.gamma < 1) {
    throw ValidationError("at least one ancilla (the output wire) required");
  }
  if (static_cast<int>(inst.subsets.size()) != inst.m ||
      static_cast<int>(inst.circuits.size()) != inst.m) {
    throw ValidationError("subsets and circuits must both have m entries");
  }
  for (const auto& s : inst.subsets) {
    if (static_cast<int>(s.size()) != inst.k) {
      throw ValidationError("every subset must have exactly k qubits");
    }
    std::set<int> seen;
    for (int q : s) {
      if (q < 0 || q >= inst.n) throw ValidationError("subset qubit range");
      if (!seen.insert(q).second) {
        throw ValidationError("repeated qubit in a subset");
      }
    }
  }
  for (const auto& c : inst.circuits) validate_circuit(c, inst.k, inst.gamma);
}

QsatInstance normalized(QsatInstance inst) {
  for (auto& s : inst.subsets) {
    std::set<int> used(s.begin(), s.end());
    for (int q = 0; q < inst.n && static_cast<int>(s.size()) < inst.k; ++q) {
      if (used.insert(q).second) s.push_back(q);
    }
  }
  validate_instance(inst);
  return inst;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  if (!known_gate(g.name)) {
    throw ValidationError("gate outside the CNOT/P/H/T set: " + g.name);
  }
  return qsim::gates::by_name(g.name);
}

Eigen::MatrixXcd accept_effect(const Circuit& circuit, int k, int gamma) {
  if (k < 1 || gamma < 1) {
    throw ValidationError("checks need k >= 1 data wires and an output wire");
  }
  validate_circuit(circuit, k, gamma);
  const int width = k + gamma;
  const std::uint64_t dk = std::uint64_t{1} << k;
  const std::uint64_t dim = std::uint64_t{1} << width;
  const std::uint64_t out_bit = std::uint64_t{1} << (width - 1 - k);

  // Columns of (P_out circuit) on inputs |b> |0...0>; the effect is their
  // Gram matrix, positive semidefinite by construction.
  std::vector<CVec> cols(dk);
  for (std::uint64_t b = 0; b < dk; ++b) {
    qsim::PureState psi =
        qsim::PureState::basis(width, b << gamma);
    for (const Gate& g : circuit) {
      qsim::apply_gate_inplace(psi, qsim::GateOp{gate_matrix(g), g.wires});
    }
    CVec v = psi.amplitudes();
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      if (!(idx & out_bit)) v[idx] = Complex{0.0, 0.0};
    }
    cols[b] = std::move(v);
  }
  Eigen::MatrixXcd m(dk, dk);
  for (std::uint64_t a = 0; a < dk; ++a) {
    for (std::uint64_t b = 0; b < dk; ++b) {
      Complex acc{0.0, 0.0};
      for (std::uint64_t idx = 0; idx < dim; ++idx) {
        acc += std::conj(cols[a][idx]) * cols[b][idx];
      }
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return m;
}

double val_of_state(const QsatInstance& inst, const qsim::MixedState& sigma) {
  validate_instance(inst);
  if (sigma.num_qubits() != inst.n) {
    throw ValidationError("state size does not match the instance");
  }
  double total = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    Eigen::MatrixXcd effect = accept_effect(inst.circuits[i], inst.k,
                                            inst.gamma);
    qsim::MixedState local = qsim::partial_trace(sigma, inst.subsets[i]);
    total += (effect * local.matrix()).trace().real();
  }
  return total / inst.m;
}

double val_of_state(const QsatInstance& inst, const qsim::PureState& sigma) {
  validate_instance(inst);
  if (sigma.num_qubits() != inst.n) {
    throw ValidationError("state size does not match the instance");
  }
  double total = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    Eigen::MatrixXcd effect = accept_effect(inst.circuits[i], inst.k,
                                            inst.gamma);
    total += qsim::expectation(sigma, effect, inst.subsets[i]);
  }
  return total / inst.m;
}

double val_max(const QsatInstance& inst, qsim::PureState* maximizer) {
  validate_instance(inst);
  if (inst.n > kMaxValQubits) {
    throw CapacityError("exact value limited to 12 witness qubits");
  }
  std::vector<Eigen::MatrixXcd> effects;
  effects.reserve(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    effects.push_back(accept_effect(inst.circuits[i], inst.k, inst.gamma));
  }
  const std::uint64_t dim = std::uint64_t{1} << inst.n;
  const int n = inst.n;
  const int m = inst.m;
  linalg::MatVec apply = [&](const CVec& in, CVec& out) {
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    CVec scratch(in.size());
    for (int i = 0; i < m; ++i) {
      scratch = in;
      qsim::apply_linear_inplace(scratch, n, effects[i], inst.subsets[i]);
      for (std::size_t g = 0; g < out.size(); ++g) {
        out[g] += scratch[g] / static_cast<double>(m);
      }
    }
  };
  linalg::LanczosOptions opts;
  opts.largest = true;
  linalg::LanczosResult res = linalg::extremal_eigenpair(dim, apply, opts);
  if (!res.converged) {
    throw Error("value eigensolve did not converge; residual " +
                std::to_string(res.residual));
  }
  if (maximizer != nullptr) {
    *maximizer = qsim::PureState(inst.n, res.eigenvector);
    maximizer->normalize();
  }
  return res.eigenvalue;
}

QsatInstance pad_to_power_of_two(QsatInstance inst) {
  validate_instance(inst);
  const auto m = static_cast<std::uint64_t>(inst.m);
  std::uint64_t target = std::bit_ceil(m);
  for (std::uint64_t i = m; i < target; ++i) {
    std::vector<int> subset;
    for (int q = 0; q < inst.k; ++q) subset.push_back(q);
    inst.subsets.push_back(std::move(subset));
    inst.circuits.push_back(always_accept_circuit(inst.k));
  }
  inst.m = static_cast<int>(target);
  return inst;
}

std::string to_json_string(const QsatInstance& inst) {
  json j;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["k"] = inst.k;
  j["gamma"] = inst.gamma;
  j["subsets"] = inst.subsets;
  json circuits = json::array();
  for (const auto& c : inst.circuits) {
    json gates = json::array();
    for (const auto& g : c) {
      gates.push_back({{"gate", g.name}, {"wires", g.wires}});
    }
    circuits.push_back(std::move(gates));
  }
  j["circuits"] = std::move(circuits);
  return j.dump(2);
}

QsatInstance from_json_string(const std::string& text) {
  json j = json::parse(text);
  QsatInstance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.k = j.at("k").get<int>();
  inst.gamma = j.at("gamma").get<int>();
  inst.subsets = j.at("subsets").get<std::vector<std::vector<int>>>();
  for (const auto& c : j.at("circuits")) {
    Circuit circuit;
    for (const auto& g : c) {
      circuit.push_back(Gate{g.at("gate").get<std::string>(),
                             g.at("wires").get<std::vector<int>>()});
    }
    inst.circuits.push_back(std::move(circuit));
  }
  validate_instance(inst);
  return inst;
}

}  // namespace qzk::qsat
