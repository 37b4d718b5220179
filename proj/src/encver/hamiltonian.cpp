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
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <json.hpp>

#include "qzk/encver/encver.hpp"
#include "qzk/qsim/gates.hpp"

namespace qzk::encver {

namespace {

namespace gates = qsim::gates;

// Dense block of a branch's gate list over `wires` (ascending).
Eigen::MatrixXcd branch_unitary(const std::vector<qsim::GateOp>& branch,
                                const std::vector<int>& wires) {
  const int w = static_cast<int>(wires.size());
  const auto dim = std::uint64_t{1} << w;
  std::map<int, int> pos;
  for (int j = 0; j < w; ++j) pos[wires[static_cast<std::size_t>(j)]] = j;
  Eigen::MatrixXcd dense(static_cast<Eigen::Index>(dim),
                         static_cast<Eigen::Index>(dim));
  CVec col(dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
    col[c] = 1.0;
    for (const auto& g : branch) {
      qsim::GateOp local = g;
      for (auto& t : local.targets) t = pos.at(t);
      for (auto& t : local.controls) t = pos.at(t);
      qsim::apply_gate_inplace(col, w, local);
    }
    for (std::uint64_t r = 0; r < dim; ++r) {
      dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          col[r];
    }
  }
  return dense;
}

Eigen::MatrixXcd middle_prop_block(const Eigen::MatrixXcd& u) {
  // Clock wires t-2, t-1, t; active patterns 100 (time t-1) and 110 (t).
  const Eigen::Index d = 8;
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
  diag(4, 4) = 1.0;  // 100
  diag(6, 6) = 1.0;  // 110
  Eigen::MatrixXcd cross = Eigen::MatrixXcd::Zero(d, d);
  cross(6, 4) = 1.0;  // |110><100|
  const Eigen::Index du = u.rows();
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(du, du);
  return 0.5 * (gates::kron(diag, eye) - gates::kron(cross, u) -
                gates::kron(cross.adjoint().eval(), u.adjoint().eval()));
}

// The indexed term's branch effect J_i and its global support.
struct BranchTerm {
  Eigen::MatrixXcd block;
  std::vector<int> support;  // global wires, clock first
};

BranchTerm branch_term(const EncodedVerifierProgram& program,
                       const EncodedHamiltonian& h, int term_index,
                       int branch) {
  const int step_idx = h.term_step[static_cast<std::size_t>(term_index)];
  const auto& step = program.steps[static_cast<std::size_t>(step_idx)];
  const int t = step_idx + 1;
  if (t < 2 || t > h.T - 1) {
    throw ValidationError("indexed steps must sit strictly inside the clock");
  }
  std::vector<int> wires =
      step.branch_support[static_cast<std::size_t>(branch)];
  std::sort(wires.begin(), wires.end());
  Eigen::MatrixXcd u =
      branch_unitary(step.branch_gates[static_cast<std::size_t>(branch)],
                     wires);
  BranchTerm out;
  out.block = middle_prop_block(u);
  out.support = {t - 2, t - 1, t};
  for (int w : wires) out.support.push_back(h.T + w);
  return out;
}

}  // namespace

EncodedHamiltonian build_encoded_hamiltonian(
    const EncodedVerifierProgram& program) {
  EncodedHamiltonian out;
  out.T = program.step_count();
  clockham::UnitarySequence seq = to_unitary_sequence(program);
  out.ham = clockham::build_history_hamiltonian(seq);

  const int T = out.T;
  out.term_step.assign(out.ham.terms.size(), -1);
  for (int t = 0; t < T; ++t) out.term_step[static_cast<std::size_t>(t)] = t;
  for (int t = 0; t < T; ++t) {
    const auto& step = program.steps[static_cast<std::size_t>(t)];
    if (step.indexed) out.indexed_terms.push_back(t);
  }

  // Final-decision penalty: at clock time T, reject unless the decision
  // wire reads 1 and every check wire reads 0.
  clockham::HamTerm decision;
  decision.kind = "out";
  decision.index = T;
  decision.is_diagonal = true;
  decision.anchor_wires = {T - 1};
  decision.anchor_pattern = 1;
  decision.has_veto = true;
  decision.veto_wires = {T + program.decision_wire()};
  for (int w : program.layout.qubits("Echk")) {
    decision.veto_wires.push_back(T + w);
  }
  decision.veto_pattern = std::uint64_t{1}
                          << (decision.veto_wires.size() - 1);
  decision.support = decision.anchor_wires;
  decision.support.insert(decision.support.end(),
                          decision.veto_wires.begin(),
                          decision.veto_wires.end());
  out.ham.terms.push_back(std::move(decision));
  out.term_step.push_back(-1);

  // Explicit zero slot so the verifier's uniform term count follows the
  // closed-form law (the energy is unaffected).
  clockham::HamTerm zero;
  zero.kind = "check";
  zero.is_zero = true;
  out.ham.terms.push_back(std::move(zero));
  out.term_step.push_back(-1);

  out.M = static_cast<int>(out.ham.terms.size());
  if (out.M != 2 * T + out.B + 1) {
    throw Error("term count does not match the closed-form law");
  }
  return out;
}

VerifyBreakdown venc_h_verify_exhaustive(
    const EncodedVerifierProgram& program, const EncodedHamiltonian& h,
    const qsim::PureState& state) {
  if (program.code.kappa != 0) {
    throw CapacityError("branch calculus requires vanilla mode (kappa 0)");
  }
  if (state.num_qubits() != h.ham.total_qubits()) {
    throw ValidationError("state size does not match the Hamiltonian");
  }
  std::set<int> indexed(h.indexed_terms.begin(), h.indexed_terms.end());
  std::vector<int> idx_global;
  for (int w : program.index_wires()) idx_global.push_back(h.T + w);

  VerifyBreakdown out;
  out.per_term.reserve(h.ham.terms.size());
  for (int j = 0; j < h.M; ++j) {
    const auto& term = h.ham.terms[static_cast<std::size_t>(j)];
    double reject = 0.0;
    if (term.is_zero) {
      reject = 0.0;
    } else if (indexed.count(j) != 0) {
      // Round 1: read the index register; round 2: measure {J_i, I - J_i}.
      const auto branches =
          qsim::measure_computational_branches(state, idx_global);
      for (const auto& br : branches) {
        const int i = static_cast<int>(br.outcome);
        const BranchTerm bt = branch_term(program, h, j, i);
        reject += br.probability *
                  qsim::expectation(br.post, bt.block, bt.support);
      }
    } else {
      reject = clockham::term_energy(term, state);
    }
    out.per_term.push_back(reject);
    out.reject_probability += reject;
  }
  out.reject_probability /= static_cast<double>(h.M);
  return out;
}

VerifySample venc_h_verify_sampled(const EncodedVerifierProgram& program,
                                   const EncodedHamiltonian& h,
                                   const qsim::PureState& state,
                                   std::mt19937_64& rng) {
  if (program.code.kappa != 0) {
    throw CapacityError("branch calculus requires vanilla mode (kappa 0)");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VerifySample s;
  s.term_index = static_cast<int>(rng() % static_cast<std::uint64_t>(h.M));
  const auto& term = h.ham.terms[static_cast<std::size_t>(s.term_index)];
  if (term.is_zero) {
    s.accept = true;
    return s;
  }
  const bool indexed =
      std::find(h.indexed_terms.begin(), h.indexed_terms.end(),
                s.term_index) != h.indexed_terms.end();
  if (indexed) {
    std::vector<int> idx_global;
    for (int w : program.index_wires()) idx_global.push_back(h.T + w);
    const auto branches =
        qsim::measure_computational_branches(state, idx_global);
    double r = unit(rng);
    const qsim::MeasureBranch* chosen = &branches.back();
    for (const auto& br : branches) {
      if (r < br.probability) {
        chosen = &br;
        break;
      }
      r -= br.probability;
    }
    s.measured_index = static_cast<int>(chosen->outcome);
    const BranchTerm bt = branch_term(program, h, s.term_index,
                                      s.measured_index);
    const double p =
        qsim::expectation(chosen->post, bt.block, bt.support);
    s.accept = unit(rng) >= p;
    return s;
  }
  s.accept = unit(rng) >= clockham::term_energy(term, state);
  return s;
}

std::vector<int> view_support(const EncodedVerifierProgram& program,
                              const EncodedHamiltonian& h, int term_index,
                              int branch) {
  if (term_index < 0 || term_index >= h.M) {
    throw ValidationError("term index out of range");
  }
  const auto& term = h.ham.terms[static_cast<std::size_t>(term_index)];
  const bool indexed =
      std::find(h.indexed_terms.begin(), h.indexed_terms.end(),
                term_index) != h.indexed_terms.end();
  std::set<int> s;
  if (indexed) {
    if (branch < 0 || branch >= program.instance.m) {
      throw ValidationError("indexed terms need a branch in [0, m)");
    }
    const int step_idx = h.term_step[static_cast<std::size_t>(term_index)];
    const auto& step = program.steps[static_cast<std::size_t>(step_idx)];
    const int t = step_idx + 1;
    s.insert({t - 2, t - 1, t});
    for (int w : step.branch_support[static_cast<std::size_t>(branch)]) {
      s.insert(h.T + w);
    }
    for (int w : program.index_wires()) s.insert(h.T + w);
  } else {
    s.insert(term.support.begin(), term.support.end());
  }
  return std::vector<int>(s.begin(), s.end());
}

SimQmaReduction reduce_localqma(qsat::QsatInstance inst,
                                const steane::CodeParams& params,
                                const BuildOptions& options) {
  SimQmaReduction r;
  qsat::QsatInstance padded = qsat::pad_to_power_of_two(std::move(inst));
  r.program = build_program(padded, params, options);
  r.ham = build_encoded_hamiltonian(r.program);
  r.M = r.ham.M;
  r.value = qsat::val_max(r.program.instance);
  r.alpha_bar = 1.0 - r.value;
  // The honest history state of the maximizing witness is at energy
  // (1 - val)/(T + 1), a natural warm start for the ground-state solve.
  const auto seq = to_unitary_sequence(r.program);
  const auto honest = clockham::history_state(
      seq, otp_witness(r.program, canonical_witness(r.program.instance),
                       std::vector<int>(r.program.instance.n, 0),
                       std::vector<int>(r.program.instance.n, 0)));
  r.beta_bar = std::max(
      0.0, clockham::min_eigenvalue(r.ham.ham, 1e-9, &honest).value);
  r.completeness = 1.0 - r.alpha_bar / static_cast<double>(r.M);
  r.soundness = 1.0 - r.beta_bar / static_cast<double>(r.M);

  std::set<int> indexed(r.ham.indexed_terms.begin(),
                        r.ham.indexed_terms.end());
  for (int j = 0; j < r.M; ++j) {
    QueryRounds q;
    if (indexed.count(j) != 0) {
      for (int w : r.program.index_wires()) q.round1.push_back(r.ham.T + w);
      const int step_idx = r.ham.term_step[static_cast<std::size_t>(j)];
      const auto& step = r.program.steps[static_cast<std::size_t>(step_idx)];
      std::set<int> rest;
      const int t = step_idx + 1;
      rest.insert({t - 2, t - 1, t});
      for (const auto& sup : step.branch_support) {
        for (int w : sup) rest.insert(r.ham.T + w);
      }
      q.round2.assign(rest.begin(), rest.end());
    } else {
      const auto& term = r.ham.ham.terms[static_cast<std::size_t>(j)];
      q.round2.assign(term.support.begin(), term.support.end());
    }
    r.queries.push_back(std::move(q));
  }
  return r;
}

std::string hamiltonian_summary_json(const EncodedHamiltonian& h) {
  nlohmann::json j;
  j["schema"] = "qzk-encver-ham/1";
  j["M"] = h.M;
  j["B"] = h.B;
  j["T"] = h.T;
  std::map<std::string, int> kinds;
  std::map<int, int> locality;
  for (const auto& term : h.ham.terms) {
    kinds[term.kind] += 1;
    locality[static_cast<int>(term.support.size())] += 1;
  }
  j["kinds"] = kinds;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [size, count] : locality) {
    hist[std::to_string(size)] = count;
  }
  j["locality_histogram"] = hist;
  j["indexed_terms"] = h.indexed_terms;
  return j.dump(2);
}

}  // namespace qzk::encver
