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

#include "qzk/zkproto/zkproto.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "qzk/qsim/ops.hpp"

namespace qzk::zkproto {

namespace {

constexpr double kBranchFloor = 1e-14;

int bits_for_alphabet(int m) {
  int bits = 0;
  while ((1 << bits) < m) ++bits;
  return bits;
}

void validate_spec(const SimVerifierSpec& spec) {
  if (spec.witness_qubits < 1) {
    throw ValidationError("verifier spec needs at least one witness qubit");
  }
  if (spec.outcome_alphabet < 1) {
    throw ValidationError("verifier outcome alphabet must be nonempty");
  }
  if (spec.rounds < 0 || spec.query_budget < 0) {
    throw ValidationError("verifier spec has negative round parameters");
  }
  if (spec.rounds > 0 && !spec.plan) {
    throw ValidationError("verifier spec with rounds needs a query plan");
  }
  if (!spec.decision) {
    throw ValidationError("verifier spec needs a decision predicate");
  }
}

// Checks one plan output: subset bounds, budget, disjointness from earlier
// rounds, and that the POVM is a well-formed resolution of the identity.
void validate_round(const RoundQuery& rq, const SimVerifierSpec& spec,
                    const std::set<int>& used) {
  if (rq.subset.empty() ||
      static_cast<int>(rq.subset.size()) > spec.query_budget) {
    throw ValidationError("round subset violates the query budget");
  }
  std::set<int> seen;
  for (int q : rq.subset) {
    if (q < 0 || q >= spec.witness_qubits) {
      throw ValidationError("round subset indexes outside the witness");
    }
    if (!seen.insert(q).second || used.count(q) != 0) {
      throw ValidationError("round subsets must be pairwise disjoint");
    }
  }
  if (static_cast<int>(rq.povm.size()) != spec.outcome_alphabet) {
    throw ValidationError("round POVM size must match the outcome alphabet");
  }
  const Eigen::Index dim = Eigen::Index{1} << rq.subset.size();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : rq.povm) {
    if (e.rows() != dim || e.cols() != dim) {
      throw ValidationError("round POVM element has the wrong dimension");
    }
    if ((e - e.adjoint()).norm() > 1e-9) {
      throw ValidationError("round POVM element is not Hermitian");
    }
    sum += e;
  }
  if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).norm() > 1e-9) {
    throw ValidationError("round POVM does not resolve the identity");
  }
}

// Wires holding the committed witness qubits named by `subset`, in subset
// order (qubit u sits at position 0 of leaf ell + u).
std::vector<int> witness_wires(const merkle::TreeLayout& layout,
                               const std::vector<int>& subset) {
  std::vector<int> wires;
  wires.reserve(subset.size());
  for (int q : subset) {
    wires.push_back((layout.leaf_label(q) - 1) * layout.b);
  }
  return wires;
}

std::set<int> path_union(const std::vector<int>& leaves, int ell) {
  std::set<int> out;
  for (int u : leaves) {
    for (int v : merkle::path_set(u, ell)) out.insert(v);
  }
  return out;
}

// Geometry of one round: opened leaves, freshly sent registers, and the
// internal nodes the verifier will uncompute.
struct RoundGeometry {
  std::vector<int> leaves;    // opened leaf labels, ascending
  std::vector<int> new_regs;  // R(W_i) \ R(Sent_{<=i-1}), ascending
  std::vector<int> todo;      // uncompute targets, ascending
};

RoundGeometry round_geometry(const std::vector<int>& subset,
                             const std::vector<int>& sent_leaves,
                             const std::set<int>& held, int ell) {
  RoundGeometry g;
  for (int q : subset) g.leaves.push_back(ell + q);
  std::sort(g.leaves.begin(), g.leaves.end());
  for (int u : merkle::r_set_of(g.leaves, ell)) {
    if (held.count(u) == 0) g.new_regs.push_back(u);
  }
  const std::set<int> skip = path_union(sent_leaves, ell);
  for (int u : path_union(g.leaves, ell)) {
    if (u <= ell - 1 && skip.count(u) == 0) g.todo.push_back(u);
  }
  return g;
}

// Asserts that every register the verifier is about to touch has been sent.
void audit_ownership(const RoundGeometry& g, const std::set<int>& held,
                     int ell) {
  for (int u : g.todo) {
    if (held.count(u) == 0 || held.count(2 * u) == 0 ||
        held.count(2 * u + 1) == 0) {
      throw ValidationError("verifier would touch an unsent register");
    }
  }
  for (int u : g.leaves) {
    if (held.count(u) == 0) {
      throw ValidationError("verifier would measure an unsent register");
    }
  }
  (void)ell;
}

Message classical_message(int bits) {
  Message m;
  m.direction = Direction::verifier_to_prover;
  m.classical_bits = bits;
  return m;
}

Message register_message(const std::vector<int>& regs, int b) {
  Message m;
  m.direction = Direction::prover_to_verifier;
  m.registers = regs;
  m.qubits = static_cast<int>(regs.size()) * b;
  return m;
}

void finish_totals(Transcript& t) {
  t.qubits_sent = 0;
  t.bits_sent = 0;
  for (const auto& m : t.messages) {
    t.qubits_sent += m.qubits;
    t.bits_sent += m.classical_bits;
  }
}

// Shared state of one exact branch enumeration.
struct ExactContext {
  const SimVerifierSpec* spec = nullptr;
  haar::OracleHandle* oracle = nullptr;
  const TamperHook* tamper = nullptr;
  const merkle::CommitmentRegisters* regs = nullptr;
  int bits_per_turn = 0;
  double accept = 0.0;
  // Transcript of the branch with the largest communication total.
  std::vector<Message> best_messages;
  int best_qubits = -1;
  std::uint64_t best_verifier_queries = 0;
};

void record_branch(ExactContext& ctx, const std::vector<Message>& messages,
                   int qubits, std::uint64_t verifier_queries) {
  if (qubits > ctx.best_qubits) {
    ctx.best_qubits = qubits;
    ctx.best_messages = messages;
    ctx.best_verifier_queries = verifier_queries;
  }
}

void exact_round(ExactContext& ctx, qsim::PureState state,
                 std::vector<int> tau, std::vector<int> sent_leaves,
                 std::set<int> held, std::vector<Message> messages,
                 int qubits, std::uint64_t verifier_queries, double weight,
                 int round) {
  const SimVerifierSpec& spec = *ctx.spec;
  if (round > spec.rounds) {
    if (spec.decision(tau)) ctx.accept += weight;
    record_branch(ctx, messages, qubits, verifier_queries);
    return;
  }
  const auto& layout = ctx.regs->layout;
  const int ell = layout.ell;

  // First turn: the verifier announces the previous outcome.
  messages.push_back(classical_message(ctx.bits_per_turn));
  const RoundQuery rq = spec.plan(tau);
  std::set<int> used;
  for (int leaf : sent_leaves) used.insert(leaf - ell);
  validate_round(rq, spec, used);

  // Second turn: the prover hands over the freshly needed registers.
  const RoundGeometry g = round_geometry(rq.subset, sent_leaves, held, ell);
  if (*ctx.tamper) {
    (*ctx.tamper)(round, state, *ctx.regs, g.new_regs);
  }
  for (int u : g.new_regs) held.insert(u);
  messages.push_back(register_message(g.new_regs, layout.b));
  qubits += messages.back().qubits;
  audit_ownership(g, held, ell);
  sent_leaves.insert(sent_leaves.end(), g.leaves.begin(), g.leaves.end());

  // Checking: uncompute along the fresh path pieces, branching on every
  // syndrome outcome; nonzero syndromes reject immediately.
  const std::vector<int> data = witness_wires(layout, rq.subset);
  std::function<void(std::size_t, qsim::PureState, double, std::uint64_t)>
      step = [&](std::size_t idx, qsim::PureState st, double w,
                 std::uint64_t vq) {
        if (w < kBranchFloor) return;
        if (idx == g.todo.size()) {
          for (auto& br : qsim::measure_branches(st, data, rq.povm)) {
            auto next_tau = tau;
            next_tau.push_back(br.outcome);
            exact_round(ctx, std::move(br.post), std::move(next_tau),
                        sent_leaves, held, messages, qubits, vq,
                        w * br.probability, round + 1);
          }
          return;
        }
        const int u = g.todo[idx];
        std::vector<int> targets = layout.node_wires(2 * u);
        for (int wire : layout.node_wires(2 * u + 1)) targets.push_back(wire);
        for (int wire : layout.node_wires(u)) targets.push_back(wire);
        haar::query_inplace(*ctx.oracle, st, targets, /*inverse=*/true);
        ++vq;
        for (auto& br :
             qsim::measure_computational_branches(st, layout.node_wires(u))) {
          if (br.outcome == 0) {
            step(idx + 1, std::move(br.post), w * br.probability, vq);
          } else {
            record_branch(ctx, messages, qubits, vq);
          }
        }
      };
  step(0, std::move(state), weight, verifier_queries);
}

}  // namespace

ExactRunResult run_protocol_exact(const SimVerifierSpec& spec,
                                  const qsim::PureState& sigma,
                                  haar::OracleHandle& oracle,
                                  const TamperHook& tamper) {
  validate_spec(spec);
  if (sigma.num_qubits() != spec.witness_qubits) {
    throw ValidationError("witness size must match the verifier spec");
  }

  const std::uint64_t before = oracle.query_counter;
  const auto regs =
      merkle::commit(sigma, spec.witness_qubits, oracle.lambda, oracle);
  const std::uint64_t prover_queries = oracle.query_counter - before;

  ExactContext ctx;
  ctx.spec = &spec;
  ctx.oracle = &oracle;
  ctx.tamper = &tamper;
  ctx.regs = &regs;
  ctx.bits_per_turn = bits_for_alphabet(spec.outcome_alphabet);

  const std::vector<int> first = merkle::r_set_of({1}, regs.layout.ell);
  std::set<int> held(first.begin(), first.end());
  std::vector<Message> messages{register_message(first, regs.layout.b)};
  const int qubits0 = messages.front().qubits;

  const double w0 = 1.0 / spec.outcome_alphabet;
  for (int tau0 = 0; tau0 < spec.outcome_alphabet; ++tau0) {
    exact_round(ctx, regs.state, {tau0}, {}, held, messages, qubits0, 0, w0,
                1);
  }

  ExactRunResult out;
  out.acceptance = ctx.accept;
  out.transcript.messages = std::move(ctx.best_messages);
  finish_totals(out.transcript);
  out.transcript.oracle_queries_prover = prover_queries;
  out.transcript.oracle_queries_verifier = ctx.best_verifier_queries;
  out.transcript.oracle_seed = oracle.seed;
  return out;
}

double evaluate_verifier(const SimVerifierSpec& spec,
                         const qsim::PureState& sigma) {
  validate_spec(spec);
  if (sigma.num_qubits() != spec.witness_qubits) {
    throw ValidationError("witness size must match the verifier spec");
  }
  double accept = 0.0;
  std::function<void(const qsim::PureState&, std::vector<int>, std::set<int>,
                     double, int)>
      rec = [&](const qsim::PureState& psi, std::vector<int> tau,
                std::set<int> used, double weight, int round) {
        if (weight < kBranchFloor) return;
        if (round > spec.rounds) {
          if (spec.decision(tau)) accept += weight;
          return;
        }
        const RoundQuery rq = spec.plan(tau);
        validate_round(rq, spec, used);
        for (int q : rq.subset) used.insert(q);
        for (auto& br : qsim::measure_branches(psi, rq.subset, rq.povm)) {
          auto next_tau = tau;
          next_tau.push_back(br.outcome);
          rec(br.post, std::move(next_tau), used, weight * br.probability,
              round + 1);
        }
      };
  const double w0 = 1.0 / spec.outcome_alphabet;
  for (int tau0 = 0; tau0 < spec.outcome_alphabet; ++tau0) {
    rec(sigma, {tau0}, {}, w0, 1);
  }
  return accept;
}

ProverStrategy honest_prover(const qsim::PureState& sigma) {
  ProverStrategy p;
  p.commit = [sigma](haar::OracleHandle& oracle) {
    return merkle::commit(sigma, sigma.num_qubits(), oracle.lambda, oracle);
  };
  p.respond = [](int, int, qsim::PureState&,
                 const merkle::CommitmentRegisters&,
                 const std::vector<int>& requested,
                 haar::OracleHandle&) { return requested; };
  return p;
}

ProverStrategy empty_prover(int n_leaves) {
  ProverStrategy p;
  p.commit = [n_leaves](haar::OracleHandle& oracle) {
    merkle::CommitmentRegisters regs;
    regs.layout.ell = n_leaves;
    regs.layout.b = oracle.lambda / 3;
    regs.state = qsim::PureState(regs.layout.total_qubits());
    regs.owner.assign(static_cast<std::size_t>(2 * n_leaves),
                      merkle::Owner::prover);
    return regs;
  };
  p.respond = [](int, int, qsim::PureState&,
                 const merkle::CommitmentRegisters&,
                 const std::vector<int>& requested,
                 haar::OracleHandle&) { return requested; };
  return p;
}

SampledRunResult run_protocol_sampled(const SimVerifierSpec& spec,
                                      const ProverStrategy& prover,
                                      haar::OracleHandle& oracle,
                                      std::mt19937_64& rng) {
  validate_spec(spec);
  if (!prover.commit) {
    throw ValidationError("prover strategy needs a commit callback");
  }

  SampledRunResult out;
  out.transcript.oracle_seed = oracle.seed;
  auto reject = [&out]() {
    finish_totals(out.transcript);
    out.accepted = false;
    return out;
  };

  std::uint64_t mark = oracle.query_counter;
  auto regs = prover.commit(oracle);
  out.transcript.oracle_queries_prover += oracle.query_counter - mark;
  if (regs.layout.ell != spec.witness_qubits ||
      regs.layout.b * 3 != oracle.lambda ||
      regs.state.num_qubits() != regs.layout.total_qubits()) {
    out.aborted = true;
    return reject();
  }
  const auto& layout = regs.layout;
  const int ell = layout.ell;

  const std::vector<int> first = merkle::r_set_of({1}, ell);
  std::set<int> held(first.begin(), first.end());
  for (int u : first) regs.owner[static_cast<std::size_t>(u)] =
      merkle::Owner::verifier;
  out.transcript.messages.push_back(register_message(first, layout.b));

  const int bits = bits_for_alphabet(spec.outcome_alphabet);
  std::vector<int> tau{std::uniform_int_distribution<int>(
      0, spec.outcome_alphabet - 1)(rng)};
  std::vector<int> sent_leaves;

  for (int round = 1; round <= spec.rounds; ++round) {
    out.transcript.messages.push_back(classical_message(bits));
    const RoundQuery rq = spec.plan(tau);
    std::set<int> used;
    for (int leaf : sent_leaves) used.insert(leaf - ell);
    validate_round(rq, spec, used);

    const RoundGeometry g = round_geometry(rq.subset, sent_leaves, held, ell);
    std::vector<int> sent = g.new_regs;
    if (prover.respond) {
      mark = oracle.query_counter;
      sent = prover.respond(round, tau.back(), regs.state, regs, g.new_regs,
                            oracle);
      out.transcript.oracle_queries_prover += oracle.query_counter - mark;
    }
    auto sorted = sent;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.new_regs) {
      out.aborted = true;
      return reject();
    }
    for (int u : g.new_regs) {
      held.insert(u);
      regs.owner[static_cast<std::size_t>(u)] = merkle::Owner::verifier;
    }
    out.transcript.messages.push_back(register_message(g.new_regs, layout.b));
    audit_ownership(g, held, ell);

    mark = oracle.query_counter;
    const auto result =
        merkle::decommit(regs, sent_leaves, g.leaves, oracle, rng);
    out.transcript.oracle_queries_verifier += oracle.query_counter - mark;
    if (!result.ok) return reject();
    sent_leaves.insert(sent_leaves.end(), g.leaves.begin(), g.leaves.end());

    const auto br = qsim::measure(
        regs.state, witness_wires(layout, rq.subset), rq.povm, rng);
    regs.state = br.post;
    tau.push_back(br.outcome);
  }

  finish_totals(out.transcript);
  out.accepted = spec.decision(tau);
  return out;
}

CommCost comm_cost(const Transcript& transcript, const CommParams& params) {
  CommCost cost;
  cost.qubits = transcript.qubits_sent;
  cost.bits = transcript.bits_sent;
  const double depth = std::log2(static_cast<double>(params.n)) + 1.0;
  cost.bound =
      params.lambda * (1.0 + params.ell_L * params.k * 2.0 * depth);
  cost.within_bound = cost.qubits <= cost.bound + 1e-9;
  return cost;
}

SimVerifierSpec toy_bell_spec() {
  // Bell basis on two qubits: Phi+, Phi-, Psi+, Psi-.
  std::vector<Eigen::MatrixXcd> bell;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Vector4cd> kets(4);
  kets[0] << s, 0, 0, s;
  kets[1] << s, 0, 0, -s;
  kets[2] << 0, s, s, 0;
  kets[3] << 0, s, -s, 0;
  for (const auto& k : kets) bell.push_back(k * k.adjoint());

  SimVerifierSpec spec;
  spec.witness_qubits = 4;
  spec.outcome_alphabet = 4;
  spec.rounds = 2;
  spec.query_budget = 2;
  spec.plan = [bell](const std::vector<int>& tau) {
    RoundQuery rq;
    rq.subset = tau.size() == 1 ? std::vector<int>{0, 1}
                                : std::vector<int>{2, 3};
    rq.povm = bell;
    return rq;
  };
  spec.decision = [](const std::vector<int>& tau) {
    return tau.at(1) == 0 && tau.at(2) == 0;
  };
  spec.honest_witness = toy_bell_witness();
  return spec;
}

qsim::PureState toy_bell_witness() {
  CVec amp(16, Complex{0.0, 0.0});
  amp[0b0000] = 0.5;
  amp[0b0011] = 0.5;
  amp[0b1100] = 0.5;
  amp[0b1111] = 0.5;
  return qsim::PureState(4, std::move(amp));
}

std::string transcript_json(const Transcript& transcript,
                            const CommCost& cost) {
  nlohmann::json doc;
  doc["schema"] = "qzk-transcript/1";
  doc["oracle_seed"] = transcript.oracle_seed;
  doc["messages"] = nlohmann::json::array();
  for (const auto& m : transcript.messages) {
    doc["messages"].push_back(
        {{"direction", m.direction == Direction::prover_to_verifier
                           ? "prover_to_verifier"
                           : "verifier_to_prover"},
         {"classical_bits", m.classical_bits},
         {"registers", m.registers},
         {"qubits", m.qubits}});
  }
  doc["totals"] = {
      {"qubits_sent", transcript.qubits_sent},
      {"bits_sent", transcript.bits_sent},
      {"oracle_queries_prover", transcript.oracle_queries_prover},
      {"oracle_queries_verifier", transcript.oracle_queries_verifier}};
  doc["bound"] = {{"qubits", cost.qubits},
                  {"bits", cost.bits},
                  {"bound", cost.bound},
                  {"within_bound", cost.within_bound}};
  return doc.dump(2);
}

}  // namespace qzk::zkproto
