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

#include "qzk/encver/encver.hpp"
#include "qzk/qsim/gates.hpp"

namespace qzk::encver {

namespace {

namespace gates = qsim::gates;

// A factor of a product operator: a matrix over an ascending wire subset.
// Empty wire lists carry scalar overlap factors.
struct Piece {
  std::vector<int> wires;
  Eigen::MatrixXcd mat;
};

// Assembles the product operator over `total` (ascending, disjointly covered
// by the pieces' wire sets) by per-entry bit surgery.
Eigen::MatrixXcd ordered_product(const std::vector<int>& total,
                                 const std::vector<Piece>& pieces) {
  const int w = static_cast<int>(total.size());
  std::map<int, int> pos;
  for (int j = 0; j < w; ++j) pos[total[static_cast<std::size_t>(j)]] = j;
  int covered = 0;
  for (const auto& p : pieces) covered += static_cast<int>(p.wires.size());
  if (covered != w) throw Error("internal: view pieces do not cover support");

  const auto dim = std::uint64_t{1} << w;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(dim),
                       static_cast<Eigen::Index>(dim));
  for (std::uint64_t r = 0; r < dim; ++r) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      Complex v{1.0, 0.0};
      for (const auto& p : pieces) {
        const int pw = static_cast<int>(p.wires.size());
        std::uint64_t pr = 0, pc = 0;
        for (int j = 0; j < pw; ++j) {
          const int at = pos.at(p.wires[static_cast<std::size_t>(j)]);
          pr = (pr << 1) | ((r >> (w - 1 - at)) & 1ULL);
          pc = (pc << 1) | ((c >> (w - 1 - at)) & 1ULL);
        }
        v *= p.mat(static_cast<Eigen::Index>(pr),
                   static_cast<Eigen::Index>(pc));
        if (v == Complex{0.0, 0.0}) break;
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return out;
}

// One register group: its state-local wires and its per-time pure states.
struct Group {
  std::vector<int> wires;  // ascending state-local
  std::vector<qsim::PureState> at;  // indexed by time 0..t_last
};

qsim::GateOp to_local(const qsim::GateOp& g, const std::map<int, int>& pos) {
  qsim::GateOp local = g;
  for (auto& t : local.targets) t = pos.at(t);
  for (auto& t : local.controls) t = pos.at(t);
  return local;
}

// Cross piece (entrywise partial trace of |u(t)><v(t')|) of a group,
// restricted to the group's intersection with the view support.
Piece group_cross(const Group& g, const qsim::PureState& u,
                  const qsim::PureState& v, const std::set<int>& s_state) {
  Piece p;
  std::vector<int> keep_local;
  for (std::size_t j = 0; j < g.wires.size(); ++j) {
    if (s_state.count(g.wires[j]) != 0) {
      keep_local.push_back(static_cast<int>(j));
      p.wires.push_back(g.wires[j]);
    }
  }
  p.mat = qsim::cross_marginal(u, v, keep_local);
  return p;
}

int term_case_label(const EncodedVerifierProgram& program,
                    const EncodedHamiltonian& h, int term_index) {
  const auto& term = h.ham.terms[static_cast<std::size_t>(term_index)];
  if (term.kind == "out") return 4;
  if (term.kind != "prop") return 1;
  const int step_idx = h.term_step[static_cast<std::size_t>(term_index)];
  const int phase =
      program.steps[static_cast<std::size_t>(step_idx)].phase;
  if (phase <= 4) return 1;
  return phase - 3;  // 5 -> 2, 6 -> 3, 7 -> 4
}

}  // namespace

TermView simulate_term_view(const EncodedVerifierProgram& program,
                            const EncodedHamiltonian& h, int term_index,
                            int branch) {
  if (program.code.kappa != 0) {
    throw CapacityError(
        "encoded-level term views are not numerically representable at "
        "desk scale");
  }
  TermView out;
  out.support = view_support(program, h, term_index, branch);
  out.case_label = term_case_label(program, h, term_index);
  const double value = qsat::val_max(program.instance);
  out.alpha = out.case_label == 4 ? 1.0 - value : 0.0;
  if (out.support.empty()) {
    out.view = Eigen::MatrixXcd::Ones(1, 1);
    return out;
  }

  const int T = h.T;
  const int n = program.instance.n;
  const int m = program.instance.m;
  const int iw = program.index_width;

  std::vector<int> s_clock;
  std::set<int> s_state;
  for (int w : out.support) {
    if (w < T) {
      s_clock.push_back(w);
    } else {
      s_state.insert(w - T);
    }
  }
  std::vector<int> s_state_sorted(s_state.begin(), s_state.end());

  // Phase boundaries as times (state after step t).
  auto phase_first = [&](int phase) {
    return program.phases[static_cast<std::size_t>(phase - 1)].first_step;
  };
  const int t4_end = phase_first(5) - 1;
  const int t5_end = phase_first(6) - 1;
  const int t0 = phase_first(7) - 1;  // decode phase start time

  // --- Register groups and their evolutions. ---
  auto make_group = [&](const std::vector<int>& wires) {
    Group g;
    g.wires = wires;
    std::sort(g.wires.begin(), g.wires.end());
    return g;
  };
  std::vector<int> wit_wires;
  for (int w = 0; w < program.witness_qubits; ++w) wit_wires.push_back(w);
  std::vector<int> idxmidx_wires = program.layout.qubits("Eidx");
  for (int w : program.layout.qubits("Emidx")) idxmidx_wires.push_back(w);
  Group idxmidx = make_group(idxmidx_wires);
  Group magic = make_group(program.layout.qubits("Emagic"));
  Group anc = make_group(program.layout.qubits("Eanc"));

  // Era-A evolution of a witness-free group: apply the gates of steps
  // 1..t5_end that live inside the group.
  auto evolve_group = [&](Group& g) {
    std::map<int, int> pos;
    for (std::size_t j = 0; j < g.wires.size(); ++j) {
      pos[g.wires[j]] = static_cast<int>(j);
    }
    qsim::PureState cur(static_cast<int>(g.wires.size()));
    g.at.push_back(cur);
    for (int t = 1; t <= t5_end; ++t) {
      const auto& step = program.steps[static_cast<std::size_t>(t - 1)];
      for (const auto& gate : step.gates) {
        const bool inside = pos.count(gate.targets[0]) != 0;
        bool all_inside = true;
        for (int w : gate.targets) all_inside &= pos.count(w) != 0;
        for (int w : gate.controls) all_inside &= pos.count(w) != 0;
        if (inside != all_inside) {
          throw Error("internal: a gate straddles register groups");
        }
        if (all_inside) qsim::apply_gate_inplace(cur, to_local(gate, pos));
      }
      g.at.push_back(cur);
    }
  };
  evolve_group(idxmidx);
  evolve_group(magic);
  evolve_group(anc);

  // --- Pad ensemble and the coupled-core evolution per check branch. ---
  const qsim::PureState phi = canonical_witness(program.instance);
  const int pads = 1 << (2 * n);
  const double pad_w = 1.0 / static_cast<double>(pads);

  Group core = make_group([&] {
    std::vector<int> w = wit_wires;
    for (int x : magic.wires) w.push_back(x);
    for (int x : anc.wires) w.push_back(x);
    return w;
  }());
  std::map<int, int> core_pos;
  for (std::size_t j = 0; j < core.wires.size(); ++j) {
    core_pos[core.wires[j]] = static_cast<int>(j);
  }

  // witness_states[pad], core_states[pad][i][t - t4_end].
  std::vector<qsim::PureState> witness_states;
  std::vector<std::vector<std::vector<qsim::PureState>>> core_states;
  for (int pad = 0; pad < pads; ++pad) {
    std::vector<int> a(static_cast<std::size_t>(n));
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
      a[static_cast<std::size_t>(u)] = (pad >> (2 * n - 1 - u)) & 1;
      b[static_cast<std::size_t>(u)] = (pad >> (n - 1 - u)) & 1;
    }
    const qsim::PureState w_pad = otp_witness(program, phi, a, b);
    witness_states.push_back(w_pad);

    // Core start: witness (x) magic-after-prep (x) |0> ancillas, in
    // ascending wire order (witness wires precede magic precede anc).
    const qsim::PureState& mg = magic.at[static_cast<std::size_t>(
        std::min<std::size_t>(magic.at.size() - 1,
                              static_cast<std::size_t>(t4_end)))];
    qsim::PureState start(static_cast<int>(core.wires.size()));
    {
      auto& amps = start.amplitudes();
      std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
      const int mg_q = mg.num_qubits();
      const int anc_q = static_cast<int>(anc.wires.size());
      for (std::uint64_t wv = 0; wv < w_pad.dim(); ++wv) {
        const Complex aw = w_pad.amplitude(wv);
        if (aw == Complex{0.0, 0.0}) continue;
        for (std::uint64_t mv = 0; mv < mg.dim(); ++mv) {
          const Complex am = mg.amplitude(mv);
          if (am == Complex{0.0, 0.0}) continue;
          amps[((wv << mg_q) | mv) << anc_q] = aw * am;
        }
      }
    }

    std::vector<std::vector<qsim::PureState>> per_branch;
    for (int i = 0; i < m; ++i) {
      std::vector<qsim::PureState> states;
      qsim::PureState cur = start;
      for (int t = t4_end; t <= T; ++t) {
        if (t > t4_end) {
          const auto& step =
              program.steps[static_cast<std::size_t>(t - 1)];
          const auto& glist =
              step.indexed
                  ? step.branch_gates[static_cast<std::size_t>(i)]
                  : step.gates;
          for (const auto& gate : glist) {
            qsim::apply_gate_inplace(cur, to_local(gate, core_pos));
          }
        }
        states.push_back(cur);
      }
      per_branch.push_back(std::move(states));
    }
    core_states.push_back(std::move(per_branch));
  }

  // --- Window assembly. ---
  const int sc = static_cast<int>(s_clock.size());
  const auto clock_dim = std::uint64_t{1} << sc;
  const auto state_dim = std::uint64_t{1}
                         << s_state_sorted.size();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(clock_dim * state_dim),
      static_cast<Eigen::Index>(clock_dim * state_dim));
  const double weight = 1.0 / (static_cast<double>(T) + 1.0);
  const std::set<int> s_clock_set(s_clock.begin(), s_clock.end());
  const bool case4 = out.case_label == 4;

  auto clock_pattern = [&](int t) {
    std::uint64_t pat = 0;
    for (int j = 0; j < sc; ++j) {
      const int w = s_clock[static_cast<std::size_t>(j)];
      pat = (pat << 1) | (w < t ? 1ULL : 0ULL);
    }
    return pat;
  };

  for (int t = 0; t <= T; ++t) {
    for (int tp = 0; tp <= T; ++tp) {
      const int lo = std::min(t, tp);
      const int hi = std::max(t, tp);
      bool visible = true;
      for (int w = lo; w < hi && visible; ++w) {
        visible = s_clock_set.count(w) != 0;
      }
      if (!visible) continue;

      Eigen::MatrixXcd g_state =
          Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(state_dim),
                                 static_cast<Eigen::Index>(state_dim));
      if (hi <= t5_end) {
        // Product eras: witness constant, witness-free groups evolve alone.
        for (int pad = 0; pad < pads; ++pad) {
          const auto& w_pad =
              witness_states[static_cast<std::size_t>(pad)];
          std::vector<Piece> pieces;
          Group wit_group = make_group(wit_wires);
          pieces.push_back(group_cross(wit_group, w_pad, w_pad, s_state));
          auto at = [&](const Group& g, int time) -> const qsim::PureState& {
            return g.at[static_cast<std::size_t>(time)];
          };
          pieces.push_back(
              group_cross(idxmidx, at(idxmidx, t), at(idxmidx, tp), s_state));
          pieces.push_back(
              group_cross(magic, at(magic, t), at(magic, tp), s_state));
          pieces.push_back(group_cross(anc, at(anc, t), at(anc, tp), s_state));
          g_state += pad_w * ordered_product(s_state_sorted, pieces);
        }
      } else {
        if (lo < t4_end) {
          throw Error("internal: window straddles unsupported eras");
        }
        // Branch era: the index pair selects a check; the coupled core
        // carries witness, magic and ancilla together.
        const double bw = pad_w / static_cast<double>(m);
        for (int pad = 0; pad < pads; ++pad) {
          for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
              const auto ii = qsim::PureState::basis(
                  2 * iw, (static_cast<std::uint64_t>(i) << iw) |
                              static_cast<std::uint64_t>(i));
              const auto jj = qsim::PureState::basis(
                  2 * iw, (static_cast<std::uint64_t>(j) << iw) |
                              static_cast<std::uint64_t>(j));
              Piece idx_piece = group_cross(idxmidx, ii, jj, s_state);
              const auto& ci =
                  core_states[static_cast<std::size_t>(pad)]
                             [static_cast<std::size_t>(i)];
              const auto& cj =
                  core_states[static_cast<std::size_t>(pad)]
                             [static_cast<std::size_t>(j)];
              std::vector<Piece> pieces;
              pieces.push_back(std::move(idx_piece));
              if (case4 && t == T && tp == T) {
                // Decode-phase output approximation: the decision wire is
                // reported as the accepting state; the rest is frozen at
                // the start of the decode phase.
                const int anc1 = program.decision_wire();
                std::set<int> s_rest = s_state;
                s_rest.erase(anc1);
                pieces.push_back(group_cross(
                    core, ci[static_cast<std::size_t>(t0 - t4_end)],
                    cj[static_cast<std::size_t>(t0 - t4_end)], s_rest));
                if (s_state.count(anc1) != 0) {
                  Piece one;
                  one.wires = {anc1};
                  one.mat = Eigen::MatrixXcd::Zero(2, 2);
                  one.mat(1, 1) = 1.0;
                  pieces.push_back(std::move(one));
                }
              } else {
                pieces.push_back(group_cross(
                    core, ci[static_cast<std::size_t>(t - t4_end)],
                    cj[static_cast<std::size_t>(tp - t4_end)], s_state));
              }
              g_state += bw * ordered_product(s_state_sorted, pieces);
            }
          }
        }
      }

      Eigen::MatrixXcd clock_factor =
          Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(clock_dim),
                                 static_cast<Eigen::Index>(clock_dim));
      clock_factor(static_cast<Eigen::Index>(clock_pattern(t)),
                   static_cast<Eigen::Index>(clock_pattern(tp))) = 1.0;
      acc += weight * gates::kron(clock_factor, g_state);
    }
  }

  out.view = std::move(acc);
  return out;
}

}  // namespace qzk::encver
