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

#include "qzk/clockham/clockham.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qzk/linalg/lanczos.hpp"
#include "qzk/qsim/gates.hpp"

namespace qzk::clockham {

namespace {

// |pattern><pattern| over `width` wires, bits given most significant first.
Eigen::MatrixXcd pattern_projector(std::uint64_t pattern, int width) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << width);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(static_cast<Eigen::Index>(pattern), static_cast<Eigen::Index>(pattern)) =
      1.0;
  return m;
}

// |to><from| over `width` wires.
Eigen::MatrixXcd pattern_transfer(std::uint64_t to, std::uint64_t from,
                                  int width) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << width);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
  return m;
}

std::uint64_t encode_bits(const std::vector<int>& bits) {
  std::uint64_t pat = 0;
  for (int b : bits) pat = (pat << 1) | static_cast<std::uint64_t>(b);
  return pat;
}

// The propagation term's dense block: clock wires first, then the step's
// own wires. `clock_part` couples the flat clock patterns, `cross` carries
// the step unitary.
Eigen::MatrixXcd prop_block(const Eigen::MatrixXcd& diag_part,
                            const Eigen::MatrixXcd& cross,
                            const Eigen::MatrixXcd& u) {
  const auto du = u.rows();
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(du, du);
  return 0.5 * (qsim::gates::kron(diag_part, eye) -
                qsim::gates::kron(cross, u) -
                qsim::gates::kron(cross.adjoint().eval(),
                                  u.adjoint().eval()));
}

}  // namespace

double HamTerm::diagonal_entry(std::uint64_t g, int n) const {
  if (is_zero) return 0.0;
  if (!is_diagonal) {
    throw ValidationError("diagonal entry requested from a dense term");
  }
  const auto len_a = static_cast<int>(anchor_wires.size());
  for (int j = 0; j < len_a; ++j) {
    std::uint64_t want = (anchor_pattern >> (len_a - 1 - j)) & 1ULL;
    std::uint64_t have = (g >> (n - 1 - anchor_wires[j])) & 1ULL;
    if (want != have) return 0.0;
  }
  if (!has_veto) return 1.0;
  const auto len_v = static_cast<int>(veto_wires.size());
  for (int j = 0; j < len_v; ++j) {
    std::uint64_t want = (veto_pattern >> (len_v - 1 - j)) & 1ULL;
    std::uint64_t have = (g >> (n - 1 - veto_wires[j])) & 1ULL;
    if (want != have) return 1.0;  // veto pattern missed: projector survives
  }
  return 0.0;
}

qsim::PureState unary_clock(int t, int T) {
  if (T < 1 || T > kMaxPureQubits) throw ValidationError("clock width");
  if (t < 0 || t > T) throw ValidationError("clock value out of [0, T]");
  std::uint64_t ones = (std::uint64_t{1} << t) - 1;
  return qsim::PureState::basis(T, ones << (T - t));
}

int clock_wire(const HistoryHamiltonian& h, int slot) {
  if (slot < 1 || slot > h.clock_width) {
    throw ValidationError("clock slot out of range");
  }
  return slot - 1;
}

int state_wire(const HistoryHamiltonian& h, int state_index) {
  if (state_index < 0 || state_index >= h.n1 + h.n2) {
    throw ValidationError("state wire out of range");
  }
  return h.clock_width + state_index;
}

void validate_sequence(const UnitarySequence& seq) {
  if (seq.steps.size() < 2) {
    throw ValidationError("a sequence needs at least two steps");
  }
  if (seq.n1 < 0 || seq.n2 < 0 || seq.n1 + seq.n2 < 1) {
    throw ValidationError("state register must be non-empty");
  }
  const int ns = seq.n1 + seq.n2;
  for (const auto& step : seq.steps) {
    if (!step.controls.empty()) {
      throw ValidationError("fold controls into dense step blocks");
    }
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1}
                                             << step.targets.size());
    if (step.matrix.rows() != d || step.matrix.cols() != d) {
      throw ValidationError("step block size mismatch");
    }
    if (!qsim::gates::is_unitary(step.matrix, 1e-9)) {
      throw ValidationError("step block is not unitary");
    }
    std::set<int> seen;
    for (int w : step.targets) {
      if (w < 0 || w >= ns) throw ValidationError("step wire out of range");
      if (!seen.insert(w).second) throw ValidationError("repeated step wire");
    }
  }
  std::set<int> covered;
  for (const auto& part : seq.partition) {
    for (int a : part) {
      if (a < 0 || a >= seq.n2) {
        throw ValidationError("partition wire outside the ancilla register");
      }
      if (!covered.insert(a).second) {
        throw ValidationError("partition sets overlap");
      }
    }
  }
  if (static_cast<int>(covered.size()) != seq.n2) {
    throw ValidationError("partition must cover every ancilla wire");
  }
}

HistoryHamiltonian build_history_hamiltonian(const UnitarySequence& seq) {
  validate_sequence(seq);
  HistoryHamiltonian h;
  const int T = static_cast<int>(seq.steps.size());
  h.clock_width = T;
  h.n1 = seq.n1;
  h.n2 = seq.n2;

  for (int t = 1; t <= T; ++t) {
    const qsim::GateOp& step = seq.steps[t - 1];
    HamTerm term;
    term.kind = "prop";
    term.index = t;
    term.is_dense = true;

    std::vector<int> clock_wires;
    Eigen::MatrixXcd diag_part, cross;
    if (t == 1) {
      clock_wires = {0, 1};
      // one-sided head projector |0><0| on slot 1, cross anchored on [1,2]
      diag_part = pattern_projector(0b00, 2) + pattern_projector(0b01, 2) +
                  pattern_projector(0b10, 2);
      cross = pattern_transfer(0b10, 0b00, 2);
    } else if (t == T) {
      clock_wires = {T - 2, T - 1};
      // one-sided tail projector |1><1| on slot T
      diag_part = pattern_projector(0b10, 2) + pattern_projector(0b01, 2) +
                  pattern_projector(0b11, 2);
      cross = pattern_transfer(0b11, 0b10, 2);
    } else {
      clock_wires = {t - 2, t - 1, t};
      diag_part = pattern_projector(0b100, 3) + pattern_projector(0b110, 3);
      cross = pattern_transfer(0b110, 0b100, 3);
    }
    term.dense = prop_block(diag_part, cross, step.matrix);
    term.support = clock_wires;
    for (int w : step.targets) term.support.push_back(T + w);
    h.terms.push_back(std::move(term));
  }

  for (int t = 1; t <= T - 1; ++t) {
    HamTerm term;
    term.kind = "stab";
    term.index = t;
    term.is_diagonal = true;
    term.anchor_wires = {t - 1, t};
    term.anchor_pattern = encode_bits({0, 1});
    term.support = term.anchor_wires;
    h.terms.push_back(std::move(term));
  }

  for (std::size_t i = 0; i < seq.partition.size(); ++i) {
    HamTerm term;
    term.kind = "in";
    term.index = static_cast<int>(i) + 1;
    term.is_diagonal = true;
    term.anchor_wires = {0};  // clock slot 1 reads 0
    term.anchor_pattern = 0;
    term.has_veto = true;
    std::vector<int> wires = seq.partition[i];
    std::sort(wires.begin(), wires.end());
    for (int a : wires) term.veto_wires.push_back(T + seq.n1 + a);
    term.veto_pattern = 0;  // all-zero ancilla pattern is exempt
    term.support = term.anchor_wires;
    term.support.insert(term.support.end(), term.veto_wires.begin(),
                        term.veto_wires.end());
    h.terms.push_back(std::move(term));
  }
  return h;
}

qsim::PureState history_state(const UnitarySequence& seq,
                              const qsim::PureState& phi) {
  validate_sequence(seq);
  if (phi.num_qubits() != seq.n1) {
    throw ValidationError("witness register size mismatch");
  }
  if (std::abs(phi.norm() - 1.0) > 1e-9) {
    throw ValidationError("witness must be normalized");
  }
  const int T = static_cast<int>(seq.steps.size());
  const int ns = seq.n1 + seq.n2;
  qsim::PureState out(T + ns);  // capacity enforced here
  auto& acc = out.amplitudes();
  std::fill(acc.begin(), acc.end(), Complex{0.0, 0.0});

  CVec cur(std::uint64_t{1} << ns, Complex{0.0, 0.0});
  for (std::uint64_t a = 0; a < phi.dim(); ++a) {
    cur[a << seq.n2] = phi.amplitude(a);
  }
  const double weight = 1.0 / std::sqrt(static_cast<double>(T) + 1.0);
  for (int t = 0; t <= T; ++t) {
    std::uint64_t clock = ((std::uint64_t{1} << t) - 1) << (T - t);
    std::uint64_t base = clock << ns;
    for (std::uint64_t s = 0; s < cur.size(); ++s) {
      acc[base | s] = weight * cur[s];
    }
    if (t < T) qsim::apply_gate_inplace(cur, ns, seq.steps[t]);
  }
  return out;
}

double term_energy(const HamTerm& term, const qsim::PureState& psi) {
  if (term.is_zero) return 0.0;
  if (term.is_dense) {
    return qsim::expectation(psi, term.dense, term.support);
  }
  const int n = psi.num_qubits();
  double total = 0.0;
  for (std::uint64_t g = 0; g < psi.dim(); ++g) {
    double w = std::norm(psi.amplitude(g));
    if (w > 0.0) total += w * term.diagonal_entry(g, n);
  }
  return total;
}

double energy(const HistoryHamiltonian& h, const qsim::PureState& psi) {
  if (psi.num_qubits() != h.total_qubits()) {
    throw ValidationError("state size does not match the Hamiltonian");
  }
  double total = 0.0;
  for (const auto& term : h.terms) total += term_energy(term, psi);
  return total;
}

void apply_hamiltonian(const HistoryHamiltonian& h, const CVec& in,
                       CVec& out) {
  const int n = h.total_qubits();
  if (in.size() != (std::uint64_t{1} << n) || out.size() != in.size()) {
    throw ValidationError("vector size does not match the Hamiltonian");
  }
  std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
  CVec scratch;
  for (const auto& term : h.terms) {
    if (term.is_zero) continue;
    if (term.is_dense) {
      scratch = in;
      qsim::apply_linear_inplace(scratch, n, term.dense, term.support);
      for (std::size_t g = 0; g < out.size(); ++g) out[g] += scratch[g];
    } else {
      for (std::uint64_t g = 0; g < in.size(); ++g) {
        if (term.diagonal_entry(g, n) != 0.0) out[g] += in[g];
      }
    }
  }
}

double history_subspace_distance(const UnitarySequence& seq,
                                 const qsim::PureState& psi) {
  validate_sequence(seq);
  const int T = static_cast<int>(seq.steps.size());
  const int ns = seq.n1 + seq.n2;
  if (psi.num_qubits() != T + ns) {
    throw ValidationError("state size does not match the sequence");
  }
  // Accumulate sum_t U_[1,t]^dag (clock-slice t of psi) by peeling the
  // steps off from the latest slice backwards.
  CVec acc(std::uint64_t{1} << ns, Complex{0.0, 0.0});
  for (int t = T; t >= 0; --t) {
    std::uint64_t clock = ((std::uint64_t{1} << t) - 1) << (T - t);
    std::uint64_t base = clock << ns;
    for (std::uint64_t s = 0; s < acc.size(); ++s) {
      acc[s] += psi.amplitude(base | s);
    }
    if (t > 0) qsim::apply_gate_inplace(acc, ns, seq.steps[t - 1].adjoint());
  }
  // The ancilla-zero block of acc/(T+1) is W^dag psi. Evaluating the
  // equivalent residual norm |psi - W W^dag psi| instead of
  // sqrt(1 - |W^dag psi|^2) avoids catastrophic cancellation near 0.
  const double tp1 = static_cast<double>(T) + 1.0;
  CVec cur(std::uint64_t{1} << ns, Complex{0.0, 0.0});
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << seq.n1); ++a) {
    cur[a << seq.n2] = acc[a << seq.n2] / tp1;
  }
  double resid_sq = 0.0;
  double unary_weight = 0.0;
  for (int t = 0; t <= T; ++t) {
    std::uint64_t clock = ((std::uint64_t{1} << t) - 1) << (T - t);
    std::uint64_t base = clock << ns;
    for (std::uint64_t s = 0; s < cur.size(); ++s) {
      Complex a = psi.amplitude(base | s);
      unary_weight += std::norm(a);
      resid_sq += std::norm(a - cur[s]);
    }
    if (t < T) qsim::apply_gate_inplace(cur, ns, seq.steps[t]);
  }
  // Components on non-unary clock patterns project entirely into the
  // residual; for a unit input their weight is 1 - unary_weight.
  double norm_sq = 0.0;
  for (std::uint64_t g = 0; g < psi.dim(); ++g) {
    norm_sq += std::norm(psi.amplitude(g));
  }
  resid_sq += norm_sq - unary_weight;
  return std::sqrt(std::min(1.0, std::max(0.0, resid_sq)));
}

MinEigenResult min_eigenvalue(const HistoryHamiltonian& h, double tol,
                              const qsim::PureState* warm_start) {
  const int n = h.total_qubits();
  if (n > kMaxPureQubits) {
    throw CapacityError("Hamiltonian register exceeds the pure-state cap");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  linalg::MatVec apply = [&h](const CVec& in, CVec& out) {
    apply_hamiltonian(h, in, out);
  };
  linalg::LanczosOptions opts;
  opts.tol = tol;
  if (warm_start != nullptr) {
    if (warm_start->num_qubits() != n) {
      throw ValidationError("warm-start state size mismatch");
    }
    opts.initial = warm_start->amplitudes();
  }
  linalg::LanczosResult res = linalg::extremal_eigenpair(dim, apply, opts);
  if (!res.converged) {
    throw Error("eigensolve did not converge; best residual " +
                std::to_string(res.residual));
  }
  MinEigenResult out{res.eigenvalue, qsim::PureState(n, res.eigenvector),
                     res.residual};
  out.vector.normalize();
  return out;
}

}  // namespace qzk::clockham
