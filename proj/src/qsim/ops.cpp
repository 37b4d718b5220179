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

#include "qzk/qsim/ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qzk/qsim/gates.hpp"

namespace qzk::qsim {

namespace {

struct WirePlan {
  int n = 0;
  int t = 0;
  std::uint64_t tmask = 0;
  std::vector<std::uint64_t> tbit;        // per target, MSB-first local order
  std::vector<std::uint64_t> offsets;     // local label -> global offset
  std::uint64_t cmask = 0;
  std::uint64_t cbits = 0;
};

WirePlan make_plan(int n, const std::vector<int>& targets,
                   const std::vector<int>& controls,
                   std::uint64_t control_pattern) {
  WirePlan p;
  p.n = n;
  p.t = static_cast<int>(targets.size());
  std::set<int> seen;
  for (int q : targets) {
    if (q < 0 || q >= n) throw ValidationError("target qubit out of range");
    if (!seen.insert(q).second) throw ValidationError("duplicate wire");
    p.tbit.push_back(std::uint64_t{1} << (n - 1 - q));
    p.tmask |= p.tbit.back();
  }
  for (std::size_t c = 0; c < controls.size(); ++c) {
    int q = controls[c];
    if (q < 0 || q >= n) throw ValidationError("control qubit out of range");
    if (!seen.insert(q).second) throw ValidationError("duplicate wire");
    std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    p.cmask |= bit;
    if ((control_pattern >> c) & 1ULL) p.cbits |= bit;
  }
  const std::uint64_t lim = std::uint64_t{1} << p.t;
  p.offsets.assign(lim, 0);
  for (std::uint64_t l = 0; l < lim; ++l) {
    std::uint64_t off = 0;
    for (int j = 0; j < p.t; ++j) {
      if ((l >> (p.t - 1 - j)) & 1ULL) off |= p.tbit[j];
    }
    p.offsets[l] = off;
  }
  return p;
}

void check_block(const Eigen::MatrixXcd& block, int t) {
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << t);
  if (block.rows() != d || block.cols() != d) {
    throw ValidationError("gate block dimension does not match target count");
  }
}

// Core gather/transform/scatter loop shared by every dense operation.
void apply_block(CVec& amp, const WirePlan& p, const Eigen::MatrixXcd& block) {
  const std::uint64_t dim = std::uint64_t{1} << p.n;
  const std::uint64_t lim = std::uint64_t{1} << p.t;
  std::vector<Complex> in(lim), out(lim);
  for (std::uint64_t g = 0; g < dim; ++g) {
    if (g & p.tmask) continue;
    if ((g & p.cmask) != p.cbits) continue;
    for (std::uint64_t l = 0; l < lim; ++l) in[l] = amp[g | p.offsets[l]];
    for (std::uint64_t r = 0; r < lim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::uint64_t l = 0; l < lim; ++l) {
        acc += block(static_cast<Eigen::Index>(r),
                     static_cast<Eigen::Index>(l)) *
               in[l];
      }
      out[r] = acc;
    }
    for (std::uint64_t r = 0; r < lim; ++r) amp[g | p.offsets[r]] = out[r];
  }
}

double quadratic_form(const CVec& amp, const WirePlan& p,
                      const Eigen::MatrixXcd& block) {
  const std::uint64_t dim = std::uint64_t{1} << p.n;
  const std::uint64_t lim = std::uint64_t{1} << p.t;
  std::vector<Complex> in(lim);
  double total = 0.0;
  for (std::uint64_t g = 0; g < dim; ++g) {
    if (g & p.tmask) continue;
    if ((g & p.cmask) != p.cbits) continue;
    for (std::uint64_t l = 0; l < lim; ++l) in[l] = amp[g | p.offsets[l]];
    Complex acc{0.0, 0.0};
    for (std::uint64_t r = 0; r < lim; ++r) {
      Complex row{0.0, 0.0};
      for (std::uint64_t l = 0; l < lim; ++l) {
        row += block(static_cast<Eigen::Index>(r),
                     static_cast<Eigen::Index>(l)) *
               in[l];
      }
      acc += std::conj(in[r]) * row;
    }
    total += acc.real();
  }
  return total;
}

Eigen::MatrixXcd positive_sqrt(const Eigen::MatrixXcd& e) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    vals(i) = vals(i) > 0.0 ? std::sqrt(vals(i)) : 0.0;
  }
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

GateOp GateOp::adjoint() const {
  GateOp g(matrix.adjoint(), targets, controls, control_pattern);
  return g;
}

void apply_gate_inplace(CVec& amp, int n, const GateOp& g) {
  check_block(g.matrix, static_cast<int>(g.targets.size()));
  if (!gates::is_unitary(g.matrix, 1e-9)) {
    throw ValidationError("gate block is not unitary");
  }
  WirePlan p = make_plan(n, g.targets, g.controls, g.control_pattern);
  apply_block(amp, p, g.matrix);
}

void apply_gate_inplace(PureState& psi, const GateOp& g) {
  apply_gate_inplace(psi.amplitudes(), psi.num_qubits(), g);
}

PureState apply_gate(const PureState& psi, const GateOp& g) {
  PureState out = psi;
  apply_gate_inplace(out, g);
  return out;
}

MixedState apply_gate(const MixedState& rho, const GateOp& g) {
  check_block(g.matrix, static_cast<int>(g.targets.size()));
  if (!gates::is_unitary(g.matrix, 1e-9)) {
    throw ValidationError("gate block is not unitary");
  }
  const int n = rho.num_qubits();
  WirePlan p = make_plan(n, g.targets, g.controls, g.control_pattern);
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd a = rho.matrix();
  CVec scratch(static_cast<std::size_t>(d));
  // U rho U^dag = (U (U rho)^dag)^dag, so two column passes suffice.
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) scratch[r] = a(r, c);
      apply_block(scratch, p, g.matrix);
      for (Eigen::Index r = 0; r < d; ++r) a(r, c) = scratch[r];
    }
    a.adjointInPlace();
  }
  MixedState out(n, std::move(a));
  out.labels = rho.labels;
  return out;
}

void apply_linear_inplace(CVec& amp, int n, const Eigen::MatrixXcd& block,
                          const std::vector<int>& targets) {
  check_block(block, static_cast<int>(targets.size()));
  WirePlan p = make_plan(n, targets, {}, 0);
  apply_block(amp, p, block);
}

double expectation(const PureState& psi, const Eigen::MatrixXcd& block,
                   const std::vector<int>& targets) {
  check_block(block, static_cast<int>(targets.size()));
  WirePlan p = make_plan(psi.num_qubits(), targets, {}, 0);
  return quadratic_form(psi.amplitudes(), p, block);
}

MixedState reduced_density(const PureState& psi, const std::vector<int>& keep) {
  const int n = psi.num_qubits();
  const int k = static_cast<int>(keep.size());
  if (k == 0) throw ValidationError("keep set must be non-empty");
  if (k > kMaxMixedQubits) {
    throw CapacityError("reduced state exceeds the mixed-state cap");
  }
  WirePlan p = make_plan(n, keep, {}, 0);
  const auto dk = static_cast<Eigen::Index>(std::uint64_t{1} << k);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
  Eigen::VectorXcd v(dk);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t e = 0; e < dim; ++e) {
    if (e & p.tmask) continue;  // e ranges over environment assignments
    for (std::uint64_t a = 0; a < static_cast<std::uint64_t>(dk); ++a) {
      v(static_cast<Eigen::Index>(a)) = psi.amplitude(e | p.offsets[a]);
    }
    rho.noalias() += v * v.adjoint();
  }
  return MixedState(k, std::move(rho));
}

Eigen::MatrixXcd cross_marginal(const PureState& u, const PureState& v,
                                const std::vector<int>& keep) {
  if (u.num_qubits() != v.num_qubits()) {
    throw ValidationError("cross marginal needs equally sized states");
  }
  const int n = u.num_qubits();
  const int k = static_cast<int>(keep.size());
  if (k == 0) {
    Eigen::MatrixXcd out(1, 1);
    out(0, 0) = inner_product(v, u);  // Tr |u><v| = <v|u>
    return out;
  }
  WirePlan p = make_plan(n, keep, {}, 0);
  const auto dk = static_cast<Eigen::Index>(std::uint64_t{1} << k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t e = 0; e < dim; ++e) {
    if (e & p.tmask) continue;
    for (Eigen::Index a = 0; a < dk; ++a) {
      Complex ua = u.amplitude(e | p.offsets[static_cast<std::uint64_t>(a)]);
      if (ua == Complex{0.0, 0.0}) continue;
      for (Eigen::Index b = 0; b < dk; ++b) {
        out(a, b) +=
            ua *
            std::conj(v.amplitude(e | p.offsets[static_cast<std::uint64_t>(b)]));
      }
    }
  }
  return out;
}

MixedState partial_trace(const MixedState& rho, const std::vector<int>& keep) {
  Eigen::MatrixXcd out =
      partial_trace_operator(rho.matrix(), rho.num_qubits(), keep);
  return MixedState(static_cast<int>(keep.size()), std::move(out));
}

Eigen::MatrixXcd partial_trace_operator(const Eigen::MatrixXcd& op, int n,
                                        const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  if (k == 0) throw ValidationError("keep set must be non-empty");
  WirePlan p = make_plan(n, keep, {}, 0);
  const auto dk = static_cast<Eigen::Index>(std::uint64_t{1} << k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t e = 0; e < dim; ++e) {
    if (e & p.tmask) continue;
    for (Eigen::Index a = 0; a < dk; ++a) {
      const std::uint64_t ra = e | p.offsets[static_cast<std::uint64_t>(a)];
      for (Eigen::Index b = 0; b < dk; ++b) {
        out(a, b) += op(static_cast<Eigen::Index>(ra),
                        static_cast<Eigen::Index>(
                            e | p.offsets[static_cast<std::uint64_t>(b)]));
      }
    }
  }
  return out;
}

double trace_distance(const MixedState& a, const MixedState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("trace distance of states with different sizes");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix() - b.matrix());
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const PureState& a, const PureState& b) {
  const double overlap = std::norm(inner_product(a, b));
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

std::vector<MeasureBranch> measure_branches(
    const PureState& psi, const std::vector<int>& targets,
    const std::vector<Eigen::MatrixXcd>& effects, double prob_floor) {
  if (effects.empty()) throw ValidationError("empty POVM");
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1}
                                           << targets.size());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : effects) {
    check_block(e, static_cast<int>(targets.size()));
    sum += e;
  }
  if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("POVM effects do not sum to the identity");
  }
  std::vector<MeasureBranch> out;
  for (std::size_t j = 0; j < effects.size(); ++j) {
    double prob = expectation(psi, effects[j], targets);
    if (prob <= prob_floor) continue;  // strictly-above keeps floor 0 usable
    PureState post = psi;
    apply_linear_inplace(post.amplitudes(), post.num_qubits(),
                         positive_sqrt(effects[j]), targets);
    post.normalize();
    out.push_back(MeasureBranch{static_cast<int>(j), prob, std::move(post)});
  }
  return out;
}

MeasureBranch measure(const PureState& psi, const std::vector<int>& targets,
                      const std::vector<Eigen::MatrixXcd>& effects,
                      std::mt19937_64& rng) {
  auto branches = measure_branches(psi, targets, effects, 0.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  double acc = 0.0;
  for (auto& b : branches) {
    acc += b.probability;
    if (r <= acc) return b;
  }
  return branches.back();
}

std::vector<MeasureBranch> measure_computational_branches(
    const PureState& psi, const std::vector<int>& targets, double prob_floor) {
  const int n = psi.num_qubits();
  const int t = static_cast<int>(targets.size());
  WirePlan p = make_plan(n, targets, {}, 0);
  const std::uint64_t outcomes = std::uint64_t{1} << t;
  std::vector<double> prob(outcomes, 0.0);
  const std::uint64_t dim = psi.dim();
  for (std::uint64_t g = 0; g < dim; ++g) {
    double w = std::norm(psi.amplitude(g));
    if (w == 0.0) continue;
    std::uint64_t o = 0;
    for (int j = 0; j < t; ++j) {
      o = (o << 1) | ((g & p.tbit[j]) ? 1ULL : 0ULL);
    }
    prob[o] += w;
  }
  std::vector<MeasureBranch> out;
  for (std::uint64_t o = 0; o < outcomes; ++o) {
    if (prob[o] <= prob_floor) continue;
    PureState post = psi;
    std::uint64_t want = p.offsets[o];
    auto& amp = post.amplitudes();
    for (std::uint64_t g = 0; g < dim; ++g) {
      if ((g & p.tmask) != want) amp[g] = Complex{0.0, 0.0};
    }
    post.normalize();
    out.push_back(
        MeasureBranch{static_cast<int>(o), prob[o], std::move(post)});
  }
  return out;
}

MeasureBranch measure_computational(const PureState& psi,
                                    const std::vector<int>& targets,
                                    std::mt19937_64& rng) {
  auto branches = measure_computational_branches(psi, targets, 0.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  double acc = 0.0;
  for (auto& b : branches) {
    acc += b.probability;
    if (r <= acc && b.probability > 0.0) return b;
  }
  for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
    if (it->probability > 0.0) return *it;
  }
  throw Error("measurement on a zero-norm state");
}

PureState embed_state(const PureState& sigma, int total,
                      const std::vector<int>& positions) {
  if (positions.size() != static_cast<std::size_t>(sigma.num_qubits())) {
    throw ValidationError("position list must match the source qubit count");
  }
  WirePlan p = make_plan(total, positions, {}, 0);
  PureState out(total);
  out.amplitudes()[0] = Complex{0.0, 0.0};
  for (std::uint64_t s = 0; s < sigma.dim(); ++s) {
    out.amplitudes()[p.offsets[s]] = sigma.amplitude(s);
  }
  return out;
}

Eigen::MatrixXcd embed_matrix(int n, const GateOp& g) {
  check_block(g.matrix, static_cast<int>(g.targets.size()));
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::MatrixXcd out(d, d);
  WirePlan p = make_plan(n, g.targets, g.controls, g.control_pattern);
  CVec col(static_cast<std::size_t>(d));
  for (Eigen::Index c = 0; c < d; ++c) {
    std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
    col[static_cast<std::size_t>(c)] = Complex{1.0, 0.0};
    apply_block(col, p, g.matrix);
    for (Eigen::Index r = 0; r < d; ++r) out(r, c) = col[r];
  }
  return out;
}

}  // namespace qzk::qsim
