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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qzk/clockham/clockham.hpp"
#include "qzk/haar/haar.hpp"
#include "qzk/qsim/gates.hpp"
#include "qzk/qsim/ops.hpp"

using namespace qzk;
using namespace qzk::clockham;

namespace {

int tbit(std::uint64_t g, int n, int q) {
  return static_cast<int>((g >> (n - 1 - q)) & 1ULL);
}

// Test-side dense embedding of a local operator, standalone bit arithmetic.
Eigen::MatrixXcd oracle_embed(int n, const std::vector<int>& wires,
                              const Eigen::MatrixXcd& u) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  const int w = static_cast<int>(wires.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t g = 0; g < static_cast<std::uint64_t>(dim); ++g) {
    for (std::uint64_t h = 0; h < static_cast<std::uint64_t>(dim); ++h) {
      bool outside_equal = true;
      for (int q = 0; q < n && outside_equal; ++q) {
        bool on_wire = false;
        for (int j = 0; j < w; ++j) on_wire = on_wire || wires[j] == q;
        if (!on_wire && tbit(g, n, q) != tbit(h, n, q)) outside_equal = false;
      }
      if (!outside_equal) continue;
      int lr = 0, lc = 0;
      for (int j = 0; j < w; ++j) {
        lr = (lr << 1) | tbit(g, n, wires[j]);
        lc = (lc << 1) | tbit(h, n, wires[j]);
      }
      m(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(h)) =
          u(lr, lc);
    }
  }
  return m;
}

// Projector onto fixed bits: wires[j] must read bits[j].
Eigen::MatrixXcd oracle_bits_projector(int n, const std::vector<int>& wires,
                                       const std::vector<int>& bits) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t g = 0; g < static_cast<std::uint64_t>(dim); ++g) {
    bool match = true;
    for (std::size_t j = 0; j < wires.size(); ++j) {
      if (tbit(g, n, wires[j]) != bits[j]) match = false;
    }
    if (match) {
      m(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g)) = 1.0;
    }
  }
  return m;
}

// |to bits><from bits| on the given wires, identity elsewhere.
Eigen::MatrixXcd oracle_bits_transfer(int n, const std::vector<int>& wires,
                                      const std::vector<int>& to,
                                      const std::vector<int>& from) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t g = 0; g < static_cast<std::uint64_t>(dim); ++g) {
    bool match = true;
    for (std::size_t j = 0; j < wires.size(); ++j) {
      if (tbit(g, n, wires[j]) != from[j]) match = false;
    }
    if (!match) continue;
    std::uint64_t h = g;
    for (std::size_t j = 0; j < wires.size(); ++j) {
      std::uint64_t bitmask = std::uint64_t{1} << (n - 1 - wires[j]);
      if (to[j] == 1) {
        h |= bitmask;
      } else {
        h &= ~bitmask;
      }
    }
    m(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(g)) = 1.0;
  }
  return m;
}

// Full dense Hamiltonian assembled from the definitions, term by term.
std::vector<Eigen::MatrixXcd> oracle_terms(const UnitarySequence& seq) {
  const int T = static_cast<int>(seq.steps.size());
  const int n = T + seq.n1 + seq.n2;
  std::vector<Eigen::MatrixXcd> terms;

  for (int t = 1; t <= T; ++t) {
    std::vector<int> globals;
    for (int w : seq.steps[t - 1].targets) globals.push_back(T + w);
    Eigen::MatrixXcd u = oracle_embed(n, globals, seq.steps[t - 1].matrix);
    Eigen::MatrixXcd diag, cross;
    if (t == 1) {
      diag = oracle_bits_projector(n, {0}, {0}) +
             oracle_bits_projector(n, {0, 1}, {1, 0});
      cross = oracle_bits_transfer(n, {0, 1}, {1, 0}, {0, 0});
    } else if (t == T) {
      diag = oracle_bits_projector(n, {T - 2, T - 1}, {1, 0}) +
             oracle_bits_projector(n, {T - 1}, {1});
      cross = oracle_bits_transfer(n, {T - 2, T - 1}, {1, 1}, {1, 0});
    } else {
      diag = oracle_bits_projector(n, {t - 2, t - 1, t}, {1, 0, 0}) +
             oracle_bits_projector(n, {t - 2, t - 1, t}, {1, 1, 0});
      cross = oracle_bits_transfer(n, {t - 2, t - 1, t}, {1, 1, 0},
                                   {1, 0, 0});
    }
    Eigen::MatrixXcd crossed = u * cross;
    terms.push_back(0.5 * (diag - crossed - crossed.adjoint().eval()));
  }
  for (int t = 1; t <= T - 1; ++t) {
    terms.push_back(oracle_bits_projector(n, {t - 1, t}, {0, 1}));
  }
  for (const auto& part : seq.partition) {
    std::vector<int> wires;
    std::vector<int> zeros;
    for (int a : part) {
      wires.push_back(T + seq.n1 + a);
      zeros.push_back(0);
    }
    Eigen::MatrixXcd head = oracle_bits_projector(n, {0}, {0});
    Eigen::MatrixXcd all_zero = oracle_bits_projector(n, wires, zeros);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    terms.push_back(head * (Eigen::MatrixXcd::Identity(dim, dim) - all_zero));
  }
  return terms;
}

qsim::PureState random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec amp(std::uint64_t{1} << n);
  for (auto& a : amp) a = Complex{gauss(rng), gauss(rng)};
  qsim::PureState psi(n, std::move(amp));
  psi.normalize();
  return psi;
}

UnitarySequence random_sequence(int T, int n1, int n2, std::uint64_t seed) {
  UnitarySequence seq;
  seq.n1 = n1;
  seq.n2 = n2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wire(0, n1 + n2 - 1);
  for (int t = 0; t < T; ++t) {
    if (n1 + n2 >= 2 && t % 2 == 1) {
      int a = wire(rng), b = wire(rng);
      while (b == a) b = wire(rng);
      seq.steps.push_back(qsim::GateOp{
          haar::sample_haar(2, seed * 100 + t).unitary, {a, b}});
    } else {
      seq.steps.push_back(qsim::GateOp{
          haar::sample_haar(1, seed * 100 + t).unitary, {wire(rng)}});
    }
  }
  std::vector<int> anc;
  for (int a = 0; a < n2; ++a) anc.push_back(a);
  if (!anc.empty()) seq.partition.push_back(anc);
  return seq;
}

}  // namespace

TEST_CASE("unary clock states") {
  REQUIRE(std::abs(unary_clock(0, 3).amplitude(0b000) - Complex{1.0, 0.0}) <
          1e-15);
  REQUIRE(std::abs(unary_clock(2, 4).amplitude(0b1100) - Complex{1.0, 0.0}) <
          1e-15);
  REQUIRE(std::abs(unary_clock(4, 4).amplitude(0b1111) - Complex{1.0, 0.0}) <
          1e-15);
  REQUIRE_THROWS_AS(unary_clock(5, 4), ValidationError);
  REQUIRE_THROWS_AS(unary_clock(-1, 4), ValidationError);
}

TEST_CASE("identity sequence produces the uniform clock ramp") {
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 0;
  seq.steps = {qsim::GateOp{qsim::gates::I(2), {0}},
               qsim::GateOp{qsim::gates::I(2), {0}}};
  qsim::PureState psi = history_state(seq, qsim::PureState(1));
  const double w = 1.0 / std::sqrt(3.0);
  REQUIRE(std::abs(psi.amplitude(0b000) - Complex{w, 0.0}) < 1e-12);
  REQUIRE(std::abs(psi.amplitude(0b100) - Complex{w, 0.0}) < 1e-12);
  REQUIRE(std::abs(psi.amplitude(0b110) - Complex{w, 0.0}) < 1e-12);

  HistoryHamiltonian h = build_history_hamiltonian(seq);
  REQUIRE(energy(h, psi) == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(h.terms.size() == 2 + 1 + 0);
}

TEST_CASE("a bit flip step lands in the final clock branch") {
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 0;
  seq.steps = {qsim::GateOp{qsim::gates::X(), {0}},
               qsim::GateOp{qsim::gates::I(2), {0}}};
  qsim::PureState psi = history_state(seq, qsim::PureState(1));
  const double w = 1.0 / std::sqrt(3.0);
  REQUIRE(std::abs(psi.amplitude(0b000) - Complex{w, 0.0}) < 1e-12);
  REQUIRE(std::abs(psi.amplitude(0b101) - Complex{w, 0.0}) < 1e-12);
  REQUIRE(std::abs(psi.amplitude(0b111) - Complex{w, 0.0}) < 1e-12);
  REQUIRE(energy(build_history_hamiltonian(seq), psi) ==
          Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("the illegal clock pattern costs one stabilizer unit") {
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 0;
  seq.steps = {qsim::GateOp{qsim::gates::I(2), {0}},
               qsim::GateOp{qsim::gates::I(2), {0}}};
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  // clock reads 01: forbidden by the single stabilizer term
  qsim::PureState bad = qsim::PureState::basis(3, 0b010);
  const HamTerm* stab = nullptr;
  for (const auto& t : h.terms) {
    if (t.kind == "stab") stab = &t;
  }
  REQUIRE(stab != nullptr);
  REQUIRE(term_energy(*stab, bad) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("initialization terms charge non-zero ancillas at clock zero") {
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 1;
  seq.steps = {qsim::GateOp{qsim::gates::I(2), {0}},
               qsim::GateOp{qsim::gates::I(2), {0}}};
  seq.partition = {{0}};
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  REQUIRE(h.terms.size() == 2 + 1 + 1);

  // clock 00, witness 0, ancilla 1
  qsim::PureState bad = qsim::PureState::basis(4, 0b0001);
  const HamTerm* in_term = nullptr;
  for (const auto& t : h.terms) {
    if (t.kind == "in") in_term = &t;
  }
  REQUIRE(in_term != nullptr);
  REQUIRE(term_energy(*in_term, bad) == Catch::Approx(1.0).margin(1e-12));

  // ancilla 0 at clock zero is free
  qsim::PureState good = qsim::PureState::basis(4, 0b0000);
  REQUIRE(term_energy(*in_term, good) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("random history states have zero energy") {
  for (std::uint64_t seed : {2ULL, 3ULL, 4ULL}) {
    UnitarySequence seq = random_sequence(3, 2, 1, seed);
    qsim::PureState phi = random_state(2, seed + 50);
    qsim::PureState psi = history_state(seq, phi);
    HistoryHamiltonian h = build_history_hamiltonian(seq);
    REQUIRE(energy(h, psi) == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(history_subspace_distance(seq, psi) ==
            Catch::Approx(0.0).margin(1e-8));
  }
}

TEST_CASE("terms match a dense oracle and are positive semidefinite") {
  UnitarySequence seq = random_sequence(3, 2, 1, 9);
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  std::vector<Eigen::MatrixXcd> oracle = oracle_terms(seq);
  REQUIRE(h.terms.size() == oracle.size());
  REQUIRE(h.terms.size() == 3u + 2u + 1u);

  const int n = h.total_qubits();
  qsim::PureState probe = random_state(n, 123);
  Eigen::VectorXcd v(probe.dim());
  for (std::uint64_t g = 0; g < probe.dim(); ++g) {
    v(static_cast<Eigen::Index>(g)) = probe.amplitude(g);
  }

  double lib_total = 0.0, oracle_total = 0.0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    double lib = term_energy(h.terms[i], probe);
    double expect = (v.adjoint() * oracle[i] * v)(0).real();
    REQUIRE(lib == Catch::Approx(expect).margin(1e-9));
    lib_total += lib;
    oracle_total += expect;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle[i]);
    REQUIRE(es.eigenvalues().minCoeff() > -1e-9);
    REQUIRE((oracle[i] - oracle[i].adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  REQUIRE(energy(h, probe) == Catch::Approx(oracle_total).margin(1e-9));

  // The matrix-free application agrees with the dense sum.
  Eigen::MatrixXcd dense_sum = Eigen::MatrixXcd::Zero(v.size(), v.size());
  for (const auto& t : oracle) dense_sum += t;
  CVec out(probe.dim());
  apply_hamiltonian(h, probe.amplitudes(), out);
  Eigen::VectorXcd expect_v = dense_sum * v;
  for (std::uint64_t g = 0; g < probe.dim(); ++g) {
    REQUIRE(std::abs(out[g] - expect_v(static_cast<Eigen::Index>(g))) <
            1e-9);
  }
}

TEST_CASE("minimum eigenvalue is zero for any plain sequence") {
  UnitarySequence seq = random_sequence(3, 1, 1, 31);
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  MinEigenResult res = min_eigenvalue(h, 1e-10);
  REQUIRE(res.value == Catch::Approx(0.0).margin(1e-8));
  REQUIRE(energy(h, res.vector) == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("iterative eigensolver matches dense diagonalization") {
  // 10 wires total: large enough to leave the dense fallback path.
  UnitarySequence seq = random_sequence(4, 3, 3, 77);
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  REQUIRE(h.total_qubits() == 10);

  std::vector<Eigen::MatrixXcd> oracle = oracle_terms(seq);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(1 << 10, 1 << 10);
  for (const auto& t : oracle) dense += t;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);

  MinEigenResult res = min_eigenvalue(h, 1e-9);
  REQUIRE(res.value == Catch::Approx(es.eigenvalues()(0)).margin(1e-8));
}

TEST_CASE("subspace distance separates history states from intruders") {
  UnitarySequence seq = random_sequence(3, 1, 1, 41);
  qsim::PureState psi = history_state(seq, random_state(1, 99));
  REQUIRE(history_subspace_distance(seq, psi) ==
          Catch::Approx(0.0).margin(1e-9));

  // A state with an illegal clock pattern is orthogonal to every history
  // state, so the distance is 1.
  qsim::PureState orth = qsim::PureState::basis(5, 0b01000);
  REQUIRE(history_subspace_distance(seq, orth) ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("distance scales as the square root of the energy") {
  // For psi = (history + eps * clock-violating basis) normalized, both the
  // energy and the distance have closed forms; their ratio is a constant
  // 1/sqrt(E_chi) across the whole family.
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 0;
  seq.steps = {qsim::GateOp{qsim::gates::H(), {0}},
               qsim::GateOp{qsim::gates::X(), {0}}};
  HistoryHamiltonian h = build_history_hamiltonian(seq);
  qsim::PureState hist = history_state(seq, qsim::PureState(1));
  qsim::PureState chi = qsim::PureState::basis(3, 0b010);
  double e_chi = energy(h, chi);
  REQUIRE(e_chi > 0.5);

  double previous_delta = 0.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    CVec amp(hist.dim());
    for (std::uint64_t g = 0; g < hist.dim(); ++g) {
      amp[g] = hist.amplitude(g) + eps * chi.amplitude(g);
    }
    qsim::PureState mixed(3, std::move(amp));
    mixed.normalize();
    double delta = energy(h, mixed);
    double dist = history_subspace_distance(seq, mixed);
    REQUIRE(delta > previous_delta);  // the family ramps up in energy
    previous_delta = delta;
    REQUIRE(dist == Catch::Approx(std::sqrt(delta / e_chi)).margin(1e-9));
  }
}

TEST_CASE("sequence validation") {
  UnitarySequence seq;
  seq.n1 = 1;
  seq.n2 = 0;
  seq.steps = {qsim::GateOp{qsim::gates::I(2), {0}}};
  REQUIRE_THROWS_AS(validate_sequence(seq), ValidationError);  // T < 2

  seq.steps.push_back(qsim::GateOp{qsim::gates::I(2), {0}});
  REQUIRE_NOTHROW(validate_sequence(seq));

  UnitarySequence overlap = seq;
  overlap.n2 = 2;
  overlap.partition = {{0}, {0, 1}};
  REQUIRE_THROWS_AS(validate_sequence(overlap), ValidationError);

  UnitarySequence uncovered = seq;
  uncovered.n2 = 2;
  uncovered.partition = {{0}};
  REQUIRE_THROWS_AS(validate_sequence(uncovered), ValidationError);

  UnitarySequence controlled = seq;
  qsim::GateOp ctl{qsim::gates::X(), {0}};
  ctl.controls = {1};
  controlled.n2 = 1;
  controlled.partition = {{0}};
  controlled.steps[0] = ctl;
  REQUIRE_THROWS_AS(validate_sequence(controlled), ValidationError);
}
