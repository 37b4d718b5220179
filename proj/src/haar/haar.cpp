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

#include "qzk/haar/haar.hpp"

#include <cmath>
#include <random>

#include "qzk/qsim/ops.hpp"

namespace qzk::haar {

OracleHandle sample_haar(int lambda, std::uint64_t seed) {
  if (lambda < 1 || lambda > kMaxOracleQubits) {
    throw CapacityError("oracle size must be between 1 and 8 qubits");
  }
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << lambda);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXcd ginibre(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      ginibre(r, c) = Complex{gauss(rng), gauss(rng)};
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::VectorXcd diag = qr.matrixQR().diagonal();
  // Naive QR biases the R diagonal toward positive reals; dividing each
  // column by the phase of its R entry restores rotation invariance.
  for (Eigen::Index c = 0; c < dim; ++c) {
    double mag = std::abs(diag(c));
    Complex phase = mag > 0.0 ? diag(c) / mag : Complex{1.0, 0.0};
    q.col(c) *= phase;
  }

  OracleHandle handle;
  handle.lambda = lambda;
  handle.unitary = std::move(q);
  handle.query_counter = 0;
  handle.seed = seed;
  return handle;
}

void query_inplace(OracleHandle& handle, qsim::PureState& state,
                   const std::vector<int>& targets, bool inverse) {
  if (targets.size() != static_cast<std::size_t>(handle.lambda)) {
    throw ValidationError("oracle query must address exactly lambda wires");
  }
  qsim::GateOp g{inverse ? Eigen::MatrixXcd(handle.unitary.adjoint())
                         : handle.unitary,
                 targets};
  qsim::apply_gate_inplace(state, g);
  ++handle.query_counter;
}

qsim::PureState query(OracleHandle& handle, const qsim::PureState& state,
                      const std::vector<int>& targets, bool inverse) {
  qsim::PureState out = state;
  query_inplace(handle, out, targets, inverse);
  return out;
}

}  // namespace qzk::haar
