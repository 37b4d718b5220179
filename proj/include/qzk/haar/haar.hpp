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

#ifndef QZK_HAAR_HAAR_HPP_
#define QZK_HAAR_HAAR_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qzk/common.hpp"
#include "qzk/qsim/state.hpp"

namespace qzk::haar {

inline constexpr int kMaxOracleQubits = 8;

// A sampled random unitary shared by all parties of a protocol run, together
// with a counter of how many times it (or its inverse) has been applied.
struct OracleHandle {
  int lambda = 0;
  Eigen::MatrixXcd unitary;
  std::uint64_t query_counter = 0;
  std::uint64_t seed = 0;
};

// Draws a unitary on `lambda` qubits from the rotation-invariant (Haar)
// distribution: complex Gaussian matrix, QR factorization, then a phase
// correction on each column by the matching R diagonal entry. Deterministic
// per seed.
OracleHandle sample_haar(int lambda, std::uint64_t seed);

// Applies the oracle (or its inverse) to the given wires and increments the
// query counter.
void query_inplace(OracleHandle& handle, qsim::PureState& state,
                   const std::vector<int>& targets, bool inverse = false);
qsim::PureState query(OracleHandle& handle, const qsim::PureState& state,
                      const std::vector<int>& targets, bool inverse = false);

}  // namespace qzk::haar

#endif  // QZK_HAAR_HAAR_HPP_
