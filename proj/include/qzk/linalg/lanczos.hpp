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

#ifndef QZK_LINALG_LANCZOS_HPP_
#define QZK_LINALG_LANCZOS_HPP_

#include <cstdint>
#include <functional>

#include "qzk/common.hpp"

namespace qzk::linalg {

// Matrix-free Hermitian operator: writes (H * in) into out.
using MatVec = std::function<void(const CVec& in, CVec& out)>;

struct LanczosOptions {
  int max_basis = 96;        // Krylov vectors kept per restart cycle
  int max_restarts = 80;
  double tol = 1e-9;         // residual target relative to max(1, |H| est.)
  std::uint64_t seed = 0x5eed;
  bool largest = false;      // seek the top of the spectrum instead
  CVec initial;              // optional warm-start vector (empty = random)
};

struct LanczosResult {
  double eigenvalue = 0.0;
  CVec eigenvector;
  double residual = 0.0;     // ‖H v − λ v‖ of the returned pair
  int matvecs = 0;
  bool converged = false;
};

// Extremal eigenpair of a Hermitian operator by restarted Lanczos with full
// reorthogonalization inside each (memory-capped) basis cycle. Dimensions
// small enough for a dense solve take an exact path.
LanczosResult extremal_eigenpair(std::uint64_t dim, const MatVec& apply,
                                 const LanczosOptions& opts = {});

}  // namespace qzk::linalg

#endif  // QZK_LINALG_LANCZOS_HPP_
