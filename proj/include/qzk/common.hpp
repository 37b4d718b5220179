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

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzk {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Dense pure-state simulation is capped at this many qubits.
inline constexpr int kMaxPureQubits = 24;
/// Dense density-matrix simulation is capped at this many qubits.
inline constexpr int kMaxMixedQubits = 13;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when an operation would exceed the dense simulation caps.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

/// Thrown on malformed inputs (bad wires, non-unitary gates, bad configs...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Thrown when a code-level marginal is requested outside the regime in which
/// it is witness-independent (the caller asked for something the simulator
/// refuses to guess).
class NonSimulableError : public Error {
 public:
  explicit NonSimulableError(const std::string& msg) : Error(msg) {}
};

}  // namespace qzk
