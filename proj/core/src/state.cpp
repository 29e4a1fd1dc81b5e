// Copyright (c) the hytrot contributors
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

#include <hytrot/state.hpp>

#include <cmath>
#include <string>

namespace hytrot {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw ValidationError("state vector qubit count must be in [1, 30], got " +
                          std::to_string(n_qubits));
  }
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  check_width(n_qubits);
  const std::size_t dim = 1ULL << n_qubits;
  if (index >= dim) {
    throw ValidationError("basis index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  amps(index) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(int n_qubits, Eigen::VectorXcd amps) {
  check_width(n_qubits);
  const std::size_t dim = 1ULL << n_qubits;
  if (static_cast<std::size_t>(amps.size()) != dim) {
    throw ValidationError("amplitude vector has dimension " +
                          std::to_string(amps.size()) + ", expected " +
                          std::to_string(dim));
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ValidationError("state norm " + std::to_string(norm) +
                          " deviates from 1 by more than 1e-9");
  }
  return StateVector(n_qubits, std::move(amps));
}

Complex StateVector::inner(const StateVector& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw ValidationError("inner product between different qubit counts");
  }
  return amps_.dot(other.amps_);
}

}  // namespace hytrot
