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

#pragma once

#include <Eigen/Dense>

#include <hytrot/errors.hpp>
#include <hytrot/pauli.hpp>

namespace hytrot {

/// A normalized complex amplitude vector of dimension 2^n. Qubit k maps to
/// bit k of the amplitude index (qubit 0 = least significant bit). The norm
/// is checked to be 1 within 1e-9 on construction; evolution kernels
/// preserve it up to rounding.
class StateVector {
 public:
  /// |0...0>.
  static StateVector zero_state(int n_qubits);
  /// Basis state |index>.
  static StateVector basis_state(int n_qubits, std::uint64_t index);
  /// Takes ownership of the amplitudes; throws if the norm is off by more
  /// than 1e-9.
  static StateVector from_amplitudes(int n_qubits, Eigen::VectorXcd amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  /// <this|other>.
  Complex inner(const StateVector& other) const;

 private:
  StateVector(int n_qubits, Eigen::VectorXcd amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {}

  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

}  // namespace hytrot
