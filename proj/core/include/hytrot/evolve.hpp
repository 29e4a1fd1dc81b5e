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

#include <span>

#include <hytrot/dense.hpp>
#include <hytrot/state.hpp>

namespace hytrot {

/// Running tally of elementary exponentials applied. One exp(-i theta c P)
/// is one unit; an exact H0 propagator application counts as many units as
/// H0 has terms, so gate budgets stay comparable across U0 modes.
struct GateCounter {
  std::uint64_t count = 0;
};

/// state <- exp(-i theta coeff P) state, computed in one fused pass:
/// cos(theta c) state - i sin(theta c) (P state). Exact up to rounding
/// because P^2 = I.
void apply_pauli_rotation(StateVector& state, const HamiltonianTerm& term,
                          double theta);

/// Cached spectral factorization of a Hermitian term sum, for repeated exact
/// applications of exp(-i t H) at any t. Build once, apply many times;
/// immutable and shareable across trajectory workers.
class ExactPropagator {
 public:
  ExactPropagator(const TermSum& sum, int dense_cap = kDefaultDenseCap);

  /// state <- exp(-i t H) state.
  void apply(StateVector& state, double t) const;

  int n_qubits() const { return n_qubits_; }

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

 private:
  int n_qubits_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

/// First-order Trotter step over an ordered term list. The first listed term
/// is the leftmost operator factor, i.e. the last applied to the state.
/// Adds terms.size() gate units.
void trotter_step_first_order(StateVector& state,
                              std::span<const HamiltonianTerm> terms,
                              double dt, GateCounter& gates);

/// Symmetric (Strang) step: half-angle sweep in, full step on the last term,
/// half-angle sweep back out. Adds 2m-1 gate units for m terms; the empty
/// list is the identity.
void trotter_step_symmetric(StateVector& state,
                            std::span<const HamiltonianTerm> terms,
                            double dt, GateCounter& gates);

}  // namespace hytrot
