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

#include <hytrot/evolve.hpp>

#include <bit>
#include <cmath>

namespace hytrot {

void apply_pauli_rotation(StateVector& state, const HamiltonianTerm& term,
                          double theta) {
  if (term.pauli.n_qubits() != state.n_qubits()) {
    throw ValidationError("rotation term and state act on different widths");
  }
  const double angle = theta * term.coeff;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::uint64_t x = term.pauli.x_mask();
  const std::uint64_t z = term.pauli.z_mask();
  const Complex yf = Phase4(std::popcount(x & z)).value();
  const Complex minus_i_s = Complex(0.0, -s);
  Eigen::VectorXcd& amps = state.amplitudes();
  const std::uint64_t dim = amps.size();

  if (x == 0) {
    // Diagonal string: pure phase per amplitude.
    const Complex plus = c + minus_i_s;   // sites with even z-parity
    const Complex minus = c - minus_i_s;  // odd z-parity
    for (std::uint64_t b = 0; b < dim; ++b) {
      amps(b) *= (std::popcount(b & z) & 1) ? minus : plus;
    }
    return;
  }

  const std::uint64_t pivot = x & (~x + 1);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & pivot) continue;
    const std::uint64_t partner = b ^ x;
    const Complex lambda_b =
        yf * ((std::popcount(b & z) & 1) ? -1.0 : 1.0);
    const Complex lambda_p =
        yf * ((std::popcount(partner & z) & 1) ? -1.0 : 1.0);
    const Complex ab = amps(b);
    const Complex ap = amps(partner);
    amps(b) = c * ab + minus_i_s * lambda_p * ap;
    amps(partner) = c * ap + minus_i_s * lambda_b * ab;
  }
}

ExactPropagator::ExactPropagator(const TermSum& sum, int dense_cap)
    : n_qubits_(sum.n_qubits()) {
  if (!sum.is_hermitian()) {
    throw ValidationError("exact propagator requires a Hermitian sum");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      to_dense(sum, dense_cap));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed for exact propagator");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

void ExactPropagator::apply(StateVector& state, double t) const {
  if (state.n_qubits() != n_qubits_) {
    throw ValidationError("propagator and state act on different widths");
  }
  Eigen::VectorXcd coords = eigenvectors_.adjoint() * state.amplitudes();
  for (Eigen::Index k = 0; k < coords.size(); ++k) {
    coords(k) *= std::exp(Complex(0.0, -eigenvalues_(k) * t));
  }
  state.amplitudes() = eigenvectors_ * coords;
}

void trotter_step_first_order(StateVector& state,
                              std::span<const HamiltonianTerm> terms,
                              double dt, GateCounter& gates) {
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    apply_pauli_rotation(state, *it, dt);
  }
  gates.count += terms.size();
}

void trotter_step_symmetric(StateVector& state,
                            std::span<const HamiltonianTerm> terms,
                            double dt, GateCounter& gates) {
  if (terms.empty()) return;
  const std::size_t m = terms.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    apply_pauli_rotation(state, terms[i], dt / 2.0);
  }
  apply_pauli_rotation(state, terms[m - 1], dt);
  for (std::size_t i = m - 1; i-- > 0;) {
    apply_pauli_rotation(state, terms[i], dt / 2.0);
  }
  gates.count += 2 * m - 1;
}

}  // namespace hytrot
