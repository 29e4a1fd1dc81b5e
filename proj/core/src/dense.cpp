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

#include <hytrot/dense.hpp>

#include <bit>
#include <cmath>
#include <string>

#include <hytrot/rng.hpp>

namespace hytrot {

namespace {

void check_cap(int n_qubits, int dense_cap) {
  if (n_qubits > dense_cap) {
    throw ValidationError("dense representation requested for " +
                          std::to_string(n_qubits) +
                          " qubits, above the dense cap " +
                          std::to_string(dense_cap));
  }
}

// P |b> = i^{#Y} (-1)^{popcount(b & z_mask)} |b XOR x_mask>.
Complex y_factor(const PauliString& p) {
  return Phase4(std::popcount(p.x_mask() & p.z_mask())).value();
}

double sign_of(std::uint64_t b, std::uint64_t z_mask) {
  return (std::popcount(b & z_mask) & 1) ? -1.0 : 1.0;
}

enum class Symmetry { Hermitian, AntiHermitian };

Symmetry classify(const TermSum& sum) {
  if (sum.is_hermitian()) return Symmetry::Hermitian;
  if (sum.is_anti_hermitian()) return Symmetry::AntiHermitian;
  throw ValidationError(
      "spectral_norm requires a Hermitian or anti-Hermitian sum");
}

double power_iteration_norm(const TermSum& sum) {
  const std::size_t dim = 1ULL << sum.n_qubits();
  // Fixed-seed start vector keeps the estimate reproducible.
  SplitMix64 rng(0x9D2C5680CA7B5E1DULL);
  Eigen::VectorXcd v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v(i) = Complex(rng.next_symmetric(), rng.next_symmetric());
  }
  v.normalize();

  // S^dagger has conjugated coefficients (Pauli strings are Hermitian).
  TermSum adjoint(sum.n_qubits());
  for (const auto& [string, coeff] : sum.terms()) {
    adjoint.add(string, std::conj(coeff));
  }

  constexpr int kMaxIterations = 10000;
  constexpr double kRelTol = 1e-8;
  double estimate = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXcd w = apply_operator(adjoint, apply_operator(sum, v));
    const double next = std::sqrt(std::abs(Complex(v.dot(w))));
    const double wnorm = w.norm();
    if (wnorm < 1e-300) return 0.0;
    v = w / wnorm;
    if (it > 0 && std::abs(next - estimate) <= kRelTol * std::max(next, 1e-300)) {
      return next;
    }
    estimate = next;
  }
  throw NumericalError(
      "power iteration did not converge in 10000 iterations; final "
      "residual estimate " +
      std::to_string(estimate));
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliString& string, int dense_cap) {
  check_cap(string.n_qubits(), dense_cap);
  const std::size_t dim = 1ULL << string.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const Complex yf = y_factor(string);
  for (std::uint64_t b = 0; b < dim; ++b) {
    m(b ^ string.x_mask(), b) = yf * sign_of(b, string.z_mask());
  }
  return m;
}

Eigen::MatrixXcd to_dense(const TermSum& sum, int dense_cap) {
  check_cap(sum.n_qubits(), dense_cap);
  const std::size_t dim = 1ULL << sum.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [string, coeff] : sum.terms()) {
    const Complex factor = coeff * y_factor(string);
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ string.x_mask(), b) += factor * sign_of(b, string.z_mask());
    }
  }
  return m;
}

void accumulate_apply(const PauliString& string, Complex coeff,
                      const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
  const std::size_t dim = x.size();
  const Complex factor = coeff * y_factor(string);
  for (std::uint64_t b = 0; b < dim; ++b) {
    y(b ^ string.x_mask()) += factor * sign_of(b, string.z_mask()) * x(b);
  }
}

Eigen::VectorXcd apply_operator(const TermSum& sum, const Eigen::VectorXcd& x) {
  const std::size_t dim = 1ULL << sum.n_qubits();
  if (static_cast<std::size_t>(x.size()) != dim) {
    throw ValidationError("vector dimension does not match qubit count");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
  for (const auto& [string, coeff] : sum.terms()) {
    accumulate_apply(string, coeff, x, y);
  }
  return y;
}

double spectral_norm(const TermSum& sum, int dense_cap) {
  if (sum.empty()) return 0.0;
  const Symmetry symmetry = classify(sum);
  if (sum.n_qubits() <= dense_cap) {
    // (-i) * anti-Hermitian is Hermitian with the same singular values.
    const TermSum& source = sum;
    TermSum rotated(sum.n_qubits());
    if (symmetry == Symmetry::AntiHermitian) {
      rotated = sum.scaled(Complex(0.0, -1.0));
    }
    const Eigen::MatrixXcd m =
        to_dense(symmetry == Symmetry::AntiHermitian ? rotated : source,
                 dense_cap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("dense eigendecomposition failed");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  return power_iteration_norm(sum);
}

}  // namespace hytrot
