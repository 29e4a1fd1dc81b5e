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

#include <hytrot/pauli.hpp>

namespace hytrot {

/// Largest qubit count for which dense 2^n x 2^n matrices are formed
/// (dimension 4096, the scale of the largest desk experiments).
inline constexpr int kDefaultDenseCap = 12;

/// Bit convention used by every dense object in this library: qubit k is bit
/// k of the basis-state index, so qubit 0 is the least significant bit.

/// Dense matrix of a single Pauli string.
Eigen::MatrixXcd to_dense(const PauliString& string,
                          int dense_cap = kDefaultDenseCap);

/// Dense matrix of a term sum: the exact sum of Kronecker products. Throws
/// ValidationError when n_qubits exceeds the cap.
Eigen::MatrixXcd to_dense(const TermSum& sum,
                          int dense_cap = kDefaultDenseCap);

/// y += coeff * (P x) for one Pauli string, matrix-free.
void accumulate_apply(const PauliString& string, Complex coeff,
                      const Eigen::VectorXcd& x, Eigen::VectorXcd& y);

/// Matrix-free application y = S x of a term sum to a vector.
Eigen::VectorXcd apply_operator(const TermSum& sum, const Eigen::VectorXcd& x);

/// Spectral norm (largest singular value) of a Hermitian or anti-Hermitian
/// term sum. Dense eigendecomposition for n_qubits <= dense_cap, otherwise
/// power iteration on S^dagger S applied matrix-free (relative tolerance
/// 1e-8, at most 10000 iterations; non-convergence raises NumericalError
/// with the final residual). Throws ValidationError if the input is neither
/// Hermitian nor anti-Hermitian.
double spectral_norm(const TermSum& sum, int dense_cap = kDefaultDenseCap);

}  // namespace hytrot
