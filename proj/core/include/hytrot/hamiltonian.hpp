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

#include <filesystem>
#include <span>
#include <vector>

#include <hytrot/dense.hpp>
#include <hytrot/pauli.hpp>

namespace hytrot {

/// An ordered Hamiltonian with a deterministic/random cut.
///
/// Terms are sorted by |coeff| descending (ties broken by lexicographic
/// string order, so partitions are reproducible). The first n_d terms form
/// H0, evolved deterministically each step; the remaining n_r = L - n_d
/// terms form H1, the randomly sampled pool. n_d = 0 is the fully random
/// algorithm, n_d = L the fully deterministic one.
class PartitionedHamiltonian {
 public:
  PartitionedHamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms,
                         double identity_offset = 0.0);

  int n_qubits() const { return n_qubits_; }
  /// L, the total number of evolution terms.
  int term_count() const { return static_cast<int>(terms_.size()); }
  std::span<const HamiltonianTerm> terms() const { return terms_; }

  int n_d() const { return n_d_; }
  void set_n_d(int n_d);

  /// Sum of the coefficients of ingested identity terms. Identity strings
  /// contribute only a global phase, so they are excluded from evolution and
  /// reported here.
  double identity_offset() const { return identity_offset_; }

  /// The n_d largest-magnitude terms, as a sum.
  TermSum h0_sum(int n_d) const;
  /// The remaining terms (the random pool).
  std::span<const HamiltonianTerm> h1_terms(int n_d) const;
  /// The whole Hamiltonian as a sum.
  TermSum full_sum() const;

 private:
  int n_qubits_;
  std::vector<HamiltonianTerm> terms_;
  int n_d_ = 0;
  double identity_offset_ = 0.0;
};

/// H0 as a sum plus the H1 term list for a given cut. H0 + sum(H1) equals
/// the full Hamiltonian exactly.
std::pair<TermSum, std::vector<HamiltonianTerm>> partition(
    const PartitionedHamiltonian& h, int n_d);

/// Reads the line-oriented Hamiltonian file format:
///   qubits N
///   <coeff> <op>*      e.g.  0.0823 X0 Y1 Z3
/// A line with only a coefficient is a multiple of the identity (recorded as
/// the identity offset, excluded from evolution). '#' starts a comment.
/// Duplicate strings are merged before filtering; terms with
/// |coeff| < coeff_floor are dropped; the result is sorted by magnitude
/// descending with n_d = 0. Parse errors carry the line number.
PartitionedHamiltonian load_hamiltonian(const std::filesystem::path& path,
                                        double coeff_floor = 1e-4);

/// Writes the same format, terms in sorted order, coefficients with 17
/// significant digits (round-trips exactly).
void save_hamiltonian(const PartitionedHamiltonian& h,
                      const std::filesystem::path& path);

/// Heisenberg chain with power-law interactions: for every pair i < j the
/// three couplings (X_i X_j, Y_i Y_j, Z_i Z_j) with coefficient 1/|j-i|^4,
/// plus per-site fields B_i Z_i with B_i drawn uniformly from [-1, 1) using
/// field_seed. Term count L = (3n^2 - n)/2.
PartitionedHamiltonian heisenberg_chain(int n, std::uint64_t field_seed);

/// ||[H0, H1]||: spectral norm of the pairwise commutator sum; 0 when either
/// side is empty.
double commutator_norm(const TermSum& h0, const TermSum& h1,
                       int dense_cap = kDefaultDenseCap);

/// The splitting-bias constant C = ||Q^2|| / 4 with
/// Q = [H1, H0] + sum over ordered pairs of deterministic terms of their
/// commutators (ordered by ascending magnitude, matching the product order
/// of the splitting). Q is anti-Hermitian, so ||Q^2|| = ||Q||^2.
double bch_constant(const PartitionedHamiltonian& h, int n_d,
                    int dense_cap = kDefaultDenseCap);

}  // namespace hytrot
