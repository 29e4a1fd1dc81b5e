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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <hytrot/errors.hpp>

namespace hytrot {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

struct PauliProduct;

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// A fourth root of unity i^k, k in {0,1,2,3}. Products of Pauli strings
/// carry their phase as one of these tags; no floating-point arithmetic is
/// involved until the phase is combined with a coefficient.
class Phase4 {
 public:
  constexpr Phase4() = default;
  constexpr explicit Phase4(int k) : k_(static_cast<std::uint8_t>(k & 3)) {}

  constexpr int exponent() const { return k_; }
  constexpr Phase4 operator*(Phase4 other) const {
    return Phase4(k_ + other.k_);
  }
  constexpr bool operator==(const Phase4&) const = default;

  /// The phase as a complex number: 1, i, -1 or -i exactly.
  Complex value() const {
    switch (k_) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }

 private:
  std::uint8_t k_ = 0;
};

/// A tensor product of single-qubit Pauli operators, one letter per qubit.
///
/// Stored as a pair of bit masks (X-part, Z-part): qubit q carries X iff bit
/// q of x_mask is set, Z iff bit q of z_mask, Y iff both. This caps strings
/// at 64 qubits, far beyond the dense desk scale. The all-identity string is
/// the multiplicative unit, and every string squares to identity with phase
/// +1. Immutable after construction.
class PauliString {
 public:
  /// The identity string on n qubits.
  explicit PauliString(int n_qubits);

  /// Builds from (qubit, letter) pairs; unlisted qubits are identity.
  static PauliString from_ops(
      int n_qubits, std::span<const std::pair<int, Pauli>> ops);

  /// Parses the compact text form, e.g. "X0 Z3" or "I" (identity).
  static PauliString parse(int n_qubits, const std::string& text);

  int n_qubits() const { return n_qubits_; }
  Pauli letter(int qubit) const;
  bool is_identity() const { return (x_mask_ | z_mask_) == 0; }
  /// Number of non-identity sites.
  int weight() const;

  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }

  bool operator==(const PauliString&) const = default;
  /// Lexicographic order on the letter sequence (site 0 first, I<X<Y<Z).
  /// This is the canonical term order used everywhere output must be
  /// deterministic.
  bool operator<(const PauliString& other) const;

  std::string to_string() const;

 private:
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z)
      : n_qubits_(n_qubits), x_mask_(x), z_mask_(z) {}

  int n_qubits_ = 0;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;

  friend struct PauliProduct;
  friend PauliProduct multiply(const PauliString&, const PauliString&);
};

/// phase * string, the exact result of a Pauli string product.
struct PauliProduct {
  Phase4 phase;
  PauliString string;
};

/// Exact operator product p * q. Throws ValidationError on mismatched qubit
/// counts.
PauliProduct multiply(const PauliString& p, const PauliString& q);

/// True iff p and q commute: the number of sites where both letters are
/// non-identity and different is even.
bool commutes(const PauliString& p, const PauliString& q);

/// One Hamiltonian term: a real coefficient times a Pauli string. Its
/// spectral norm is |coeff| (Pauli strings are unitary Hermitian
/// involutions).
struct HamiltonianTerm {
  double coeff = 0.0;
  PauliString pauli;
};

/// A canonicalized sum of complex coefficients times Pauli strings: no two
/// entries share a string, exact zeros are dropped, and iteration order is
/// the lexicographic string order. Hermitian iff all coefficients are real.
class TermSum {
 public:
  explicit TermSum(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& string, Complex coeff);
  void add(const HamiltonianTerm& term) { add(term.pauli, term.coeff); }

  const std::map<PauliString, Complex>& terms() const { return terms_; }

  TermSum& operator+=(const TermSum& other);
  TermSum scaled(Complex factor) const;
  /// Drops entries with |coeff| <= eps.
  TermSum pruned(double eps) const;

  /// Largest |coefficient|, 0 for the empty sum.
  double max_abs_coeff() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;

 private:
  int n_qubits_;
  std::map<PauliString, Complex> terms_;
};

/// Exact operator product of two sums (pairwise string products, merged).
TermSum multiply(const TermSum& a, const TermSum& b);

/// Commutator [a, b] = ab - ba of two Hamiltonian terms. Empty when the
/// strings commute; otherwise the single entry 2 a.coeff b.coeff phase (ab),
/// which is anti-Hermitian (purely imaginary coefficient).
TermSum commutator(const HamiltonianTerm& a, const HamiltonianTerm& b);

/// Commutator of two sums, assembled pairwise.
TermSum commutator(const TermSum& a, const TermSum& b);

}  // namespace hytrot
