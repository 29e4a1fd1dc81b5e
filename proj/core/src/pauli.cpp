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

#include <hytrot/pauli.hpp>

#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

namespace hytrot {

namespace {

// kPhaseTable[a][b] is the exponent k in a*b = i^k (result letter), for
// single-qubit letters coded I,X,Y,Z. XY = iZ, YZ = iX, ZX = iY and the
// reversed orders pick up -i.
constexpr int kPhaseTable[4][4] = {
    // I  X  Y  Z
    {0, 0, 0, 0},  // I
    {0, 0, 1, 3},  // X
    {0, 3, 0, 1},  // Y
    {0, 1, 3, 0},  // Z
};

Pauli letter_from_bits(bool x, bool z) {
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void require_same_width(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw ValidationError("Pauli strings act on different qubit counts: " +
                          std::to_string(p.n_qubits()) + " vs " +
                          std::to_string(q.n_qubits()));
  }
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 64) {
    throw ValidationError("qubit count must be in [1, 64], got " +
                          std::to_string(n_qubits));
  }
}

PauliString PauliString::from_ops(
    int n_qubits, std::span<const std::pair<int, Pauli>> ops) {
  PauliString result(n_qubits);
  for (const auto& [qubit, letter] : ops) {
    if (qubit < 0 || qubit >= n_qubits) {
      throw ValidationError("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
    }
    const std::uint64_t bit = 1ULL << qubit;
    if ((result.x_mask_ | result.z_mask_) & bit &&
        letter != Pauli::I) {
      throw ValidationError("duplicate operator on qubit " +
                            std::to_string(qubit));
    }
    if (letter == Pauli::X || letter == Pauli::Y) result.x_mask_ |= bit;
    if (letter == Pauli::Z || letter == Pauli::Y) result.z_mask_ |= bit;
  }
  return result;
}

PauliString PauliString::parse(int n_qubits, const std::string& text) {
  std::vector<std::pair<int, Pauli>> ops;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "I") continue;
    const Pauli letter = pauli_from_char(token[0]);
    if (token.size() < 2) {
      throw ValidationError("operator token '" + token +
                            "' is missing a qubit index");
    }
    std::size_t used = 0;
    int qubit = 0;
    try {
      qubit = std::stoi(token.substr(1), &used);
    } catch (const std::exception&) {
      throw ValidationError("bad qubit index in token '" + token + "'");
    }
    if (used + 1 != token.size()) {
      throw ValidationError("trailing characters in token '" + token + "'");
    }
    ops.emplace_back(qubit, letter);
  }
  return from_ops(n_qubits, ops);
}

Pauli PauliString::letter(int qubit) const {
  const std::uint64_t bit = 1ULL << qubit;
  return letter_from_bits(x_mask_ & bit, z_mask_ & bit);
}

int PauliString::weight() const {
  return std::popcount(x_mask_ | z_mask_);
}

bool PauliString::operator<(const PauliString& other) const {
  if (n_qubits_ != other.n_qubits_) return n_qubits_ < other.n_qubits_;
  std::uint64_t differing =
      (x_mask_ ^ other.x_mask_) | (z_mask_ ^ other.z_mask_);
  if (differing == 0) return false;
  const int site = std::countr_zero(differing);
  return static_cast<int>(letter(site)) <
         static_cast<int>(other.letter(site));
}

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::string out;
  for (int q = 0; q < n_qubits_; ++q) {
    const Pauli p = letter(q);
    if (p == Pauli::I) continue;
    if (!out.empty()) out += ' ';
    out += to_char(p);
    out += std::to_string(q);
  }
  return out;
}

PauliProduct multiply(const PauliString& p, const PauliString& q) {
  require_same_width(p, q);
  int exponent = 0;
  std::uint64_t shared = (p.x_mask_ | p.z_mask_) & (q.x_mask_ | q.z_mask_);
  while (shared != 0) {
    const int site = std::countr_zero(shared);
    shared &= shared - 1;
    exponent += kPhaseTable[static_cast<int>(p.letter(site))]
                           [static_cast<int>(q.letter(site))];
  }
  return PauliProduct{
      Phase4(exponent),
      PauliString(p.n_qubits_, p.x_mask_ ^ q.x_mask_,
                  p.z_mask_ ^ q.z_mask_)};
}

bool commutes(const PauliString& p, const PauliString& q) {
  require_same_width(p, q);
  const int anti = std::popcount(p.x_mask() & q.z_mask()) +
                   std::popcount(p.z_mask() & q.x_mask());
  return (anti & 1) == 0;
}

void TermSum::add(const PauliString& string, Complex coeff) {
  if (string.n_qubits() != n_qubits_) {
    throw ValidationError("term qubit count " +
                          std::to_string(string.n_qubits()) +
                          " does not match sum on " +
                          std::to_string(n_qubits_) + " qubits");
  }
  if (coeff == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.emplace(string, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

TermSum& TermSum::operator+=(const TermSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw ValidationError("cannot add sums on different qubit counts");
  }
  for (const auto& [string, coeff] : other.terms_) add(string, coeff);
  return *this;
}

TermSum TermSum::scaled(Complex factor) const {
  TermSum out(n_qubits_);
  if (factor == Complex{0.0, 0.0}) return out;
  for (const auto& [string, coeff] : terms_) out.add(string, factor * coeff);
  return out;
}

TermSum TermSum::pruned(double eps) const {
  TermSum out(n_qubits_);
  for (const auto& [string, coeff] : terms_) {
    if (std::abs(coeff) > eps) out.add(string, coeff);
  }
  return out;
}

double TermSum::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [string, coeff] : terms_) {
    m = std::max(m, std::abs(coeff));
  }
  return m;
}

bool TermSum::is_hermitian(double tol) const {
  const double scale = std::max(1.0, max_abs_coeff());
  for (const auto& [string, coeff] : terms_) {
    if (std::abs(coeff.imag()) > tol * scale) return false;
  }
  return true;
}

bool TermSum::is_anti_hermitian(double tol) const {
  const double scale = std::max(1.0, max_abs_coeff());
  for (const auto& [string, coeff] : terms_) {
    if (std::abs(coeff.real()) > tol * scale) return false;
  }
  return true;
}

TermSum multiply(const TermSum& a, const TermSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ValidationError("cannot multiply sums on different qubit counts");
  }
  TermSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      const PauliProduct prod = multiply(pa, pb);
      out.add(prod.string, ca * cb * prod.phase.value());
    }
  }
  return out;
}

TermSum commutator(const HamiltonianTerm& a, const HamiltonianTerm& b) {
  TermSum out(a.pauli.n_qubits());
  if (commutes(a.pauli, b.pauli)) return out;
  // For anticommuting strings [A,B] = 2AB exactly.
  const PauliProduct prod = multiply(a.pauli, b.pauli);
  out.add(prod.string, 2.0 * a.coeff * b.coeff * prod.phase.value());
  return out;
}

TermSum commutator(const TermSum& a, const TermSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ValidationError("cannot commute sums on different qubit counts");
  }
  TermSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      if (commutes(pa, pb)) continue;
      const PauliProduct prod = multiply(pa, pb);
      out.add(prod.string, 2.0 * ca * cb * prod.phase.value());
    }
  }
  return out;
}

}  // namespace hytrot
