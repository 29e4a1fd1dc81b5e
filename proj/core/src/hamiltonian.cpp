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

#include <hytrot/hamiltonian.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <hytrot/rng.hpp>

namespace hytrot {

namespace {

bool descending_magnitude(const HamiltonianTerm& a, const HamiltonianTerm& b) {
  const double ma = std::abs(a.coeff);
  const double mb = std::abs(b.coeff);
  if (ma != mb) return ma > mb;
  return a.pauli < b.pauli;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& message) {
  throw ValidationError(path.string() + ":" + std::to_string(line) + ": " +
                        message);
}

std::string format_coeff(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

PartitionedHamiltonian::PartitionedHamiltonian(
    int n_qubits, std::vector<HamiltonianTerm> terms, double identity_offset)
    : n_qubits_(n_qubits),
      terms_(std::move(terms)),
      identity_offset_(identity_offset) {
  for (const auto& term : terms_) {
    if (term.pauli.n_qubits() != n_qubits_) {
      throw ValidationError("term qubit count does not match Hamiltonian");
    }
    if (!std::isfinite(term.coeff) || term.coeff == 0.0) {
      throw ValidationError("term coefficients must be finite and nonzero");
    }
    if (term.pauli.is_identity()) {
      throw ValidationError(
          "identity terms belong in the identity offset, not the term list");
    }
  }
  std::sort(terms_.begin(), terms_.end(), descending_magnitude);
}

void PartitionedHamiltonian::set_n_d(int n_d) {
  if (n_d < 0 || n_d > term_count()) {
    throw ValidationError("n_d must be in [0, " +
                          std::to_string(term_count()) + "], got " +
                          std::to_string(n_d));
  }
  n_d_ = n_d;
}

TermSum PartitionedHamiltonian::h0_sum(int n_d) const {
  if (n_d < 0 || n_d > term_count()) {
    throw ValidationError("n_d out of range");
  }
  TermSum sum(n_qubits_);
  for (int i = 0; i < n_d; ++i) sum.add(terms_[i]);
  return sum;
}

std::span<const HamiltonianTerm> PartitionedHamiltonian::h1_terms(
    int n_d) const {
  if (n_d < 0 || n_d > term_count()) {
    throw ValidationError("n_d out of range");
  }
  return std::span<const HamiltonianTerm>(terms_).subspan(n_d);
}

TermSum PartitionedHamiltonian::full_sum() const {
  TermSum sum(n_qubits_);
  for (const auto& term : terms_) sum.add(term);
  return sum;
}

std::pair<TermSum, std::vector<HamiltonianTerm>> partition(
    const PartitionedHamiltonian& h, int n_d) {
  auto h1 = h.h1_terms(n_d);
  return {h.h0_sum(n_d),
          std::vector<HamiltonianTerm>(h1.begin(), h1.end())};
}

PartitionedHamiltonian load_hamiltonian(const std::filesystem::path& path,
                                        double coeff_floor) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open Hamiltonian file " + path.string());
  }

  int n_qubits = 0;
  int line_no = 0;
  std::string line;

  // Header: "qubits N" (comments and blank lines may precede it).
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    if (keyword != "qubits") {
      parse_fail(path, line_no, "expected 'qubits N' header");
    }
    if (!(tokens >> n_qubits) || n_qubits < 1) {
      parse_fail(path, line_no, "bad qubit count");
    }
    std::string extra;
    if (tokens >> extra) parse_fail(path, line_no, "trailing tokens in header");
    break;
  }
  if (n_qubits == 0) {
    throw ValidationError(path.string() + ": missing 'qubits N' header");
  }

  std::map<PauliString, double> merged;
  double identity_offset = 0.0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string coeff_token;
    if (!(tokens >> coeff_token)) continue;

    double coeff = 0.0;
    std::size_t used = 0;
    try {
      coeff = std::stod(coeff_token, &used);
    } catch (const std::exception&) {
      parse_fail(path, line_no, "bad coefficient '" + coeff_token + "'");
    }
    if (used != coeff_token.size()) {
      parse_fail(path, line_no, "bad coefficient '" + coeff_token + "'");
    }
    if (!std::isfinite(coeff)) {
      parse_fail(path, line_no, "coefficient must be finite");
    }

    std::vector<std::pair<int, Pauli>> ops;
    std::string token;
    while (tokens >> token) {
      if (token.size() < 2) {
        parse_fail(path, line_no, "operator token '" + token +
                                      "' is missing a qubit index");
      }
      Pauli letter;
      try {
        letter = pauli_from_char(token[0]);
      } catch (const ValidationError& e) {
        parse_fail(path, line_no, e.what());
      }
      if (letter == Pauli::I) {
        parse_fail(path, line_no, "identity letters are written as a bare "
                                  "coefficient line, not 'I<k>'");
      }
      std::size_t idx_used = 0;
      int qubit = -1;
      try {
        qubit = std::stoi(token.substr(1), &idx_used);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad qubit index in '" + token + "'");
      }
      if (idx_used + 1 != token.size() || qubit < 0) {
        parse_fail(path, line_no, "bad qubit index in '" + token + "'");
      }
      if (qubit >= n_qubits) {
        parse_fail(path, line_no,
                   "qubit index " + std::to_string(qubit) +
                       " is not below the declared count " +
                       std::to_string(n_qubits));
      }
      ops.emplace_back(qubit, letter);
    }

    if (ops.empty()) {
      identity_offset += coeff;
      continue;
    }
    PauliString string(n_qubits);
    try {
      string = PauliString::from_ops(n_qubits, ops);
    } catch (const ValidationError& e) {
      parse_fail(path, line_no, e.what());
    }
    merged[string] += coeff;
  }

  std::vector<HamiltonianTerm> terms;
  terms.reserve(merged.size());
  for (const auto& [string, coeff] : merged) {
    if (std::abs(coeff) < coeff_floor || coeff == 0.0) continue;
    terms.push_back(HamiltonianTerm{coeff, string});
  }
  if (terms.empty()) {
    throw ValidationError(path.string() +
                          ": no terms left after merging and filtering");
  }
  return PartitionedHamiltonian(n_qubits, std::move(terms), identity_offset);
}

void save_hamiltonian(const PartitionedHamiltonian& h,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write Hamiltonian file " + path.string());
  }
  out << "qubits " << h.n_qubits() << "\n";
  if (h.identity_offset() != 0.0) {
    out << format_coeff(h.identity_offset()) << "\n";
  }
  for (const auto& term : h.terms()) {
    out << format_coeff(term.coeff) << " " << term.pauli.to_string() << "\n";
  }
  if (!out) {
    throw ValidationError("write failed for " + path.string());
  }
}

PartitionedHamiltonian heisenberg_chain(int n, std::uint64_t field_seed) {
  if (n < 2) {
    throw ValidationError("chain length must be at least 2");
  }
  std::vector<HamiltonianTerm> terms;
  terms.reserve(static_cast<std::size_t>(3 * n * (n - 1) / 2 + n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double distance = j - i;
      const double coupling = 1.0 / (distance * distance * distance * distance);
      for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
        const std::pair<int, Pauli> ops[] = {{i, letter}, {j, letter}};
        terms.push_back(
            HamiltonianTerm{coupling, PauliString::from_ops(n, ops)});
      }
    }
  }
  SplitMix64 rng(field_seed);
  for (int i = 0; i < n; ++i) {
    const double field = rng.next_symmetric();
    const std::pair<int, Pauli> ops[] = {{i, Pauli::Z}};
    terms.push_back(HamiltonianTerm{field, PauliString::from_ops(n, ops)});
  }
  return PartitionedHamiltonian(n, std::move(terms));
}

double commutator_norm(const TermSum& h0, const TermSum& h1, int dense_cap) {
  if (h0.empty() || h1.empty()) return 0.0;
  const TermSum comm = commutator(h0, h1);
  return spectral_norm(comm, dense_cap);
}

double bch_constant(const PartitionedHamiltonian& h, int n_d, int dense_cap) {
  auto h1 = h.h1_terms(n_d);
  TermSum q(h.n_qubits());

  // [H1, H0], assembled term by term.
  const auto all = h.terms();
  for (const auto& random_term : h1) {
    for (int i = 0; i < n_d; ++i) {
      q += commutator(random_term, all[i]);
    }
  }
  // Commutators between deterministic terms, ordered by ascending magnitude
  // (storage is descending, so index p > q means smaller magnitude first).
  for (int p = n_d - 1; p >= 0; --p) {
    for (int s = p - 1; s >= 0; --s) {
      q += commutator(all[p], all[s]);
    }
  }
  if (q.empty()) return 0.0;
  const TermSum q_squared = multiply(q, q);
  return spectral_norm(q_squared, dense_cap) / 4.0;
}

}  // namespace hytrot
