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
#include <string>
#include <vector>

#include <hytrot/analysis.hpp>

namespace hytrot {

/// Double formatted with 17 significant digits (value-exact round trips).
std::string fmt_g17(double value);

/// Writes the ensemble result schema, one row per recorded time:
///   time,mse,mse_stderr,fidelity_err,bias_sq,gate_count
void write_ensemble_csv(const std::filesystem::path& path,
                        const EnsembleStats& stats);

/// Writes a small generic CSV table (header row mandatory).
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// The plain-text `key = value` record that accompanies every output
/// directory. Entries keep insertion order; '#' lines are comments. A run
/// can be replayed bit-identically from its record.
class Metadata {
 public:
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_u64(const std::string& key, std::uint64_t value);
  void set_int(const std::string& key, int value);

  bool contains(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  int get_int(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void save(const std::filesystem::path& path) const;
  static Metadata load(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace hytrot
