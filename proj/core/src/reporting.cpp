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

#include <hytrot/reporting.hpp>

#include <cstdio>
#include <fstream>

namespace hytrot {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write " + path.string());
  }
  return out;
}

}  // namespace

std::string fmt_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_ensemble_csv(const std::filesystem::path& path,
                        const EnsembleStats& stats) {
  std::ofstream out = open_out(path);
  out << "time,mse,mse_stderr,fidelity_err,bias_sq,gate_count\n";
  for (std::size_t i = 0; i < stats.times.size(); ++i) {
    out << fmt_g17(stats.times[i]) << ',' << fmt_g17(stats.mse[i]) << ','
        << fmt_g17(stats.mse_stderr[i]) << ','
        << fmt_g17(stats.fidelity_err[i]) << ',' << fmt_g17(stats.bias_sq[i])
        << ',' << stats.gate_counts[i] << '\n';
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw ValidationError("CSV row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

void Metadata::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Metadata::set_double(const std::string& key, double value) {
  set(key, fmt_g17(value));
}

void Metadata::set_u64(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void Metadata::set_int(const std::string& key, int value) {
  set(key, std::to_string(value));
}

bool Metadata::contains(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

const std::string& Metadata::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw ValidationError("metadata key '" + key + "' is missing");
}

std::string Metadata::get_or(const std::string& key,
                             std::string fallback) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return fallback;
}

double Metadata::get_double(const std::string& key) const {
  return std::stod(get(key));
}

std::uint64_t Metadata::get_u64(const std::string& key) const {
  return std::stoull(get(key));
}

int Metadata::get_int(const std::string& key) const {
  return std::stoi(get(key));
}

void Metadata::save(const std::filesystem::path& path) const {
  std::ofstream out = open_out(path);
  for (const auto& [k, v] : entries_) {
    out << k << " = " << v << '\n';
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

Metadata Metadata::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open metadata file " + path.string());
  }
  Metadata meta;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 'key = value'");
    }
    meta.set(line.substr(0, eq), line.substr(eq + 3));
  }
  return meta;
}

}  // namespace hytrot
