// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CATSIM_IO_HPP
#define CATSIM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "catsim/fock.hpp"
#include "catsim/tomography.hpp"

namespace catsim {

/// FNV-1a of the canonical config text; stamped into output headers.
uint64_t config_hash(const std::string& canonical_text);

/// `#`-prefixed header lines carrying the config hash, seed and free-form
/// metadata, followed by a comma-separated table. Numeric formatting is
/// fixed ("%.12g") so identical inputs produce identical bytes.
class CsvWriter {
 public:
  CsvWriter(std::string path, uint64_t config_hash_value, uint64_t seed);
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  /// Writes the accumulated content to disk (atomically via rename).
  void flush();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
};

std::string format_double(double v);

/// Row-major Wigner samples with grid metadata in the header block.
void write_wigner_csv(const WignerGrid& grid, const std::string& path,
                      uint64_t config_hash_value, uint64_t seed);

/// Fock amplitudes of a state (real, imag columns).
void write_state_csv(const StateVector& psi, const std::string& path,
                     uint64_t config_hash_value, uint64_t seed);

/// Process-matrix dump: one row per entry with Pauli labels and re/im parts.
void write_chi_csv(const ChiMatrix& chi, const std::string& path,
                   uint64_t config_hash_value, uint64_t seed);

/// Tomography report as a JSON string (stable key order).
std::string report_to_json(const TomographyReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace catsim

#endif  // CATSIM_IO_HPP
