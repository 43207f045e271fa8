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

#include "catsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "catsim/pauli.hpp"
#include "json.hpp"

namespace catsim {

uint64_t config_hash(const std::string& canonical_text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path, uint64_t config_hash_value,
                     uint64_t seed)
    : path_(std::move(path)) {
  char line[128];
  std::snprintf(line, sizeof(line), "# config_hash=%016llx\n",
                static_cast<unsigned long long>(config_hash_value));
  buffer_ += line;
  std::snprintf(line, sizeof(line), "# seed=%llu\n",
                static_cast<unsigned long long>(seed));
  buffer_ += line;
}

void CsvWriter::comment(const std::string& line) {
  buffer_ += "# " + line + "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ",";
    buffer_ += columns[i];
  }
  buffer_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ",";
    buffer_ += format_double(values[i]);
  }
  buffer_ += "\n";
}

void CsvWriter::raw_row(const std::string& line) { buffer_ += line + "\n"; }

void CsvWriter::flush() { write_text_file(path_, buffer_); }

void write_text_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move into place: " + path);
}

void write_wigner_csv(const WignerGrid& grid, const std::string& path,
                      uint64_t config_hash_value, uint64_t seed) {
  CsvWriter w(path, config_hash_value, seed);
  w.comment("wigner grid, row-major in x");
  w.comment("x_min=" + format_double(grid.x_min) +
            " x_max=" + format_double(grid.x_max) +
            " p_min=" + format_double(grid.p_min) +
            " p_max=" + format_double(grid.p_max) +
            " step=" + format_double(grid.step));
  w.header({"x", "p", "w"});
  for (size_t i = 0; i < grid.x.size(); ++i)
    for (size_t j = 0; j < grid.p.size(); ++j)
      w.row({grid.x[i], grid.p[j], grid.w(i, j)});
  w.flush();
}

void write_state_csv(const StateVector& psi, const std::string& path,
                     uint64_t config_hash_value, uint64_t seed) {
  CsvWriter w(path, config_hash_value, seed);
  w.comment("state amplitudes in the Fock basis");
  w.header({"n", "re", "im"});
  for (int n = 0; n < psi.dim(); ++n)
    w.row({double(n), psi.amp[n].real(), psi.amp[n].imag()});
  w.flush();
}

void write_chi_csv(const ChiMatrix& chi, const std::string& path,
                   uint64_t config_hash_value, uint64_t seed) {
  CsvWriter w(path, config_hash_value, seed);
  w.comment("process matrix over the Pauli basis");
  w.header({"row", "col", "re", "im"});
  for (int r = 0; r < chi.size(); ++r)
    for (int c = 0; c < chi.size(); ++c)
      w.raw_row(pauli_name(chi.modes, r) + "," + pauli_name(chi.modes, c) +
                "," + format_double(chi.data(r, c).real()) + "," +
                format_double(chi.data(r, c).imag()));
  w.flush();
}

std::string report_to_json(const TomographyReport& report) {
  nlohmann::ordered_json j;
  j["modes"] = report.modes;
  j["flagged"] = report.flagged;
  j["max_leakage"] = report.max_leakage;
  j["input_leakage"] = report.input_leakage;
  nlohmann::ordered_json probs;
  for (const auto& [label, p] : report.phase_error_probs) probs[label] = p;
  j["phase_error_probs"] = probs;
  j["x_type_weight"] = report.x_type_weight;
  j["gate_fidelity"] = gate_fidelity(report);
  j["chi_err_trace"] = report.chi_err.data.trace().real();
  j["chi_min_eigenvalue"] = report.chi.min_eigenvalue();
  return j.dump(2);
}

}  // namespace catsim
