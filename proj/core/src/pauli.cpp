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

#include "catsim/pauli.hpp"

#include <stdexcept>

namespace catsim {

MatrixXcd pauli_matrix(int which) {
  MatrixXcd p(2, 2);
  const cplx i1(0.0, 1.0);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -i1, i1, 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli index must be 0..3");
  }
  return p;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

namespace {

std::vector<int> digits_of(int m, int index) {
  std::vector<int> d(m);
  for (int k = m - 1; k >= 0; --k) {
    d[k] = index % 4;
    index /= 4;
  }
  return d;
}

}  // namespace

MatrixXcd pauli_tensor(int m, int index) {
  auto d = digits_of(m, index);
  MatrixXcd out = pauli_matrix(d[0]);
  for (int k = 1; k < m; ++k) out = kron(out, pauli_matrix(d[k]));
  return out;
}

std::string pauli_name(int m, int index) {
  static const char* names = "IXYZ";
  auto d = digits_of(m, index);
  std::string out;
  for (int k = 0; k < m; ++k) {
    if (d[k] != 0) {
      out += names[d[k]];
      out += std::to_string(k + 1);
    }
  }
  return out.empty() ? "I" : out;
}

int pauli_index(const std::vector<int>& digits) {
  int idx = 0;
  for (int d : digits) {
    if (d < 0 || d > 3) throw std::invalid_argument("pauli digit must be 0..3");
    idx = idx * 4 + d;
  }
  return idx;
}

bool pauli_has_xy(int m, int index) {
  for (int d : digits_of(m, index))
    if (d == 1 || d == 2) return true;
  return false;
}

bool pauli_is_phase_type(int m, int index) {
  return index != 0 && !pauli_has_xy(m, index);
}

}  // namespace catsim
