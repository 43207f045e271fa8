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

#ifndef CATSIM_PAULI_HPP
#define CATSIM_PAULI_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catsim/fock.hpp"

namespace catsim {

/// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
MatrixXcd pauli_matrix(int which);

/// m-qubit Pauli with base-4 index; qubit 0 is the most significant digit.
MatrixXcd pauli_tensor(int m, int index);

/// "I", "Z1", "Z1Z2", "X2Y3", ... (identity factors omitted, overall
/// identity spelled "I").
std::string pauli_name(int m, int index);

/// Index from digits, e.g. pauli_index({3, 0}) = Z1 on two qubits.
int pauli_index(const std::vector<int>& digits);

/// True when the Pauli contains an X or Y factor on any qubit.
bool pauli_has_xy(int m, int index);

/// True for Z/I-only Paulis other than the identity.
bool pauli_is_phase_type(int m, int index);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

}  // namespace catsim

#endif  // CATSIM_PAULI_HPP
