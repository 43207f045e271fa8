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

#ifndef CATSIM_NOGO_HPP
#define CATSIM_NOGO_HPP

#include <random>
#include <string>
#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

/// The 16 two-qubit Paulis with labels, trace-orthogonal, each squaring to
/// the identity.
std::vector<std::pair<std::string, MatrixXcd>> two_qubit_pauli_basis();

/// True when U Z_j U^dag commutes with both Z_1 and Z_2 for j = 1, 2
/// (commutator norms below 1e-9); throws on non-unitary input.
bool is_bias_preserving(const MatrixXcd& u);

struct CommutantReport {
  int dimension = 0;
  std::vector<std::string> basis_labels;
  /// Largest residual of projecting {I, Z1, Z2, Z1Z2} onto the numerical
  /// nullspace (0 means the spans agree).
  double span_residual = 0.0;
};

/// Builds the 64 x 16 map D -> ([[D, Z_j], Z_k])_{j,k} over Pauli
/// coordinates and returns its nullspace: the generators whose exponentials
/// stay bias preserving along the whole path.
CommutantReport commutant_dimension();

/// Requires is_bias_preserving(u). True iff u is diagonal up to global phase
/// (off-diagonal norm < 1e-10), i.e. u = exp(i span{I, Z1, Z2, Z1Z2}).
bool in_identity_component(const MatrixXcd& u);

/// Random element of the bias-preserving group: a random diagonal unitary
/// times a random representative permutation (identity, SWAP, CNOTs, X
/// layers).
MatrixXcd random_bias_preserving(std::mt19937_64& rng);

/// Full verification report (commutant, CNOT verdicts, closure spot-check)
/// as a JSON string.
std::string nogo_report_json(int closure_samples, uint64_t seed);

}  // namespace catsim

#endif  // CATSIM_NOGO_HPP
