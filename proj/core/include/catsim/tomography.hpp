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

#ifndef CATSIM_TOMOGRAPHY_HPP
#define CATSIM_TOMOGRAPHY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catsim/fock.hpp"
#include "catsim/gates.hpp"
#include "catsim/lindblad.hpp"

namespace catsim {

/// Process matrix over the m-qubit Pauli basis, normalized so a
/// trace-preserving channel has unit trace; entry (m, n) multiplies
/// P_m rho P_n^dag.
struct ChiMatrix {
  int modes = 0;
  MatrixXcd data;

  int size() const { return static_cast<int>(data.rows()); }
  cplx entry(const std::string& row_label, const std::string& col_label) const;
  double diagonal_weight(const std::string& label) const;
  /// Total diagonal weight on Paulis containing X or Y.
  double xy_weight() const;
  /// Diagonal weights of the non-identity Z/I-only Paulis, labeled.
  std::vector<std::pair<std::string, double>> phase_diagonal() const;
  double min_eigenvalue() const;
};

/// Same shape as ChiMatrix; the channel left over after factoring out the
/// ideal gate.
using ErrorMatrix = ChiMatrix;

struct TomographyReport {
  int modes = 0;
  ChiMatrix chi;
  ErrorMatrix chi_err;
  std::vector<double> input_leakage;
  double max_leakage = 0.0;
  bool flagged = false;  // some input leaked beyond the reliability threshold
  std::vector<std::pair<std::string, double>> phase_error_probs;
  double x_type_weight = 0.0;
};

/// The 4^m tomography input states: per mode {|0>_c, |1>_c, |+>_c, |+i>_c},
/// built from cat states on the given per-mode truncations.
std::vector<StateVector> code_basis(cplx alpha, int m, const Space& space);
/// Same, with every mode at default truncation.
std::vector<StateVector> code_basis(cplx alpha, int m);

/// Code-space coordinates of the k-th basis input (2^m column).
VectorXcd code_basis_coords(int m, int k);

/// Isometry from the 2^m code space into the Fock space of `space`
/// (columns: tensor products of |0>_c, |1>_c).
MatrixXcd code_isometry(cplx alpha, const Space& space);

struct TomographyOptions {
  StepControl step;
  int threads = 1;
  double leakage_flag_threshold = 0.05;
  /// Reference unitary factored out to produce chi_err. Identity if absent.
  std::optional<MatrixXcd> ideal;
};

/// Evolves every code-basis input through the schedule, projects the outputs
/// back onto the code space (recording leakage), reconstructs chi by linear
/// inversion and factors out the ideal reference.
TomographyReport process_tomography(const GateSchedule& gate, cplx alpha, int m,
                                    const TomographyOptions& options = {});

/// Same pipeline for an arbitrary channel acting on density matrices of
/// `space`; the oracle entry point used to validate reconstruction without
/// any dynamics involved.
using DensityChannel = std::function<DensityMatrix(const DensityMatrix&)>;
TomographyReport process_tomography(const DensityChannel& channel, cplx alpha,
                                    const Space& space,
                                    const TomographyOptions& options = {});

/// Convenience wrapper: builds the schedule and ideal reference from the
/// spec, picks the alpha from mode 0.
TomographyReport tomography_of_gate(const GateSpec& spec,
                                    const TomographyOptions& options = {});

/// chi_err such that E(rho) = sum chi_err_mn P_m (U rho U^dag) P_n^dag.
ErrorMatrix factor_ideal(const ChiMatrix& chi, const MatrixXcd& ideal_unitary);

/// sqrt(1 - sum of diagonal phase-error weights of chi_err). Throws if the
/// radicand is negative (inconsistent report).
double gate_fidelity(const TomographyReport& report);

/// Cross-check: minimum state fidelity over the code-basis inputs, evaluated
/// directly from chi_err.
double worst_case_fidelity(const ErrorMatrix& chi_err);

}  // namespace catsim

#endif  // CATSIM_TOMOGRAPHY_HPP
