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

#ifndef CATSIM_ERROR_MODELS_HPP
#define CATSIM_ERROR_MODELS_HPP

#include <string>
#include <vector>

#include "catsim/fock.hpp"
#include "catsim/gates.hpp"

namespace catsim {

/// Qubit-level error channel in explicit Kraus form. The closed-form model
/// operators are first-order error components; `completed` means a no-error
/// Kraus sqrt(I - sum M^dag M) has been appended so the set is a valid
/// trace-preserving channel.
struct KrausSet {
  int modes = 0;
  std::vector<MatrixXcd> operators;
  bool completed = false;

  /// max-abs deviation of sum M^dag M from identity (completed sets only).
  double completeness_error() const;
  MatrixXcd apply(const MatrixXcd& rho) const;
};

/// Append the no-error element; throws if sum M^dag M has an eigenvalue
/// above 1 (model outside its validity range).
KrausSet complete(KrausSet set);

/// Diagonal Pauli-transfer probabilities of the channel under Pauli
/// twirling: squared Pauli coefficients summed over Kraus operators,
/// labeled (identity included).
std::vector<std::pair<std::string, double>> pauli_twirl(const KrausSet& set);

/// Phase-error budget of one conditional-rotation gate, split by source.
struct GateErrorBudget {
  int modes = 0;
  double p_z1 = 0, p_z2 = 0, p_z3 = 0;
  double p_z1z2 = 0, p_z1z3 = 0, p_z2z3 = 0, p_z1z2z3 = 0;
  double photon_loss_part = 0, nonadiabatic_part = 0;
  /// Coherence between the Z2 and Z1Z2 errors left by target photon loss.
  cplx coherence_z2_z1z2{0.0, 0.0};

  double total_phase_error() const {
    return p_z1 + p_z2 + p_z3 + p_z1z2 + p_z1z3 + p_z2z3 + p_z1z2z3;
  }
};

/// p_Z1 = nbar kappa1 T + (2 pi nbar kappa2 T)^-1,
/// p_Z2 = p_Z1Z2 = nbar kappa1 T / 2, coherence magnitude nbar kappa1 T / pi.
GateErrorBudget cnot_error_budget(const CatQubitParams& params, double duration);

/// Photon loss: Z1 and Z2 at nbar kappa1 T each, target-loss weight
/// nbar kappa1 T spread over {Z3, Z1Z3, Z2Z3, Z1Z2Z3}; nonadiabatic Z1, Z2,
/// Z1Z2 at (4 pi nbar kappa2 T)^-1 each.
GateErrorBudget toffoli_error_budget(const CatQubitParams& params,
                                     double duration);

/// Loss-only Kraus model of the gate (without the nonadiabatic part);
/// r = arcsin(2/pi)/2 fixes the coherent split of the target-loss piece.
KrausSet cnot_kraus(const CatQubitParams& params, double duration);
KrausSet toffoli_kraus(const CatQubitParams& params, double duration);

/// T* = [2 nbar sqrt(pi kappa1/kappa2)]^-1 / kappa2; requires kappa1 > 0.
double optimal_gate_time(const CatQubitParams& params);

/// sqrt(1 - total budget) at the given duration.
double fidelity_at(GateKind gate, const CatQubitParams& params, double duration);

/// Closed-form maximum over T: sqrt(1 - sqrt(4/pi k1/k2)) for the CNOT,
/// sqrt(1 - sqrt(9/pi k1/k2)) for the Toffoli.
double predicted_fidelity(GateKind gate, const CatQubitParams& params);

struct SuppressionFit {
  double slope = 0.0;      // d(ln p) / d(2 nbar)
  double intercept = 0.0;  // ln p at nbar = 0
};

/// Least-squares fit of ln(p) against 2 nbar; at least three points with
/// positive p required.
SuppressionFit suppression_fit(
    const std::vector<std::pair<double, double>>& nbar_vs_p);

std::string budget_to_json(const GateErrorBudget& budget);
std::string kraus_to_json(const KrausSet& set);

}  // namespace catsim

#endif  // CATSIM_ERROR_MODELS_HPP
