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

#ifndef CATSIM_GATES_HPP
#define CATSIM_GATES_HPP

#include <random>
#include <string>

#include "catsim/fock.hpp"
#include "catsim/lindblad.hpp"

namespace catsim {

/// Single-mode noise channels added on top of the engineered dissipation:
/// photon loss at kappa1(1+n_th), thermal excitation at kappa1*n_th and pure
/// dephasing at kappa_phi.
struct NoiseSpec {
  double loss_rate = 0.0;      // multiplies D[a]
  double thermal_rate = 0.0;   // multiplies D[a^dag]
  double dephasing_rate = 0.0; // multiplies D[a^dag a]

  static NoiseSpec from(const CatQubitParams& p) {
    return {p.kappa1 * (1.0 + p.n_th), p.kappa1 * p.n_th, p.kappa_phi};
  }
  static NoiseSpec none() { return {}; }
  bool empty() const {
    return loss_rate == 0.0 && thermal_rate == 0.0 && dephasing_rate == 0.0;
  }
};

/// How the deterministic conditional phase of the conditional-rotation gates
/// is dealt with. `frame` leaves the dynamics alone and folds the phase into
/// the ideal-gate reference; `drive` appends a weak-drive rotation segment
/// that physically undoes it.
enum class PhaseCompensation { frame, drive };

struct MeasurementOutcome {
  int value;  // +1 or -1
  double probability;
  DensityMatrix post_state;
};

// ---- Schedule constructors ----
// Every constructor accepts an optional per-mode truncation override;
// 0 means default_truncation(alpha).

/// kappa2 D[a^2 - alpha^2] plus the given noise channels.
GateSchedule idle_schedule(const CatQubitParams& params, double duration,
                           const NoiseSpec& noise, int truncation = 0);

/// Weak resonant drive in the presence of the idle dissipation. The drive
/// strength must satisfy epsilon_z << kappa2 (warns above 0.1 ratio).
/// theta = 0 degenerates to a short idle schedule.
GateSchedule z_rotation_schedule(const CatQubitParams& params, double theta,
                                 double epsilon_z, int truncation = 0);

/// Dissipator kappa2 D[a^2 - alpha^2 exp(2 i pi t / T)]; with feedforward, a
/// -(pi/T) a^dag a Hamiltonian that makes the rotating-pointer tracking
/// exact. Without feedforward the motion must be adiabatic: T >= 5/kappa2 is
/// enforced.
GateSchedule x_gate_schedule(const CatQubitParams& params, double duration,
                             bool feedforward, int truncation = 0);

/// Control mode keeps the idle dissipator; the target pump is rotated
/// conditioned on the control being in |-alpha>. Equal alpha on both modes.
GateSchedule cnot_schedule(const CatQubitParams& control,
                           const CatQubitParams& target, double duration,
                           bool feedforward,
                           PhaseCompensation compensation = PhaseCompensation::frame,
                           int truncation = 0);

/// Both control modes keep idle dissipators; the target pump rotates only on
/// the |-alpha,-alpha> control branch.
GateSchedule toffoli_schedule(const CatQubitParams& control1,
                              const CatQubitParams& control2,
                              const CatQubitParams& target, double duration,
                              bool feedforward,
                              PhaseCompensation compensation = PhaseCompensation::frame,
                              int truncation = 0);

/// Weak beam-splitter drive across two idle-stabilized modes; duration is set
/// so the accumulated two-mode phase equals theta.
GateSchedule cz_theta_schedule(const CatQubitParams& a, const CatQubitParams& b,
                               double theta, double epsilon_zz,
                               int truncation = 0);

// ---- Conventions ----

/// Angular rate at which the weak-drive rotation accumulates gate angle:
/// d(theta)/dt = zeno_angle_rate(epsilon, |alpha|).
double zeno_angle_rate(double epsilon, double alpha_mag);
/// Same for the two-mode beam-splitter phase.
double zeno_zz_angle_rate(double epsilon, double nbar);

/// Deterministic phase acquired by the rotated branch of a conditional
/// rotation (CNOT: control |1>; Toffoli: controls |11>), relative to the
/// parked branches: -pi nbar, independent of feedforward.
double conditional_branch_phase(bool feedforward, double nbar);

// ---- Parity measurement (abstract projective model) ----

std::pair<double, double> parity_branch_probabilities(const DensityMatrix& rho,
                                                      int mode);
/// Projects onto the requested parity eigenvalue (+1/-1) and renormalizes.
/// Throws if that branch has (near-)zero probability.
MeasurementOutcome project_parity(const DensityMatrix& rho, int mode, int value);
/// Samples one of the two branches.
MeasurementOutcome measure_parity(const DensityMatrix& rho, int mode,
                                  std::mt19937_64& rng);

// ---- Experiment-config descriptions ----

enum class GateKind { idle, z_rotation, x, cnot, toffoli, cz };

/// Everything needed to rebuild one gate's schedule and its ideal reference.
struct GateSpec {
  GateKind kind = GateKind::idle;
  std::vector<CatQubitParams> modes;
  double duration = 1.0;
  bool feedforward = true;
  PhaseCompensation compensation = PhaseCompensation::frame;
  double theta = 0.0;    // z_rotation / cz
  double epsilon = 0.02; // drive strength for z_rotation / cz, in kappa2 units
  int truncation = 0;

  int num_modes() const { return static_cast<int>(modes.size()); }
};

GateSchedule build_schedule(const GateSpec& spec);

/// Code-space matrix (2^m x 2^m, basis |0..0>, |0..1>, ...) of the gate the
/// spec aims at, including the deterministic branch phase whenever the spec
/// uses frame compensation.
MatrixXcd ideal_code_unitary(const GateSpec& spec);

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

/// JSON round-trip for experiment configs.
std::string gate_spec_to_json(const GateSpec& spec);
GateSpec gate_spec_from_json(const std::string& json_text);

}  // namespace catsim

#endif  // CATSIM_GATES_HPP
