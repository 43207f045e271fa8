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

#ifndef CATSIM_LINDBLAD_HPP
#define CATSIM_LINDBLAD_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

/// Operator-valued function of time on [0, T], stored as a linear
/// combination sum_j c_j(t) B_j of constant operators. Constant operators
/// are a single unit-coefficient term. The combination form is what the
/// integrator exploits: the B_j are compiled to sparse form once and only
/// the scalar coefficients are re-evaluated at substage times.
class TimeDependentOperator {
 public:
  using Coefficient = std::function<cplx(double)>;

  static TimeDependentOperator constant(Operator op);
  static TimeDependentOperator combination(
      std::vector<std::pair<Coefficient, Operator>> terms);

  bool is_constant() const { return constant_; }
  const Space& space() const { return space_; }
  const std::vector<std::pair<Coefficient, Operator>>& terms() const {
    return terms_;
  }

  /// Dense evaluation at time t.
  Operator at(double t) const;

 private:
  TimeDependentOperator() = default;
  std::vector<std::pair<Coefficient, Operator>> terms_;
  Space space_;
  bool constant_ = false;
};

/// One engineered or noise dissipation channel, rate * D[op(t)].
struct Dissipator {
  double rate;
  TimeDependentOperator op;
};

/// Dynamics of one gate over [0, duration]: optional Hamiltonian plus
/// dissipators, all on the same composite space.
struct GateSchedule {
  double duration;
  std::optional<TimeDependentOperator> hamiltonian;
  std::vector<Dissipator> dissipators;

  Space space() const;
  void validate() const;
};

/// Step-size policy. Exactly one of fixed dt or adaptive tolerance is used;
/// when neither is given the default is dt = 1e-3 / max_k(rate_k).
struct StepControl {
  std::optional<double> dt;
  std::optional<double> tolerance;  // adaptive step-doubling, in (0, 1e-3]
  int snapshots = 0;                // trajectory sample count (0 = none)
};

struct EvolutionResult {
  DensityMatrix final_state;
  double trace_drift = 0.0;
  std::vector<std::pair<double, DensityMatrix>> trajectory;
};

/// Integrates d(rho)/dt = -i[H(t), rho] + sum_k rate_k D[L_k(t)] rho with a
/// fixed-step classical RK4 on the matrix form; rho is re-Hermitized after
/// each step. Throws on NaN contamination or an unreachable adaptive
/// tolerance.
EvolutionResult evolve(const DensityMatrix& rho0, const GateSchedule& schedule,
                       const StepControl& control = {});

struct SteadyStateOptions {
  double residual_norm = 1e-8;  // Frobenius norm of d(rho)/dt at convergence
  double max_time = 1e4;        // in units of the largest rate's inverse
  double check_interval = 1.0;
};

/// Long-time integration of a schedule with constant operators until the
/// generator's residual drops below the requested norm.
DensityMatrix steady_state(const GateSchedule& schedule,
                           const DensityMatrix& rho0,
                           const SteadyStateOptions& opts = {});

}  // namespace catsim

#endif  // CATSIM_LINDBLAD_HPP
