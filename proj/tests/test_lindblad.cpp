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

#include "catsim/lindblad.hpp"

#include <numbers>

#include "catsim/gates.hpp"
#include "doctest.h"

using namespace catsim;
using std::numbers::pi;

namespace {

GateSchedule damping_schedule(double kappa, int dim, double duration) {
  GateSchedule s;
  s.duration = duration;
  s.dissipators.push_back(
      {kappa, TimeDependentOperator::constant(annihilation({dim}))});
  return s;
}

DensityMatrix fock_dm(int n, int dim) {
  VectorXcd v = VectorXcd::Zero(dim);
  v[n] = 1.0;
  return DensityMatrix::from_pure({v, Space{ModeSpace{dim}}});
}

}  // namespace

TEST_CASE("amplitude damping matches the analytic decay") {
  const double kappa = 1.0, T = 1.0;
  auto schedule = damping_schedule(kappa, 6, T);
  auto res = evolve(fock_dm(1, 6), schedule, {});
  CHECK(std::abs(res.final_state.mat(1, 1).real() - std::exp(-kappa * T)) <
        1e-5);
  CHECK(std::abs(res.trace_drift) < 1e-6);

  SUBCASE("adaptive stepping hits the same answer") {
    StepControl ctrl;
    ctrl.tolerance = 1e-6;
    auto res2 = evolve(fock_dm(1, 6), schedule, ctrl);
    CHECK(std::abs(res2.final_state.mat(1, 1).real() - std::exp(-kappa * T)) <
          1e-5);
  }
}

TEST_CASE("free rotation of a coherent state") {
  const int N = 25;
  const double omega = 2.0, T = 0.7;
  GateSchedule s;
  s.duration = T;
  Operator n = number_operator({N});
  n.mat *= omega;
  s.hamiltonian = TimeDependentOperator::constant(std::move(n));
  s.dissipators.push_back(
      {0.0, TimeDependentOperator::constant(annihilation({N}))});
  StateVector a = coherent_state(1.4, {N});
  auto res = evolve(DensityMatrix::from_pure(a), s, {});
  StateVector target =
      coherent_state(1.4 * std::exp(cplx(0.0, -omega * T)), {N});
  CHECK(state_fidelity(target, res.final_state) > 1.0 - 1e-5);
}

TEST_CASE("two-photon pumping prepares the even cat from vacuum") {
  CatQubitParams p{2.0, 1.0, 0.0, 0.0, 0.0};
  const int N = 24;
  auto sched = idle_schedule(p, 10.0, NoiseSpec::none(), N);
  auto res = evolve(fock_dm(0, N), sched, {});
  StateVector even = cat_state(2.0, CatParity::even, {N});
  CHECK(state_fidelity(even, res.final_state) > 0.999);
  CHECK(std::abs(res.trace_drift) < 1e-6);
  CHECK(res.final_state.min_eigenvalue() > -1e-6);
}

TEST_CASE("parity is conserved by two-photon dynamics") {
  CatQubitParams p{1.5, 1.0, 0.0, 0.0, 0.0};
  const int N = 20;
  auto sched = idle_schedule(p, 2.0, NoiseSpec::none(), N);
  StateVector mix = coherent_state(1.5, {N});  // superposition of parities
  Operator parity = parity_operator({N});
  DensityMatrix rho0 = DensityMatrix::from_pure(mix);
  double before = expectation(parity, rho0);
  auto res = evolve(rho0, sched, {});
  double after = expectation(parity, res.final_state);
  CHECK(std::abs(after - before) < 1e-5);
}

TEST_CASE("drive-plus-pump form matches the shifted dissipator") {
  // kappa D[a^2 - alpha^2] equals kappa D[a^2] plus the two-photon drive
  // Hamiltonian i kappa (alpha^2 a^dag2 - h.c.)/2.
  const int N = 16;
  const double alpha = 1.3, kappa = 1.0;
  CatQubitParams p{alpha, kappa, 0.0, 0.0, 0.0};
  auto shifted = idle_schedule(p, 3.0, NoiseSpec::none(), N);

  GateSchedule drive;
  drive.duration = 3.0;
  Operator a = annihilation({N});
  MatrixXcd a2 = a.mat * a.mat;
  cplx eps = 0.5 * kappa * alpha * alpha;
  MatrixXcd h = cplx(0, 1) * (eps * a2.adjoint() - std::conj(eps) * a2);
  drive.hamiltonian =
      TimeDependentOperator::constant({std::move(h), Space{ModeSpace{N}}});
  drive.dissipators.push_back(
      {kappa, TimeDependentOperator::constant({a2, Space{ModeSpace{N}}})});

  auto r1 = evolve(fock_dm(0, N), shifted, {});
  auto r2 = evolve(fock_dm(0, N), drive, {});
  CHECK((r1.final_state.mat - r2.final_state.mat).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("steady state follows the conserved quantities") {
  CatQubitParams p{1.5, 1.0, 0.0, 0.0, 0.0};
  const int N = 18;
  auto sched = idle_schedule(p, 1.0, NoiseSpec::none(), N);
  StateVector even = cat_state(1.5, CatParity::even, {N});
  StateVector odd = cat_state(1.5, CatParity::odd, {N});

  SUBCASE("even cat is a fixed point") {
    auto ss = steady_state(sched, DensityMatrix::from_pure(even));
    CHECK(state_fidelity(even, ss) > 1.0 - 1e-7);
  }
  SUBCASE("vacuum converges to the even cat") {
    auto ss = steady_state(sched, fock_dm(0, N));
    CHECK(state_fidelity(even, ss) > 1.0 - 1e-6);
  }
  SUBCASE("an incoherent 0/1 mixture splits by parity sector") {
    MatrixXcd mix = MatrixXcd::Zero(N, N);
    mix(0, 0) = 0.5;
    mix(1, 1) = 0.5;
    auto ss = steady_state(sched, {mix, Space{ModeSpace{N}}});
    MatrixXcd want = 0.5 * even.amp * even.amp.adjoint() +
                     0.5 * odd.amp * odd.amp.adjoint();
    CHECK((ss.mat - want).cwiseAbs().maxCoeff() < 1e-4);
  }
  SUBCASE("nonconvergence is reported") {
    GateSchedule drift;
    drift.duration = 1.0;
    Operator x{annihilation({4}).mat + creation({4}).mat, Space{ModeSpace{4}}};
    drift.hamiltonian = TimeDependentOperator::constant(std::move(x));
    SteadyStateOptions opts;
    opts.max_time = 5.0;
    CHECK_THROWS_AS(steady_state(drift, fock_dm(0, 4), opts),
                    std::runtime_error);
  }
}

TEST_CASE("halving the step leaves the final state unchanged at 1e-7") {
  CatQubitParams p{1.0, 1.0, 1e-3, 0.0, 0.0};
  const int N = 12;
  auto sched = idle_schedule(p, 1.0, NoiseSpec::from(p), N);
  StepControl coarse, fine;
  coarse.dt = 1e-3;
  fine.dt = 5e-4;
  auto r1 = evolve(fock_dm(0, N), sched, coarse);
  auto r2 = evolve(fock_dm(0, N), sched, fine);
  double f = state_fidelity(r1.final_state, r2.final_state);
  CHECK(std::abs(1.0 - f) < 1e-7);
}

TEST_CASE("trajectory sampling") {
  CatQubitParams p{1.0, 1.0, 0.0, 0.0, 0.0};
  auto sched = idle_schedule(p, 1.0, NoiseSpec::none(), 12);
  StepControl ctrl;
  ctrl.snapshots = 7;
  auto res = evolve(fock_dm(0, 12), sched, ctrl);
  CHECK(res.trajectory.size() >= 7);
  CHECK(res.trajectory.front().first == 0.0);
  CHECK(res.trajectory.back().first == doctest::Approx(1.0));
}

TEST_CASE("evolve rejects bad inputs") {
  CatQubitParams p{1.0, 1.0, 0.0, 0.0, 0.0};
  auto sched = idle_schedule(p, 1.0, NoiseSpec::none(), 12);
  StepControl bad_dt;
  bad_dt.dt = -1.0;
  CHECK_THROWS_AS(evolve(fock_dm(0, 12), sched, bad_dt), std::invalid_argument);
  StepControl bad_tol;
  bad_tol.tolerance = 1e-2;
  CHECK_THROWS_AS(evolve(fock_dm(0, 12), sched, bad_tol), std::invalid_argument);
  StepControl both;
  both.dt = 1e-3;
  both.tolerance = 1e-5;
  CHECK_THROWS_AS(evolve(fock_dm(0, 12), sched, both), std::invalid_argument);
  CHECK_THROWS_AS(evolve(fock_dm(0, 16), sched, {}), std::invalid_argument);

  GateSchedule bad_rate = sched;
  bad_rate.dissipators[0].rate = -1.0;
  CHECK_THROWS_AS(evolve(fock_dm(0, 12), bad_rate, {}), std::invalid_argument);
}

TEST_CASE("NaN contamination aborts with a diagnostic") {
  GateSchedule s;
  s.duration = 1.0;
  MatrixXcd poisoned = MatrixXcd::Zero(4, 4);
  poisoned(0, 0) = std::numeric_limits<double>::quiet_NaN();
  s.dissipators.push_back(
      {1.0, TimeDependentOperator::constant({poisoned, Space{ModeSpace{4}}})});
  CHECK_THROWS_AS(evolve(fock_dm(0, 4), s, {}), std::runtime_error);
}

TEST_CASE("time-dependent operator evaluation") {
  const int N = 6;
  Operator a2{annihilation({N}).mat * annihilation({N}).mat, Space{ModeSpace{N}}};
  Operator id = identity_operator(Space{ModeSpace{N}});
  auto combo = TimeDependentOperator::combination(
      {{nullptr, a2},
       {[](double t) { return std::exp(cplx(0.0, t)); }, id}});
  CHECK(!combo.is_constant());
  Operator at0 = combo.at(0.0);
  CHECK((at0.mat - (a2.mat + id.mat)).norm() < 1e-14);
  Operator atpi = combo.at(pi);
  CHECK((atpi.mat - (a2.mat - id.mat)).norm() < 1e-12);

  auto fixed = TimeDependentOperator::constant(a2);
  CHECK(fixed.is_constant());
}
