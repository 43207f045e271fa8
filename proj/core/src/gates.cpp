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

#include "catsim/gates.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace catsim {

namespace {

using std::numbers::pi;

// Drive signs chosen so positive angles produce exp(+i theta/2) on the
// |0>_c-like branch; verified against the simulated dynamics in the unit
// tests.
constexpr double kZenoDriveSign = -1.0;
constexpr double kBeamSplitterDriveSign = -1.0;

int resolve_truncation(const CatQubitParams& p, int truncation) {
  int n = truncation > 0 ? truncation : default_truncation(p.alpha);
  if (n < 2) throw std::invalid_argument("truncation must be >= 2");
  return n;
}

double require_real_alpha(const CatQubitParams& p) {
  if (std::abs(p.alpha.imag()) > 1e-12 || p.alpha.real() < 0.0)
    throw std::invalid_argument(
        "gate constructors assume real nonnegative alpha");
  return p.alpha.real();
}

void append_noise(std::vector<Dissipator>& dissipators, const Space& space,
                  int mode, const NoiseSpec& noise) {
  ModeSpace m{space.mode_dim(mode)};
  if (noise.loss_rate > 0.0)
    dissipators.push_back(
        {noise.loss_rate,
         TimeDependentOperator::constant(embed(annihilation(m), space, mode))});
  if (noise.thermal_rate > 0.0)
    dissipators.push_back(
        {noise.thermal_rate,
         TimeDependentOperator::constant(embed(creation(m), space, mode))});
  if (noise.dephasing_rate > 0.0)
    dissipators.push_back(
        {noise.dephasing_rate, TimeDependentOperator::constant(
                                   embed(number_operator(m), space, mode))});
}

Operator idle_jump(double alpha, const Space& space, int mode) {
  ModeSpace m{space.mode_dim(mode)};
  Operator a = annihilation(m);
  Operator jump{a.mat * a.mat -
                    alpha * alpha * MatrixXcd::Identity(m.dim, m.dim),
                Space(m)};
  return embed(jump, space, mode);
}

}  // namespace

double zeno_angle_rate(double epsilon, double alpha_mag) {
  return 4.0 * epsilon * alpha_mag;
}

double zeno_zz_angle_rate(double epsilon, double nbar) {
  return 4.0 * epsilon * nbar;
}

double conditional_branch_phase(bool feedforward, double nbar) {
  // The rotated branch returns with exp(-i pi nbar) relative to the parked
  // branches, for the driven and the adiabatic implementation alike.
  (void)feedforward;
  return -pi * nbar;
}

GateSchedule idle_schedule(const CatQubitParams& params, double duration,
                           const NoiseSpec& noise, int truncation) {
  params.validate();
  double alpha = require_real_alpha(params);
  Space space{ModeSpace{resolve_truncation(params, truncation)}};
  GateSchedule sched;
  sched.duration = duration;
  sched.dissipators.push_back(
      {params.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 0))});
  append_noise(sched.dissipators, space, 0, noise);
  sched.validate();
  return sched;
}

GateSchedule z_rotation_schedule(const CatQubitParams& params, double theta,
                                 double epsilon_z, int truncation) {
  params.validate();
  double alpha = require_real_alpha(params);
  if (alpha == 0.0)
    throw std::invalid_argument("z rotation undefined at alpha = 0");
  if (theta == 0.0)
    return idle_schedule(params, 1.0 / params.kappa2, NoiseSpec::from(params),
                         truncation);
  if (epsilon_z <= 0.0) throw std::invalid_argument("epsilon_z must be > 0");
  if (epsilon_z / params.kappa2 > 0.1)
    std::cerr << "[catsim] z_rotation_schedule: epsilon_z / kappa2 = "
              << epsilon_z / params.kappa2
              << " exceeds the weak-drive regime (> 0.1)\n";

  Space space{ModeSpace{resolve_truncation(params, truncation)}};
  double duration = std::abs(theta) / zeno_angle_rate(epsilon_z, alpha);
  double sign = (theta >= 0.0 ? 1.0 : -1.0) * kZenoDriveSign;

  ModeSpace m{space.mode_dim(0)};
  Operator drive{sign * epsilon_z * (annihilation(m).mat + creation(m).mat),
                 Space(m)};
  GateSchedule sched;
  sched.duration = duration;
  sched.hamiltonian = TimeDependentOperator::constant(embed(drive, space, 0));
  sched.dissipators.push_back(
      {params.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 0))});
  append_noise(sched.dissipators, space, 0, NoiseSpec::from(params));
  sched.validate();
  return sched;
}

GateSchedule x_gate_schedule(const CatQubitParams& params, double duration,
                             bool feedforward, int truncation) {
  params.validate();
  double alpha = require_real_alpha(params);
  if (duration <= 0.0) throw std::invalid_argument("gate time must be > 0");
  if (!feedforward && duration < 5.0 / params.kappa2)
    throw std::invalid_argument(
        "without feedforward the pump rotation must be adiabatic "
        "(T >= 5/kappa2)");

  Space space{ModeSpace{resolve_truncation(params, truncation)}};
  ModeSpace m{space.mode_dim(0)};
  Operator a = annihilation(m);
  Operator a2 = embed({a.mat * a.mat, Space(m)}, space, 0);
  Operator id = identity_operator(space);

  const double T = duration;
  const double a2val = alpha * alpha;
  auto rotating = [T, a2val](double t) {
    return -a2val * std::exp(cplx(0.0, 2.0 * pi * t / T));
  };
  GateSchedule sched;
  sched.duration = duration;
  sched.dissipators.push_back(
      {params.kappa2,
       TimeDependentOperator::combination({{nullptr, a2}, {rotating, id}})});
  append_noise(sched.dissipators, space, 0, NoiseSpec::from(params));
  if (feedforward) {
    Operator ff = embed(number_operator(m), space, 0);
    ff.mat *= -pi / T;
    sched.hamiltonian = TimeDependentOperator::constant(std::move(ff));
  }
  sched.validate();
  return sched;
}

namespace {

void wrap(double& angle) {
  while (angle > pi) angle -= 2.0 * pi;
  while (angle <= -pi) angle += 2.0 * pi;
}

}  // namespace

GateSchedule cnot_schedule(const CatQubitParams& control,
                           const CatQubitParams& target, double duration,
                           bool feedforward, PhaseCompensation compensation,
                           int truncation) {
  control.validate();
  target.validate();
  double alpha = require_real_alpha(control);
  if (std::abs(alpha - require_real_alpha(target)) > 1e-12)
    throw std::invalid_argument("cnot assumes equal alpha on both modes");
  if (duration <= 0.0) throw std::invalid_argument("gate time must be > 0");

  int nc = resolve_truncation(control, truncation);
  int nt = resolve_truncation(target, truncation);
  Space space(std::vector<int>{nc, nt});
  const double nbar = control.nbar();
  const double T = duration;

  Operator a = embed(annihilation({nc}), space, 0);
  Operator adag = embed(creation({nc}), space, 0);
  Operator b = embed(annihilation({nt}), space, 1);
  Operator id = identity_operator(space);
  Operator b2{b.mat * b.mat, space};

  // Control keeps the idle pump.
  GateSchedule sched;
  sched.duration = duration;
  sched.dissipators.push_back(
      {control.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 0))});

  // Target pump: b^2 - alpha(a + alpha)/2 + alpha e^{2 i pi t/T}(a - alpha)/2.
  Operator stat{b2.mat - 0.5 * alpha * a.mat -
                    0.5 * alpha * alpha * id.mat,
                space};
  Operator rot{0.5 * alpha * a.mat - 0.5 * alpha * alpha * id.mat, space};
  auto u = [T](double t) {
    return std::exp(cplx(0.0, 2.0 * pi * std::min(t, T) / T));
  };
  sched.dissipators.push_back(
      {target.kappa2, TimeDependentOperator::combination(
                          {{nullptr, stat}, {u, std::move(rot)}})});

  append_noise(sched.dissipators, space, 0, NoiseSpec::from(control));
  append_noise(sched.dissipators, space, 1, NoiseSpec::from(target));

  std::vector<std::pair<TimeDependentOperator::Coefficient, Operator>> hterms;
  if (feedforward) {
    Operator nb = embed(number_operator({nt}), space, 1);
    MatrixXcd proj = (a.mat + adag.mat - 2.0 * alpha * id.mat) / (2.0 * alpha);
    MatrixXcd hff = 0.5 * (pi / T) * proj * (nb.mat - nbar * id.mat);
    auto gate_window = [T](double t) { return t < T ? cplx(1.0) : cplx(0.0); };
    hterms.push_back({gate_window, Operator{std::move(hff), space}});
  }

  if (compensation == PhaseCompensation::drive) {
    // Z(theta) shifts the |1>-vs-|0> relative phase by -theta, so driving
    // theta equal to the branch phase cancels it.
    double correction = conditional_branch_phase(feedforward, nbar);
    wrap(correction);
    if (std::abs(correction) > 1e-12) {
      const double eps = 0.02 * control.kappa2;
      double tail = std::abs(correction) / zeno_angle_rate(eps, alpha);
      double sign = (correction >= 0.0 ? 1.0 : -1.0) * kZenoDriveSign;
      Operator drive{sign * eps * (a.mat + adag.mat), space};
      auto tail_window = [T](double t) {
        return t >= T ? cplx(1.0) : cplx(0.0);
      };
      hterms.push_back({tail_window, std::move(drive)});
      sched.duration += tail;
    }
  }
  if (!hterms.empty())
    sched.hamiltonian = TimeDependentOperator::combination(std::move(hterms));
  sched.validate();
  return sched;
}

GateSchedule toffoli_schedule(const CatQubitParams& control1,
                              const CatQubitParams& control2,
                              const CatQubitParams& target, double duration,
                              bool feedforward, PhaseCompensation compensation,
                              int truncation) {
  control1.validate();
  control2.validate();
  target.validate();
  double alpha = require_real_alpha(control1);
  if (std::abs(alpha - require_real_alpha(control2)) > 1e-12 ||
      std::abs(alpha - require_real_alpha(target)) > 1e-12)
    throw std::invalid_argument("toffoli assumes equal alpha on all modes");
  if (duration <= 0.0) throw std::invalid_argument("gate time must be > 0");

  int n1 = resolve_truncation(control1, truncation);
  int n2 = resolve_truncation(control2, truncation);
  int n3 = resolve_truncation(target, truncation);
  Space space(std::vector<int>{n1, n2, n3});
  const double nbar = control1.nbar();
  const double T = duration;

  Operator a = embed(annihilation({n1}), space, 0);
  Operator b = embed(annihilation({n2}), space, 1);
  Operator c = embed(annihilation({n3}), space, 2);
  Operator id = identity_operator(space);

  GateSchedule sched;
  sched.duration = duration;
  sched.dissipators.push_back(
      {control1.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 0))});
  sched.dissipators.push_back(
      {control2.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 1))});

  // Target pump: c^2 - alpha^2 + (1 - e^{2 i pi t/T}) K / 4 with
  // K = ab - alpha(a + b) + alpha^2.
  MatrixXcd K = a.mat * b.mat - alpha * (a.mat + b.mat) +
                alpha * alpha * id.mat;
  Operator stat{c.mat * c.mat - alpha * alpha * id.mat + 0.25 * K, space};
  Operator rot{-0.25 * K, space};
  auto u = [T](double t) {
    return std::exp(cplx(0.0, 2.0 * pi * std::min(t, T) / T));
  };
  sched.dissipators.push_back(
      {target.kappa2, TimeDependentOperator::combination(
                          {{nullptr, std::move(stat)}, {u, std::move(rot)}})});

  append_noise(sched.dissipators, space, 0, NoiseSpec::from(control1));
  append_noise(sched.dissipators, space, 1, NoiseSpec::from(control2));
  append_noise(sched.dissipators, space, 2, NoiseSpec::from(target));

  std::vector<std::pair<TimeDependentOperator::Coefficient, Operator>> hterms;
  if (feedforward) {
    Operator nc3 = embed(number_operator({n3}), space, 2);
    MatrixXcd pa = (a.mat - alpha * id.mat) / (2.0 * alpha);
    MatrixXcd pb = (b.mat - alpha * id.mat) / (2.0 * alpha);
    MatrixXcd half = -0.5 * (pi / T) * pa * pb * (nc3.mat - nbar * id.mat);
    MatrixXcd hff = half + half.adjoint();
    auto gate_window = [T](double t) { return t < T ? cplx(1.0) : cplx(0.0); };
    hterms.push_back({gate_window, Operator{std::move(hff), space}});
  }

  if (compensation == PhaseCompensation::drive) {
    // diag(1,1,1,e^{i phi}) on the controls factors into Z1(-phi/2)
    // Z2(-phi/2) CZ(phi/2); the inverse of each factor is driven in one
    // simultaneous tail segment.
    double phi = conditional_branch_phase(feedforward, nbar);
    wrap(phi);
    if (std::abs(phi) > 1e-12) {
      const double eps_ref = 0.02 * control1.kappa2;
      double tail = (0.5 * std::abs(phi)) / zeno_angle_rate(eps_ref, alpha);
      auto tail_window = [T](double t) {
        return t >= T ? cplx(1.0) : cplx(0.0);
      };
      double z_angle = 0.5 * phi;   // Z1, Z2 corrections
      double zz_angle = -0.5 * phi; // CZ correction
      double eps_z = std::abs(z_angle) / (tail * 4.0 * alpha);
      double eps_zz = std::abs(zz_angle) / (tail * 4.0 * nbar);
      double sz = (z_angle >= 0.0 ? 1.0 : -1.0) * kZenoDriveSign;
      double szz = (zz_angle >= 0.0 ? 1.0 : -1.0) * kBeamSplitterDriveSign;
      Operator adag = embed(creation({n1}), space, 0);
      Operator bdag = embed(creation({n2}), space, 1);
      MatrixXcd h = sz * eps_z * (a.mat + adag.mat) +
                    sz * eps_z * (b.mat + bdag.mat) +
                    szz * eps_zz * (a.mat * bdag.mat + adag.mat * b.mat);
      hterms.push_back({tail_window, Operator{std::move(h), space}});
      sched.duration += tail;
    }
  }
  if (!hterms.empty())
    sched.hamiltonian = TimeDependentOperator::combination(std::move(hterms));
  sched.validate();
  return sched;
}

GateSchedule cz_theta_schedule(const CatQubitParams& a_params,
                               const CatQubitParams& b_params, double theta,
                               double epsilon_zz, int truncation) {
  a_params.validate();
  b_params.validate();
  double alpha = require_real_alpha(a_params);
  if (std::abs(alpha - require_real_alpha(b_params)) > 1e-12)
    throw std::invalid_argument("cz assumes equal alpha on both modes");
  if (alpha == 0.0) throw std::invalid_argument("cz undefined at alpha = 0");
  if (epsilon_zz <= 0.0) throw std::invalid_argument("epsilon_zz must be > 0");
  if (epsilon_zz / a_params.kappa2 > 0.1)
    std::cerr << "[catsim] cz_theta_schedule: epsilon_zz / kappa2 = "
              << epsilon_zz / a_params.kappa2
              << " exceeds the weak-drive regime (> 0.1)\n";

  int na = resolve_truncation(a_params, truncation);
  int nb = resolve_truncation(b_params, truncation);
  Space space(std::vector<int>{na, nb});

  GateSchedule sched;
  if (theta == 0.0) {
    sched.duration = 1.0 / a_params.kappa2;
  } else {
    sched.duration =
        std::abs(theta) / zeno_zz_angle_rate(epsilon_zz, a_params.nbar());
    double sign = (theta >= 0.0 ? 1.0 : -1.0) * kBeamSplitterDriveSign;
    Operator a = embed(annihilation({na}), space, 0);
    Operator adag = embed(creation({na}), space, 0);
    Operator b = embed(annihilation({nb}), space, 1);
    Operator bdag = embed(creation({nb}), space, 1);
    MatrixXcd h = sign * epsilon_zz * (a.mat * bdag.mat + adag.mat * b.mat);
    sched.hamiltonian = TimeDependentOperator::constant({std::move(h), space});
  }
  sched.dissipators.push_back(
      {a_params.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 0))});
  sched.dissipators.push_back(
      {b_params.kappa2, TimeDependentOperator::constant(idle_jump(alpha, space, 1))});
  append_noise(sched.dissipators, space, 0, NoiseSpec::from(a_params));
  append_noise(sched.dissipators, space, 1, NoiseSpec::from(b_params));
  sched.validate();
  return sched;
}

std::pair<double, double> parity_branch_probabilities(const DensityMatrix& rho,
                                                      int mode) {
  Operator parity = mode_parity_operator(rho.space, mode);
  double mean = expectation(parity, rho);
  return {0.5 * (1.0 + mean), 0.5 * (1.0 - mean)};
}

MeasurementOutcome project_parity(const DensityMatrix& rho, int mode,
                                  int value) {
  if (value != 1 && value != -1)
    throw std::invalid_argument("parity outcome must be +1 or -1");
  Operator parity = mode_parity_operator(rho.space, mode);
  MatrixXcd proj =
      0.5 * (MatrixXcd::Identity(rho.dim(), rho.dim()) + double(value) * parity.mat);
  MatrixXcd branch = proj * rho.mat * proj;
  double p = branch.trace().real();
  if (p < 1e-12)
    throw std::invalid_argument("requested parity branch has zero probability");
  branch /= p;
  return {value, p, DensityMatrix{std::move(branch), rho.space}};
}

MeasurementOutcome measure_parity(const DensityMatrix& rho, int mode,
                                  std::mt19937_64& rng) {
  auto [p_plus, p_minus] = parity_branch_probabilities(rho, mode);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int value = (unif(rng) < p_plus) ? 1 : -1;
  // Guard against sampling an (numerically) empty branch.
  if (value == 1 && p_plus < 1e-12) value = -1;
  if (value == -1 && p_minus < 1e-12) value = 1;
  return project_parity(rho, mode, value);
}

GateSchedule build_schedule(const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::idle:
      if (spec.num_modes() != 1)
        throw std::invalid_argument("idle expects one mode");
      return idle_schedule(spec.modes[0], spec.duration,
                           NoiseSpec::from(spec.modes[0]), spec.truncation);
    case GateKind::z_rotation:
      if (spec.num_modes() != 1)
        throw std::invalid_argument("z_rotation expects one mode");
      return z_rotation_schedule(spec.modes[0], spec.theta,
                                 spec.epsilon * spec.modes[0].kappa2,
                                 spec.truncation);
    case GateKind::x:
      if (spec.num_modes() != 1)
        throw std::invalid_argument("x expects one mode");
      return x_gate_schedule(spec.modes[0], spec.duration, spec.feedforward,
                             spec.truncation);
    case GateKind::cnot:
      if (spec.num_modes() != 2)
        throw std::invalid_argument("cnot expects two modes");
      return cnot_schedule(spec.modes[0], spec.modes[1], spec.duration,
                           spec.feedforward, spec.compensation,
                           spec.truncation);
    case GateKind::toffoli:
      if (spec.num_modes() != 3)
        throw std::invalid_argument("toffoli expects three modes");
      return toffoli_schedule(spec.modes[0], spec.modes[1], spec.modes[2],
                              spec.duration, spec.feedforward,
                              spec.compensation, spec.truncation);
    case GateKind::cz:
      if (spec.num_modes() != 2)
        throw std::invalid_argument("cz expects two modes");
      return cz_theta_schedule(spec.modes[0], spec.modes[1], spec.theta,
                               spec.epsilon * spec.modes[0].kappa2,
                               spec.truncation);
  }
  throw std::invalid_argument("unknown gate kind");
}

MatrixXcd ideal_code_unitary(const GateSpec& spec) {
  const cplx i1(0.0, 1.0);
  switch (spec.kind) {
    case GateKind::idle:
      return MatrixXcd::Identity(2, 2);
    case GateKind::z_rotation: {
      MatrixXcd u(2, 2);
      u.setZero();
      u(0, 0) = std::exp(i1 * 0.5 * spec.theta);
      u(1, 1) = std::exp(-i1 * 0.5 * spec.theta);
      return u;
    }
    case GateKind::x: {
      MatrixXcd u(2, 2);
      u << 0, 1, 1, 0;
      return u;
    }
    case GateKind::cz: {
      MatrixXcd u = MatrixXcd::Zero(4, 4);
      u(0, 0) = u(3, 3) = std::exp(i1 * 0.5 * spec.theta);
      u(1, 1) = u(2, 2) = std::exp(-i1 * 0.5 * spec.theta);
      return u;
    }
    case GateKind::cnot: {
      double phi = spec.compensation == PhaseCompensation::frame
                       ? conditional_branch_phase(spec.feedforward,
                                                  spec.modes[0].nbar())
                       : 0.0;
      MatrixXcd u = MatrixXcd::Zero(4, 4);
      u(0, 0) = u(1, 1) = 1.0;
      u(2, 3) = u(3, 2) = std::exp(i1 * phi);
      return u;
    }
    case GateKind::toffoli: {
      double phi = spec.compensation == PhaseCompensation::frame
                       ? conditional_branch_phase(spec.feedforward,
                                                  spec.modes[0].nbar())
                       : 0.0;
      MatrixXcd u = MatrixXcd::Identity(8, 8);
      u(6, 6) = u(7, 7) = 0.0;
      u(6, 7) = u(7, 6) = std::exp(i1 * phi);
      return u;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::idle: return "idle";
    case GateKind::z_rotation: return "z_rotation";
    case GateKind::x: return "x";
    case GateKind::cnot: return "cnot";
    case GateKind::toffoli: return "toffoli";
    case GateKind::cz: return "cz";
  }
  throw std::invalid_argument("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "idle") return GateKind::idle;
  if (name == "z_rotation") return GateKind::z_rotation;
  if (name == "x") return GateKind::x;
  if (name == "cnot") return GateKind::cnot;
  if (name == "toffoli") return GateKind::toffoli;
  if (name == "cz") return GateKind::cz;
  throw std::invalid_argument("unknown gate name: " + name);
}

namespace {

nlohmann::ordered_json params_to_json(const CatQubitParams& p) {
  return nlohmann::ordered_json{{"alpha_re", p.alpha.real()},
                                {"alpha_im", p.alpha.imag()},
                                {"kappa2", p.kappa2},
                                {"kappa1", p.kappa1},
                                {"n_th", p.n_th},
                                {"kappa_phi", p.kappa_phi}};
}

CatQubitParams params_from_json(const nlohmann::json& j) {
  CatQubitParams p;
  p.alpha = cplx(j.value("alpha_re", 0.0), j.value("alpha_im", 0.0));
  p.kappa2 = j.value("kappa2", 1.0);
  p.kappa1 = j.value("kappa1", 0.0);
  p.n_th = j.value("n_th", 0.0);
  p.kappa_phi = j.value("kappa_phi", 0.0);
  return p;
}

}  // namespace

std::string gate_spec_to_json(const GateSpec& spec) {
  nlohmann::ordered_json j;
  j["gate"] = gate_kind_name(spec.kind);
  j["modes"] = nlohmann::ordered_json::array();
  for (const auto& m : spec.modes) j["modes"].push_back(params_to_json(m));
  j["duration"] = spec.duration;
  j["feedforward"] = spec.feedforward;
  j["phase_compensation"] =
      spec.compensation == PhaseCompensation::frame ? "frame" : "drive";
  j["theta"] = spec.theta;
  j["epsilon"] = spec.epsilon;
  j["truncation"] = spec.truncation;
  return j.dump(2);
}

GateSpec gate_spec_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  GateSpec spec;
  spec.kind = gate_kind_from_name(j.at("gate").get<std::string>());
  for (const auto& m : j.at("modes")) spec.modes.push_back(params_from_json(m));
  spec.duration = j.value("duration", 1.0);
  spec.feedforward = j.value("feedforward", true);
  std::string comp = j.value("phase_compensation", std::string("frame"));
  if (comp == "frame")
    spec.compensation = PhaseCompensation::frame;
  else if (comp == "drive")
    spec.compensation = PhaseCompensation::drive;
  else
    throw std::invalid_argument("unknown phase_compensation: " + comp);
  spec.theta = j.value("theta", 0.0);
  spec.epsilon = j.value("epsilon", 0.02);
  spec.truncation = j.value("truncation", 0);
  return spec;
}

}  // namespace catsim
