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

#include "catsim/error_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "catsim/pauli.hpp"
#include "json.hpp"

namespace catsim {

namespace {

using std::numbers::pi;

void require_valid(const CatQubitParams& p, double duration) {
  p.validate();
  if (duration <= 0.0) throw std::invalid_argument("duration must be > 0");
}

}  // namespace

double KrausSet::completeness_error() const {
  if (operators.empty()) return 1.0;
  const auto d = operators[0].rows();
  MatrixXcd acc = MatrixXcd::Zero(d, d);
  for (const auto& m : operators) acc += m.adjoint() * m;
  return (acc - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

MatrixXcd KrausSet::apply(const MatrixXcd& rho) const {
  MatrixXcd out = MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& m : operators) out += m * rho * m.adjoint();
  return out;
}

KrausSet complete(KrausSet set) {
  if (set.completed) return set;
  if (set.operators.empty()) {
    int d = 1 << set.modes;
    set.operators.push_back(MatrixXcd::Identity(d, d));
    set.completed = true;
    return set;
  }
  const auto d = set.operators[0].rows();
  MatrixXcd acc = MatrixXcd::Zero(d, d);
  for (const auto& m : set.operators) acc += m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(acc);
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-12)
    throw std::runtime_error(
        "error weight exceeds 1: model outside its validity range");
  Eigen::VectorXd ev = (1.0 - es.eigenvalues().array()).max(0.0).sqrt();
  MatrixXcd m0 =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  set.operators.insert(set.operators.begin(), std::move(m0));
  set.completed = true;
  return set;
}

std::vector<std::pair<std::string, double>> pauli_twirl(const KrausSet& set) {
  const int m = set.modes;
  const int np = 1 << (2 * m);
  const int d = 1 << m;
  std::vector<std::pair<std::string, double>> out;
  for (int i = 0; i < np; ++i) {
    MatrixXcd p = pauli_tensor(m, i);
    double w = 0.0;
    for (const auto& k : set.operators) {
      cplx coeff = (p.adjoint() * k).trace() / double(d);
      w += std::norm(coeff);
    }
    out.push_back({pauli_name(m, i), w});
  }
  return out;
}

GateErrorBudget cnot_error_budget(const CatQubitParams& params,
                                  double duration) {
  require_valid(params, duration);
  const double x = params.nbar() * params.kappa1 * duration;
  const double na = 1.0 / (2.0 * pi * params.nbar() * params.kappa2 * duration);
  GateErrorBudget b;
  b.modes = 2;
  b.p_z1 = x + na;
  b.p_z2 = 0.5 * x;
  b.p_z1z2 = 0.5 * x;
  b.photon_loss_part = 2.0 * x;
  b.nonadiabatic_part = na;
  b.coherence_z2_z1z2 = cplx(0.0, x / pi);
  return b;
}

GateErrorBudget toffoli_error_budget(const CatQubitParams& params,
                                     double duration) {
  require_valid(params, duration);
  const double x = params.nbar() * params.kappa1 * duration;
  const double na = 1.0 / (4.0 * pi * params.nbar() * params.kappa2 * duration);
  GateErrorBudget b;
  b.modes = 3;
  // Control losses dephase their own mode; target loss spreads over the
  // Z3-containing labels with the weights fixed by the arcsin(2/pi) split.
  const double r = 0.5 * std::asin(2.0 / pi);
  const double c2 = std::cos(r) * std::cos(r), s2 = std::sin(r) * std::sin(r);
  b.p_z1 = x + na;
  b.p_z2 = x + na;
  b.p_z1z2 = na;
  b.p_z3 = x * (9.0 * c2 + s2 + 9.0 * s2 + c2) / 16.0;  // = 10x/16
  b.p_z1z3 = x * 2.0 / 16.0;
  b.p_z2z3 = x * 2.0 / 16.0;
  b.p_z1z2z3 = x * 2.0 / 16.0;
  b.photon_loss_part = 3.0 * x;
  b.nonadiabatic_part = 3.0 * na;
  return b;
}

KrausSet cnot_kraus(const CatQubitParams& params, double duration) {
  require_valid(params, duration);
  const double x = params.nbar() * params.kappa1 * duration;
  if (x >= 1.0)
    throw std::invalid_argument("nbar kappa1 T must be < 1 for the loss model");
  const double r = 0.5 * std::asin(2.0 / pi);
  const cplx i1(0.0, 1.0);
  MatrixXcd id = pauli_tensor(2, 0);
  MatrixXcd z1 = pauli_tensor(2, pauli_index({3, 0}));
  MatrixXcd z2 = pauli_tensor(2, pauli_index({0, 3}));
  KrausSet set;
  set.modes = 2;
  if (x > 0.0) {
    set.operators.push_back(std::sqrt(x) * z1);
    set.operators.push_back(std::sqrt(0.5 * x) *
                            ((std::cos(r) * id + i1 * std::sin(r) * z1) * z2));
    set.operators.push_back(std::sqrt(0.5 * x) *
                            ((std::sin(r) * id + i1 * std::cos(r) * z1) * z2));
  }
  return complete(std::move(set));
}

KrausSet toffoli_kraus(const CatQubitParams& params, double duration) {
  require_valid(params, duration);
  const double x = params.nbar() * params.kappa1 * duration;
  if (3.0 * x >= 1.0)
    throw std::invalid_argument(
        "3 nbar kappa1 T must be < 1 for the loss model");
  const double r = 0.5 * std::asin(2.0 / pi);
  const cplx i1(0.0, 1.0);
  MatrixXcd id = pauli_tensor(3, 0);
  MatrixXcd z1 = pauli_tensor(3, pauli_index({3, 0, 0}));
  MatrixXcd z2 = pauli_tensor(3, pauli_index({0, 3, 0}));
  MatrixXcd z3 = pauli_tensor(3, pauli_index({0, 0, 3}));
  MatrixXcd z12 = 0.25 * (id - z1 - z2 + z1 * z2);  // |11><11| on the controls
  KrausSet set;
  set.modes = 3;
  if (x > 0.0) {
    set.operators.push_back(std::sqrt(x) * z1);
    set.operators.push_back(std::sqrt(x) * z2);
    set.operators.push_back(
        std::sqrt(x) *
        ((std::cos(r) * (id - z12) - i1 * std::sin(r) * z12) * z3));
    set.operators.push_back(
        std::sqrt(x) *
        ((std::sin(r) * (id - z12) - i1 * std::cos(r) * z12) * z3));
  }
  return complete(std::move(set));
}

double optimal_gate_time(const CatQubitParams& params) {
  params.validate();
  if (params.kappa1 <= 0.0)
    throw std::invalid_argument("optimal gate time undefined at kappa1 = 0");
  double ratio = params.kappa1 / params.kappa2;
  return 1.0 / (2.0 * params.nbar() * std::sqrt(pi * ratio) * params.kappa2);
}

double fidelity_at(GateKind gate, const CatQubitParams& params,
                   double duration) {
  GateErrorBudget b;
  if (gate == GateKind::cnot)
    b = cnot_error_budget(params, duration);
  else if (gate == GateKind::toffoli)
    b = toffoli_error_budget(params, duration);
  else
    throw std::invalid_argument("fidelity model covers cnot and toffoli only");
  double radicand = 1.0 - b.total_phase_error();
  if (radicand < 0.0) return 0.0;
  return std::sqrt(radicand);
}

double predicted_fidelity(GateKind gate, const CatQubitParams& params) {
  params.validate();
  if (params.kappa1 <= 0.0)
    throw std::invalid_argument("predicted fidelity undefined at kappa1 = 0");
  double ratio = params.kappa1 / params.kappa2;
  double c;
  if (gate == GateKind::cnot)
    c = 4.0 / pi;
  else if (gate == GateKind::toffoli)
    c = 9.0 / pi;
  else
    throw std::invalid_argument("fidelity model covers cnot and toffoli only");
  return std::sqrt(1.0 - std::sqrt(c * ratio));
}

SuppressionFit suppression_fit(
    const std::vector<std::pair<double, double>>& nbar_vs_p) {
  if (nbar_vs_p.size() < 3)
    throw std::invalid_argument("suppression fit needs >= 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [nbar, p] : nbar_vs_p) {
    if (p <= 0.0)
      throw std::invalid_argument("suppression fit requires positive weights");
    double x = 2.0 * nbar, y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(nbar_vs_p.size());
  SuppressionFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

std::string budget_to_json(const GateErrorBudget& b) {
  nlohmann::ordered_json j;
  j["modes"] = b.modes;
  j["p_Z1"] = b.p_z1;
  j["p_Z2"] = b.p_z2;
  if (b.modes == 3) {
    j["p_Z3"] = b.p_z3;
    j["p_Z1Z3"] = b.p_z1z3;
    j["p_Z2Z3"] = b.p_z2z3;
    j["p_Z1Z2Z3"] = b.p_z1z2z3;
  }
  j["p_Z1Z2"] = b.p_z1z2;
  j["photon_loss_part"] = b.photon_loss_part;
  j["nonadiabatic_part"] = b.nonadiabatic_part;
  j["coherence_Z2_Z1Z2_re"] = b.coherence_z2_z1z2.real();
  j["coherence_Z2_Z1Z2_im"] = b.coherence_z2_z1z2.imag();
  j["total_phase_error"] = b.total_phase_error();
  return j.dump(2);
}

std::string kraus_to_json(const KrausSet& set) {
  nlohmann::ordered_json j;
  j["modes"] = set.modes;
  j["completed"] = set.completed;
  j["operators"] = nlohmann::ordered_json::array();
  for (const auto& m : set.operators) {
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::ordered_json re_row = nlohmann::ordered_json::array();
      nlohmann::ordered_json im_row = nlohmann::ordered_json::array();
      for (int c = 0; c < m.cols(); ++c) {
        re_row.push_back(m(r, c).real());
        im_row.push_back(m(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    j["operators"].push_back({{"re", re}, {"im", im}});
  }
  return j.dump(2);
}

}  // namespace catsim
