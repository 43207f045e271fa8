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

#include "catsim/nogo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "catsim/pauli.hpp"
#include "json.hpp"

namespace catsim {

namespace {

MatrixXcd z_on(int qubit) {
  return pauli_tensor(2, qubit == 0 ? pauli_index({3, 0}) : pauli_index({0, 3}));
}

void require_unitary(const MatrixXcd& u) {
  if (u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("expected a two-qubit (4x4) unitary");
  double err =
      (u.adjoint() * u - MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff();
  if (err > 1e-10)
    throw std::invalid_argument("input is not unitary within 1e-10");
}

}  // namespace

std::vector<std::pair<std::string, MatrixXcd>> two_qubit_pauli_basis() {
  std::vector<std::pair<std::string, MatrixXcd>> out;
  for (int i = 0; i < 16; ++i) out.push_back({pauli_name(2, i), pauli_tensor(2, i)});
  return out;
}

bool is_bias_preserving(const MatrixXcd& u) {
  require_unitary(u);
  for (int j = 0; j < 2; ++j) {
    MatrixXcd conj_z = u * z_on(j) * u.adjoint();
    for (int k = 0; k < 2; ++k) {
      MatrixXcd comm = conj_z * z_on(k) - z_on(k) * conj_z;
      if (comm.norm() > 1e-9) return false;
    }
  }
  return true;
}

CommutantReport commutant_dimension() {
  // Rows: the four double commutators stacked in Pauli coordinates; columns:
  // the 16 candidate generator coordinates.
  Eigen::MatrixXcd map(64, 16);
  auto basis = two_qubit_pauli_basis();
  for (int m = 0; m < 16; ++m) {
    const MatrixXcd& p = basis[m].second;
    int row = 0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        MatrixXcd inner = p * z_on(j) - z_on(j) * p;
        MatrixXcd outer = inner * z_on(k) - z_on(k) * inner;
        for (int q = 0; q < 16; ++q)
          map(row * 16 + q, m) =
              (basis[q].second.adjoint() * outer).trace() / 4.0;
        ++row;
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] < 1e-9 * sv[0]) ++null_dim;

  CommutantReport report;
  report.dimension = null_dim;
  // Nullspace basis = last null_dim columns of V.
  Eigen::MatrixXcd null_basis = svd.matrixV().rightCols(null_dim);
  // Project the expected generators onto the nullspace and record labels of
  // the Paulis with any support there.
  std::vector<int> expected = {0, pauli_index({3, 0}), pauli_index({0, 3}),
                               pauli_index({3, 3})};
  for (int e : expected) {
    Eigen::VectorXcd coord = Eigen::VectorXcd::Zero(16);
    coord[e] = 1.0;
    Eigen::VectorXcd proj = null_basis * (null_basis.adjoint() * coord);
    report.span_residual =
        std::max(report.span_residual, (proj - coord).norm());
  }
  for (int m = 0; m < 16; ++m) {
    double support = null_basis.row(m).norm();
    if (support > 1e-8) report.basis_labels.push_back(pauli_name(2, m));
  }
  return report;
}

bool in_identity_component(const MatrixXcd& u) {
  if (!is_bias_preserving(u))
    throw std::invalid_argument(
        "identity-component test requires a bias-preserving unitary");
  double off = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c) off += std::norm(u(r, c));
  return std::sqrt(off) < 1e-10;
}

MatrixXcd random_bias_preserving(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  MatrixXcd d = MatrixXcd::Zero(4, 4);
  for (int k = 0; k < 4; ++k)
    d(k, k) = std::exp(cplx(0.0, angle(rng)));

  static const std::vector<MatrixXcd> reps = [] {
    MatrixXcd id = MatrixXcd::Identity(4, 4);
    MatrixXcd swap = MatrixXcd::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    MatrixXcd cnot12 = MatrixXcd::Zero(4, 4);
    cnot12(0, 0) = cnot12(1, 1) = 1.0;
    cnot12(2, 3) = cnot12(3, 2) = 1.0;
    MatrixXcd cnot21 = MatrixXcd::Zero(4, 4);
    cnot21(0, 0) = cnot21(2, 2) = 1.0;
    cnot21(1, 3) = cnot21(3, 1) = 1.0;
    MatrixXcd x1 = kron(pauli_matrix(1), pauli_matrix(0));
    MatrixXcd x2 = kron(pauli_matrix(0), pauli_matrix(1));
    return std::vector<MatrixXcd>{id, swap, cnot12, cnot21, x1, x2, x1 * x2};
  }();
  std::uniform_int_distribution<size_t> pick(0, reps.size() - 1);
  return d * reps[pick(rng)];
}

std::string nogo_report_json(int closure_samples, uint64_t seed) {
  CommutantReport commutant = commutant_dimension();

  MatrixXcd cnot = MatrixXcd::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = 1.0;
  cnot(2, 3) = cnot(3, 2) = 1.0;
  bool cnot_bias = is_bias_preserving(cnot);
  bool cnot_component = cnot_bias ? in_identity_component(cnot) : false;

  std::mt19937_64 rng(seed);
  int closure_failures = 0;
  for (int s = 0; s < closure_samples; ++s) {
    MatrixXcd a = random_bias_preserving(rng);
    MatrixXcd b = random_bias_preserving(rng);
    if (!is_bias_preserving(a * b) || !is_bias_preserving(a.adjoint()))
      ++closure_failures;
  }

  nlohmann::ordered_json j;
  j["commutant_dimension"] = commutant.dimension;
  j["commutant_basis"] = commutant.basis_labels;
  j["commutant_span_residual"] = commutant.span_residual;
  j["cnot_bias_preserving"] = cnot_bias;
  j["cnot_in_identity_component"] = cnot_component;
  j["closure_samples"] = closure_samples;
  j["closure_failures"] = closure_failures;
  return j.dump(2);
}

}  // namespace catsim
