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

#include "catsim/tomography.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "catsim/parallel.hpp"
#include "catsim/pauli.hpp"

namespace catsim {

namespace {

int label_index(int m, const std::string& label) {
  for (int i = 0; i < (1 << (2 * m)); ++i)
    if (pauli_name(m, i) == label) return i;
  throw std::invalid_argument("unknown pauli label: " + label);
}

}  // namespace

cplx ChiMatrix::entry(const std::string& row_label,
                      const std::string& col_label) const {
  return data(label_index(modes, row_label), label_index(modes, col_label));
}

double ChiMatrix::diagonal_weight(const std::string& label) const {
  int i = label_index(modes, label);
  return data(i, i).real();
}

double ChiMatrix::xy_weight() const {
  double w = 0.0;
  for (int i = 0; i < size(); ++i)
    if (pauli_has_xy(modes, i)) w += data(i, i).real();
  return w;
}

std::vector<std::pair<std::string, double>> ChiMatrix::phase_diagonal() const {
  std::vector<std::pair<std::string, double>> out;
  for (int i = 0; i < size(); ++i)
    if (pauli_is_phase_type(modes, i))
      out.push_back({pauli_name(modes, i), data(i, i).real()});
  return out;
}

double ChiMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
      0.5 * (data + data.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

VectorXcd code_basis_coords(int m, int k) {
  const cplx i1(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  // per-mode inputs: |0>, |1>, |+>, |+i>
  VectorXcd coords = VectorXcd::Ones(1);
  for (int mode = 0; mode < m; ++mode) {
    int which = (k / (1 << (2 * (m - 1 - mode)))) % 4;
    Eigen::Vector2cd v;
    switch (which) {
      case 0: v << 1.0, 0.0; break;
      case 1: v << 0.0, 1.0; break;
      case 2: v << s, s; break;
      case 3: v << s, s * i1; break;
    }
    VectorXcd next(coords.size() * 2);
    for (int r = 0; r < coords.size(); ++r) next.segment(r * 2, 2) = coords[r] * v;
    coords = std::move(next);
  }
  return coords;
}

MatrixXcd code_isometry(cplx alpha, const Space& space) {
  MatrixXcd v = MatrixXcd::Ones(1, 1);
  for (int mode = 0; mode < space.num_modes(); ++mode) {
    ModeSpace m{space.mode_dim(mode)};
    StateVector even = cat_state(alpha, CatParity::even, m);
    StateVector odd = cat_state(alpha, CatParity::odd, m);
    const double s = 1.0 / std::sqrt(2.0);
    MatrixXcd vk(m.dim, 2);
    vk.col(0) = s * (even.amp + odd.amp);  // |0>_c
    vk.col(1) = s * (even.amp - odd.amp);  // |1>_c
    v = kron(v, vk);
  }
  return v;
}

std::vector<StateVector> code_basis(cplx alpha, int m, const Space& space) {
  if (m < 1 || m > 3) throw std::invalid_argument("code_basis expects m in 1..3");
  if (space.num_modes() != m)
    throw std::invalid_argument("code_basis: space has wrong mode count");
  MatrixXcd v = code_isometry(alpha, space);
  std::vector<StateVector> out;
  const int count = 1 << (2 * m);
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    VectorXcd amp = v * code_basis_coords(m, k);
    out.push_back({std::move(amp), space});
  }
  return out;
}

std::vector<StateVector> code_basis(cplx alpha, int m) {
  std::vector<int> dims(m, default_truncation(alpha));
  return code_basis(alpha, m, Space(dims));
}

namespace {

// chi from the superoperator S (column-major vec convention,
// S = sum chi_mn conj(P_n) (x) P_m).
ChiMatrix chi_from_superoperator(const MatrixXcd& s, int m) {
  const int np = 1 << (2 * m);
  const int d = 1 << m;
  ChiMatrix chi;
  chi.modes = m;
  chi.data.resize(np, np);
  std::vector<MatrixXcd> paulis(np);
  for (int i = 0; i < np; ++i) paulis[i] = pauli_tensor(m, i);
  for (int mm = 0; mm < np; ++mm)
    for (int nn = 0; nn < np; ++nn) {
      MatrixXcd b = kron(paulis[nn].conjugate(), paulis[mm]);
      chi.data(mm, nn) = (b.conjugate().cwiseProduct(s)).sum() / double(d * d);
    }
  return chi;
}

MatrixXcd vec(const MatrixXcd& m) {
  return Eigen::Map<const MatrixXcd>(m.data(), m.size(), 1);
}

TomographyReport reconstruct(const std::vector<MatrixXcd>& rho_in,
                             const std::vector<MatrixXcd>& rho_out,
                             const std::vector<double>& leakage, int m,
                             const TomographyOptions& options) {
  const int d = 1 << m;
  const int count = d * d;
  MatrixXcd in_cols(d * d, count), out_cols(d * d, count);
  for (int k = 0; k < count; ++k) {
    in_cols.col(k) = vec(rho_in[k]);
    out_cols.col(k) = vec(rho_out[k]);
  }
  Eigen::FullPivLU<MatrixXcd> lu(in_cols);
  if (!lu.isInvertible())
    throw std::runtime_error("tomography inversion is singular");
  MatrixXcd s = out_cols * lu.inverse();

  TomographyReport report;
  report.modes = m;
  report.chi = chi_from_superoperator(s, m);
  report.input_leakage = leakage;
  for (double l : leakage) report.max_leakage = std::max(report.max_leakage, l);
  report.flagged = report.max_leakage > options.leakage_flag_threshold;
  MatrixXcd ideal =
      options.ideal ? *options.ideal : MatrixXcd::Identity(d, d);
  report.chi_err = factor_ideal(report.chi, ideal);
  report.phase_error_probs = report.chi_err.phase_diagonal();
  report.x_type_weight = report.chi_err.xy_weight();
  return report;
}

}  // namespace

TomographyReport process_tomography(const GateSchedule& gate, cplx alpha, int m,
                                    const TomographyOptions& options) {
  const Space space = gate.space();
  if (space.num_modes() != m)
    throw std::invalid_argument("gate acts on a different number of modes");
  std::vector<StateVector> inputs = code_basis(alpha, m, space);
  MatrixXcd v = code_isometry(alpha, space);
  const int count = static_cast<int>(inputs.size());

  std::vector<MatrixXcd> rho_in(count), rho_out(count);
  std::vector<double> leak(count);
  parallel_for(count, options.threads, [&](int k) {
    VectorXcd coords = code_basis_coords(m, k);
    rho_in[k] = coords * coords.adjoint();
    EvolutionResult evo =
        evolve(DensityMatrix::from_pure(inputs[k]), gate, options.step);
    MatrixXcd projected = v.adjoint() * evo.final_state.mat * v;
    double in_code = projected.trace().real();
    leak[k] = 1.0 - in_code;
    rho_out[k] = projected / in_code;
  });
  return reconstruct(rho_in, rho_out, leak, m, options);
}

TomographyReport process_tomography(const DensityChannel& channel, cplx alpha,
                                    const Space& space,
                                    const TomographyOptions& options) {
  const int m = space.num_modes();
  std::vector<StateVector> inputs = code_basis(alpha, m, space);
  MatrixXcd v = code_isometry(alpha, space);
  const int count = static_cast<int>(inputs.size());

  std::vector<MatrixXcd> rho_in(count), rho_out(count);
  std::vector<double> leak(count);
  parallel_for(count, options.threads, [&](int k) {
    VectorXcd coords = code_basis_coords(m, k);
    rho_in[k] = coords * coords.adjoint();
    DensityMatrix out = channel(DensityMatrix::from_pure(inputs[k]));
    MatrixXcd projected = v.adjoint() * out.mat * v;
    double in_code = projected.trace().real();
    leak[k] = 1.0 - in_code;
    rho_out[k] = projected / in_code;
  });
  return reconstruct(rho_in, rho_out, leak, m, options);
}

TomographyReport tomography_of_gate(const GateSpec& spec,
                                    const TomographyOptions& options) {
  TomographyOptions opts = options;
  if (!opts.ideal) opts.ideal = ideal_code_unitary(spec);
  GateSchedule sched = build_schedule(spec);
  return process_tomography(sched, spec.modes[0].alpha, spec.num_modes(), opts);
}

ErrorMatrix factor_ideal(const ChiMatrix& chi, const MatrixXcd& ideal_unitary) {
  const int m = chi.modes;
  const int np = chi.size();
  const int d = 1 << m;
  if (ideal_unitary.rows() != d || ideal_unitary.cols() != d)
    throw std::invalid_argument("ideal unitary has wrong dimension");
  // S = sum chi_mn conj(P_n) (x) P_m; S_err = S * S_U^dag with
  // S_U = conj(U) (x) U.
  std::vector<MatrixXcd> paulis(np);
  for (int i = 0; i < np; ++i) paulis[i] = pauli_tensor(m, i);
  MatrixXcd s = MatrixXcd::Zero(d * d, d * d);
  for (int mm = 0; mm < np; ++mm)
    for (int nn = 0; nn < np; ++nn)
      if (chi.data(mm, nn) != cplx(0.0))
        s += chi.data(mm, nn) * kron(paulis[nn].conjugate(), paulis[mm]);
  MatrixXcd s_u = kron(ideal_unitary.conjugate(), ideal_unitary);
  MatrixXcd s_err = s * s_u.adjoint();
  ErrorMatrix out = chi_from_superoperator(s_err, m);
  return out;
}

double gate_fidelity(const TomographyReport& report) {
  double p = 0.0;
  for (const auto& [label, w] : report.phase_error_probs) p += w;
  double radicand = 1.0 - p;
  if (radicand < 0.0)
    throw std::runtime_error("inconsistent report: phase-error weight > 1");
  return std::sqrt(radicand);
}

double worst_case_fidelity(const ErrorMatrix& chi_err) {
  const int m = chi_err.modes;
  const int np = chi_err.size();
  const int count = 1 << (2 * m);
  std::vector<MatrixXcd> paulis(np);
  for (int i = 0; i < np; ++i) paulis[i] = pauli_tensor(m, i);
  double worst = 1.0;
  for (int k = 0; k < count; ++k) {
    VectorXcd psi = code_basis_coords(m, k);
    VectorXcd a(np);
    for (int i = 0; i < np; ++i) a[i] = (psi.adjoint() * paulis[i] * psi)(0);
    cplx f = 0.0;
    for (int mm = 0; mm < np; ++mm)
      for (int nn = 0; nn < np; ++nn)
        f += chi_err.data(mm, nn) * a[mm] * std::conj(a[nn]);
    worst = std::min(worst, f.real());
  }
  return worst;
}

}  // namespace catsim
