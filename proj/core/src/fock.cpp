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

#include "catsim/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace catsim {

namespace {

constexpr double kTailReject = 1e-6;

void check_mode(ModeSpace m) {
  if (m.dim < 2) throw std::invalid_argument("mode truncation must be >= 2");
}

// Rotates the global phase so the lowest non-negligible component is real
// and positive.
void fix_global_phase(VectorXcd& v) {
  for (int n = 0; n < v.size(); ++n) {
    if (std::abs(v[n]) > 1e-12) {
      cplx phase = std::conj(v[n]) / std::abs(v[n]);
      v *= phase;
      return;
    }
  }
}

}  // namespace

Space::Space(ModeSpace m) : dims_{m.dim}, total_(m.dim) { check_mode(m); }

Space::Space(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("space needs >= 1 mode");
  total_ = 1;
  for (int d : dims_) {
    check_mode({d});
    total_ *= d;
  }
}

int Space::mode_dim(int mode) const {
  if (mode < 0 || mode >= num_modes())
    throw std::invalid_argument("mode index out of range");
  return dims_[mode];
}

Space Space::product(const Space& a, const Space& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Space(dims);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return {psi.amp * psi.amp.adjoint(), psi.space};
}

DensityMatrix DensityMatrix::from_matrix(MatrixXcd m, const Space& s) {
  if (m.rows() != s.total_dim() || m.cols() != s.total_dim())
    throw std::invalid_argument("density matrix dimension mismatch");
  DensityMatrix rho{std::move(m), s};
  if (rho.hermiticity_error() > 1e-9)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (rho.trace_error() > 1e-7)
    throw std::invalid_argument("density matrix trace differs from 1");
  return rho;
}

double DensityMatrix::hermiticity_error() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void CatQubitParams::validate() const {
  if (kappa2 <= 0.0) throw std::invalid_argument("kappa2 must be positive");
  if (kappa1 < 0.0 || n_th < 0.0 || kappa_phi < 0.0)
    throw std::invalid_argument("noise rates must be nonnegative");
}

Operator annihilation(ModeSpace m) {
  check_mode(m);
  MatrixXcd a = MatrixXcd::Zero(m.dim, m.dim);
  for (int n = 1; n < m.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return {std::move(a), Space(m)};
}

Operator creation(ModeSpace m) { return annihilation(m).adjoint(); }

Operator number_operator(ModeSpace m) {
  check_mode(m);
  MatrixXcd n = MatrixXcd::Zero(m.dim, m.dim);
  for (int k = 0; k < m.dim; ++k) n(k, k) = double(k);
  return {std::move(n), Space(m)};
}

Operator identity_operator(const Space& s) {
  return {MatrixXcd::Identity(s.total_dim(), s.total_dim()), s};
}

Operator parity_operator(ModeSpace m) {
  check_mode(m);
  MatrixXcd p = MatrixXcd::Zero(m.dim, m.dim);
  for (int n = 0; n < m.dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return {std::move(p), Space(m)};
}

Operator mode_parity_operator(const Space& s, int mode) {
  return embed(parity_operator({s.mode_dim(mode)}), s, mode);
}

Operator displacement(cplx beta, ModeSpace m) {
  check_mode(m);
  const int N = m.dim;
  // exp(beta a^dag) and exp(-beta* a) have closed-form triangular entries.
  MatrixXcd up = MatrixXcd::Zero(N, N);    // exp(beta a^dag)
  MatrixXcd down = MatrixXcd::Zero(N, N);  // exp(-conj(beta) a)
  std::vector<double> log_fact(N, 0.0);
  for (int n = 1; n < N; ++n) log_fact[n] = log_fact[n - 1] + std::log(double(n));
  for (int n = 0; n < N; ++n) {
    for (int k = 0; n + k < N; ++k) {
      double amp = std::exp(0.5 * (log_fact[n + k] - log_fact[n]) - log_fact[k]);
      up(n + k, n) = std::pow(beta, k) * amp;
      down(n, n + k) = std::pow(-std::conj(beta), k) * amp;
    }
  }
  MatrixXcd d = std::exp(-0.5 * std::norm(beta)) * (up * down);
  return {std::move(d), Space(m)};
}

Operator embed(const Operator& single_mode, const Space& s, int mode) {
  if (single_mode.space.num_modes() != 1 ||
      single_mode.dim() != s.mode_dim(mode))
    throw std::invalid_argument("embed: operator does not fit target mode");
  std::vector<Operator> factors;
  factors.reserve(s.num_modes());
  for (int k = 0; k < s.num_modes(); ++k) {
    if (k == mode)
      factors.push_back(single_mode);
    else
      factors.push_back(identity_operator(Space(ModeSpace{s.mode_dim(k)})));
  }
  return tensor(factors);
}

int default_truncation(cplx alpha) {
  double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0));
}

double coherent_tail_weight(cplx alpha, int dim) {
  const double nbar = std::norm(alpha);
  if (nbar == 0.0) return 0.0;
  // 1 - CDF of Poisson(nbar) below dim, summed stably from the mode outward.
  double log_term = -nbar;  // log P(0)
  double head = 0.0;
  for (int n = 0; n < dim; ++n) {
    head += std::exp(log_term);
    log_term += std::log(nbar) - std::log(double(n + 1));
  }
  return std::max(0.0, 1.0 - head);
}

namespace {

VectorXcd coherent_amplitudes(cplx alpha, int dim) {
  VectorXcd v(dim);
  const double nbar = std::norm(alpha);
  double log_norm = -0.5 * nbar;
  cplx term = std::exp(cplx(log_norm, 0.0));
  v[0] = term;
  for (int n = 1; n < dim; ++n) {
    term *= alpha / std::sqrt(double(n));
    v[n] = term;
  }
  return v;
}

void check_tail(cplx alpha, ModeSpace m) {
  if (coherent_tail_weight(alpha, m.dim) >= kTailReject)
    throw std::invalid_argument(
        "truncation too small for requested amplitude (tail weight >= 1e-6)");
}

}  // namespace

StateVector coherent_state(cplx alpha, ModeSpace m) {
  check_mode(m);
  check_tail(alpha, m);
  VectorXcd v = coherent_amplitudes(alpha, m.dim);
  v.normalize();
  fix_global_phase(v);
  return {std::move(v), Space(m)};
}

StateVector cat_state(cplx alpha, CatParity parity, ModeSpace m) {
  check_mode(m);
  if (parity == CatParity::odd && std::abs(alpha) < 1e-12)
    throw std::invalid_argument("odd cat state undefined at alpha = 0");
  check_tail(alpha, m);
  // Built from the parity-restricted series so the wrong-parity components
  // are exactly zero.
  VectorXcd v = coherent_amplitudes(alpha, m.dim);
  int keep = (parity == CatParity::even) ? 0 : 1;
  for (int n = 0; n < m.dim; ++n)
    if (n % 2 != keep) v[n] = 0.0;
  v.normalize();
  fix_global_phase(v);
  return {std::move(v), Space(m)};
}

Operator tensor(const std::vector<Operator>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of nothing");
  MatrixXcd acc = factors[0].mat;
  Space sp = factors[0].space;
  for (size_t i = 1; i < factors.size(); ++i) {
    const MatrixXcd& b = factors[i].mat;
    MatrixXcd out(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (int r = 0; r < acc.rows(); ++r)
      for (int c = 0; c < acc.cols(); ++c)
        out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
            acc(r, c) * b;
    acc = std::move(out);
    sp = Space::product(sp, factors[i].space);
  }
  return {std::move(acc), sp};
}

StateVector tensor(const std::vector<StateVector>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of nothing");
  VectorXcd acc = factors[0].amp;
  Space sp = factors[0].space;
  for (size_t i = 1; i < factors.size(); ++i) {
    const VectorXcd& b = factors[i].amp;
    VectorXcd out(acc.size() * b.size());
    for (int r = 0; r < acc.size(); ++r)
      out.segment(r * b.size(), b.size()) = acc[r] * b;
    acc = std::move(out);
    sp = Space::product(sp, factors[i].space);
  }
  return {std::move(acc), sp};
}

Operator code_projector(cplx alpha, const Space& s) {
  std::vector<Operator> factors;
  for (int k = 0; k < s.num_modes(); ++k) {
    ModeSpace m{s.mode_dim(k)};
    StateVector even = cat_state(alpha, CatParity::even, m);
    MatrixXcd p = even.amp * even.amp.adjoint();
    if (std::abs(alpha) >= 1e-12) {
      StateVector odd = cat_state(alpha, CatParity::odd, m);
      p += odd.amp * odd.amp.adjoint();
    }
    factors.push_back({std::move(p), Space(m)});
  }
  return tensor(factors);
}

double leakage(const DensityMatrix& rho, const Operator& projector) {
  if (rho.space != projector.space)
    throw std::invalid_argument("leakage: space mismatch");
  return 1.0 - (projector.mat * rho.mat * projector.mat).trace().real();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep_modes) {
  const auto& dims = rho.space.dims();
  const int n = rho.space.num_modes();
  std::vector<bool> keep(n, false);
  for (int k : keep_modes) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: bad mode");
    keep[k] = true;
  }
  std::vector<int> kept_dims, strides(n);
  int stride = 1;
  for (int k = n - 1; k >= 0; --k) {
    strides[k] = stride;
    stride *= dims[k];
  }
  int dk = 1, dt = 1;
  for (int k = 0; k < n; ++k) {
    if (keep[k])
      dk *= dims[k];
    else
      dt *= dims[k];
  }
  for (int k = 0; k < n; ++k)
    if (keep[k]) kept_dims.push_back(dims[k]);

  // Maps (kept multi-index, traced multi-index) -> flat composite index.
  auto flat = [&](int ik, int it) {
    int idx = 0, rk = ik, rt = it;
    for (int k = n - 1; k >= 0; --k) {
      int d = dims[k];
      if (keep[k]) {
        idx += (rk % d) * strides[k];
        rk /= d;
      } else {
        idx += (rt % d) * strides[k];
        rt /= d;
      }
    }
    return idx;
  };

  MatrixXcd out = MatrixXcd::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += rho.mat(flat(i, t), flat(j, t));
      out(i, j) = acc;
    }
  return {std::move(out), Space(kept_dims)};
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.space != b.space) throw std::invalid_argument("fidelity: space mismatch");
  return std::norm(a.amp.dot(b.amp));
}

double state_fidelity(const StateVector& a, const DensityMatrix& b) {
  if (a.space != b.space) throw std::invalid_argument("fidelity: space mismatch");
  return (a.amp.adjoint() * b.mat * a.amp)(0).real();
}

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.space != b.space) throw std::invalid_argument("fidelity: space mismatch");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a.mat);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  MatrixXcd sqrt_a =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es2(sqrt_a * b.mat * sqrt_a);
  double f = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return f * f;
}

double expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.space != rho.space)
    throw std::invalid_argument("expectation: space mismatch");
  return (op.mat * rho.mat).trace().real();
}

double expectation(const Operator& op, const StateVector& psi) {
  if (op.space != psi.space)
    throw std::invalid_argument("expectation: space mismatch");
  return (psi.amp.adjoint() * op.mat * psi.amp)(0).real();
}

WignerGrid wigner_grid(const DensityMatrix& rho, double x_min, double x_max,
                       double p_min, double p_max, double step) {
  if (step <= 0.0) throw std::invalid_argument("wigner grid step must be > 0");
  if (rho.space.num_modes() != 1)
    throw std::invalid_argument("wigner_grid expects a single-mode state");
  const int N = rho.dim();
  WignerGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.p_min = p_min;
  g.p_max = p_max;
  g.step = step;
  for (double x = x_min; x <= x_max + 0.5 * step; x += step) g.x.push_back(x);
  for (double p = p_min; p <= p_max + 0.5 * step; p += step) g.p.push_back(p);
  g.w.resize(g.x.size(), g.p.size());

  VectorXcd parity(N);
  for (int n = 0; n < N; ++n) parity[n] = (n % 2 == 0) ? 1.0 : -1.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (size_t i = 0; i < g.x.size(); ++i) {
    for (size_t j = 0; j < g.p.size(); ++j) {
      cplx beta = cplx(g.x[i], g.p[j]) * inv_sqrt2;
      MatrixXcd d = displacement(beta, {N}).mat;
      // Tr[D rho D^dag P] with diagonal P.
      MatrixXcd m = d.adjoint() * (rho.mat * d);
      cplx tr = 0.0;
      for (int n = 0; n < N; ++n) tr += parity[n] * m(n, n);
      g.w(i, j) = (2.0 / std::numbers::pi) * tr.real();
    }
  }
  return g;
}

}  // namespace catsim
