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

#ifndef CATSIM_FOCK_HPP
#define CATSIM_FOCK_HPP

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace catsim {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// A single bosonic mode truncated to Fock states |0>..|dim-1>. dim >= 2.
struct ModeSpace {
  int dim;
};

/// Product of one or more truncated modes, leftmost mode is the slowest
/// (most significant) index of the composite basis.
class Space {
 public:
  Space() = default;
  Space(ModeSpace m);  // NOLINT: intentional implicit conversion
  explicit Space(std::vector<int> dims);

  int num_modes() const { return static_cast<int>(dims_.size()); }
  int mode_dim(int mode) const;
  int total_dim() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }

  /// Concatenates mode lists: product of `a` and `b` as independent modes.
  static Space product(const Space& a, const Space& b);

  bool operator==(const Space& other) const { return dims_ == other.dims_; }
  bool operator!=(const Space& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  int total_ = 0;
};

/// Dense complex matrix acting on a Space.
struct Operator {
  MatrixXcd mat;
  Space space;

  int dim() const { return static_cast<int>(mat.rows()); }
  Operator adjoint() const { return {mat.adjoint(), space}; }
};

/// Normalized pure state on a Space (norm checked at construction sites).
struct StateVector {
  VectorXcd amp;
  Space space;

  int dim() const { return static_cast<int>(amp.size()); }
};

/// Density matrix; construction checks hermiticity and unit trace.
/// Positivity is checked on demand (min_eigenvalue) since it costs a full
/// eigendecomposition.
struct DensityMatrix {
  MatrixXcd mat;
  Space space;

  static DensityMatrix from_pure(const StateVector& psi);
  /// Validating constructor path: throws if not Hermitian within 1e-9 or
  /// trace-1 within 1e-7.
  static DensityMatrix from_matrix(MatrixXcd m, const Space& s);

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace_error() const { return std::abs(mat.trace() - cplx(1.0)); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
};

/// Physical parameters of one dissipatively stabilized cat qubit.
/// kappa2 is the engineered two-photon rate, kappa1 the single-photon loss
/// rate, n_th the thermal occupancy of the loss bath, kappa_phi the pure
/// dephasing rate. Mean photon number is |alpha|^2.
struct CatQubitParams {
  cplx alpha;
  double kappa2 = 1.0;
  double kappa1 = 0.0;
  double n_th = 0.0;
  double kappa_phi = 0.0;

  double nbar() const { return std::norm(alpha); }
  void validate() const;  // throws std::invalid_argument on bad rates
};

enum class CatParity { even, odd };

// ---- Mode operators ----

/// <n-1|a|n> = sqrt(n). Truncation note: [a, a^dag] equals identity except
/// for the (N-1, N-1) entry, which is -(N-1).
Operator annihilation(ModeSpace m);
Operator creation(ModeSpace m);
Operator number_operator(ModeSpace m);
Operator identity_operator(const Space& s);
/// diag((-1)^n) on one mode.
Operator parity_operator(ModeSpace m);
/// Photon-number parity of a single mode of a composite space.
Operator mode_parity_operator(const Space& s, int mode);
/// Displacement D(beta) = exp(beta a^dag - beta* a), assembled from the
/// normal-ordered factorization; exact up to truncation.
Operator displacement(cplx beta, ModeSpace m);

/// Lifts a single-mode operator to `s` by tensoring with identities.
Operator embed(const Operator& single_mode, const Space& s, int mode);

// ---- States ----

/// Recommended truncation for amplitude alpha. Constructors still verify the
/// actual tail weight.
int default_truncation(cplx alpha);

/// Weight of the Poisson(|alpha|^2) photon-number distribution at n >= dim.
double coherent_tail_weight(cplx alpha, int dim);

/// Coherent state |alpha>, renormalized after truncation. Throws if the
/// truncated tail weight is >= 1e-6.
StateVector coherent_state(cplx alpha, ModeSpace m);

/// N_pm (|alpha> pm |-alpha>). Even cats occupy even Fock states only, odd
/// cats odd ones (exactly zero elsewhere by construction). The odd cat is
/// undefined at alpha = 0.
StateVector cat_state(cplx alpha, CatParity parity, ModeSpace m);

// ---- Composition ----

Operator tensor(const std::vector<Operator>& factors);
StateVector tensor(const std::vector<StateVector>& factors);

/// Projector onto span{|C_alpha^+>, |C_alpha^->} on every mode of `s`.
Operator code_projector(cplx alpha, const Space& s);

/// 1 - Tr(P rho P), the population outside the projector's range.
double leakage(const DensityMatrix& rho, const Operator& projector);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep_modes);

// ---- Measures ----

double state_fidelity(const StateVector& a, const StateVector& b);
double state_fidelity(const StateVector& a, const DensityMatrix& b);
/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

double expectation(const Operator& op, const DensityMatrix& rho);
double expectation(const Operator& op, const StateVector& psi);

// ---- Wigner function ----

struct WignerGrid {
  double x_min, x_max, p_min, p_max, step;
  std::vector<double> x, p;
  Eigen::MatrixXd w;  // w(i, j) = W(x[i], p[j])
};

/// W(beta) = (2/pi) Tr[D(beta) rho D(-beta) parity] with beta = (x + ip)/sqrt(2).
/// Single-mode rho only; step must be positive.
WignerGrid wigner_grid(const DensityMatrix& rho, double x_min, double x_max,
                       double p_min, double p_max, double step);

}  // namespace catsim

#endif  // CATSIM_FOCK_HPP
