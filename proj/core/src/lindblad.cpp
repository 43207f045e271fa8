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

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include <Eigen/Sparse>

namespace catsim {

TimeDependentOperator TimeDependentOperator::constant(Operator op) {
  TimeDependentOperator out;
  out.space_ = op.space;
  out.terms_.emplace_back(nullptr, std::move(op));
  out.constant_ = true;
  return out;
}

TimeDependentOperator TimeDependentOperator::combination(
    std::vector<std::pair<Coefficient, Operator>> terms) {
  if (terms.empty())
    throw std::invalid_argument("time-dependent operator needs >= 1 term");
  TimeDependentOperator out;
  out.space_ = terms[0].second.space;
  for (const auto& [c, op] : terms) {
    if (op.space != out.space_)
      throw std::invalid_argument("combination terms on mismatched spaces");
  }
  out.constant_ = true;
  for (const auto& [c, op] : terms)
    if (c) out.constant_ = false;
  out.terms_ = std::move(terms);
  return out;
}

Operator TimeDependentOperator::at(double t) const {
  MatrixXcd acc = MatrixXcd::Zero(space_.total_dim(), space_.total_dim());
  for (const auto& [c, op] : terms_) acc += (c ? c(t) : cplx(1.0)) * op.mat;
  return {std::move(acc), space_};
}

Space GateSchedule::space() const {
  if (hamiltonian) return hamiltonian->space();
  if (!dissipators.empty()) return dissipators[0].op.space();
  throw std::invalid_argument("empty schedule has no space");
}

void GateSchedule::validate() const {
  if (duration <= 0.0) throw std::invalid_argument("schedule duration must be > 0");
  if (!hamiltonian && dissipators.empty())
    throw std::invalid_argument("schedule needs a Hamiltonian or a dissipator");
  Space s = space();
  for (const auto& d : dissipators) {
    if (d.rate < 0.0) throw std::invalid_argument("dissipator rate must be >= 0");
    if (d.op.space() != s)
      throw std::invalid_argument("schedule operators on mismatched spaces");
  }
  if (hamiltonian && hamiltonian->space() != s)
    throw std::invalid_argument("schedule operators on mismatched spaces");
}

namespace {

using Triplet = Eigen::Triplet<cplx>;
using SpMat = Eigen::SparseMatrix<cplx>;

struct ComboTerm {
  TimeDependentOperator::Coefficient coeff;  // nullptr = 1
  std::vector<Triplet> entries;
};

// Compressed sparse rows over the union pattern of a linear combination;
// only the value array is refreshed when the scalar coefficients move. With
// column-major dense operands, (L B)(:, j) gathers from B(:, j) (processed
// four columns at a time) and (B L^dag)(:, j) is an axpy sweep over row j.
class SparseCombo {
 public:
  explicit SparseCombo(std::vector<ComboTerm> terms) {
    int d = 0;
    for (const auto& term : terms)
      for (const auto& e : term.entries)
        d = std::max(d, std::max(e.row(), e.col()) + 1);
    dim_ = d;
    constant_ = true;
    for (const auto& term : terms)
      if (term.coeff) constant_ = false;

    std::map<std::pair<int, int>, int> slot_of;
    for (const auto& term : terms)
      for (const auto& e : term.entries) slot_of[{e.row(), e.col()}] = 0;
    row_ptr_.assign(dim_ + 1, 0);
    int slot = 0;
    for (auto& [ij, s] : slot_of) {
      s = slot++;
      col_.push_back(ij.second);
      ++row_ptr_[ij.first + 1];
    }
    for (int i = 0; i < dim_; ++i) row_ptr_[i + 1] += row_ptr_[i];
    val_.assign(col_.size(), cplx(0.0));

    for (auto& term : terms) {
      coeffs_.push_back(std::move(term.coeff));
      std::vector<std::pair<int, cplx>> entries;
      for (const auto& e : term.entries)
        entries.push_back({slot_of[{e.row(), e.col()}], e.value()});
      term_entries_.push_back(std::move(entries));
    }
    if (constant_) fill(0.0);
  }

  void resize_dim(int d) {  // pad trailing empty rows
    if (d < dim_) throw std::logic_error("cannot shrink combo");
    row_ptr_.resize(d + 1, row_ptr_[dim_]);
    dim_ = d;
  }

  void set_time(double t) {
    if (!constant_) fill(t);
  }

  int dim() const { return dim_; }

  // out += L * b
  void left_acc(const MatrixXcd& b, MatrixXcd& out) const {
    const int d = static_cast<int>(b.rows());
    const int* rp = row_ptr_.data();
    const int* cp = col_.data();
    const cplx* vp = val_.data();
    int j = 0;
    for (; j + 4 <= d; j += 4) {
      const cplx* b0 = b.data() + static_cast<ptrdiff_t>(j) * d;
      const cplx* b1 = b0 + d;
      const cplx* b2 = b1 + d;
      const cplx* b3 = b2 + d;
      cplx* o0 = out.data() + static_cast<ptrdiff_t>(j) * d;
      cplx* o1 = o0 + d;
      cplx* o2 = o1 + d;
      cplx* o3 = o2 + d;
      for (int i = 0; i < dim_; ++i) {
        cplx a0(0, 0), a1(0, 0), a2(0, 0), a3(0, 0);
        for (int s = rp[i]; s < rp[i + 1]; ++s) {
          const cplx v = vp[s];
          const int k = cp[s];
          a0 += v * b0[k];
          a1 += v * b1[k];
          a2 += v * b2[k];
          a3 += v * b3[k];
        }
        o0[i] += a0;
        o1[i] += a1;
        o2[i] += a2;
        o3[i] += a3;
      }
    }
    for (; j < d; ++j) {
      const cplx* bj = b.data() + static_cast<ptrdiff_t>(j) * d;
      cplx* oj = out.data() + static_cast<ptrdiff_t>(j) * d;
      for (int i = 0; i < dim_; ++i) {
        cplx acc(0, 0);
        for (int s = rp[i]; s < rp[i + 1]; ++s) acc += vp[s] * bj[cp[s]];
        oj[i] += acc;
      }
    }
  }

  // out += c * (b * L^dag); column j of L^dag is the conjugated row j of L.
  void right_adjoint_acc(cplx c, const MatrixXcd& b, MatrixXcd& out) const {
    const int d = static_cast<int>(b.rows());
    for (int j = 0; j < dim_; ++j) {
      cplx* oj = out.data() + static_cast<ptrdiff_t>(j) * d;
      for (int s = row_ptr_[j]; s < row_ptr_[j + 1]; ++s) {
        const cplx w = c * std::conj(val_[s]);
        const cplx* bk = b.data() + static_cast<ptrdiff_t>(col_[s]) * d;
        for (int i = 0; i < d; ++i) oj[i] += w * bk[i];
      }
    }
  }

 private:
  void fill(double t) {
    std::fill(val_.begin(), val_.end(), cplx(0.0));
    for (size_t term = 0; term < term_entries_.size(); ++term) {
      cplx c = coeffs_[term] ? coeffs_[term](t) : cplx(1.0);
      for (const auto& [slot, v] : term_entries_[term]) val_[slot] += c * v;
    }
  }

  int dim_ = 0;
  bool constant_ = false;
  std::vector<int> row_ptr_, col_;
  std::vector<cplx> val_;
  std::vector<TimeDependentOperator::Coefficient> coeffs_;
  std::vector<std::vector<std::pair<int, cplx>>> term_entries_;
};

std::vector<Triplet> sparse_entries(const MatrixXcd& m) {
  std::vector<Triplet> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != cplx(0.0)) out.emplace_back(i, j, m(i, j));
  return out;
}

SpMat to_sparse(const MatrixXcd& m) {
  auto entries = sparse_entries(m);
  SpMat s(m.rows(), m.cols());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

std::vector<Triplet> sparse_entries(const SpMat& m) {
  std::vector<Triplet> out;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      out.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                       it.value());
  return out;
}

// m <- m + m^dag, tiled so both triangles stream through cache.
void add_own_adjoint(MatrixXcd& m) {
  const int d = static_cast<int>(m.rows());
  constexpr int B = 48;
  cplx* p = m.data();
  auto at = [&](int i, int j) -> cplx& {
    return p[static_cast<ptrdiff_t>(j) * d + i];
  };
  for (int jb = 0; jb < d; jb += B)
    for (int ib = 0; ib <= jb; ib += B) {
      int imax = std::min(ib + B, d), jmax = std::min(jb + B, d);
      for (int j = jb; j < jmax; ++j)
        for (int i = ib; i < std::min(imax, j + 1); ++i) {
          if (i == j) {
            at(i, i) = 2.0 * at(i, i).real();
          } else {
            cplx v = at(i, j) + std::conj(at(j, i));
            at(i, j) = v;
            at(j, i) = std::conj(v);
          }
        }
    }
}

// m <- (m + m^dag) / 2
void hermitize(MatrixXcd& m) {
  const int d = static_cast<int>(m.rows());
  constexpr int B = 48;
  cplx* p = m.data();
  auto at = [&](int i, int j) -> cplx& {
    return p[static_cast<ptrdiff_t>(j) * d + i];
  };
  for (int jb = 0; jb < d; jb += B)
    for (int ib = 0; ib <= jb; ib += B) {
      int imax = std::min(ib + B, d), jmax = std::min(jb + B, d);
      for (int j = jb; j < jmax; ++j)
        for (int i = ib; i < std::min(imax, j + 1); ++i) {
          if (i == j) {
            at(i, i) = at(i, i).real();
          } else {
            cplx v = 0.5 * (at(i, j) + std::conj(at(j, i)));
            at(i, j) = v;
            at(j, i) = std::conj(v);
          }
        }
    }
}

class Engine {
 public:
  Engine(const GateSchedule& schedule, int dim) : dim_(dim) {
    using Coefficient = TimeDependentOperator::Coefficient;
    // The half-generator G = -iH - 0.5 sum_k rate_k L_k^dag L_k is compiled
    // into one sparse combination; the pairwise products of the dissipator
    // terms feed it with derived coefficient functions.
    std::vector<ComboTerm> g_terms;
    if (schedule.hamiltonian) {
      for (const auto& [c, op] : schedule.hamiltonian->terms()) {
        ComboTerm term;
        if (c) {
          Coefficient cc = c;
          term.coeff = [cc](double t) { return cplx(0.0, -1.0) * cc(t); };
          term.entries = sparse_entries(op.mat);
        } else {
          term.entries = sparse_entries(MatrixXcd(cplx(0.0, -1.0) * op.mat));
        }
        g_terms.push_back(std::move(term));
      }
    }
    for (const auto& d : schedule.dissipators) {
      if (d.rate == 0.0) continue;
      rates_.push_back(d.rate);
      const auto& terms = d.op.terms();
      std::vector<SpMat> mats;
      std::vector<ComboTerm> l_terms;
      for (const auto& [c, op] : terms) {
        mats.push_back(to_sparse(op.mat));
        l_terms.push_back({c, sparse_entries(op.mat)});
      }
      auto combo = std::make_unique<SparseCombo>(std::move(l_terms));
      combo->resize_dim(dim);
      diss_.push_back(std::move(combo));
      const double half_rate = 0.5 * d.rate;
      for (size_t a = 0; a < terms.size(); ++a) {
        for (size_t b = 0; b < terms.size(); ++b) {
          SpMat prod = SpMat(mats[a].adjoint()) * mats[b];
          ComboTerm term;
          term.entries = sparse_entries(prod);
          for (auto& e : term.entries)
            e = Triplet(e.row(), e.col(), -half_rate * e.value());
          const Coefficient& ca = terms[a].first;
          const Coefficient& cb = terms[b].first;
          if (ca && cb) {
            Coefficient fa = ca, fb = cb;
            term.coeff = [fa, fb](double t) {
              return std::conj(fa(t)) * fb(t);
            };
          } else if (ca) {
            Coefficient fa = ca;
            term.coeff = [fa](double t) { return std::conj(fa(t)); };
          } else if (cb) {
            term.coeff = cb;
          }
          g_terms.push_back(std::move(term));
        }
      }
    }
    if (g_terms.empty()) g_terms.push_back({nullptr, {}});
    g_ = std::make_unique<SparseCombo>(std::move(g_terms));
    g_->resize_dim(dim);
    work_.resize(dim, dim);
  }

  // out = G rho + (G rho)^dag + sum_k rate_k (L_k rho) L_k^dag.
  // Assumes rho Hermitian.
  void rhs(const MatrixXcd& rho, double t, MatrixXcd& out) {
    out.setZero();
    g_->set_time(t);
    g_->left_acc(rho, out);
    add_own_adjoint(out);
    for (size_t k = 0; k < diss_.size(); ++k) {
      diss_[k]->set_time(t);
      work_.setZero();
      diss_[k]->left_acc(rho, work_);
      diss_[k]->right_adjoint_acc(cplx(rates_[k]), work_, out);
    }
  }

  // One classical RK4 step from y at time t, re-Hermitized in place.
  void rk4_step(MatrixXcd& y, double t, double dt) {
    rhs(y, t, k_);
    acc_ = y + (dt / 6.0) * k_;
    stage_ = y + (0.5 * dt) * k_;
    rhs(stage_, t + 0.5 * dt, k_);
    acc_ += (dt / 3.0) * k_;
    stage_ = y + (0.5 * dt) * k_;
    rhs(stage_, t + 0.5 * dt, k_);
    acc_ += (dt / 3.0) * k_;
    stage_ = y + dt * k_;
    rhs(stage_, t + dt, k_);
    acc_ += (dt / 6.0) * k_;
    y = acc_;
    hermitize(y);
  }

  void alloc_step_workspaces() {
    k_.resize(dim_, dim_);
    acc_.resize(dim_, dim_);
    stage_.resize(dim_, dim_);
  }

  double max_rate() const {
    double m = 0.0;
    for (double r : rates_) m = std::max(m, r);
    return m;
  }

 private:
  int dim_;
  std::unique_ptr<SparseCombo> g_;
  std::vector<std::unique_ptr<SparseCombo>> diss_;
  std::vector<double> rates_;
  MatrixXcd work_, k_, acc_, stage_;
};

void check_finite(const MatrixXcd& m, const char* what) {
  cplx tr = m.trace();
  if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag()))
    throw std::runtime_error(std::string("integration produced NaN/Inf in ") +
                             what);
}

}  // namespace

EvolutionResult evolve(const DensityMatrix& rho0, const GateSchedule& schedule,
                       const StepControl& control) {
  schedule.validate();
  if (rho0.space != schedule.space())
    throw std::invalid_argument("initial state not on the schedule's space");
  if (control.dt && control.tolerance)
    throw std::invalid_argument("choose fixed dt or tolerance, not both");
  if (control.dt && *control.dt <= 0.0)
    throw std::invalid_argument("dt must be > 0");
  if (control.tolerance &&
      (*control.tolerance <= 0.0 || *control.tolerance > 1e-3))
    throw std::invalid_argument("tolerance must lie in (0, 1e-3]");

  const int dim = rho0.dim();
  Engine engine(schedule, dim);
  engine.alloc_step_workspaces();
  const double T = schedule.duration;

  EvolutionResult result;
  MatrixXcd y = rho0.mat;

  auto want_snapshot = [&](int idx, int total) {
    return control.snapshots > 0 &&
           (idx == total ||
            (idx * (control.snapshots - 1)) / total !=
                ((idx - 1) * (control.snapshots - 1)) / total);
  };

  if (!control.tolerance) {
    double mr = engine.max_rate();
    double dt = control.dt ? *control.dt : 1e-3 / (mr > 0.0 ? mr : 1.0);
    int steps = std::max(1, static_cast<int>(std::ceil(T / dt)));
    dt = T / steps;
    if (control.snapshots > 0) result.trajectory.push_back({0.0, rho0});
    for (int s = 0; s < steps; ++s) {
      engine.rk4_step(y, s * dt, dt);
      if (s % 64 == 0) check_finite(y, "fixed-step evolution");
      if (want_snapshot(s + 1, steps))
        result.trajectory.push_back({(s + 1) * dt, {y, rho0.space}});
    }
  } else {
    // Step-doubling adaptive RK4: one h-step against two h/2-steps.
    const double tol = *control.tolerance;
    double mr = engine.max_rate();
    double h = 0.1 / (mr > 0.0 ? mr : 1.0);
    double t = 0.0;
    int consecutive_rejects = 0;
    MatrixXcd y_full, y_half;
    if (control.snapshots > 0) result.trajectory.push_back({0.0, rho0});
    while (t < T - 1e-15 * T) {
      h = std::min(h, T - t);
      y_full = y;
      engine.rk4_step(y_full, t, h);
      y_half = y;
      engine.rk4_step(y_half, t, 0.5 * h);
      engine.rk4_step(y_half, t + 0.5 * h, 0.5 * h);
      double err = (y_full - y_half).norm() / 15.0;
      if (err <= tol) {
        t += h;
        y = y_half;
        check_finite(y, "adaptive evolution");
        consecutive_rejects = 0;
        if (err < 0.1 * tol) h *= 1.5;
      } else {
        h *= 0.5;
        if (++consecutive_rejects > 60)
          throw std::runtime_error(
              "adaptive step control failed: tolerance unreachable");
      }
    }
    if (control.snapshots > 0) result.trajectory.push_back({T, {y, rho0.space}});
  }

  check_finite(y, "final state");
  result.trace_drift = y.trace().real() - 1.0;
  result.final_state = {std::move(y), rho0.space};
  return result;
}

DensityMatrix steady_state(const GateSchedule& schedule,
                           const DensityMatrix& rho0,
                           const SteadyStateOptions& opts) {
  schedule.validate();
  if (rho0.space != schedule.space())
    throw std::invalid_argument("initial state not on the schedule's space");
  if (schedule.hamiltonian && !schedule.hamiltonian->is_constant())
    throw std::invalid_argument("steady_state requires constant operators");
  for (const auto& d : schedule.dissipators)
    if (!d.op.is_constant())
      throw std::invalid_argument("steady_state requires constant operators");

  const int dim = rho0.dim();
  Engine engine(schedule, dim);
  engine.alloc_step_workspaces();
  double mr = engine.max_rate();
  if (mr <= 0.0) mr = 1.0;
  const double dt = 1e-3 / mr;

  MatrixXcd y = rho0.mat;
  MatrixXcd deriv(dim, dim);
  double t = 0.0;
  while (t < opts.max_time) {
    double chunk = std::min(opts.check_interval, opts.max_time - t);
    int steps = std::max(1, static_cast<int>(std::ceil(chunk / dt)));
    for (int s = 0; s < steps; ++s) engine.rk4_step(y, t + s * dt, chunk / steps);
    t += chunk;
    check_finite(y, "steady-state search");
    engine.rhs(y, t, deriv);
    if (deriv.norm() < opts.residual_norm) return {std::move(y), rho0.space};
  }
  throw std::runtime_error("steady_state did not converge within max_time");
}

}  // namespace catsim
