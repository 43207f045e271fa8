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

#include "catsim/qec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catsim/error_models.hpp"
#include "catsim/parallel.hpp"
#include "json.hpp"

namespace catsim {

void RepCodeParams::validate() const {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  auto ok = [](double p) { return p >= 0.0 && p < 1.0; };
  if (!ok(p_prep) || !ok(p_idle) || !ok(p_meas) || !ok(p_x) || !ok(p_cnot_zc) ||
      !ok(p_cnot_zt) || !ok(p_cnot_zczt))
    throw std::invalid_argument("probabilities must lie in [0, 1)");
  double tof_total = 0.0;
  for (double p : p_tof) {
    if (!ok(p)) throw std::invalid_argument("probabilities must lie in [0, 1)");
    tof_total += p;
  }
  if (p_cnot_zc + p_cnot_zt + p_cnot_zczt >= 1.0 || tof_total >= 1.0)
    throw std::invalid_argument("gate fault channel exceeds unit weight");
}

RepCodeParams RepCodeParams::from_cat_params(const CatQubitParams& cat, int n,
                                             int r) {
  RepCodeParams p;
  p.n = n;
  p.r = r;
  const double t_star = optimal_gate_time(cat);
  GateErrorBudget cb = cnot_error_budget(cat, t_star);
  p.p_cnot_zc = cb.p_z1;
  p.p_cnot_zt = cb.p_z2;
  p.p_cnot_zczt = cb.p_z1z2;
  GateErrorBudget tb = toffoli_error_budget(cat, t_star);
  p.p_tof[0] = tb.p_z1;
  p.p_tof[1] = tb.p_z2;
  p.p_tof[2] = tb.p_z3;
  p.p_tof[3] = tb.p_z1z2;
  p.p_tof[4] = tb.p_z1z3;
  p.p_tof[5] = tb.p_z2z3;
  p.p_tof[6] = tb.p_z1z2z3;
  const double jump = cat.nbar() * cat.kappa1 * t_star;
  p.p_prep = jump;
  p.p_idle = jump;
  // Residual bit-flip scale of one gate window.
  p.p_x = jump * std::exp(-2.0 * cat.nbar());
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

namespace {

struct Defect {
  int check, round;
  int stage = 0;
};

// Exact minimum-weight pairing of defects on the space-time strip, each
// defect optionally matched to the nearer spatial boundary. DP over subsets
// for small defect counts, nearest-neighbor greedy beyond that.
//
// Rounds separated by an in-circuit correction commit ("stages") may not be
// bridged by pure time steps: a committed stage's readout cannot be
// reinterpreted later as a measurement blip, only revised spatially.
class LineMatcher {
 public:
  LineMatcher(int checks, double w_space, double w_time)
      : checks_(checks), w_space_(w_space), w_time_(w_time) {}

  // Returns pairs (i, j) with j = -1 for a boundary match.
  std::vector<std::pair<int, int>> match(const std::vector<Defect>& defects) {
    const int k = static_cast<int>(defects.size());
    if (k == 0) return {};
    if (k <= 20) return match_exact(defects);
    return match_greedy(defects);
  }

  // Elementary faults connect defects along three edge kinds: data errors
  // between rounds (space), readout errors (time), and data errors landing
  // between the two check readouts of one round, which show up one check
  // lower in the next round (diagonal, at data-error weight).
  double pair_cost(const Defect& a, const Defect& b) const {
    int dj = std::abs(a.check - b.check);
    int dt = std::abs(a.round - b.round);
    bool diagonal = (a.check - b.check) * (a.round - b.round) < 0;
    int time_steps = diagonal ? std::max(0, dt - dj) : dt;
    double wt = w_time_;
    if (a.stage != b.stage && time_steps > 0)
      wt = w_space_ * (checks_ + 2);  // effectively bans the reinterpretation
    return w_space_ * dj + wt * time_steps + 1e-9 * w_space_ * dj;
  }
  double boundary_cost(const Defect& a) const {
    return (1.0 + 1e-9) * w_space_ * std::min(a.check + 1, checks_ - a.check);
  }

 private:
  std::vector<std::pair<int, int>> match_exact(
      const std::vector<Defect>& defects) {
    const int k = static_cast<int>(defects.size());
    const uint32_t full = (k >= 32) ? 0 : (1u << k) - 1;
    std::vector<double> best(full + 1, -1.0);
    std::vector<std::pair<int, int>> choice(full + 1, {-1, -1});
    best[0] = 0.0;
    std::function<double(uint32_t)> solve = [&](uint32_t mask) -> double {
      if (best[mask] >= 0.0) return best[mask];
      int i = 0;
      while (!(mask & (1u << i))) ++i;
      double b = solve(mask & ~(1u << i)) + boundary_cost(defects[i]);
      std::pair<int, int> pick{i, -1};
      for (int j = i + 1; j < k; ++j) {
        if (!(mask & (1u << j))) continue;
        double c = solve(mask & ~(1u << i) & ~(1u << j)) +
                   pair_cost(defects[i], defects[j]);
        if (c < b) {
          b = c;
          pick = {i, j};
        }
      }
      best[mask] = b;
      choice[mask] = pick;
      return b;
    };
    solve(full);
    std::vector<std::pair<int, int>> out;
    uint32_t mask = full;
    while (mask) {
      auto [i, j] = choice[mask];
      out.push_back({i, j});
      mask &= ~(1u << i);
      if (j >= 0) mask &= ~(1u << j);
    }
    return out;
  }

  std::vector<std::pair<int, int>> match_greedy(
      const std::vector<Defect>& defects) {
    const int k = static_cast<int>(defects.size());
    std::vector<bool> used(k, false);
    std::vector<std::pair<int, int>> out;
    for (int rounds = 0; rounds < k; ++rounds) {
      double best = 1e300;
      std::pair<int, int> pick{-1, -1};
      for (int i = 0; i < k; ++i) {
        if (used[i]) continue;
        if (boundary_cost(defects[i]) < best) {
          best = boundary_cost(defects[i]);
          pick = {i, -1};
        }
        for (int j = i + 1; j < k; ++j) {
          if (used[j]) continue;
          if (pair_cost(defects[i], defects[j]) < best) {
            best = pair_cost(defects[i], defects[j]);
            pick = {i, j};
          }
        }
      }
      if (pick.first < 0) break;
      used[pick.first] = true;
      if (pick.second >= 0) used[pick.second] = true;
      out.push_back(pick);
      if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) break;
    }
    return out;
  }

  int checks_;
  double w_space_, w_time_;
};

std::vector<uint8_t> correction_from_matching(
    const std::vector<Defect>& defects,
    const std::vector<std::pair<int, int>>& pairs, int n) {
  std::vector<uint8_t> corr(n, 0);
  const int checks = n - 1;
  for (auto [i, j] : pairs) {
    if (j < 0) {
      int c = defects[i].check;
      if (c + 1 <= checks - c) {
        for (int q = 0; q <= c; ++q) corr[q] ^= 1;
      } else {
        for (int q = c + 1; q < n; ++q) corr[q] ^= 1;
      }
    } else {
      int c1 = std::min(defects[i].check, defects[j].check);
      int c2 = std::max(defects[i].check, defects[j].check);
      for (int q = c1 + 1; q <= c2; ++q) corr[q] ^= 1;
    }
  }
  return corr;
}

std::pair<double, double> matching_weights(const RepCodeParams& params) {
  if (!params.weighted_matching) return {1.0, 1.0};
  double ps = std::max(params.p_idle, 1e-12);
  double pt = std::max(params.p_meas, 1e-12);
  return {-std::log(ps), -std::log(pt)};
}

std::vector<Defect> detection_events(const SyndromeHistory& h,
                                     const std::vector<int>* row_stages) {
  std::vector<Defect> out;
  for (int t = 0; t < h.rounds; ++t)
    for (int j = 0; j < h.checks; ++j) {
      uint8_t prev = (t > 0) ? h.at(j, t - 1) : 0;
      if (h.at(j, t) ^ prev)
        out.push_back({j, t, row_stages ? (*row_stages)[t] : 0});
    }
  return out;
}

std::vector<uint8_t> decode_impl(const SyndromeHistory& history,
                                 const RepCodeParams& params,
                                 const std::vector<int>* row_stages) {
  auto [ws, wt] = matching_weights(params);
  LineMatcher matcher(history.checks, ws, wt);
  std::vector<Defect> defects = detection_events(history, row_stages);
  auto pairs = matcher.match(defects);
  return correction_from_matching(defects, pairs, params.n);
}

}  // namespace

std::vector<uint8_t> decode(const SyndromeHistory& history,
                            const RepCodeParams& params) {
  return decode_impl(history, params, nullptr);
}

std::vector<uint8_t> decode_majority(const SyndromeHistory& history,
                                     const RepCodeParams& params) {
  SyndromeHistory maj = SyndromeHistory::zeros(history.checks, 1);
  for (int j = 0; j < history.checks; ++j) {
    int ones = 0;
    for (int t = 0; t < history.rounds; ++t) ones += history.at(j, t);
    maj.at(j, 0) = (2 * ones > history.rounds) ? 1 : 0;
  }
  return decode_impl(maj, params, nullptr);
}

// ---------------------------------------------------------------------------
// Circuit construction
// ---------------------------------------------------------------------------

namespace {

class Builder {
 public:
  explicit Builder(std::string name) { c_.name = std::move(name); }

  int add_block(int n) {
    std::vector<int> ids;
    for (int k = 0; k < n; ++k) ids.push_back(c_.num_qubits++);
    c_.blocks.push_back(ids);
    return static_cast<int>(c_.blocks.size()) - 1;
  }

  // One shared ancilla register, reused by every stage.
  void ensure_ancillas(int count) {
    while (static_cast<int>(c_.ancillas.size()) < count)
      c_.ancillas.push_back(c_.num_qubits++);
  }

  void prep_plus(int q) { loc({FaultLocation::Kind::prep_plus, q}); }
  void prep_minus(int q) { loc({FaultLocation::Kind::prep_minus, q}); }
  void idle(int q) { loc({FaultLocation::Kind::idle, q}); }
  void cnot(int ctrl, int tgt) {
    loc({FaultLocation::Kind::cnot, ctrl, tgt});
  }
  void toffoli(int c1, int c2, int tgt) {
    loc({FaultLocation::Kind::toffoli, c1, c2, tgt});
  }
  void measure_x(int q, int block, int check) {
    FaultLocation l{FaultLocation::Kind::measure_x, q, block, check};
    c_.locations.push_back(l);
    ++c_.num_measurements;
  }
  void measure_xl(int block, int correction_block) {
    loc({FaultLocation::Kind::measure_xl, block, correction_block});
  }

  // r rounds of stabilizer extraction on `block`.
  void syndrome_rounds(int block, int rounds, bool data_idles = true) {
    const auto& data = c_.blocks[block];
    const int checks = static_cast<int>(data.size()) - 1;
    ensure_ancillas(checks);
    for (int t = 0; t < rounds; ++t) {
      if (data_idles)
        for (int q : data) idle(q);
      for (int j = 0; j < checks; ++j) {
        int anc = c_.ancillas[j];
        prep_plus(anc);
        cnot(anc, data[j]);
        cnot(anc, data[j + 1]);
        measure_x(anc, block, j);
      }
    }
  }

  void decode_block(int block, int rounds) {
    FaultLocation l{FaultLocation::Kind::decode_block, block};
    l.rounds = rounds;
    c_.locations.push_back(l);
  }
  void decode_perfect(int block) {
    loc({FaultLocation::Kind::decode_perfect, block});
  }

  void qec_stage(int block, int rounds) {
    syndrome_rounds(block, rounds);
    decode_block(block, rounds);
  }
  void closing_stage(int block, int rounds) {
    syndrome_rounds(block, rounds);
    decode_perfect(block);
  }

  void set_outputs(std::vector<int> blocks) {
    c_.output_blocks = std::move(blocks);
  }

  FaultCircuit take() { return std::move(c_); }

 private:
  void loc(FaultLocation l) { c_.locations.push_back(l); }
  FaultCircuit c_;
};

}  // namespace

FaultCircuit build_qec_round(const RepCodeParams& params) {
  params.validate();
  Builder b("qec_round");
  int block = b.add_block(params.n);
  b.syndrome_rounds(block, params.r);
  b.set_outputs({block});
  return b.take();
}

FaultCircuit memory_circuit(const RepCodeParams& params) {
  params.validate();
  Builder b("memory");
  int block = b.add_block(params.n);
  for (int q = 0; q < params.n; ++q) b.prep_plus(q);
  b.closing_stage(block, params.r);
  b.set_outputs({block});
  return b.take();
}

FaultCircuit logical_gadget(GadgetKind kind, const RepCodeParams& params) {
  params.validate();
  const int n = params.n;
  switch (kind) {
    case GadgetKind::prep_plus_l: {
      Builder b("prep_plus_l");
      int blk = b.add_block(n);
      for (int q = 0; q < n; ++q) b.prep_plus(q);
      b.closing_stage(blk, params.r);
      b.set_outputs({blk});
      return b.take();
    }
    case GadgetKind::measure_xl: {
      Builder b("measure_xl");
      int blk = b.add_block(n);
      for (int q = 0; q < n; ++q) b.prep_plus(q);
      b.measure_xl(blk, -1);
      b.set_outputs({});
      return b.take();
    }
    case GadgetKind::cnot_transversal: {
      Builder b("cnot_transversal");
      int ctrl = b.add_block(n), tgt = b.add_block(n);
      for (int q = 0; q < n; ++q) b.prep_plus(q);
      for (int q = 0; q < n; ++q) b.prep_plus(n + q);
      for (int k = 0; k < n; ++k) b.cnot(k, n + k);
      b.closing_stage(ctrl, params.r);
      b.closing_stage(tgt, params.r);
      b.set_outputs({ctrl, tgt});
      return b.take();
    }
    case GadgetKind::toffoli_pieceable: {
      Builder b("toffoli_pieceable");
      int c1 = b.add_block(n), c2 = b.add_block(n), tgt = b.add_block(n);
      for (int q = 0; q < 3 * n; ++q) b.prep_plus(q);
      for (int g = 0; g < n; ++g) {
        for (int k = 0; k < n; ++k) b.toffoli(g, n + k, 2 * n + k);
        // Intermediate correction on the pieced (first) block between
        // groups; the trailing stage closes everything.
        if (g + 1 < n) b.qec_stage(c1, params.r);
      }
      b.closing_stage(c1, params.r);
      b.closing_stage(c2, params.r);
      b.closing_stage(tgt, params.r);
      b.set_outputs({c1, c2, tgt});
      return b.take();
    }
    case GadgetKind::hadamard_gadget: {
      // Teleported Hadamard: block 0 = |+>_L output, block 1 = |->_L
      // Toffoli target (turns the Toffoli into a controlled phase between
      // blocks 0 and 2), block 2 = input, measured in the X basis with a
      // majority vote steering the X_L byproduct correction on block 0.
      Builder b("hadamard_gadget");
      int out = b.add_block(n), anc = b.add_block(n), in = b.add_block(n);
      for (int q = 0; q < n; ++q) b.prep_plus(q);
      for (int q = 0; q < n; ++q) b.prep_minus(n + q);
      for (int q = 0; q < n; ++q) b.prep_plus(2 * n + q);
      for (int g = 0; g < n; ++g) {
        for (int k = 0; k < n; ++k) b.toffoli(g, 2 * n + k, n + k);
        if (g + 1 < n) b.qec_stage(out, params.r);
      }
      b.closing_stage(out, params.r);
      b.measure_xl(in, out);
      (void)anc;
      b.set_outputs({out});
      return b.take();
    }
  }
  throw std::invalid_argument("unknown gadget kind");
}

// ---------------------------------------------------------------------------
// Frame propagation
// ---------------------------------------------------------------------------

namespace {

// Measured rounds are stored with all in-circuit corrections backed out
// ("virtual" rows), so every decode sees one consistent history since the
// block's last closure and only the difference to the previously applied
// correction touches the frame. Without this, a fault landing between two
// check readouts is mis-attributed twice by consecutive stages.
struct BlockSyndromes {
  std::vector<std::vector<uint8_t>> rows;
  std::vector<int> row_stages;
  std::vector<uint8_t> partial;
  std::vector<uint8_t> corr_applied;
  int stage = 0;
};

}  // namespace

PropagationResult propagate(const PauliFrame& initial,
                            const FaultCircuit& circuit,
                            const RepCodeParams& params, std::mt19937_64& rng,
                            const std::vector<InjectedFault>& injected,
                            const TwirlChooser& twirl) {
  PropagationResult res;
  res.frame = initial;
  res.frame.z.resize(circuit.num_qubits, 0);
  res.frame.x.resize(circuit.num_qubits, 0);
  res.logical_x_byproduct.assign(circuit.blocks.size(), 0);
  res.measured_xl_flip.assign(circuit.blocks.size(), 0);
  res.measurement_flips.reserve(circuit.num_measurements);

  auto& z = res.frame.z;
  auto& x = res.frame.x;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto bern = [&](double p) { return p > 0.0 && unif(rng) < p; };

  int crossing = 0;
  auto twirl_branch = [&]() {
    int b = twirl ? twirl(crossing) : static_cast<int>(unif(rng) * 4.0) & 3;
    ++crossing;
    return b;
  };

  std::vector<BlockSyndromes> syn(circuit.blocks.size());

  const double p_cnot_total =
      params.p_cnot_zc + params.p_cnot_zt + params.p_cnot_zczt;
  double p_tof_total = 0.0;
  for (double p : params.p_tof) p_tof_total += p;

  const InjectedFault* inj_here = nullptr;
  auto injected_at = [&](int idx) -> const InjectedFault* {
    for (const auto& f : injected)
      if (f.location_index == idx) return &f;
    return nullptr;
  };

  for (size_t li = 0; li < circuit.locations.size(); ++li) {
    const FaultLocation& loc = circuit.locations[li];
    inj_here = injected.empty() ? nullptr : injected_at(static_cast<int>(li));
    switch (loc.kind) {
      case FaultLocation::Kind::prep_plus:
      case FaultLocation::Kind::prep_minus:
        z[loc.q0] = bern(params.p_prep) ? 1 : 0;
        x[loc.q0] = bern(params.p_x) ? 1 : 0;
        break;
      case FaultLocation::Kind::idle:
        z[loc.q0] ^= bern(params.p_idle) ? 1 : 0;
        x[loc.q0] ^= bern(params.p_x) ? 1 : 0;
        break;
      case FaultLocation::Kind::cnot: {
        // Propagate the existing frame through the gate.
        z[loc.q0] ^= z[loc.q1];
        x[loc.q1] ^= x[loc.q0];
        // Fresh gate fault (twirled channel).
        if (p_cnot_total > 0.0) {
          double u = unif(rng);
          if (u < params.p_cnot_zc) {
            z[loc.q0] ^= 1;
          } else if (u < params.p_cnot_zc + params.p_cnot_zt) {
            z[loc.q1] ^= 1;
          } else if (u < p_cnot_total) {
            z[loc.q0] ^= 1;
            z[loc.q1] ^= 1;
          }
        }
        if (params.p_x > 0.0) {
          x[loc.q0] ^= bern(params.p_x) ? 1 : 0;
          x[loc.q1] ^= bern(params.p_x) ? 1 : 0;
        }
        break;
      }
      case FaultLocation::Kind::toffoli: {
        // Z on the controls commutes; Z on the target leaves a two-control
        // phase twirled to {I, Z1, Z2, Z1Z2}; X on a control leaves a
        // twirled controlled-flip {I, Z_other, X_target, Z_other X_target}.
        if (z[loc.q2]) {
          int b = twirl_branch();
          if (b & 1) z[loc.q0] ^= 1;
          if (b & 2) z[loc.q1] ^= 1;
        }
        if (x[loc.q0]) {
          int b = twirl_branch();
          if (b & 1) z[loc.q1] ^= 1;
          if (b & 2) x[loc.q2] ^= 1;
        }
        if (x[loc.q1]) {
          int b = twirl_branch();
          if (b & 1) z[loc.q0] ^= 1;
          if (b & 2) x[loc.q2] ^= 1;
        }
        if (p_tof_total > 0.0) {
          double u = unif(rng);
          double acc = 0.0;
          static constexpr uint8_t masks[7] = {0b001, 0b010, 0b100, 0b011,
                                               0b101, 0b110, 0b111};
          for (int k = 0; k < 7; ++k) {
            acc += params.p_tof[k];
            if (u < acc) {
              if (masks[k] & 1) z[loc.q0] ^= 1;
              if (masks[k] & 2) z[loc.q1] ^= 1;
              if (masks[k] & 4) z[loc.q2] ^= 1;
              break;
            }
          }
        }
        if (params.p_x > 0.0) {
          x[loc.q0] ^= bern(params.p_x) ? 1 : 0;
          x[loc.q1] ^= bern(params.p_x) ? 1 : 0;
          x[loc.q2] ^= bern(params.p_x) ? 1 : 0;
        }
        break;
      }
      case FaultLocation::Kind::measure_x: {
        uint8_t bit = z[loc.q0] ^ (bern(params.p_meas) ? 1 : 0);
        if (inj_here && inj_here->meas_flip) bit ^= 1;
        res.measurement_flips.push_back(bit);
        if (loc.q1 >= 0) {
          auto& s = syn[loc.q1];
          s.partial.push_back(bit);
          const auto& data = circuit.blocks[loc.q1];
          int checks = static_cast<int>(data.size()) - 1;
          if (static_cast<int>(s.partial.size()) == checks) {
            if (s.corr_applied.empty()) s.corr_applied.assign(data.size(), 0);
            for (int j = 0; j < checks; ++j)
              s.partial[j] ^= s.corr_applied[j] ^ s.corr_applied[j + 1];
            s.rows.push_back(std::move(s.partial));
            s.row_stages.push_back(s.stage);
            s.partial.clear();
          }
        }
        break;
      }
      case FaultLocation::Kind::measure_xl: {
        const auto& data = circuit.blocks[loc.q0];
        int flips = 0;
        for (size_t k = 0; k < data.size(); ++k) {
          uint8_t dev = z[data[k]] ^ (bern(params.p_meas) ? 1 : 0);
          if (inj_here &&
              std::find(inj_here->readout_flip_qubits.begin(),
                        inj_here->readout_flip_qubits.end(),
                        data[k]) != inj_here->readout_flip_qubits.end())
            dev ^= 1;
          flips += dev;
        }
        uint8_t maj = (2 * flips > static_cast<int>(data.size())) ? 1 : 0;
        res.measured_xl_flip[loc.q0] = maj;
        if (loc.q1 >= 0) res.logical_x_byproduct[loc.q1] ^= maj;
        break;
      }
      case FaultLocation::Kind::decode_block: {
        auto& s = syn[loc.q0];
        const auto& data = circuit.blocks[loc.q0];
        if (s.corr_applied.empty()) s.corr_applied.assign(data.size(), 0);
        int checks = static_cast<int>(data.size()) - 1;
        int rounds = static_cast<int>(s.rows.size());
        SyndromeHistory h = SyndromeHistory::zeros(checks, rounds);
        for (int t = 0; t < rounds; ++t)
          for (int j = 0; j < checks; ++j) h.at(j, t) = s.rows[t][j];
        auto corr = decode_impl(h, params, &s.row_stages);
        for (int q = 0; q < static_cast<int>(data.size()); ++q) {
          z[data[q]] ^= corr[q] ^ s.corr_applied[q];
          s.corr_applied[q] = corr[q];
        }
        ++s.stage;
        break;
      }
      case FaultLocation::Kind::decode_perfect: {
        auto& s = syn[loc.q0];
        const auto& data = circuit.blocks[loc.q0];
        if (s.corr_applied.empty()) s.corr_applied.assign(data.size(), 0);
        int checks = static_cast<int>(data.size()) - 1;
        int noisy = static_cast<int>(s.rows.size());
        SyndromeHistory h = SyndromeHistory::zeros(checks, noisy + 1);
        for (int t = 0; t < noisy; ++t)
          for (int j = 0; j < checks; ++j) h.at(j, t) = s.rows[t][j];
        for (int j = 0; j < checks; ++j)
          h.at(j, noisy) = z[data[j]] ^ z[data[j + 1]] ^ s.corr_applied[j] ^
                           s.corr_applied[j + 1];
        std::vector<int> stages = s.row_stages;
        stages.push_back(s.stage);
        auto corr = decode_impl(h, params, &stages);
        for (int q = 0; q < static_cast<int>(data.size()); ++q)
          z[data[q]] ^= corr[q] ^ s.corr_applied[q];
        s.rows.clear();
        s.row_stages.clear();
        s.corr_applied.assign(data.size(), 0);
        ++s.stage;
        break;
      }
    }
    if (inj_here) {
      for (int q : inj_here->z_qubits) z[q] ^= 1;
      for (int q : inj_here->x_qubits) x[q] ^= 1;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace {

struct ShotOutcome {
  bool zl = false, xl = false;
  long x_bits = 0;
};

ShotOutcome evaluate_shot(const FaultCircuit& circuit,
                          const RepCodeParams& params,
                          const PropagationResult& pr) {
  ShotOutcome out;
  for (int b : circuit.output_blocks) {
    const auto& data = circuit.blocks[b];
    int zw = 0, xw = 0;
    for (int q : data) {
      zw += pr.frame.z[q];
      xw += pr.frame.x[q];
    }
    // Closed blocks end with a trivial syndrome, so the Z residue is either
    // empty or the full logical operator.
    if (2 * zw > static_cast<int>(data.size())) out.zl = true;
    bool x_logical = (xw % 2 == 1) ^ (pr.logical_x_byproduct[b] != 0);
    if (x_logical) out.xl = true;
  }
  // Standalone logical readouts count their majority flips as phase errors.
  for (const auto& loc : circuit.locations)
    if (loc.kind == FaultLocation::Kind::measure_xl && loc.q1 < 0 &&
        pr.measured_xl_flip[loc.q0])
      out.zl = true;
  for (uint8_t v : pr.frame.x) out.x_bits += v;
  (void)params;
  return out;
}

}  // namespace

LogicalErrorRate logical_error_rate(const FaultCircuit& circuit,
                                    const RepCodeParams& params, long shots,
                                    uint64_t master_seed, int threads) {
  params.validate();
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int chunks = std::max(1, threads);
  std::vector<long> zl(chunks, 0), xl(chunks, 0), xbits(chunks, 0);
  parallel_for(chunks, threads, [&](int c) {
    long begin = shots * c / chunks, end = shots * (c + 1) / chunks;
    PauliFrame empty(circuit.num_qubits);
    for (long s = begin; s < end; ++s) {
      std::mt19937_64 rng(mix_seed(master_seed, static_cast<uint64_t>(s)));
      PropagationResult pr = propagate(empty, circuit, params, rng);
      ShotOutcome o = evaluate_shot(circuit, params, pr);
      zl[c] += o.zl ? 1 : 0;
      xl[c] += o.xl ? 1 : 0;
      xbits[c] += o.x_bits;
    }
  });
  LogicalErrorRate out;
  out.shots = shots;
  for (int c = 0; c < chunks; ++c) {
    out.zl_failures += zl[c];
    out.xl_failures += xl[c];
    out.x_frame_bits_seen += xbits[c];
  }
  out.p_zl = double(out.zl_failures) / double(shots);
  out.p_xl = double(out.xl_failures) / double(shots);
  out.zl_stderr = std::sqrt(out.p_zl * (1.0 - out.p_zl) / double(shots));
  out.xl_stderr = std::sqrt(out.p_xl * (1.0 - out.p_xl) / double(shots));
  out.p_xl_analytic = analytic_logical_x_rate(circuit, params);
  return out;
}

double analytic_logical_x_rate(const FaultCircuit& circuit,
                               const RepCodeParams& params) {
  long x_locations = 0;
  double majority_terms = 0.0;
  for (const auto& loc : circuit.locations) {
    switch (loc.kind) {
      case FaultLocation::Kind::prep_plus:
      case FaultLocation::Kind::prep_minus:
      case FaultLocation::Kind::idle:
        x_locations += 1;
        break;
      case FaultLocation::Kind::cnot:
        x_locations += 2;
        break;
      case FaultLocation::Kind::toffoli:
        x_locations += 3;
        break;
      case FaultLocation::Kind::measure_xl: {
        // Majority-vote failure of one logical readout at flip rate p_meas.
        int nq = static_cast<int>(circuit.blocks[loc.q0].size());
        double p = params.p_meas;
        double tail = 0.0;
        for (int k = nq / 2 + 1; k <= nq; ++k) {
          double binom = 1.0;
          for (int i = 0; i < k; ++i)
            binom *= double(nq - i) / double(i + 1);
          tail += binom * std::pow(p, k) * std::pow(1.0 - p, nq - k);
        }
        majority_terms += tail;
        break;
      }
      default:
        break;
    }
  }
  return double(x_locations) * params.p_x + majority_terms;
}

SingleFaultReport exhaustive_single_fault_check(const FaultCircuit& circuit,
                                                const RepCodeParams& params) {
  RepCodeParams quiet = params;
  quiet.p_prep = quiet.p_idle = quiet.p_meas = quiet.p_x = 0.0;
  quiet.p_cnot_zc = quiet.p_cnot_zt = quiet.p_cnot_zczt = 0.0;
  for (double& p : quiet.p_tof) p = 0.0;

  SingleFaultReport report;
  PauliFrame empty(circuit.num_qubits);
  std::mt19937_64 rng(0);

  auto run_all_twirls = [&](const InjectedFault& fault, const std::string& desc) {
    // Enumerate twirl branch vectors with an odometer; the crossing count is
    // discovered on the fly.
    std::vector<int> branches;
    while (true) {
      int seen = 0;
      auto chooser = [&](int idx) {
        seen = std::max(seen, idx + 1);
        return idx < static_cast<int>(branches.size()) ? branches[idx] : 0;
      };
      std::vector<InjectedFault> inj{fault};
      PropagationResult pr = propagate(empty, circuit, quiet, rng, inj, chooser);
      ShotOutcome o = evaluate_shot(circuit, quiet, pr);
      ++report.faults_tried;
      if (o.zl || o.xl) {
        ++report.logical_failures;
        if (report.failing_descriptions.size() < 32)
          report.failing_descriptions.push_back(desc);
      }
      branches.resize(std::max<size_t>(branches.size(), seen), 0);
      // Advance the odometer.
      int pos = 0;
      while (pos < static_cast<int>(branches.size())) {
        if (++branches[pos] < 4) break;
        branches[pos] = 0;
        ++pos;
      }
      if (pos >= static_cast<int>(branches.size())) break;
    }
  };

  for (size_t li = 0; li < circuit.locations.size(); ++li) {
    const FaultLocation& loc = circuit.locations[li];
    auto inject_z = [&](std::vector<int> qs, const std::string& what) {
      InjectedFault f;
      f.location_index = static_cast<int>(li);
      f.z_qubits = std::move(qs);
      run_all_twirls(f, "loc " + std::to_string(li) + ": " + what);
    };
    switch (loc.kind) {
      case FaultLocation::Kind::prep_plus:
      case FaultLocation::Kind::prep_minus:
      case FaultLocation::Kind::idle:
        inject_z({loc.q0}, "Z");
        break;
      case FaultLocation::Kind::cnot:
        inject_z({loc.q0}, "Zc");
        inject_z({loc.q1}, "Zt");
        inject_z({loc.q0, loc.q1}, "ZcZt");
        break;
      case FaultLocation::Kind::toffoli:
        inject_z({loc.q0}, "Z1");
        inject_z({loc.q1}, "Z2");
        inject_z({loc.q2}, "Z3");
        inject_z({loc.q0, loc.q1}, "Z1Z2");
        inject_z({loc.q0, loc.q2}, "Z1Z3");
        inject_z({loc.q1, loc.q2}, "Z2Z3");
        inject_z({loc.q0, loc.q1, loc.q2}, "Z1Z2Z3");
        break;
      case FaultLocation::Kind::measure_x: {
        InjectedFault f;
        f.location_index = static_cast<int>(li);
        f.meas_flip = true;
        run_all_twirls(f, "loc " + std::to_string(li) + ": meas flip");
        break;
      }
      case FaultLocation::Kind::measure_xl: {
        for (int q : circuit.blocks[loc.q0]) {
          InjectedFault f;
          f.location_index = static_cast<int>(li);
          f.readout_flip_qubits = {q};
          run_all_twirls(f, "loc " + std::to_string(li) + ": readout flip");
        }
        break;
      }
      default:
        break;
    }
  }
  return report;
}

std::string rep_code_params_to_json(const RepCodeParams& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["r"] = p.r;
  j["p_prep"] = p.p_prep;
  j["p_idle"] = p.p_idle;
  j["p_meas"] = p.p_meas;
  j["p_x"] = p.p_x;
  j["p_cnot_zc"] = p.p_cnot_zc;
  j["p_cnot_zt"] = p.p_cnot_zt;
  j["p_cnot_zczt"] = p.p_cnot_zczt;
  j["p_tof"] = std::vector<double>(p.p_tof, p.p_tof + 7);
  j["weighted_matching"] = p.weighted_matching;
  return j.dump(2);
}

RepCodeParams rep_code_params_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RepCodeParams p;
  p.n = j.value("n", 3);
  p.r = j.value("r", 1);
  p.p_prep = j.value("p_prep", 0.0);
  p.p_idle = j.value("p_idle", 0.0);
  p.p_meas = j.value("p_meas", 0.015);
  p.p_x = j.value("p_x", 0.0);
  p.p_cnot_zc = j.value("p_cnot_zc", 0.0);
  p.p_cnot_zt = j.value("p_cnot_zt", 0.0);
  p.p_cnot_zczt = j.value("p_cnot_zczt", 0.0);
  if (j.contains("p_tof")) {
    auto v = j["p_tof"].get<std::vector<double>>();
    for (size_t k = 0; k < v.size() && k < 7; ++k) p.p_tof[k] = v[k];
  }
  p.weighted_matching = j.value("weighted_matching", false);
  p.validate();
  return p;
}

}  // namespace catsim
