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

#ifndef CATSIM_QEC_HPP
#define CATSIM_QEC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

/// Per-location error rates of the Pauli-frame model. Z-type rates are the
/// dominant ones; p_x is the exponentially small bit-flip rate applied per
/// qubit touched by a location.
struct RepCodeParams {
  int n = 3;  // odd code length
  int r = 1;  // syndrome repetition rounds per QEC stage

  double p_prep = 0.0;   // phase flip on a freshly prepared |+->_c
  double p_idle = 0.0;   // phase flip per data-qubit idle step
  double p_meas = 0.015; // classical misassignment of one parity readout
  double p_x = 0.0;      // bit flip per qubit per location

  // Twirled CNOT fault channel.
  double p_cnot_zc = 0.0, p_cnot_zt = 0.0, p_cnot_zczt = 0.0;
  // Twirled Toffoli fault channel over the seven Z combinations
  // {Z1, Z2, Z3, Z1Z2, Z1Z3, Z2Z3, Z1Z2Z3} (controls 1, 2; target 3).
  double p_tof[7] = {0, 0, 0, 0, 0, 0, 0};

  // Matching decoder edge weights: uniform by default, -log(rate) when set.
  bool weighted_matching = false;

  /// Loads the gate channels from the closed-form budgets evaluated at the
  /// optimal gate time of `cat` (requires kappa1 > 0), the idle/prep rates
  /// from the parity-jump rate over the same duration.
  static RepCodeParams from_cat_params(const CatQubitParams& cat, int n, int r);

  void validate() const;
};

/// Accumulated Pauli record, one flip bit per circuit qubit.
struct PauliFrame {
  std::vector<uint8_t> z;
  std::vector<uint8_t> x;

  explicit PauliFrame(int qubits = 0) : z(qubits, 0), x(qubits, 0) {}
  int size() const { return static_cast<int>(z.size()); }
};

/// (n-1) x rounds parity-check record for one code block.
struct SyndromeHistory {
  int checks = 0;
  int rounds = 0;
  std::vector<uint8_t> bits;  // row-major, bits[t * checks + j]

  uint8_t at(int check, int round) const { return bits[round * checks + check]; }
  uint8_t& at(int check, int round) { return bits[round * checks + check]; }
  static SyndromeHistory zeros(int checks, int rounds) {
    return {checks, rounds, std::vector<uint8_t>(checks * rounds, 0)};
  }
};

struct FaultLocation {
  enum class Kind {
    prep_plus,     // q0 (re)prepared in |+>_c (sign carried classically)
    prep_minus,    // q0 prepared in |->_c
    idle,          // q0
    cnot,          // control q0, target q1
    toffoli,       // controls q0 q1, target q2
    measure_x,     // q0; records one outcome-deviation bit
    measure_xl,    // whole block measured, majority vote; block = q0
    decode_block,  // run the decoder on block q0 over the last `rounds` rounds
    decode_perfect // close block q0 with a noiseless syndrome of the residue
  };
  Kind kind;
  int q0 = -1, q1 = -1, q2 = -1;
  int rounds = 0;  // decode_block window
};

/// Ordered fault-location program plus the block layout needed for logical
/// accounting. Data blocks hold n qubits each; ancillas are reused between
/// rounds (re-prepared in place).
struct FaultCircuit {
  int num_qubits = 0;
  int num_measurements = 0;  // measure_x count
  std::vector<FaultLocation> locations;
  std::vector<std::vector<int>> blocks;  // data qubit ids per block
  std::vector<int> output_blocks;        // blocks carrying logical output
  std::vector<int> ancillas;             // ancilla qubit ids
  std::string name;

  int checks_per_block() const {
    return blocks.empty() ? 0 : static_cast<int>(blocks[0].size()) - 1;
  }
};

struct PropagationResult {
  PauliFrame frame;
  /// Deviation of every measure_x outcome from the no-fault circuit, in
  /// program order.
  std::vector<uint8_t> measurement_flips;
  /// Per block: 1 if a measurement-conditioned correction (teleportation
  /// byproduct) was applied wrongly, i.e. a logical X deviation.
  std::vector<uint8_t> logical_x_byproduct;
  /// Per block: majority-voted outcome deviation of its measure_xl, if any.
  std::vector<uint8_t> measured_xl_flip;
};

/// Extra fault injected after one location processes (used by the
/// exhaustive fault-insertion checks): z_pattern/x_pattern list qubit ids to
/// flip; meas_flip toggles the outcome bit produced by that location.
struct InjectedFault {
  int location_index = -1;
  std::vector<int> z_qubits;
  std::vector<int> x_qubits;
  bool meas_flip = false;                // flips a measure_x outcome
  std::vector<int> readout_flip_qubits;  // flips within a measure_xl block
};

/// Chooses the twirl branch at non-Clifford crossings; nullptr = sample
/// uniformly from rng. Branch index is interpreted by the crossing (4-way).
using TwirlChooser = std::function<int(int crossing_index)>;

/// Walks the circuit: samples location faults, propagates the frame through
/// the Clifford/twirled rules, records measurement deviations and applies
/// in-circuit decoder corrections.
PropagationResult propagate(const PauliFrame& initial,
                            const FaultCircuit& circuit,
                            const RepCodeParams& params, std::mt19937_64& rng,
                            const std::vector<InjectedFault>& injected = {},
                            const TwirlChooser& twirl = nullptr);

/// Space-time matching on the line: detection events are matched by
/// shortest-path distance (unit weights; time steps bridge rounds, space
/// steps cross data qubits, boundaries on both ends). Returns the data-qubit
/// Z-correction support. `final_round_trusted` marks the last row of the
/// history as noiseless.
std::vector<uint8_t> decode(const SyndromeHistory& history,
                            const RepCodeParams& params);

/// Majority vote across rounds per check, then single-round minimum-weight
/// correction; the cross-check baseline.
std::vector<uint8_t> decode_majority(const SyndromeHistory& history,
                                     const RepCodeParams& params);

/// One stage of error detection: per round, data idles then every stabilizer
/// measured with a fresh |+>_c ancilla (ancilla is the CNOT control), r
/// times; followed by the decoder correction.
FaultCircuit build_qec_round(const RepCodeParams& params);

/// r-round memory experiment on one block (idle QEC only), closed by a
/// noiseless readout round.
FaultCircuit memory_circuit(const RepCodeParams& params);

enum class GadgetKind {
  cnot_transversal,
  toffoli_pieceable,
  hadamard_gadget,
  prep_plus_l,
  measure_xl,
};

/// The fault-tolerant logical gadgets, each ending in trailing QEC and a
/// noiseless closure round on its output blocks.
FaultCircuit logical_gadget(GadgetKind kind, const RepCodeParams& params);

struct LogicalErrorRate {
  double p_zl = 0.0, zl_stderr = 0.0;
  double p_xl = 0.0, xl_stderr = 0.0;
  double p_xl_analytic = 0.0;
  long shots = 0;
  long zl_failures = 0, xl_failures = 0;
  long x_frame_bits_seen = 0;  // bias-closure diagnostic
};

/// Monte-Carlo estimate with binomial standard errors; shots are independent
/// streams seeded from (master_seed, shot index) so results are reproducible
/// and thread-count invariant.
LogicalErrorRate logical_error_rate(const FaultCircuit& circuit,
                                    const RepCodeParams& params, long shots,
                                    uint64_t master_seed, int threads = 1);

/// locations * p_x plus the majority-vote failure of any logical X readout.
double analytic_logical_x_rate(const FaultCircuit& circuit,
                               const RepCodeParams& params);

struct SingleFaultReport {
  long faults_tried = 0;
  long logical_failures = 0;
  std::vector<std::string> failing_descriptions;
};

/// Exhaustive single-fault insertion over every location's Z-type fault
/// patterns (and measurement flips), enumerating every twirl branch at
/// non-Clifford crossings. All other rates are forced to zero.
SingleFaultReport exhaustive_single_fault_check(const FaultCircuit& circuit,
                                                const RepCodeParams& params);

std::string rep_code_params_to_json(const RepCodeParams& params);
RepCodeParams rep_code_params_from_json(const std::string& text);

}  // namespace catsim

#endif  // CATSIM_QEC_HPP
