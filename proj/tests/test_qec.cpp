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

#include <random>

#include "doctest.h"

using namespace catsim;

namespace {

int count_kind(const FaultCircuit& c, FaultLocation::Kind k) {
  int n = 0;
  for (const auto& l : c.locations)
    if (l.kind == k) ++n;
  return n;
}

std::vector<int> kind_locations(const FaultCircuit& c, FaultLocation::Kind k) {
  std::vector<int> out;
  for (size_t i = 0; i < c.locations.size(); ++i)
    if (c.locations[i].kind == k) out.push_back(int(i));
  return out;
}

RepCodeParams quiet_params(int n, int r) {
  RepCodeParams p;
  p.n = n;
  p.r = r;
  p.p_meas = 0.0;
  return p;
}

}  // namespace

TEST_CASE("qec round layout") {
  RepCodeParams p = quiet_params(3, 1);
  FaultCircuit c = build_qec_round(p);
  CHECK(c.blocks.size() == 1);
  CHECK(c.blocks[0].size() == 3);
  CHECK(c.ancillas.size() == 2);
  CHECK(count_kind(c, FaultLocation::Kind::prep_plus) == 2);
  CHECK(count_kind(c, FaultLocation::Kind::cnot) == 4);
  CHECK(count_kind(c, FaultLocation::Kind::measure_x) == 2);
  CHECK(c.num_measurements == 2);
}

TEST_CASE("syndromes") {
  RepCodeParams p = quiet_params(3, 1);
  FaultCircuit c = build_qec_round(p);
  std::mt19937_64 rng(1);

  SUBCASE("no faults, trivial syndrome") {
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng);
    for (uint8_t b : res.measurement_flips) CHECK(b == 0);
  }
  SUBCASE("a middle-qubit phase flip fires both checks") {
    // Inject Z on data qubit 1 at its idle location.
    auto idles = kind_locations(c, FaultLocation::Kind::idle);
    InjectedFault f;
    f.location_index = idles[1];
    f.z_qubits = {c.blocks[0][1]};
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng, {f});
    CHECK(res.measurement_flips[0] == 1);
    CHECK(res.measurement_flips[1] == 1);
  }
  SUBCASE("an edge-qubit phase flip fires one check") {
    auto idles = kind_locations(c, FaultLocation::Kind::idle);
    InjectedFault f;
    f.location_index = idles[0];
    f.z_qubits = {c.blocks[0][0]};
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng, {f});
    CHECK(res.measurement_flips[0] == 1);
    CHECK(res.measurement_flips[1] == 0);
  }
  SUBCASE("ancilla dephasing reaches only its own readout") {
    auto preps = kind_locations(c, FaultLocation::Kind::prep_plus);
    InjectedFault f;
    f.location_index = preps[0];  // first ancilla, before its CNOTs
    f.z_qubits = {c.ancillas[0]};
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng, {f});
    CHECK(res.measurement_flips[0] == 1);
    CHECK(res.measurement_flips[1] == 0);
    for (int q : c.blocks[0]) {
      CHECK(res.frame.z[q] == 0);
      CHECK(res.frame.x[q] == 0);
    }
  }
}

TEST_CASE("decoder") {
  RepCodeParams p = quiet_params(3, 1);

  SUBCASE("single data error, perfect readout") {
    SyndromeHistory h = SyndromeHistory::zeros(2, 1);
    h.at(0, 0) = 1;  // edge qubit 0
    auto corr = decode(h, p);
    CHECK(corr == std::vector<uint8_t>{1, 0, 0});
    h.at(1, 0) = 1;  // both checks: middle qubit
    corr = decode(h, p);
    CHECK(corr == std::vector<uint8_t>{0, 1, 0});
  }
  SUBCASE("isolated measurement error is matched through time") {
    RepCodeParams p3 = quiet_params(3, 3);
    SyndromeHistory h = SyndromeHistory::zeros(2, 3);
    h.at(0, 1) = 1;  // single-round blip: defects at rounds 1 and 2
    auto corr = decode(h, p3);
    CHECK(corr == std::vector<uint8_t>{0, 0, 0});
  }
  SUBCASE("persistent syndrome is a data error") {
    RepCodeParams p3 = quiet_params(3, 3);
    SyndromeHistory h = SyndromeHistory::zeros(2, 3);
    for (int t = 0; t < 3; ++t) h.at(0, t) = 1;
    auto corr = decode(h, p3);
    CHECK(corr == std::vector<uint8_t>{1, 0, 0});
  }
  SUBCASE("majority baseline") {
    RepCodeParams p3 = quiet_params(3, 3);
    SyndromeHistory h = SyndromeHistory::zeros(2, 3);
    h.at(0, 0) = 1;
    h.at(0, 1) = 1;
    h.at(0, 2) = 0;
    auto corr = decode_majority(h, p3);
    CHECK(corr == std::vector<uint8_t>{1, 0, 0});
  }
}

TEST_CASE("memory logical error rate matches the closed form") {
  // n = 3, r = 1, iid data flips, perfect readout: failure = 3p^2 - 2p^3.
  RepCodeParams p = quiet_params(3, 1);
  p.p_idle = 1e-2;
  FaultCircuit c = memory_circuit(p);
  const long shots = 400000;
  auto rate = logical_error_rate(c, p, shots, 77, 2);
  double exact = 3e-4 - 2e-6;
  CHECK(std::abs(rate.p_zl - exact) < 4.0 * rate.zl_stderr + 1e-12);
  CHECK(rate.p_xl == 0.0);
  CHECK(rate.x_frame_bits_seen == 0);
}

TEST_CASE("memory rate agrees with truncated enumeration") {
  // n = 3, r = 2 memory with data and measurement noise; enumerate every
  // fault pattern with at most two faults and bound the rest.
  RepCodeParams p = quiet_params(3, 2);
  p.p_idle = 1e-2;
  p.p_meas = 1e-2;
  FaultCircuit c = memory_circuit(p);

  // Oracle: walk all single and double fault insertions with their
  // probabilities; the >2-fault mass bounds the truncation error.
  struct Site {
    InjectedFault fault;
    double prob;
  };
  std::vector<Site> sites;
  for (size_t li = 0; li < c.locations.size(); ++li) {
    const auto& loc = c.locations[li];
    if (loc.kind == FaultLocation::Kind::idle) {
      InjectedFault f;
      f.location_index = int(li);
      f.z_qubits = {loc.q0};
      sites.push_back({f, p.p_idle});
    } else if (loc.kind == FaultLocation::Kind::measure_x) {
      InjectedFault f;
      f.location_index = int(li);
      f.meas_flip = true;
      sites.push_back({f, p.p_meas});
    }
  }
  RepCodeParams quiet = quiet_params(3, 2);
  std::mt19937_64 rng(3);
  double no_fault_weight = 1.0;
  for (const auto& s : sites) no_fault_weight *= (1.0 - s.prob);
  auto is_failure = [&](const std::vector<InjectedFault>& inj) {
    auto res = propagate(PauliFrame(c.num_qubits), c, quiet, rng, inj);
    int w = 0;
    for (int q : c.blocks[0]) w += res.frame.z[q];
    return 2 * w > 3;
  };
  double enumerated = 0.0;
  for (size_t i = 0; i < sites.size(); ++i) {
    double pi_ = no_fault_weight * sites[i].prob / (1.0 - sites[i].prob);
    if (is_failure({sites[i].fault})) enumerated += pi_;
    for (size_t j = i + 1; j < sites.size(); ++j) {
      double pij = pi_ * sites[j].prob / (1.0 - sites[j].prob);
      if (is_failure({sites[i].fault, sites[j].fault})) enumerated += pij;
    }
  }
  // Mass of patterns with three or more faults.
  double mean = 0.0;
  for (const auto& s : sites) mean += s.prob;
  double tail_bound = mean * mean * mean / 6.0;

  const long shots = 600000;
  auto rate = logical_error_rate(c, p, shots, 123, 2);
  CHECK(rate.p_zl >= enumerated - 3.0 * rate.zl_stderr);
  CHECK(rate.p_zl <= enumerated + tail_bound + 3.0 * rate.zl_stderr);
}

TEST_CASE("distance five beats distance three below threshold") {
  RepCodeParams p3 = quiet_params(3, 1);
  p3.p_idle = 1e-2;
  RepCodeParams p5 = quiet_params(5, 1);
  p5.p_idle = 1e-2;
  auto r3 = logical_error_rate(memory_circuit(p3), p3, 300000, 9, 2);
  auto r5 = logical_error_rate(memory_circuit(p5), p5, 300000, 9, 2);
  CHECK(r5.p_zl < r3.p_zl);
}

TEST_CASE("matching decoder never loses to the majority baseline") {
  // Direct syndrome-level comparison on an iid memory model.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int n : {3, 5}) {
    for (double perr : {0.01, 0.03}) {
      RepCodeParams p = quiet_params(n, 3);
      p.p_idle = perr;
      p.p_meas = perr;
      long fail_match = 0, fail_major = 0;
      const int trials = 20000;
      for (int t = 0; t < trials; ++t) {
        std::vector<uint8_t> data(n, 0);
        SyndromeHistory h = SyndromeHistory::zeros(n - 1, p.r + 1);
        for (int round = 0; round < p.r; ++round) {
          for (int q = 0; q < n; ++q)
            if (unif(rng) < perr) data[q] ^= 1;
          for (int j = 0; j < n - 1; ++j)
            h.at(j, round) =
                (data[j] ^ data[j + 1] ^ (unif(rng) < perr ? 1 : 0));
        }
        for (int j = 0; j < n - 1; ++j) h.at(j, p.r) = data[j] ^ data[j + 1];
        auto apply = [&](const std::vector<uint8_t>& corr) {
          int w = 0;
          for (int q = 0; q < n; ++q) w += data[q] ^ corr[q];
          return 2 * w > n;
        };
        if (apply(decode(h, p))) ++fail_match;
        if (apply(decode_majority(h, p))) ++fail_major;
      }
      CHECK(fail_match <= fail_major);
    }
  }
}

TEST_CASE("transversal cnot keeps faults on their own rung") {
  RepCodeParams p = quiet_params(3, 1);
  FaultCircuit c = logical_gadget(GadgetKind::cnot_transversal, p);
  auto cnots = kind_locations(c, FaultLocation::Kind::cnot);
  // The first three CNOTs are the transversal data gates.
  std::mt19937_64 rng(4);
  for (int k = 0; k < 3; ++k) {
    InjectedFault f;
    f.location_index = cnots[k];
    f.z_qubits = {c.blocks[0][k], c.blocks[1][k]};
    // Walk only up to the next data CNOT so no decode has run yet.
    FaultCircuit prefix = c;
    prefix.locations.resize(cnots[2] + 1);
    auto res = propagate(PauliFrame(c.num_qubits), prefix, p, rng, {f});
    for (int j = 0; j < 3; ++j) {
      if (j == k) continue;
      CHECK(res.frame.z[c.blocks[0][j]] == 0);
      CHECK(res.frame.z[c.blocks[1][j]] == 0);
    }
  }
}

TEST_CASE("single faults never break the gadgets") {
  RepCodeParams p = quiet_params(3, 1);

  SUBCASE("transversal cnot") {
    FaultCircuit c = logical_gadget(GadgetKind::cnot_transversal, p);
    auto report = exhaustive_single_fault_check(c, p);
    CHECK(report.faults_tried > 0);
    CHECK(report.logical_failures == 0);
  }
  SUBCASE("pieceable toffoli") {
    FaultCircuit c = logical_gadget(GadgetKind::toffoli_pieceable, p);
    auto report = exhaustive_single_fault_check(c, p);
    CHECK(report.faults_tried > 0);
    CHECK(report.logical_failures == 0);
  }
  SUBCASE("teleported hadamard") {
    FaultCircuit c = logical_gadget(GadgetKind::hadamard_gadget, p);
    auto report = exhaustive_single_fault_check(c, p);
    CHECK(report.faults_tried > 0);
    CHECK(report.logical_failures == 0);
  }
  SUBCASE("preparation and readout") {
    auto rp = exhaustive_single_fault_check(
        logical_gadget(GadgetKind::prep_plus_l, p), p);
    CHECK(rp.logical_failures == 0);
    auto rm = exhaustive_single_fault_check(
        logical_gadget(GadgetKind::measure_xl, p), p);
    CHECK(rm.logical_failures == 0);
  }
}

TEST_CASE("no bit flips ever appear without a bit-flip channel") {
  RepCodeParams p;
  p.n = 3;
  p.r = 2;
  p.p_idle = 0.02;
  p.p_prep = 0.02;
  p.p_meas = 0.02;
  p.p_cnot_zc = p.p_cnot_zt = p.p_cnot_zczt = 0.01;
  for (int k = 0; k < 7; ++k) p.p_tof[k] = 0.005;
  p.p_x = 0.0;
  for (auto kind :
       {GadgetKind::cnot_transversal, GadgetKind::toffoli_pieceable,
        GadgetKind::hadamard_gadget, GadgetKind::prep_plus_l,
        GadgetKind::measure_xl}) {
    FaultCircuit c = logical_gadget(kind, p);
    auto rate = logical_error_rate(c, p, 20000, 5, 2);
    CHECK(rate.x_frame_bits_seen == 0);
  }
}

TEST_CASE("bit-flip channel produces logical X at the analytic scale") {
  RepCodeParams p = quiet_params(3, 1);
  p.p_x = 2e-3;
  FaultCircuit c = memory_circuit(p);
  auto rate = logical_error_rate(c, p, 400000, 31, 2);
  CHECK(rate.p_xl > 0.0);
  CHECK(std::abs(rate.p_xl - rate.p_xl_analytic) <
        0.25 * rate.p_xl_analytic + 4.0 * rate.xl_stderr);
}

TEST_CASE("gate channels load from the closed-form budgets") {
  CatQubitParams cat{std::sqrt(7.0), 1.0, 1e-3, 0.0, 0.0};
  RepCodeParams p = RepCodeParams::from_cat_params(cat, 5, 3);
  CHECK(p.n == 5);
  CHECK(p.p_cnot_zc > p.p_cnot_zt);  // nonadiabatic part rides on the control
  CHECK(p.p_cnot_zt == doctest::Approx(p.p_cnot_zczt));
  CHECK(p.p_x < 1e-5);
  CHECK(p.p_meas == doctest::Approx(0.015));
}

TEST_CASE("parameter validation") {
  RepCodeParams p;
  p.n = 4;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.n = 3;
  p.r = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.r = 1;
  p.p_meas = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.p_meas = 0.01;
  p.validate();

  std::string text = rep_code_params_to_json(p);
  RepCodeParams back = rep_code_params_from_json(text);
  CHECK(back.p_meas == doctest::Approx(0.01));
}

TEST_CASE("fault-free gadgets keep the code space") {
  for (int n : {3, 5}) {
    RepCodeParams p = quiet_params(n, 2);
    std::mt19937_64 rng(1);
    for (auto kind :
         {GadgetKind::cnot_transversal, GadgetKind::toffoli_pieceable,
          GadgetKind::hadamard_gadget, GadgetKind::prep_plus_l,
          GadgetKind::measure_xl}) {
      FaultCircuit c = logical_gadget(kind, p);
      auto res = propagate(PauliFrame(c.num_qubits), c, p, rng);
      for (uint8_t bit : res.measurement_flips) CHECK(bit == 0);
      for (uint8_t z : res.frame.z) CHECK(z == 0);
      for (uint8_t x : res.frame.x) CHECK(x == 0);
    }
  }
}

TEST_CASE("hadamard gadget bookkeeping") {
  RepCodeParams p = quiet_params(3, 1);
  FaultCircuit c = logical_gadget(GadgetKind::hadamard_gadget, p);
  std::mt19937_64 rng(8);

  SUBCASE("fault-free runs produce the ideal outcome") {
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng);
    CHECK(res.logical_x_byproduct[0] == 0);
    for (int q : c.blocks[0]) {
      CHECK(res.frame.z[q] == 0);
      CHECK(res.frame.x[q] == 0);
    }
  }
  SUBCASE("a majority of readout flips steers a logical X byproduct") {
    auto xls = kind_locations(c, FaultLocation::Kind::measure_xl);
    REQUIRE(!xls.empty());
    InjectedFault f;
    f.location_index = xls[0];
    f.readout_flip_qubits = {c.blocks[2][0], c.blocks[2][1]};
    auto res = propagate(PauliFrame(c.num_qubits), c, p, rng, {f});
    CHECK(res.logical_x_byproduct[0] == 1);
  }
}
