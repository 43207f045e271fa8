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
//
// Batch experiment driver. Verbs:
//   simulate-gate  tomography report for one gate schedule
//   sweep          error-matrix entries against a duration or nbar grid
//   wigner         phase-space frames along one gate's trajectory
//   analytic       closed-form budgets, optimal times and fidelities
//   qec            logical error rates of the repetition-code gadgets
//   nogo           bias-preserving group verification report
//
// Every output file carries the config hash and master seed; identical
// (config, seed) pairs produce byte-identical files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "catsim/error_models.hpp"
#include "catsim/fock.hpp"
#include "catsim/gates.hpp"
#include "catsim/io.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/nogo.hpp"
#include "catsim/parallel.hpp"
#include "catsim/qec.hpp"
#include "catsim/tomography.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using catsim::cplx;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  uint64_t seed = 1;
  bool seed_set = false;
  int threads = 2;
  bool threads_set = false;
};

struct LoadedConfig {
  json j;
  std::string canonical;
  uint64_t hash = 0;
  uint64_t seed = 1;
  int threads = 2;
};

LoadedConfig load_config(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + args.config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  LoadedConfig cfg;
  cfg.j = json::parse(ss.str());
  cfg.seed = args.seed_set ? args.seed : cfg.j.value("seed", uint64_t{1});
  cfg.threads = args.threads_set ? args.threads : cfg.j.value("threads", 2);
  // Flags override file fields; the hash covers the effective config.
  json effective = cfg.j;
  effective["seed"] = cfg.seed;
  cfg.canonical = effective.dump();
  cfg.hash = catsim::config_hash(cfg.canonical);
  return cfg;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) / name).string();
}

catsim::GateSpec gate_spec_of(const json& j) {
  return catsim::gate_spec_from_json(j.dump());
}

catsim::StepControl step_of(const json& j) {
  catsim::StepControl ctrl;
  if (j.contains("step")) {
    const json& s = j["step"];
    if (s.contains("dt")) ctrl.dt = s["dt"].get<double>();
    if (s.contains("tolerance")) ctrl.tolerance = s["tolerance"].get<double>();
    ctrl.snapshots = s.value("snapshots", 0);
  }
  return ctrl;
}

void write_json_output(const std::string& path, const ordered_json& j,
                       const LoadedConfig& cfg) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(cfg.hash));
  ordered_json wrapped;
  wrapped["config_hash"] = hash;
  wrapped["seed"] = cfg.seed;
  for (const auto& [k, v] : j.items()) wrapped[k] = v;
  catsim::write_text_file(path, wrapped.dump(2) + "\n");
}

// ---- simulate-gate ----

int run_simulate_gate(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  catsim::GateSpec spec = gate_spec_of(cfg.j.at("gate"));
  catsim::TomographyOptions opts;
  opts.step = step_of(cfg.j);
  opts.threads = cfg.threads;
  catsim::TomographyReport report = catsim::tomography_of_gate(spec, opts);

  ordered_json j = ordered_json::parse(catsim::report_to_json(report));
  j["gate"] = ordered_json::parse(catsim::gate_spec_to_json(spec));
  write_json_output(out_path(args, "report.json"), j, cfg);
  catsim::write_chi_csv(report.chi, out_path(args, "chi.csv"), cfg.hash,
                        cfg.seed);
  catsim::write_chi_csv(report.chi_err, out_path(args, "chi_err.csv"), cfg.hash,
                        cfg.seed);
  if (report.flagged) {
    std::cerr << "simulate-gate: leakage above threshold; report flagged\n";
    return kExitNumerical;
  }
  std::cout << "gate_fidelity " << catsim::format_double(gate_fidelity(report))
            << "\n";
  return 0;
}

// ---- sweep ----

int run_sweep(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  catsim::GateSpec base = gate_spec_of(cfg.j.at("gate"));
  std::string axis = cfg.j.value("axis", std::string("duration"));
  std::vector<double> values = cfg.j.value("values", std::vector<double>{});
  if (values.empty())
    throw std::invalid_argument("sweep needs a nonempty values grid");
  if (axis != "duration" && axis != "nbar")
    throw std::invalid_argument("sweep axis must be 'duration' or 'nbar'");

  catsim::CsvWriter csv(out_path(args, "sweep.csv"), cfg.hash, cfg.seed);
  csv.comment("axis=" + axis + " gate=" + catsim::gate_kind_name(base.kind));
  csv.header({axis, "p_Z1", "p_Z2", "p_Z1Z2", "im_coh_Z2_Z1Z2", "xy_weight",
              "max_leakage", "gate_fidelity", "model_p_Z1", "model_p_Z2",
              "model_im_coh"});
  for (double v : values) {
    catsim::GateSpec spec = base;
    if (axis == "duration") {
      spec.duration = v;
    } else {
      for (auto& m : spec.modes) m.alpha = std::sqrt(v);
      spec.truncation = 0;  // re-derive from alpha
    }
    catsim::TomographyOptions opts;
    opts.step = step_of(cfg.j);
    opts.threads = cfg.threads;
    catsim::TomographyReport report = catsim::tomography_of_gate(spec, opts);
    double p_z1 = 0, p_z2 = 0, p_z1z2 = 0;
    cplx coh = 0;
    if (spec.num_modes() == 2) {
      p_z1 = report.chi_err.diagonal_weight("Z1");
      p_z2 = report.chi_err.diagonal_weight("Z2");
      p_z1z2 = report.chi_err.diagonal_weight("Z1Z2");
      coh = report.chi_err.entry("Z2", "Z1Z2");
    } else if (spec.num_modes() == 1) {
      p_z1 = report.chi_err.diagonal_weight("Z1");
    }
    double model_p_z1 = 0, model_p_z2 = 0, model_coh = 0;
    if (spec.kind == catsim::GateKind::cnot) {
      auto budget = catsim::cnot_error_budget(spec.modes[0], spec.duration);
      model_p_z1 = budget.p_z1;
      model_p_z2 = budget.p_z2;
      model_coh = std::abs(budget.coherence_z2_z1z2.imag());
    }
    csv.row({v, p_z1, p_z2, p_z1z2, std::abs(coh.imag()),
             report.x_type_weight, report.max_leakage,
             catsim::gate_fidelity(report), model_p_z1, model_p_z2, model_coh});
  }
  csv.flush();
  return 0;
}

// ---- wigner ----

int run_wigner(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  catsim::GateSpec spec = gate_spec_of(cfg.j.at("gate"));
  if (spec.num_modes() != 1)
    throw std::invalid_argument("wigner verb supports single-mode gates");
  catsim::GateSchedule sched = catsim::build_schedule(spec);
  int frames = cfg.j.value("frames", 9);
  double x_min = cfg.j.value("x_min", -4.0), x_max = cfg.j.value("x_max", 4.0);
  double p_min = cfg.j.value("p_min", -4.0), p_max = cfg.j.value("p_max", 4.0);
  double grid_step = cfg.j.value("grid_step", 0.1);

  std::string initial = cfg.j.value("initial", std::string("cat_even"));
  int dim = sched.space().mode_dim(0);
  catsim::StateVector psi =
      initial == "vacuum"
          ? catsim::coherent_state(0.0, {dim})
          : catsim::cat_state(spec.modes[0].alpha,
                              initial == "cat_odd" ? catsim::CatParity::odd
                                                   : catsim::CatParity::even,
                              {dim});

  catsim::StepControl ctrl = step_of(cfg.j);
  ctrl.snapshots = frames;
  catsim::EvolutionResult evo =
      catsim::evolve(catsim::DensityMatrix::from_pure(psi), sched, ctrl);
  int idx = 0;
  for (const auto& [t, rho] : evo.trajectory) {
    catsim::WignerGrid grid =
        catsim::wigner_grid(rho, x_min, x_max, p_min, p_max, grid_step);
    char name[64];
    std::snprintf(name, sizeof(name), "wigner_%03d.csv", idx++);
    catsim::write_wigner_csv(grid, out_path(args, name), cfg.hash, cfg.seed);
  }
  return 0;
}

// ---- analytic ----

int run_analytic(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  catsim::CatQubitParams params;
  params.kappa2 = cfg.j.value("kappa2", 1.0);
  params.kappa1 = cfg.j.value("kappa1_over_kappa2", 1e-3) * params.kappa2;
  params.alpha = std::sqrt(cfg.j.value("nbar", 7.0));

  ordered_json j;
  double t_star = catsim::optimal_gate_time(params);
  j["nbar"] = params.nbar();
  j["kappa1_over_kappa2"] = params.kappa1 / params.kappa2;
  j["optimal_gate_time"] = t_star;
  j["cnot_fidelity"] = catsim::predicted_fidelity(catsim::GateKind::cnot, params);
  j["toffoli_fidelity"] =
      catsim::predicted_fidelity(catsim::GateKind::toffoli, params);
  j["cnot_budget_at_tstar"] = ordered_json::parse(
      catsim::budget_to_json(catsim::cnot_error_budget(params, t_star)));
  j["toffoli_budget_at_tstar"] = ordered_json::parse(
      catsim::budget_to_json(catsim::toffoli_error_budget(params, t_star)));
  write_json_output(out_path(args, "analytic.json"), j, cfg);

  std::vector<double> durations =
      cfg.j.value("durations", std::vector<double>{});
  if (!durations.empty()) {
    catsim::CsvWriter csv(out_path(args, "analytic.csv"), cfg.hash, cfg.seed);
    csv.header({"duration", "cnot_p_Z1", "cnot_p_Z2", "cnot_fidelity",
                "toffoli_fidelity"});
    for (double t : durations) {
      auto b = catsim::cnot_error_budget(params, t);
      csv.row({t, b.p_z1, b.p_z2,
               catsim::fidelity_at(catsim::GateKind::cnot, params, t),
               catsim::fidelity_at(catsim::GateKind::toffoli, params, t)});
    }
    csv.flush();
  }
  std::printf("cnot_fidelity %.6f\ntoffoli_fidelity %.6f\n",
              j["cnot_fidelity"].get<double>(),
              j["toffoli_fidelity"].get<double>());
  return 0;
}

// ---- qec ----

int run_qec(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  if (!cfg.j.contains("seed") && !args.seed_set)
    throw std::invalid_argument("qec configs must pin a master seed");
  catsim::RepCodeParams params =
      catsim::rep_code_params_from_json(cfg.j.at("params").dump());
  std::string kind = cfg.j.value("circuit", std::string("memory"));
  catsim::FaultCircuit circuit;
  if (kind == "memory") {
    circuit = catsim::memory_circuit(params);
  } else if (kind == "qec_round") {
    circuit = catsim::build_qec_round(params);
  } else {
    catsim::GadgetKind g;
    if (kind == "cnot_transversal") {
      g = catsim::GadgetKind::cnot_transversal;
    } else if (kind == "toffoli_pieceable") {
      g = catsim::GadgetKind::toffoli_pieceable;
    } else if (kind == "hadamard_gadget") {
      g = catsim::GadgetKind::hadamard_gadget;
    } else if (kind == "prep_plus_l") {
      g = catsim::GadgetKind::prep_plus_l;
    } else if (kind == "measure_xl") {
      g = catsim::GadgetKind::measure_xl;
    } else {
      throw std::invalid_argument("unknown circuit kind: " + kind);
    }
    circuit = catsim::logical_gadget(g, params);
  }
  long shots = cfg.j.value("shots", 100000L);
  catsim::LogicalErrorRate rate =
      catsim::logical_error_rate(circuit, params, shots, cfg.seed, cfg.threads);

  ordered_json j;
  j["circuit"] = circuit.name;
  j["params"] = ordered_json::parse(catsim::rep_code_params_to_json(params));
  j["shots"] = rate.shots;
  j["p_zl"] = rate.p_zl;
  j["zl_stderr"] = rate.zl_stderr;
  j["p_xl"] = rate.p_xl;
  j["xl_stderr"] = rate.xl_stderr;
  j["p_xl_analytic"] = rate.p_xl_analytic;
  j["x_frame_bits_seen"] = rate.x_frame_bits_seen;
  write_json_output(out_path(args, "qec.json"), j, cfg);

  catsim::CsvWriter csv(out_path(args, "qec.csv"), cfg.hash, cfg.seed);
  csv.comment("circuit=" + circuit.name);
  csv.header({"shots", "p_zl", "zl_stderr", "p_xl", "xl_stderr",
              "p_xl_analytic"});
  csv.row({double(rate.shots), rate.p_zl, rate.zl_stderr, rate.p_xl,
           rate.xl_stderr, rate.p_xl_analytic});
  csv.flush();
  std::printf("p_zl %.8f +- %.8f\n", rate.p_zl, rate.zl_stderr);
  return 0;
}

// ---- nogo ----

int run_nogo(const CommonArgs& args) {
  LoadedConfig cfg = load_config(args);
  int samples = cfg.j.value("closure_samples", 100);
  ordered_json j = ordered_json::parse(catsim::nogo_report_json(samples, cfg.seed));
  write_json_output(out_path(args, "nogo.json"), j, cfg);
  std::cout << j.dump(2) << "\n";
  bool ok = j["commutant_dimension"] == 4 && j["cnot_bias_preserving"] == true &&
            j["cnot_in_identity_component"] == false &&
            j["closure_failures"] == 0;
  return ok ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repetition cat qubit simulation toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON config path")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--seed", args.seed, "master seed (overrides config)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { args.seed_set = true; });
    sub->add_option("--threads", args.threads, "worker threads")
        ->trigger_on_parse()
        ->each([&](const std::string&) { args.threads_set = true; });
  };

  auto* sim = app.add_subcommand("simulate-gate", "tomography of one gate");
  auto* sweep = app.add_subcommand("sweep", "error-matrix sweep over a grid");
  auto* wig = app.add_subcommand("wigner", "phase-space movie of one gate");
  auto* ana = app.add_subcommand("analytic", "closed-form error model tables");
  auto* qec = app.add_subcommand("qec", "repetition-code logical error rates");
  auto* nogo = app.add_subcommand("nogo", "bias-preserving group verification");
  for (auto* sub : {sim, sweep, wig, ana, qec, nogo}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate_gate(args);
    if (sweep->parsed()) return run_sweep(args);
    if (wig->parsed()) return run_wigner(args);
    if (ana->parsed()) return run_analytic(args);
    if (qec->parsed()) return run_qec(args);
    if (nogo->parsed()) return run_nogo(args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
