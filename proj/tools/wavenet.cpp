#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wavenet/dirac.hpp"
#include "wavenet/errors.hpp"
#include "wavenet/gates.hpp"
#include "wavenet/network.hpp"
#include "wavenet/scattering.hpp"
#include "wavenet/shor.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int thread_count_from_env() {
  const char* env = std::getenv("WAVENET_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

void print_unitary(const wavenet::GateUnitary& g) {
  for (int r = 0; r < g.dimension(); ++r) {
    for (int c = 0; c < g.dimension(); ++c) {
      const auto e = g.entries(r, c);
      std::printf("  (%+.6f%+.6fi)", e.real(), e.imag());
    }
    std::printf("\n");
  }
}

int cmd_sweep(const std::string& network_file, double k_min, double k_max, int steps,
              const std::string& inject, const std::string& out) {
  wavenet::NetworkGraph net;
  try {
    net = wavenet::load_network(network_file);
    if (net.port_index(inject) < 0) {
      std::fprintf(stderr, "no such port: %s\n", inject.c_str());
      return kExitUsage;
    }
  } catch (const wavenet::MalformedNetwork& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  }
  const auto table = wavenet::sweep(net, k_min, k_max, steps, inject, thread_count_from_env());
  std::ostringstream csv;
  wavenet::write_sweep_csv(csv, table);
  write_file(out, csv.str());
  int gaps = 0;
  for (const auto& row : table.rows) {
    if (row.degenerate) {
      if (gaps++ == 0) std::fprintf(stderr, "degenerate k samples:");
      std::fprintf(stderr, " %.17g", row.k);
    }
  }
  if (gaps) std::fprintf(stderr, "\n");
  std::printf("wrote %d rows (%d degenerate) to %s\n", steps, gaps, out.c_str());
  return 0;
}

int cmd_gate(const std::string& name, double tol) {
  using namespace wavenet;
  GateUnitary gate;
  double network_residual = -1.0;
  if (name == "mixing" || name == "hadamard") {
    // Cross-check the closed form against the network solve.
    const NetworkGraph net = build_mixing_network(1.0 / std::sqrt(2.0));
    const SMatrix s = full_smatrix(net, std::numbers::pi / 2.0);
    const GateUnitary from_network =
        extract_two_port_unitary(s, {"in0", "in1"}, {"out0", "out1"}, 1e-6);
    if (name == "mixing") {
      gate = mixing_gate();
      network_residual = (gate.entries - from_network.entries).cwiseAbs().maxCoeff();
    } else {
      gate = hadamard_gate();
      const GateUnitary p = phase_shift_gate(3.0 * std::numbers::pi / 2.0);
      const Eigen::MatrixXcd composed =
          std::complex<double>(0, -1) * (p.entries * from_network.entries * p.entries);
      network_residual = (gate.entries - composed).cwiseAbs().maxCoeff();
    }
  } else if (name.rfind("phase:", 0) == 0) {
    gate = phase_shift_gate(std::stod(name.substr(6)));
  } else if (name == "not") {
    gate = not_gate();
  } else if (name == "cnot") {
    gate = cnot_gate();
  } else if (name == "swap") {
    gate = swap_gate();
  } else if (name == "toffoli") {
    gate = toffoli_gate();
  } else if (name == "fredkin") {
    gate = fredkin_gate();
  } else {
    std::fprintf(stderr, "unknown gate: %s\n", name.c_str());
    return kExitUsage;
  }
  std::printf("gate %s (%d qubit%s):\n", name.c_str(), gate.num_qubits(),
              gate.num_qubits() == 1 ? "" : "s");
  print_unitary(gate);
  const double residual = gate.unitarity_residual();
  std::printf("unitarity residual: %.3e\n", residual);
  bool pass = residual < tol;
  if (network_residual >= 0) {
    std::printf("network-vs-closed-form residual: %.3e\n", network_residual);
    pass = pass && network_residual < tol;
  }
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : kExitNumerical;
}

int cmd_shor(long n_value, long a_value, const std::string& mode_name, int num_register,
             int samples, std::uint64_t seed, const std::string& out) {
  using namespace wavenet;
  if (mode_name != "reference" && mode_name != "compiled") {
    std::fprintf(stderr, "mode must be 'reference' or 'compiled'\n");
    return kExitUsage;
  }
  const ShorMode mode = mode_name == "compiled" ? ShorMode::Compiled : ShorMode::Reference;
  const ShorRun run = run_full_pipeline(n_value, a_value, mode, num_register);

  nlohmann::json j;
  j["N"] = run.instance.modulus;
  j["a"] = run.instance.base;
  j["n"] = run.instance.num_register;
  j["m"] = run.instance.num_ancilla;
  nlohmann::json marginal = nlohmann::json::object();
  for (std::size_t y = 0; y < run.marginal.size(); ++y) {
    if (run.marginal[y] > 0) marginal[std::to_string(y)] = run.marginal[y];
  }
  j["register_marginal"] = marginal;
  j["r"] = run.result.period;
  j["factors"] = {run.result.factors->first, run.result.factors->second};
  j["retries"] = run.retries;
  if (samples > 0) {
    j["samples"] = sample_register(run.marginal, samples, seed);
  }
  write_file(out, j.dump(2) + "\n");
  std::printf("N=%ld a=%ld mode=%s: r=%ld factors=[%ld, %ld] -> %s\n", run.instance.modulus,
              run.instance.base, mode_name.c_str(), run.result.period,
              run.result.factors->first, run.result.factors->second, out.c_str());
  return 0;
}

int cmd_evolve(int cells, long steps, int k_mode, double dx, double cfl_fraction,
               long sample_interval, bool left, const std::string& out) {
  using namespace wavenet;
  EvolutionConfig config;
  config.num_cells = cells;
  config.dx = dx;
  config.line = LineParameters{};
  config.dt = cfl_fraction * dx *
              std::sqrt(config.line.inductance_per_length * config.line.capacitance_per_length);
  config.steps = steps;
  config.validate();
  const FieldState init = initialize_plane_wave(config, k_mode, left);
  const auto samples = evolve(config, init, sample_interval);
  std::ostringstream csv;
  csv << "step,time,U_E,U_M,U_T,norm\n";
  char buf[160];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.step, s.time, s.u_e,
                  s.u_m, s.u_t, s.norm);
    csv << buf;
  }
  write_file(out, csv.str());
  std::printf("wrote %zu samples to %s\n", samples.size(), out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission-line network simulator: scattering gates and Shor demo"};
  app.require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "k-sweep of a network's scattering coefficients");
  std::string network_file, inject, out = "sweep.csv";
  double k_min = 0.01, k_max = 6.27;
  int steps = 512;
  sweep_cmd->add_option("--network", network_file, "network description JSON")->required();
  sweep_cmd->add_option("--k-min", k_min, "lowest wavenumber");
  sweep_cmd->add_option("--k-max", k_max, "highest wavenumber");
  sweep_cmd->add_option("--steps", steps, "number of k samples");
  sweep_cmd->add_option("--inject", inject, "injected port id")->required();
  sweep_cmd->add_option("--out", out, "output CSV path");

  auto* gate_cmd = app.add_subcommand("gate", "print and verify a catalog gate");
  std::string gate_name;
  double gate_tol = 1e-9;
  gate_cmd->add_option("name", gate_name,
                       "mixing | phase:<phi> | hadamard | not | cnot | swap | toffoli | fredkin")
      ->required();
  gate_cmd->add_option("--tol", gate_tol, "residual tolerance");

  auto* shor_cmd = app.add_subcommand("shor", "run the period-finding pipeline");
  long shor_n = 15, shor_a = 11;
  std::string shor_mode = "reference", shor_out = "result.json";
  int shor_register = -1, shor_samples = 0;
  std::uint64_t shor_seed = 1;
  shor_cmd->add_option("--n", shor_n, "modulus N")->required();
  shor_cmd->add_option("--a", shor_a, "base a")->required();
  shor_cmd->add_option("--mode", shor_mode, "reference | compiled");
  shor_cmd->add_option("--register-qubits", shor_register, "register size n (default: n = m)");
  shor_cmd->add_option("--samples", shor_samples, "also draw K register samples");
  shor_cmd->add_option("--seed", shor_seed, "sampling seed");
  shor_cmd->add_option("--out", shor_out, "output JSON path");

  auto* evolve_cmd = app.add_subcommand("evolve", "time-domain leapfrog evolution");
  int ev_cells = 1024, ev_mode = 8;
  long ev_steps = 10000, ev_interval = 100;
  double ev_dx = 1.0, ev_cfl = 0.5;
  bool ev_left = false;
  std::string ev_out = "evolve.csv";
  evolve_cmd->add_option("--cells", ev_cells, "grid cells");
  evolve_cmd->add_option("--steps", ev_steps, "time steps");
  evolve_cmd->add_option("--k-mode", ev_mode, "plane-wave mode number");
  evolve_cmd->add_option("--dx", ev_dx, "cell size");
  evolve_cmd->add_option("--cfl", ev_cfl, "dt as a fraction of the CFL limit");
  evolve_cmd->add_flag("--left", ev_left, "left-moving initial mode");
  evolve_cmd->add_option("--sample-interval", ev_interval, "steps between samples");
  evolve_cmd->add_option("--out", ev_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(network_file, k_min, k_max, steps, inject, out);
    if (gate_cmd->parsed()) return cmd_gate(gate_name, gate_tol);
    if (shor_cmd->parsed())
      return cmd_shor(shor_n, shor_a, shor_mode, shor_register, shor_samples, shor_seed, shor_out);
    if (evolve_cmd->parsed())
      return cmd_evolve(ev_cells, ev_steps, ev_mode, ev_dx, ev_cfl, ev_interval, ev_left, ev_out);
  } catch (const wavenet::MalformedNetwork& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
