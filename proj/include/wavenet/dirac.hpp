#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wavenet/line.hpp"

namespace wavenet {

/// Sampled V(x), I(x) on a periodic 1D grid. In the staggered scheme the
/// voltage lives on integer sites at integer times and the current on
/// half-integer sites one half step behind.
struct FieldState {
  int num_cells = 0;
  double dx = 1.0;
  Eigen::ArrayXd voltage;
  Eigen::ArrayXd current;
  LineParameters line;
};

struct EvolutionConfig {
  int num_cells = 8;
  double dx = 1.0;
  double dt = 0.5;
  long steps = 1;
  LineParameters line;

  /// Throws std::domain_error unless num_cells >= 8, dx, dt > 0, steps >= 1
  /// and the CFL bound dt <= dx*sqrt(L*C) holds.
  void validate() const;
};

/// Two-component wavefunction psi = (Z*I, V) per cell.
Eigen::MatrixX2cd wavefunction_from_fields(const FieldState& state);

/// Right-moving (or left-moving) eigenmode of the discrete scheme:
/// V(x) = cos(kx), I(x) = +-cos(kx)/Z with k = 2*pi*mode/(num_cells*dx).
/// Throws std::domain_error unless 1 <= mode <= num_cells/2 - 1.
FieldState initialize_plane_wave(const EvolutionConfig& config, int mode,
                                 bool left_moving = false);

/// One staggered leapfrog update (current first, then voltage), advancing dt.
FieldState step(const FieldState& state, const EvolutionConfig& config);

struct EnergySample {
  long step = 0;
  double time = 0.0;
  double u_e = 0.0;    // (C/2) sum V^2
  double u_m = 0.0;    // (L/2) sum I(t-dt/2)*I(t+dt/2), the conserved invariant
  double u_t = 0.0;    // u_e + u_m
  double norm = 0.0;   // sum |psi|^2 from the time-centered sample
  double u_t_centered = 0.0;  // u_e + (L/2) sum Ibar^2 (matches norm by construction)
};

/// Runs config.steps updates, recording energies every sample_interval steps
/// (step 0 included).
std::vector<EnergySample> evolve(const EvolutionConfig& config, FieldState state,
                                 long sample_interval = 1);

struct DispersionResult {
  double k = 0.0;
  double omega_measured = 0.0;
  double omega_theory = 0.0;  // k / sqrt(LC)
};

/// Measures the phase advance of the mode's complex amplitude over the run.
/// Throws MeasurementTooShort if the run covers less than a quarter period.
DispersionResult measure_dispersion(const EvolutionConfig& config, int mode);

}  // namespace wavenet
