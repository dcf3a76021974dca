#include "wavenet/dirac.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "wavenet/errors.hpp"

namespace wavenet {

namespace {

// Discrete dispersion of the staggered scheme: sin(w dt/2) = nu sin(k dx/2).
double discrete_omega(double k, const EvolutionConfig& c) {
  const double lc = std::sqrt(c.line.inductance_per_length * c.line.capacitance_per_length);
  const double nu = c.dt / (c.dx * lc);
  return 2.0 / c.dt * std::asin(nu * std::sin(k * c.dx / 2.0));
}

void leapfrog(Eigen::ArrayXd& v, Eigen::ArrayXd& i, const EvolutionConfig& c) {
  const int n = c.num_cells;
  const double ci = c.dt / (c.line.inductance_per_length * c.dx);
  const double cv = c.dt / (c.line.capacitance_per_length * c.dx);
  // I_{j+1/2} += -(dt/L dx)(V_{j+1} - V_j), periodic
  for (int j = 0; j < n; ++j) {
    i(j) -= ci * (v((j + 1) % n) - v(j));
  }
  // V_j += -(dt/C dx)(I_{j+1/2} - I_{j-1/2})
  const double i_last = i(n - 1);
  double i_prev = i_last;
  for (int j = 0; j < n; ++j) {
    const double tmp = i(j);
    v(j) -= cv * (tmp - i_prev);
    i_prev = tmp;
  }
}

}  // namespace

void EvolutionConfig::validate() const {
  if (num_cells < 8) throw std::domain_error("EvolutionConfig: num_cells must be >= 8");
  if (dx <= 0 || dt <= 0) throw std::domain_error("EvolutionConfig: dx and dt must be positive");
  if (steps < 1) throw std::domain_error("EvolutionConfig: steps must be >= 1");
  const double limit =
      dx * std::sqrt(line.inductance_per_length * line.capacitance_per_length);
  if (dt > limit * (1.0 + 1e-12)) {
    throw std::domain_error("EvolutionConfig: CFL violated, need dt <= dx*sqrt(L*C)");
  }
}

Eigen::MatrixX2cd wavefunction_from_fields(const FieldState& state) {
  if (state.voltage.size() != state.num_cells || state.current.size() != state.num_cells) {
    throw std::domain_error("FieldState: arrays must have length num_cells");
  }
  const double z = state.line.characteristic_impedance();
  Eigen::MatrixX2cd psi(state.num_cells, 2);
  psi.col(0) = (z * state.current).cast<std::complex<double>>();
  psi.col(1) = state.voltage.cast<std::complex<double>>();
  return psi;
}

FieldState initialize_plane_wave(const EvolutionConfig& config, int mode, bool left_moving) {
  config.validate();
  if (mode < 1 || mode > config.num_cells / 2 - 1) {
    throw std::domain_error("initialize_plane_wave: mode out of range (aliasing guard)");
  }
  const double k = 2.0 * std::numbers::pi * mode / (config.num_cells * config.dx);
  const double z = config.line.characteristic_impedance();
  const double omega = discrete_omega(k, config);
  const double sign = left_moving ? -1.0 : 1.0;

  FieldState s;
  s.num_cells = config.num_cells;
  s.dx = config.dx;
  s.line = config.line;
  s.voltage.resize(config.num_cells);
  s.current.resize(config.num_cells);
  for (int j = 0; j < config.num_cells; ++j) {
    s.voltage(j) = std::cos(k * j * config.dx);
    // current sits at x_{j+1/2}, one half step behind in time
    const double x_half = (j + 0.5) * config.dx;
    s.current(j) = sign / z * std::cos(k * x_half + sign * omega * config.dt / 2.0);
  }
  return s;
}

FieldState step(const FieldState& state, const EvolutionConfig& config) {
  config.validate();
  if (state.num_cells != config.num_cells) {
    throw std::domain_error("step: state/config cell counts disagree");
  }
  FieldState next = state;
  leapfrog(next.voltage, next.current, config);
  return next;
}

std::vector<EnergySample> evolve(const EvolutionConfig& config, FieldState state,
                                 long sample_interval) {
  config.validate();
  if (sample_interval < 1) throw std::domain_error("evolve: sample_interval must be >= 1");
  const double cc = config.line.capacitance_per_length;
  const double ll = config.line.inductance_per_length;
  const double z = config.line.characteristic_impedance();

  std::vector<EnergySample> samples;
  Eigen::ArrayXd v = state.voltage;
  Eigen::ArrayXd i = state.current;  // I at t - dt/2

  for (long n = 0; n <= config.steps; ++n) {
    Eigen::ArrayXd i_next = i;
    Eigen::ArrayXd v_next = v;
    if (n < config.steps) {
      leapfrog(v_next, i_next, config);
    } else {
      // the half-step current update only reads v, so the final sample can
      // still use the product-form invariant
      const double ci = config.dt / (ll * config.dx);
      for (int j = 0; j < config.num_cells; ++j) {
        i_next(j) -= ci * (v((j + 1) % config.num_cells) - v(j));
      }
    }

    if (n % sample_interval == 0 || n == config.steps) {
      const Eigen::ArrayXd& i_after = i_next;  // I at t + dt/2
      const Eigen::ArrayXd i_centered = 0.5 * (i + i_after);
      EnergySample s;
      s.step = n;
      s.time = n * config.dt;
      s.u_e = 0.5 * cc * v.square().sum();
      s.u_m = 0.5 * ll * (i * i_after).sum();
      s.u_t = s.u_e + s.u_m;
      s.norm = ((z * i_centered).square() + v.square()).sum();
      s.u_t_centered = s.u_e + 0.5 * ll * i_centered.square().sum();
      samples.push_back(s);
    }
    if (n < config.steps) {
      v.swap(v_next);
      i.swap(i_next);
    }
  }
  return samples;
}

DispersionResult measure_dispersion(const EvolutionConfig& config, int mode) {
  config.validate();
  const double k = 2.0 * std::numbers::pi * mode / (config.num_cells * config.dx);
  const double lc =
      std::sqrt(config.line.inductance_per_length * config.line.capacitance_per_length);
  const double omega_theory = k / lc;

  const double run_time = config.steps * config.dt;
  if (run_time * omega_theory < std::numbers::pi / 2.0) {
    throw MeasurementTooShort("measure_dispersion: run covers less than a quarter period");
  }

  FieldState state = initialize_plane_wave(config, mode);
  const std::complex<double> i_unit(0.0, 1.0);

  // Project V onto e^{-ikx}; for V = cos(kx - wt) the projection phase is -wt.
  auto phase_of = [&](const Eigen::ArrayXd& v) {
    std::complex<double> c = 0.0;
    for (int j = 0; j < config.num_cells; ++j) {
      c += v(j) * std::exp(-i_unit * k * (j * config.dx));
    }
    return std::arg(c);
  };

  // Least-squares slope of the unwrapped phase against time.
  double prev = phase_of(state.voltage);
  double unwrapped = prev;
  double sum_t = 0, sum_p = 0, sum_tt = 0, sum_tp = 0;
  const long n_pts = config.steps + 1;
  for (long s = 0;; ++s) {
    const double t = s * config.dt;
    sum_t += t;
    sum_p += unwrapped;
    sum_tt += t * t;
    sum_tp += t * unwrapped;
    if (s == config.steps) break;
    state = step(state, config);
    const double ph = phase_of(state.voltage);
    double d = ph - prev;
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    unwrapped += d;
    prev = ph;
  }
  const double slope =
      (n_pts * sum_tp - sum_t * sum_p) / (n_pts * sum_tt - sum_t * sum_t);

  DispersionResult r;
  r.k = k;
  r.omega_measured = -slope;
  r.omega_theory = omega_theory;
  return r;
}

}  // namespace wavenet
