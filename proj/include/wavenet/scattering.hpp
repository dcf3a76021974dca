#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavenet/network.hpp"

namespace wavenet {

using Complex = std::complex<double>;

/// Kirchhoff system for one injection: unknowns are the two traveling-wave
/// amplitudes per segment plus one outgoing amplitude per port.
struct LinearSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::vector<std::string> unknown_labels;
};

struct SegmentAmplitudes {
  Complex forward;   // wave from 'from' to 'to', referenced at the from-node
  Complex backward;  // wave from 'to' to 'from', referenced at the from-node
};

/// Reflection/transmission coefficients as complex current ratios relative
/// to the incident current, at a fixed wavenumber.
struct ScatteringSolution {
  double wavenumber = 0.0;
  std::string injected_port;
  Complex reflection;
  std::map<std::string, Complex> transmissions;  // every port except the injected one
  std::map<std::string, SegmentAmplitudes> segment_amplitudes;
};

/// Scattering matrix in power-normalized wave amplitudes a_p = V_p+/sqrt(Z_p).
struct SMatrix {
  std::vector<std::string> ports;
  Eigen::MatrixXcd entries;
};

/// Assemble the node equations at wavenumber k: per node of degree d,
/// (d-1) voltage equalities plus one current conservation; the incident
/// wave at the injected port enters the right-hand side.
LinearSystem assemble(const NetworkGraph& net, double k, const std::string& injected_port);

ScatteringSolution solve(const NetworkGraph& net, double k, const std::string& injected_port);

SMatrix full_smatrix(const NetworkGraph& net, double k);

/// | sum over ports of |I_p/I_i|^2 * Z_p/Z_inject  -  1 |
double power_conservation_residual(const NetworkGraph& net, const ScatteringSolution& sol);

struct SweepRow {
  double k = 0.0;
  bool degenerate = false;  // solver hit a resonance; coefficients are absent
  std::vector<Complex> transmissions;
  Complex reflection;
};

struct SweepTable {
  std::string injected_port;
  std::vector<std::string> t_ports;  // column order: port declaration order
  std::vector<SweepRow> rows;
};

/// Uniformly sampled k in [k_min, k_max]; degenerate samples are recorded
/// as gaps. threads <= 1 runs serially; row order is deterministic either way.
SweepTable sweep(const NetworkGraph& net, double k_min, double k_max, int steps,
                 const std::string& injected_port, int threads = 1);

/// CSV with header k,abs_T1,arg_T1,...,abs_R,arg_R; angles in (-pi, pi],
/// 17 significant digits. Degenerate rows print nan coefficients.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

}  // namespace wavenet
