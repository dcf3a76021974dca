#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavenet/network.hpp"
#include "wavenet/scattering.hpp"

namespace wavenet {

/// Dense unitary on n qubits with ket labels. Labels are binary strings,
/// leftmost character = qubit 0 = most significant bit.
struct GateUnitary {
  Eigen::MatrixXcd entries;
  std::vector<std::string> basis_labels;

  int dimension() const { return static_cast<int>(entries.rows()); }
  int num_qubits() const;
  double unitarity_residual() const;  // max-norm of U'U - I

  /// Wraps a matrix, generating default labels; throws NotUnitary if
  /// U'U deviates from I by more than tol entrywise.
  static GateUnitary from_matrix(Eigen::MatrixXcd m, double tol = 1e-10);
};

GateUnitary identity_gate(int num_qubits);

/// (1/sqrt(2)) [[+-i, -1], [-1, +-i]]; branch +1 is the k*l = pi/2 network,
/// branch -1 its k*l = 3pi/2 conjugate.
GateUnitary mixing_gate(int branch = +1);

/// diag(1, e^{i phi}); physically phi = k*(l2 - l1) with the overall
/// phase e^{i k l1} discarded.
GateUnitary phase_shift_gate(double phi);

GateUnitary hadamard_gate();

/// -i * U_{3pi/2} * U_mix * U_{3pi/2}, the physical composition of H.
GateUnitary hadamard_composed();

/// Permutation matrix exchanging the listed basis-state pairs.
/// Labels are binary strings like "10"; pairs must be disjoint.
GateUnitary permutation_gate(int num_qubits,
                             const std::vector<std::pair<std::string, std::string>>& swaps);

GateUnitary not_gate();
GateUnitary cnot_gate();
GateUnitary swap_gate();
GateUnitary toffoli_gate();
GateUnitary fredkin_gate();

/// b-after-a matrix product.
GateUnitary compose(const GateUnitary& a, const GateUnitary& b);

/// Kronecker product; a acts on the more significant qubits.
GateUnitary tensor(const GateUnitary& a, const GateUnitary& b);

/// Places a k-qubit gate on target_qubits (gate qubit 0 -> target_qubits[0])
/// inside an num_qubits-qubit identity.
GateUnitary embed(const GateUnitary& gate, const std::vector<int>& target_qubits,
                  int num_qubits);

/// True if a = lambda * b for some |lambda| = 1, entrywise within tol.
bool equal_up_to_phase(const GateUnitary& a, const GateUnitary& b, double tol);

/// Double-bridge square A-B-C-D: sides A-B, C-D at impedance 1, sides
/// A-C, B-D at z_ratio. Ports (impedance 1, paper index order):
/// in0 at A, out0 at C, in1 at B, out1 at D.
NetworkGraph build_mixing_network(double z_ratio, double side_length = 1.0);

/// Transmission block output<-input of a 4-port S-matrix as a one-qubit gate.
/// Throws ReflectionTooLarge when the input->input block max-norm >= tol,
/// NotUnitary when the block fails the 1e-8 unitarity check.
GateUnitary extract_two_port_unitary(const SMatrix& s,
                                     const std::pair<std::string, std::string>& input_ports,
                                     const std::pair<std::string, std::string>& output_ports,
                                     double tol);

/// Wire-length bookkeeping for permutation gates: the length delta that
/// realizes a given phase at wavenumber k (set phase = 2pi to suppress it).
inline double wire_length_delta_for_phase(double k, double phase) { return phase / k; }

}  // namespace wavenet
