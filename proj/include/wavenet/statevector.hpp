#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wavenet/gates.hpp"

namespace wavenet {

/// Amplitudes over n-qubit basis states, qubit 0 = most significant bit.
struct Statevector {
  int num_qubits = 0;
  Eigen::VectorXcd amplitudes;

  static Statevector basis_state(int num_qubits, std::uint64_t index);

  double norm() const { return amplitudes.norm(); }

  /// Applies a k-qubit gate to the named qubits (gate qubit 0 ->
  /// target_qubits[0]); identity on the rest.
  void apply(const GateUnitary& gate, const std::vector<int>& target_qubits);
};

}  // namespace wavenet
