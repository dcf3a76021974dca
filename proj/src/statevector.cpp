#include "wavenet/statevector.hpp"

#include <set>
#include <stdexcept>

namespace wavenet {

Statevector Statevector::basis_state(int num_qubits, std::uint64_t index) {
  if (num_qubits < 1) throw std::invalid_argument("basis_state: need at least one qubit");
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (index >= dim) throw std::invalid_argument("basis_state: index out of range");
  Statevector sv;
  sv.num_qubits = num_qubits;
  sv.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  sv.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return sv;
}

void Statevector::apply(const GateUnitary& gate, const std::vector<int>& target_qubits) {
  const int g = gate.num_qubits();
  if (static_cast<int>(target_qubits.size()) != g) {
    throw std::invalid_argument("apply: target count must match the gate's qubit count");
  }
  std::set<int> seen;
  for (int t : target_qubits) {
    if (t < 0 || t >= num_qubits || !seen.insert(t).second) {
      throw std::invalid_argument("apply: target qubits must be distinct and in range");
    }
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  const int gdim = gate.dimension();

  std::vector<std::uint64_t> bitpos(g);
  for (int i = 0; i < g; ++i) {
    bitpos[i] = std::uint64_t{1} << (num_qubits - 1 - target_qubits[i]);
  }
  std::uint64_t target_mask = 0;
  for (std::uint64_t b : bitpos) target_mask |= b;

  Eigen::VectorXcd scratch(gdim);
  std::vector<std::uint64_t> idx(gdim);
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;  // visit each group once, at its zero pattern
    for (int s = 0; s < gdim; ++s) {
      std::uint64_t full = base;
      for (int i = 0; i < g; ++i) {
        if (s & (1 << (g - 1 - i))) full |= bitpos[i];
      }
      idx[s] = full;
      scratch(s) = amplitudes(static_cast<Eigen::Index>(full));
    }
    const Eigen::VectorXcd out = gate.entries * scratch;
    for (int s = 0; s < gdim; ++s) {
      amplitudes(static_cast<Eigen::Index>(idx[s])) = out(s);
    }
  }
}

}  // namespace wavenet
