#include "wavenet/gates.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "wavenet/errors.hpp"

namespace wavenet {

namespace {

const Complex kI(0.0, 1.0);

std::vector<std::string> default_labels(int dimension) {
  int nq = 0;
  while ((1 << nq) < dimension) ++nq;
  std::vector<std::string> labels(dimension);
  for (int i = 0; i < dimension; ++i) {
    std::string bits(nq, '0');
    for (int q = 0; q < nq; ++q) {
      if (i & (1 << (nq - 1 - q))) bits[q] = '1';
    }
    labels[i] = bits;
  }
  return labels;
}

int label_to_index(const std::string& label, int num_qubits) {
  if (static_cast<int>(label.size()) != num_qubits) {
    throw std::invalid_argument("basis label '" + label + "' must have length " +
                                std::to_string(num_qubits));
  }
  int idx = 0;
  for (char c : label) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("basis label '" + label + "' is not binary");
    }
    idx = (idx << 1) | (c - '0');
  }
  return idx;
}

}  // namespace

int GateUnitary::num_qubits() const {
  int nq = 0;
  while ((1 << nq) < dimension()) ++nq;
  return nq;
}

double GateUnitary::unitarity_residual() const {
  const int n = dimension();
  return (entries.adjoint() * entries - Eigen::MatrixXcd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

GateUnitary GateUnitary::from_matrix(Eigen::MatrixXcd m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0 || (m.rows() & (m.rows() - 1)) != 0) {
    throw std::invalid_argument("gate dimension must be a power of 2");
  }
  GateUnitary g{std::move(m), {}};
  g.basis_labels = default_labels(g.dimension());
  const double res = g.unitarity_residual();
  if (res > tol) throw NotUnitary(res);
  return g;
}

GateUnitary identity_gate(int num_qubits) {
  const int n = 1 << num_qubits;
  return GateUnitary::from_matrix(Eigen::MatrixXcd::Identity(n, n));
}

GateUnitary mixing_gate(int branch) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("mixing_gate: branch must be +-1");
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m(2, 2);
  m << static_cast<double>(branch) * kI * s, -s, -s, static_cast<double>(branch) * kI * s;
  return GateUnitary::from_matrix(std::move(m));
}

GateUnitary phase_shift_gate(double phi) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(1, 1) = std::exp(kI * phi);
  return GateUnitary::from_matrix(std::move(m));
}

GateUnitary hadamard_composed() {
  const GateUnitary p = phase_shift_gate(3.0 * std::numbers::pi / 2.0);
  Eigen::MatrixXcd m = -kI * (p.entries * mixing_gate().entries * p.entries);
  return GateUnitary::from_matrix(std::move(m));
}

GateUnitary hadamard_gate() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m(2, 2);
  m << s, s, s, -s;
  GateUnitary h = GateUnitary::from_matrix(std::move(m));
  // The physical composition must agree with the textbook matrix.
  const double dev = (hadamard_composed().entries - h.entries).cwiseAbs().maxCoeff();
  if (dev > 1e-12) throw NotUnitary(dev);
  return h;
}

GateUnitary permutation_gate(int num_qubits,
                             const std::vector<std::pair<std::string, std::string>>& swaps) {
  const int n = 1 << num_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  std::set<int> used;
  for (const auto& [a, b] : swaps) {
    const int ia = label_to_index(a, num_qubits);
    const int ib = label_to_index(b, num_qubits);
    if (ia == ib) throw std::invalid_argument("swap pair (" + a + ", " + b + ") is degenerate");
    if (!used.insert(ia).second || !used.insert(ib).second) {
      throw std::invalid_argument("swap pairs overlap at " + a + "/" + b);
    }
    m(ia, ia) = 0;
    m(ib, ib) = 0;
    m(ia, ib) = 1;
    m(ib, ia) = 1;
  }
  return GateUnitary::from_matrix(std::move(m));
}

GateUnitary not_gate() { return permutation_gate(1, {{"0", "1"}}); }
GateUnitary cnot_gate() { return permutation_gate(2, {{"10", "11"}}); }
GateUnitary swap_gate() { return permutation_gate(2, {{"01", "10"}}); }
GateUnitary toffoli_gate() { return permutation_gate(3, {{"110", "111"}}); }
GateUnitary fredkin_gate() { return permutation_gate(3, {{"101", "110"}}); }

GateUnitary compose(const GateUnitary& a, const GateUnitary& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("compose: dimension mismatch");
  return GateUnitary::from_matrix(b.entries * a.entries);
}

GateUnitary tensor(const GateUnitary& a, const GateUnitary& b) {
  const int na = a.dimension(), nb = b.dimension();
  Eigen::MatrixXcd m(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      m.block(i * nb, j * nb, nb, nb) = a.entries(i, j) * b.entries;
    }
  }
  return GateUnitary::from_matrix(std::move(m));
}

GateUnitary embed(const GateUnitary& gate, const std::vector<int>& target_qubits,
                  int num_qubits) {
  const int g = gate.num_qubits();
  if (static_cast<int>(target_qubits.size()) != g) {
    throw std::invalid_argument("embed: target count must match the gate's qubit count");
  }
  std::set<int> seen;
  for (int t : target_qubits) {
    if (t < 0 || t >= num_qubits || !seen.insert(t).second) {
      throw std::invalid_argument("embed: target qubits must be distinct and in range");
    }
  }
  const int n = 1 << num_qubits;
  // Sub-index of a basis state on the target qubits (qubit 0 = MSB).
  auto sub_index = [&](int state) {
    int s = 0;
    for (int q : target_qubits) s = (s << 1) | ((state >> (num_qubits - 1 - q)) & 1);
    return s;
  };
  auto with_sub = [&](int state, int sub) {
    for (int i = 0; i < g; ++i) {
      const int bitpos = num_qubits - 1 - target_qubits[i];
      const int bit = (sub >> (g - 1 - i)) & 1;
      state = (state & ~(1 << bitpos)) | (bit << bitpos);
    }
    return state;
  };
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const int sub = sub_index(col);
    for (int srow = 0; srow < gate.dimension(); ++srow) {
      m(with_sub(col, srow), col) = gate.entries(srow, sub);
    }
  }
  return GateUnitary::from_matrix(std::move(m));
}

bool equal_up_to_phase(const GateUnitary& a, const GateUnitary& b, double tol) {
  if (a.dimension() != b.dimension()) return false;
  // Anchor the phase on b's largest entry.
  Eigen::Index r = 0, c = 0;
  b.entries.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b.entries(r, c)) == 0.0) return a.entries.cwiseAbs().maxCoeff() < tol;
  Complex lambda = a.entries(r, c) / b.entries(r, c);
  const double mag = std::abs(lambda);
  if (mag == 0.0) return false;
  lambda /= mag;
  return (a.entries - lambda * b.entries).cwiseAbs().maxCoeff() < tol;
}

NetworkGraph build_mixing_network(double z_ratio, double side_length) {
  if (z_ratio <= 0 || side_length <= 0) {
    throw std::invalid_argument("build_mixing_network: parameters must be positive");
  }
  NetworkGraph net;
  net.nodes = {"A", "B", "C", "D"};
  net.segments = {{"AB", "A", "B", 1.0, side_length},
                  {"CD", "C", "D", 1.0, side_length},
                  {"AC", "A", "C", z_ratio, side_length},
                  {"BD", "B", "D", z_ratio, side_length}};
  // Port order follows the transmission indices T1, T2, T3.
  net.ports = {{"in0", "A", 1.0, PortRole::Input, "|0>"},
               {"out0", "C", 1.0, PortRole::Output, "|0>"},
               {"in1", "B", 1.0, PortRole::Input, "|1>"},
               {"out1", "D", 1.0, PortRole::Output, "|1>"}};
  net.validate();
  return net;
}

GateUnitary extract_two_port_unitary(const SMatrix& s,
                                     const std::pair<std::string, std::string>& input_ports,
                                     const std::pair<std::string, std::string>& output_ports,
                                     double tol) {
  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < s.ports.size(); ++i)
      if (s.ports[i] == id) return static_cast<int>(i);
    throw std::invalid_argument("S-matrix has no port " + id);
  };
  const int in[2] = {index(input_ports.first), index(input_ports.second)};
  const int out[2] = {index(output_ports.first), index(output_ports.second)};

  double refl = 0.0;
  for (int r : in)
    for (int c : in) refl = std::max(refl, std::abs(s.entries(r, c)));
  if (refl >= tol) throw ReflectionTooLarge(refl);

  Eigen::MatrixXcd u(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) u(r, c) = s.entries(out[r], in[c]);
  GateUnitary gate{std::move(u), default_labels(2)};
  const double res = gate.unitarity_residual();
  if (res > 1e-8) throw NotUnitary(res);
  return gate;
}

}  // namespace wavenet
