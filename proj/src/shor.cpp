#include "wavenet/shor.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wavenet/errors.hpp"

namespace wavenet {

namespace {

constexpr double kSupportTolerance = 1e-10;

int minimal_ancilla(long modulus) {
  int m = 1;
  while ((1L << m) < modulus) ++m;
  return m;  // 2^{m-1} < N <= 2^m
}

}  // namespace

long mod_exp(long a, long x, long n) {
  if (n < 2) throw std::domain_error("mod_exp: modulus must be >= 2");
  if (x < 0) throw std::domain_error("mod_exp: exponent must be >= 0");
  long result = 1 % n;
  long base = ((a % n) + n) % n;
  while (x > 0) {
    if (x & 1) result = (result * base) % n;
    base = (base * base) % n;
    x >>= 1;
  }
  return result;
}

long euclid_gcd(long a, long b) {
  if (a == 0 && b == 0) throw std::domain_error("euclid_gcd: gcd(0, 0) is undefined");
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    const long r = a % b;
    a = b;
    b = r;
  }
  return a;
}

ShorInstance ShorInstance::create(long modulus, long base, int num_register) {
  ShorInstance inst;
  inst.modulus = modulus;
  inst.base = base;
  inst.num_ancilla = minimal_ancilla(modulus);
  inst.num_register = num_register < 0 ? inst.num_ancilla : num_register;
  inst.validate();
  return inst;
}

void ShorInstance::validate() const {
  if (modulus < 3 || modulus % 2 == 0) {
    throw std::domain_error("ShorInstance: modulus must be an odd integer >= 3");
  }
  bool composite = false;
  for (long d = 3; d * d <= modulus; d += 2) {
    if (modulus % d == 0) {
      composite = true;
      break;
    }
  }
  if (!composite) throw std::domain_error("ShorInstance: modulus must be composite");
  if (base <= 0 || base >= modulus) throw std::domain_error("ShorInstance: need 0 < a < N");
  if (euclid_gcd(base, modulus) != 1) {
    throw std::domain_error("ShorInstance: base must be coprime to the modulus");
  }
  if (num_ancilla != minimal_ancilla(modulus)) {
    throw std::domain_error("ShorInstance: num_ancilla must be minimal with 2^{m-1} < N <= 2^m");
  }
  if (num_register < 1) throw std::domain_error("ShorInstance: need at least one register qubit");
  if (num_register + num_ancilla > 20) {
    throw std::domain_error("ShorInstance: n + m must stay <= 20");
  }
}

GateUnitary inverse_qft(int num_qubits) {
  if (num_qubits < 1) throw std::domain_error("inverse_qft: need at least one qubit");
  const long dim = 1L << num_qubits;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::MatrixXcd m(dim, dim);
  const std::complex<double> i_unit(0.0, 1.0);
  for (long y = 0; y < dim; ++y) {
    for (long x = 0; x < dim; ++x) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(x * y) / dim;
      m(y, x) = scale * std::exp(i_unit * angle);
    }
  }
  return GateUnitary::from_matrix(std::move(m));
}

Statevector modular_exponentiation_state(const ShorInstance& instance) {
  instance.validate();
  const int n = instance.num_register;
  const int m = instance.num_ancilla;
  const long reg_dim = 1L << n;
  const long anc_dim = 1L << m;

  // |0...0>|0...01>, Hadamards on the register, then the modular map on the
  // ancilla; the result is a direct basis enumeration.
  Statevector sv = Statevector::basis_state(n + m, 0);
  sv.amplitudes.setZero();
  const double amp = 1.0 / std::sqrt(static_cast<double>(reg_dim));
  for (long x = 0; x < reg_dim; ++x) {
    const long w = mod_exp(instance.base, x, instance.modulus);
    sv.amplitudes(x * anc_dim + w) = amp;
  }
  return sv;
}

Statevector reference_period_finding(const ShorInstance& instance) {
  Statevector sv = modular_exponentiation_state(instance);
  std::vector<int> register_qubits(instance.num_register);
  for (int q = 0; q < instance.num_register; ++q) register_qubits[q] = q;
  sv.apply(inverse_qft(instance.num_register), register_qubits);
  return sv;
}

std::vector<double> register_marginal(const Statevector& state, int num_register) {
  if (num_register < 1 || num_register > state.num_qubits) {
    throw std::domain_error("register_marginal: register size out of range");
  }
  const long anc_dim = 1L << (state.num_qubits - num_register);
  std::vector<double> marginal(1L << num_register, 0.0);
  for (long y = 0; y < static_cast<long>(marginal.size()); ++y) {
    for (long w = 0; w < anc_dim; ++w) {
      marginal[y] += std::norm(state.amplitudes(y * anc_dim + w));
    }
  }
  return marginal;
}

Statevector compiled_shor_15_11() {
  // Qubits (q0, q1, q2) = (n1, m1, m3). CZ is realized inside the universal
  // set as (I x H) CNOT (I x H); every H is the composed mixing/phase form.
  const GateUnitary h = hadamard_composed();
  const GateUnitary cnot = cnot_gate();
  const GateUnitary cz = compose(compose(tensor(identity_gate(1), h), cnot),
                                 tensor(identity_gate(1), h));
  Statevector sv = Statevector::basis_state(3, 0);
  sv.apply(h, {1});
  sv.apply(cnot, {1, 2});
  sv.apply(h, {0});
  sv.apply(cz, {0, 1});
  return sv;
}

Statevector uncompile_shor_15_11(const Statevector& compiled) {
  if (compiled.num_qubits != 3) {
    throw std::domain_error("uncompile_shor_15_11: expected a 3-qubit state");
  }
  // |n1 m1 m3> -> |n1 0 m1 0 m3 1>
  Statevector full = Statevector::basis_state(6, 0);
  full.amplitudes.setZero();
  for (int b = 0; b < 8; ++b) {
    const int n1 = (b >> 2) & 1, m1 = (b >> 1) & 1, m3 = b & 1;
    const int idx = (n1 << 5) | (m1 << 3) | (m3 << 1) | 1;
    full.amplitudes(idx) = compiled.amplitudes(b);
  }
  return full;
}

long extract_period(const std::vector<long>& measured_ys, int num_register) {
  const long dim = 1L << num_register;
  long r = 0;
  for (long y : measured_ys) {
    if (y < 0 || y >= dim) throw std::domain_error("extract_period: y out of range");
    if (y == 0) continue;
    const long ry = dim / euclid_gcd(y, dim);  // smallest r with r*y/2^n integer
    r = r == 0 ? ry : std::lcm(r, ry);
  }
  if (r == 0) throw InconclusivePeriod();
  return r;
}

std::pair<long, long> factor_from_period(const ShorInstance& instance, long r) {
  if (r < 1 || mod_exp(instance.base, r, instance.modulus) != 1) {
    throw std::domain_error("factor_from_period: r is not a period of a mod N");
  }
  if (r % 2 != 0) throw OddPeriod(instance.base, r);
  const long half = mod_exp(instance.base, r / 2, instance.modulus);
  const long n = instance.modulus;
  const long g_minus = euclid_gcd(half - 1 == 0 ? n : half - 1, n);
  const long g_plus = euclid_gcd((half + 1) % n == 0 ? n : half + 1, n);
  std::vector<long> nontrivial;
  for (long g : {g_minus, g_plus}) {
    if (g != 1 && g != n) nontrivial.push_back(g);
  }
  if (nontrivial.empty()) throw TrivialFactor(instance.base, r);
  const long p = nontrivial.front();
  const long q = n / p;
  return {std::min(p, q), std::max(p, q)};
}

ShorRun run_full_pipeline(long modulus, long base, ShorMode mode, int num_register) {
  ShorRun run;
  run.mode = mode;
  if (mode == ShorMode::Compiled) {
    if (modulus != 15 || base != 11) {
      throw std::domain_error("compiled mode is only available for (N, a) = (15, 11)");
    }
    run.instance = ShorInstance::create(15, 11, 2);
    const Statevector sv = compiled_shor_15_11();
    // Register = (n1, n2) with n2 fixed to 0: y = 2 * n1.
    const std::vector<double> q0 = register_marginal(sv, 1);
    run.marginal = {q0[0], 0.0, q0[1], 0.0};
  } else {
    run.instance = ShorInstance::create(modulus, base, num_register);
    const Statevector sv = reference_period_finding(run.instance);
    run.marginal = register_marginal(sv, run.instance.num_register);
  }
  for (long y = 0; y < static_cast<long>(run.marginal.size()); ++y) {
    if (run.marginal[y] > kSupportTolerance) run.result.measured_ys.push_back(y);
  }
  run.result.period = extract_period(run.result.measured_ys, run.instance.num_register);
  run.result.factors = factor_from_period(run.instance, run.result.period);
  return run;
}

std::vector<long> sample_register(const std::vector<double>& marginal, int num_samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<long> dist(marginal.begin(), marginal.end());
  std::vector<long> ys(num_samples);
  for (long& y : ys) y = dist(rng);
  return ys;
}

}  // namespace wavenet
