#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wavenet/gates.hpp"
#include "wavenet/statevector.hpp"

namespace wavenet {

/// Problem instance for period finding: odd composite modulus N, base a
/// coprime to N, n register qubits and m ancilla qubits with
/// 2^{m-1} < N <= 2^m.
struct ShorInstance {
  long modulus = 15;
  long base = 11;
  int num_register = 4;
  int num_ancilla = 4;

  /// num_register < 0 picks the default n = m.
  static ShorInstance create(long modulus, long base, int num_register = -1);
  void validate() const;
};

struct PeriodResult {
  long period = 0;
  std::vector<long> measured_ys;
  std::optional<std::pair<long, long>> factors;
};

long mod_exp(long a, long x, long n);
long euclid_gcd(long a, long b);

/// Entry (y, x) = 2^{-n/2} e^{-2 pi i x y / 2^n}.
GateUnitary inverse_qft(int num_qubits);

/// State after Hadamards + modular exponentiation, before the inverse QFT:
/// 2^{-n/2} sum_x |x>|a^x mod N>.
Statevector modular_exponentiation_state(const ShorInstance& instance);

/// Full period-finding circuit on n+m qubits (register first).
Statevector reference_period_finding(const ShorInstance& instance);

/// Probability of each register value y, ancilla traced out.
std::vector<double> register_marginal(const Statevector& state, int num_register);

/// Compiled 3-qubit circuit for (N, a) = (15, 11), qubits (n1, m1, m3),
/// built from the gate-library primitives; starts from |000>.
Statevector compiled_shor_15_11();

/// Re-inserts the fixed qubits n2 = 0, m2 = 0, m4 = 1 to recover the
/// 6-qubit state of the uncompiled circuit.
Statevector uncompile_shor_15_11(const Statevector& compiled);

/// Smallest r with r*y/2^n integer for every nonzero measured y
/// (lcm of 2^n/gcd(y, 2^n)). Throws InconclusivePeriod if all ys are zero.
long extract_period(const std::vector<long>& measured_ys, int num_register);

/// gcd(a^{r/2} -+ 1, N) filtered to nontrivial factors.
/// Throws OddPeriod for odd r, TrivialFactor when both branches fail.
std::pair<long, long> factor_from_period(const ShorInstance& instance, long r);

enum class ShorMode { Reference, Compiled };

struct ShorRun {
  ShorInstance instance;
  ShorMode mode = ShorMode::Reference;
  std::vector<double> marginal;  // indexed by y
  PeriodResult result;
  int retries = 0;
};

/// Quantum state -> register marginal -> support ys -> period -> factors.
/// Reference mode enumerates the marginal support deterministically;
/// compiled mode requires (N, a) = (15, 11).
ShorRun run_full_pipeline(long modulus, long base, ShorMode mode, int num_register = -1);

/// Seeded sampling from a register marginal, for demonstration output.
std::vector<long> sample_register(const std::vector<double>& marginal, int num_samples,
                                  std::uint64_t seed);

}  // namespace wavenet
