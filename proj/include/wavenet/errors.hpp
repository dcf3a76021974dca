#pragma once

#include <stdexcept>
#include <string>

namespace wavenet {

struct MalformedNetwork : std::runtime_error {
  explicit MalformedNetwork(const std::string& what) : std::runtime_error(what) {}
};

/// Kirchhoff system is singular (resonant) at the given wavenumber.
struct SolverDegenerate : std::runtime_error {
  SolverDegenerate(double k, double condition)
      : std::runtime_error("scattering system is degenerate at k = " + std::to_string(k) +
                           " (condition estimate " + std::to_string(condition) + ")"),
        wavenumber(k),
        condition(condition) {}
  double wavenumber;
  double condition;
};

struct ReflectionTooLarge : std::runtime_error {
  explicit ReflectionTooLarge(double norm)
      : std::runtime_error("no-reflection condition violated: input->input block norm = " +
                           std::to_string(norm)),
        norm(norm) {}
  double norm;
};

struct NotUnitary : std::runtime_error {
  explicit NotUnitary(double residual)
      : std::runtime_error("matrix fails the unitarity check, residual = " +
                           std::to_string(residual)),
        residual(residual) {}
  double residual;
};

struct MeasurementTooShort : std::runtime_error {
  explicit MeasurementTooShort(const std::string& what) : std::runtime_error(what) {}
};

/// All measured register values were zero; the period cannot be recovered.
struct InconclusivePeriod : std::runtime_error {
  InconclusivePeriod() : std::runtime_error("all measured register values are zero; sample again") {}
};

/// Odd period: the classical post-processing requires a new base a.
struct OddPeriod : std::runtime_error {
  OddPeriod(long base, long period)
      : std::runtime_error("period " + std::to_string(period) + " for base " +
                           std::to_string(base) + " is odd; rechoose a"),
        base(base),
        period(period) {}
  long base;
  long period;
};

/// Both gcd branches were trivial; the caller should retry with a new base.
struct TrivialFactor : std::runtime_error {
  TrivialFactor(long base, long period)
      : std::runtime_error("period " + std::to_string(period) + " for base " +
                           std::to_string(base) + " yields only trivial factors; rechoose a"),
        base(base),
        period(period) {}
  long base;
  long period;
};

}  // namespace wavenet
