#pragma once

#include <cmath>

namespace wavenet {

/// Per-length parameters of a uniform lossless transmission line.
/// The characteristic impedance Z = sqrt(L/C) and the propagation speed
/// 1/sqrt(LC) are derived quantities.
struct LineParameters {
  double capacitance_per_length = 1.0;  // F/m
  double inductance_per_length = 1.0;   // H/m

  double characteristic_impedance() const {
    return std::sqrt(inductance_per_length / capacitance_per_length);
  }
  double propagation_speed() const {
    return 1.0 / std::sqrt(inductance_per_length * capacitance_per_length);
  }
};

/// Line parameters of a wire of radius r at height h over a ground plane:
/// C = 2*pi*eps / ln(2h/r), L = mu/(2*pi) * ln(2h/r).
/// Throws std::domain_error for non-positive inputs or 2h <= r.
LineParameters line_parameters_from_geometry(double wire_radius, double height,
                                             double permittivity, double permeability);

}  // namespace wavenet
