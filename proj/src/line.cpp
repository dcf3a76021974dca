#include "wavenet/line.hpp"

#include <numbers>
#include <stdexcept>

namespace wavenet {

LineParameters line_parameters_from_geometry(double wire_radius, double height,
                                             double permittivity, double permeability) {
  if (wire_radius <= 0 || height <= 0 || permittivity <= 0 || permeability <= 0) {
    throw std::domain_error("line_parameters_from_geometry: inputs must be positive");
  }
  const double ratio = 2.0 * height / wire_radius;
  if (ratio <= 1.0) {
    throw std::domain_error("line_parameters_from_geometry: requires 2h > r");
  }
  const double log_term = std::log(ratio);
  LineParameters p;
  p.capacitance_per_length = 2.0 * std::numbers::pi * permittivity / log_term;
  p.inductance_per_length = permeability / (2.0 * std::numbers::pi) * log_term;
  return p;
}

}  // namespace wavenet
