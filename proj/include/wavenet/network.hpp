#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace wavenet {

/// Finite transmission-line piece between two nodes. Impedance is
/// dimensionless (normalized to the reference input impedance Z1 = 1),
/// length is in units of the bridge length l = 1.
struct Segment {
  std::string id;
  std::string from;
  std::string to;
  double impedance = 1.0;
  double length = 1.0;
};

enum class PortRole { Input, Output };

/// Semi-infinite lead attached to a node.
struct Port {
  std::string id;
  std::string node;
  double impedance = 1.0;
  PortRole role = PortRole::Input;
  std::string label;  // optional qubit-basis label, e.g. "|0>"
};

/// Immutable description of a scattering network: nodes joined by finite
/// segments, with semi-infinite ports carrying the incident/outgoing waves.
struct NetworkGraph {
  std::vector<std::string> nodes;
  std::vector<Segment> segments;
  std::vector<Port> ports;

  /// Throws MalformedNetwork on dangling references, non-positive
  /// impedances/lengths, duplicate ids, or isolated nodes.
  void validate() const;

  int port_index(const std::string& id) const;  // -1 if absent
  const Port& port(const std::string& id) const;
};

NetworkGraph network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const NetworkGraph& net);
NetworkGraph load_network(const std::string& path);

/// Single matched segment between two ports.
NetworkGraph build_straight_line(double impedance = 1.0, double length = 1.0);

/// Three ports meeting at one node (Appendix-A style junction).
NetworkGraph build_y_junction(double z1, double z2, double z3);

}  // namespace wavenet
