#include "wavenet/network.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "wavenet/errors.hpp"

namespace wavenet {

void NetworkGraph::validate() const {
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  if (node_set.size() != nodes.size()) throw MalformedNetwork("duplicate node id");
  std::set<std::string> seg_ids, port_ids;
  std::set<std::string> touched;
  for (const Segment& s : segments) {
    if (!seg_ids.insert(s.id).second) throw MalformedNetwork("duplicate segment id " + s.id);
    if (!node_set.count(s.from)) throw MalformedNetwork("segment " + s.id + ": unknown node " + s.from);
    if (!node_set.count(s.to)) throw MalformedNetwork("segment " + s.id + ": unknown node " + s.to);
    if (s.impedance <= 0) throw MalformedNetwork("segment " + s.id + ": impedance must be positive");
    if (s.length <= 0) throw MalformedNetwork("segment " + s.id + ": length must be positive");
    touched.insert(s.from);
    touched.insert(s.to);
  }
  for (const Port& p : ports) {
    if (!port_ids.insert(p.id).second) throw MalformedNetwork("duplicate port id " + p.id);
    if (!node_set.count(p.node)) throw MalformedNetwork("port " + p.id + ": unknown node " + p.node);
    if (p.impedance <= 0) throw MalformedNetwork("port " + p.id + ": impedance must be positive");
    touched.insert(p.node);
  }
  for (const std::string& n : nodes) {
    if (!touched.count(n)) throw MalformedNetwork("node " + n + " has degree 0");
  }
}

int NetworkGraph::port_index(const std::string& id) const {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

const Port& NetworkGraph::port(const std::string& id) const {
  int idx = port_index(id);
  if (idx < 0) throw MalformedNetwork("no such port: " + id);
  return ports[idx];
}

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw MalformedNetwork("unknown key '" + it.key() + "' in " + where);
    }
  }
}

PortRole role_from_string(const std::string& s) {
  if (s == "input") return PortRole::Input;
  if (s == "output") return PortRole::Output;
  throw MalformedNetwork("port role must be 'input' or 'output', got '" + s + "'");
}

}  // namespace

NetworkGraph network_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedNetwork("network file must be a JSON object");
  require_keys(j, {"nodes", "segments", "ports"}, "network");
  NetworkGraph net;
  try {
    net.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& js : j.at("segments")) {
      require_keys(js, {"id", "from", "to", "impedance", "length"}, "segment");
      Segment s;
      s.id = js.at("id").get<std::string>();
      s.from = js.at("from").get<std::string>();
      s.to = js.at("to").get<std::string>();
      s.impedance = js.at("impedance").get<double>();
      s.length = js.at("length").get<double>();
      net.segments.push_back(std::move(s));
    }
    for (const auto& jp : j.at("ports")) {
      require_keys(jp, {"id", "node", "impedance", "role", "label"}, "port");
      Port p;
      p.id = jp.at("id").get<std::string>();
      p.node = jp.at("node").get<std::string>();
      p.impedance = jp.at("impedance").get<double>();
      p.role = role_from_string(jp.at("role").get<std::string>());
      if (jp.contains("label")) p.label = jp.at("label").get<std::string>();
      net.ports.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedNetwork(std::string("bad network file: ") + e.what());
  }
  net.validate();
  return net;
}

nlohmann::json network_to_json(const NetworkGraph& net) {
  nlohmann::json j;
  j["nodes"] = net.nodes;
  j["segments"] = nlohmann::json::array();
  for (const Segment& s : net.segments) {
    j["segments"].push_back({{"id", s.id},
                             {"from", s.from},
                             {"to", s.to},
                             {"impedance", s.impedance},
                             {"length", s.length}});
  }
  j["ports"] = nlohmann::json::array();
  for (const Port& p : net.ports) {
    j["ports"].push_back({{"id", p.id},
                          {"node", p.node},
                          {"impedance", p.impedance},
                          {"role", p.role == PortRole::Input ? "input" : "output"},
                          {"label", p.label}});
  }
  return j;
}

NetworkGraph load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedNetwork("cannot open network file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedNetwork(std::string("cannot parse ") + path + ": " + e.what());
  }
  return network_from_json(j);
}

NetworkGraph build_straight_line(double impedance, double length) {
  NetworkGraph net;
  net.nodes = {"A", "B"};
  net.segments = {{"line", "A", "B", impedance, length}};
  net.ports = {{"in", "A", impedance, PortRole::Input, ""},
               {"out", "B", impedance, PortRole::Output, ""}};
  net.validate();
  return net;
}

NetworkGraph build_y_junction(double z1, double z2, double z3) {
  NetworkGraph net;
  net.nodes = {"J"};
  net.ports = {{"leg1", "J", z1, PortRole::Input, ""},
               {"leg2", "J", z2, PortRole::Output, ""},
               {"leg3", "J", z3, PortRole::Output, ""}};
  net.validate();
  return net;
}

}  // namespace wavenet
