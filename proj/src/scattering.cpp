#include "wavenet/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "wavenet/errors.hpp"

namespace wavenet {

namespace {

constexpr double kConditionLimit = 1e12;

struct Attachment {
  enum Kind { SegmentFrom, SegmentTo, PortLead } kind;
  int index;  // segment or port index
};

// Attachments per node, in declaration order: segment endpoints first, then ports.
std::vector<std::vector<Attachment>> attachments(const NetworkGraph& net) {
  std::vector<std::vector<Attachment>> att(net.nodes.size());
  auto node_index = [&](const std::string& n) {
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
      if (net.nodes[i] == n) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t s = 0; s < net.segments.size(); ++s) {
    att[node_index(net.segments[s].from)].push_back({Attachment::SegmentFrom, static_cast<int>(s)});
    att[node_index(net.segments[s].to)].push_back({Attachment::SegmentTo, static_cast<int>(s)});
  }
  for (std::size_t p = 0; p < net.ports.size(); ++p) {
    att[node_index(net.ports[p].node)].push_back({Attachment::PortLead, static_cast<int>(p)});
  }
  return att;
}

}  // namespace

LinearSystem assemble(const NetworkGraph& net, double k, const std::string& injected_port) {
  net.validate();
  const int inject = net.port_index(injected_port);
  if (inject < 0) throw MalformedNetwork("no such port: " + injected_port);

  const int n_seg = static_cast<int>(net.segments.size());
  const int n_port = static_cast<int>(net.ports.size());
  const int n = 2 * n_seg + n_port;

  LinearSystem sys;
  sys.matrix = Eigen::MatrixXcd::Zero(n, n);
  sys.rhs = Eigen::VectorXcd::Zero(n);
  for (const Segment& s : net.segments) {
    sys.unknown_labels.push_back("seg:" + s.id + ":f");
    sys.unknown_labels.push_back("seg:" + s.id + ":b");
  }
  for (const Port& p : net.ports) sys.unknown_labels.push_back("port:" + p.id + ":out");

  const Complex i_unit(0.0, 1.0);
  auto prop = [&](int s) { return std::exp(i_unit * k * net.segments[s].length); };

  // Adds the voltage of an attachment (times sign) into matrix row; incident
  // contribution goes to the rhs.
  auto add_voltage = [&](int row, const Attachment& a, double sign) {
    switch (a.kind) {
      case Attachment::SegmentFrom:
        sys.matrix(row, 2 * a.index) += sign;
        sys.matrix(row, 2 * a.index + 1) += sign;
        break;
      case Attachment::SegmentTo: {
        const Complex p = prop(a.index);
        sys.matrix(row, 2 * a.index) += sign * p;
        sys.matrix(row, 2 * a.index + 1) += sign / p;
        break;
      }
      case Attachment::PortLead:
        sys.matrix(row, 2 * n_seg + a.index) += sign;
        if (a.index == inject) sys.rhs(row) -= sign;  // incident amplitude 1
        break;
    }
  };

  // Adds the current flowing into the node.
  auto add_current = [&](int row, const Attachment& a) {
    switch (a.kind) {
      case Attachment::SegmentFrom: {
        const double z = net.segments[a.index].impedance;
        sys.matrix(row, 2 * a.index) += -1.0 / z;
        sys.matrix(row, 2 * a.index + 1) += 1.0 / z;
        break;
      }
      case Attachment::SegmentTo: {
        const double z = net.segments[a.index].impedance;
        const Complex p = prop(a.index);
        sys.matrix(row, 2 * a.index) += p / z;
        sys.matrix(row, 2 * a.index + 1) += -1.0 / (p * z);
        break;
      }
      case Attachment::PortLead: {
        const double z = net.ports[a.index].impedance;
        sys.matrix(row, 2 * n_seg + a.index) += -1.0 / z;
        if (a.index == inject) sys.rhs(row) -= 1.0 / z;
        break;
      }
    }
  };

  int row = 0;
  for (const auto& node_att : attachments(net)) {
    for (std::size_t m = 1; m < node_att.size(); ++m) {
      add_voltage(row, node_att[m], +1.0);
      add_voltage(row, node_att[0], -1.0);
      ++row;
    }
    for (const Attachment& a : node_att) add_current(row, a);
    ++row;
  }
  return sys;
}

ScatteringSolution solve(const NetworkGraph& net, double k, const std::string& injected_port) {
  LinearSystem sys = assemble(net, k, injected_port);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.matrix);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
  if (!(cond <= kConditionLimit)) throw SolverDegenerate(k, cond);

  Eigen::VectorXcd x = Eigen::FullPivLU<Eigen::MatrixXcd>(sys.matrix).solve(sys.rhs);

  const int n_seg = static_cast<int>(net.segments.size());
  const double z_in = net.port(injected_port).impedance;

  ScatteringSolution sol;
  sol.wavenumber = k;
  sol.injected_port = injected_port;
  for (int s = 0; s < n_seg; ++s) {
    sol.segment_amplitudes[net.segments[s].id] = {x(2 * s), x(2 * s + 1)};
  }
  for (std::size_t p = 0; p < net.ports.size(); ++p) {
    const Complex out = x(2 * n_seg + static_cast<int>(p));
    if (net.ports[p].id == injected_port) {
      sol.reflection = out;  // same impedance: current ratio = voltage ratio
    } else {
      // (out/Z_p) / (1/Z_in)
      sol.transmissions[net.ports[p].id] = out * z_in / net.ports[p].impedance;
    }
  }
  return sol;
}

double power_conservation_residual(const NetworkGraph& net, const ScatteringSolution& sol) {
  const double z_in = net.port(sol.injected_port).impedance;
  double total = std::norm(sol.reflection);
  for (const auto& [id, t] : sol.transmissions) {
    total += std::norm(t) * net.port(id).impedance / z_in;
  }
  return std::abs(total - 1.0);
}

SMatrix full_smatrix(const NetworkGraph& net, double k) {
  SMatrix s;
  const int n = static_cast<int>(net.ports.size());
  s.entries = Eigen::MatrixXcd::Zero(n, n);
  for (const Port& p : net.ports) s.ports.push_back(p.id);
  for (int col = 0; col < n; ++col) {
    const ScatteringSolution sol = solve(net, k, net.ports[col].id);
    const double z_in = net.ports[col].impedance;
    for (int row = 0; row < n; ++row) {
      if (row == col) {
        s.entries(row, col) = sol.reflection;
      } else {
        const double z_out = net.ports[row].impedance;
        s.entries(row, col) =
            sol.transmissions.at(net.ports[row].id) * std::sqrt(z_out / z_in);
      }
    }
  }
  return s;
}

SweepTable sweep(const NetworkGraph& net, double k_min, double k_max, int steps,
                 const std::string& injected_port, int threads) {
  if (steps < 2) throw std::domain_error("sweep: steps must be >= 2");
  if (!(k_min < k_max)) throw std::domain_error("sweep: requires k_min < k_max");
  net.validate();
  if (net.port_index(injected_port) < 0) throw MalformedNetwork("no such port: " + injected_port);

  SweepTable table;
  table.injected_port = injected_port;
  for (const Port& p : net.ports) {
    if (p.id != injected_port) table.t_ports.push_back(p.id);
  }
  table.rows.resize(steps);

  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double k = k_min + (k_max - k_min) * i / (steps - 1);
      SweepRow& row = table.rows[i];
      row.k = k;
      try {
        const ScatteringSolution sol = solve(net, k, injected_port);
        row.reflection = sol.reflection;
        for (const std::string& id : table.t_ports) {
          row.transmissions.push_back(sol.transmissions.at(id));
        }
      } catch (const SolverDegenerate&) {
        row.degenerate = true;  // resonance: recorded as a gap
      }
    }
  };

  if (threads <= 1) {
    run_range(0, steps);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (steps + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(steps, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }
  return table;
}

namespace {

// Argument in (-pi, pi].
double arg_halfopen(Complex c) {
  double a = std::arg(c);
  if (a == -std::numbers::pi) a = std::numbers::pi;
  return a;
}

void print_pair(std::ostream& os, Complex c, bool degenerate) {
  char buf[64];
  if (degenerate) {
    os << ",nan,nan";
    return;
  }
  std::snprintf(buf, sizeof buf, ",%.17g,%.17g", std::abs(c), arg_halfopen(c));
  os << buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "k";
  for (std::size_t i = 1; i <= table.t_ports.size(); ++i) {
    os << ",abs_T" << i << ",arg_T" << i;
  }
  os << ",abs_R,arg_R\n";
  char buf[32];
  for (const SweepRow& row : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.k);
    os << buf;
    for (std::size_t i = 0; i < table.t_ports.size(); ++i) {
      print_pair(os, row.degenerate ? Complex{} : row.transmissions[i], row.degenerate);
    }
    print_pair(os, row.reflection, row.degenerate);
    os << "\n";
  }
}

}  // namespace wavenet
