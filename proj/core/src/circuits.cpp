#include "pathboltz/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "pathboltz/errors.hpp"

namespace pathboltz {

Gate Gate::ry(double theta, Eigen::Index target) { return {GateKind::Ry, theta, {target}}; }

Gate Gate::ccry(double theta, Eigen::Index control_a, Eigen::Index control_b,
                Eigen::Index target) {
  return {GateKind::CCRy, theta, {control_a, control_b, target}};
}

Gate Gate::measure(Eigen::Index target) { return {GateKind::Measure, 0.0, {target}}; }

void CircuitDescription::validate() const {
  if (num_qubits < 0) throw ValidationError("circuit: negative register size");
  if (static_cast<Eigen::Index>(labels.size()) != num_qubits) {
    throw ValidationError("circuit: expected one label per qubit");
  }
  std::set<std::string> seen_labels(labels.begin(), labels.end());
  if (static_cast<Eigen::Index>(seen_labels.size()) != num_qubits) {
    throw ValidationError("circuit: qubit labels must be unique");
  }

  std::vector<bool> measured(static_cast<std::size_t>(num_qubits), false);
  for (const auto& gate : gates) {
    const std::size_t expected = gate.kind == GateKind::CCRy ? 3 : 1;
    if (gate.qubits.size() != expected) {
      throw ValidationError("circuit: gate has wrong qubit count");
    }
    std::set<Eigen::Index> distinct;
    for (Eigen::Index q : gate.qubits) {
      if (q < 0 || q >= num_qubits) throw ValidationError("circuit: qubit index out of range");
      if (!distinct.insert(q).second) {
        throw ValidationError("circuit: repeated qubit within a gate");
      }
      if (measured[static_cast<std::size_t>(q)]) {
        throw ValidationError("circuit: gate touches an already measured qubit");
      }
    }
    if (!std::isfinite(gate.theta)) throw ValidationError("circuit: non-finite angle");
    if (gate.kind == GateKind::Measure) {
      measured[static_cast<std::size_t>(gate.qubits[0])] = true;
    }
  }
}

CircuitDescription emit_circuit(const LayeredNetwork& net, double t) {
  if (!net.two_local()) throw KLocalUnsupportedError();
  if (!net.real_weights()) {
    throw ValidationError("emit_circuit: rotation angles must be real; network has complex weights");
  }
  if (!std::isfinite(t)) throw ValidationError("emit_circuit: time must be finite");

  Eigen::Index node_qubits = net.total_dim();
  Eigen::Index ancillas = 0;
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    const auto& w = net.edge_weight(a);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        if (w(i, j) != Complex(0.0, 0.0)) ++ancillas;
      }
    }
  }
  if (node_qubits + ancillas > kMaxEmitQubits) {
    throw ValidationError("emit_circuit: " + std::to_string(node_qubits + ancillas) +
                          " qubits exceed the register budget of " +
                          std::to_string(kMaxEmitQubits));
  }

  CircuitDescription circuit;
  circuit.num_qubits = node_qubits + ancillas;

  std::vector<Eigen::Index> offsets(net.layer_count());
  Eigen::Index offset = 0;
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    offsets[a] = offset;
    offset += net.layer(a).dim;
    for (Eigen::Index i = 0; i < net.layer(a).dim; ++i) {
      circuit.labels.push_back(net.layer(a).name + "[" + std::to_string(i) + "]");
    }
  }

  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    for (Eigen::Index i = 0; i < net.layer(a).dim; ++i) {
      circuit.gates.push_back(Gate::ry(net.bias(a)[i] * t, offsets[a] + i));
    }
  }
  Eigen::Index ancilla = node_qubits;
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    const auto& w = net.edge_weight(a);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        if (w(i, j) == Complex(0.0, 0.0)) continue;
        circuit.labels.push_back("a" + std::to_string(ancilla - node_qubits));
        circuit.gates.push_back(
            Gate::ccry(w(i, j).real() * t, offsets[a] + i, offsets[a + 1] + j, ancilla));
        ++ancilla;
      }
    }
  }
  for (Eigen::Index q = 0; q < circuit.num_qubits; ++q) {
    circuit.gates.push_back(Gate::measure(q));
  }
  circuit.validate();
  return circuit;
}

namespace {

// Qubit q addresses bit (n - 1 - q) of the basis index.
std::uint64_t qubit_mask(Eigen::Index num_qubits, Eigen::Index q) {
  return std::uint64_t{1} << (num_qubits - 1 - q);
}

void apply_ry(ComplexVector& state, Eigen::Index num_qubits, double theta, Eigen::Index target,
              std::uint64_t control_mask) {
  const std::uint64_t t_mask = qubit_mask(num_qubits, target);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::uint64_t size = static_cast<std::uint64_t>(state.size());
  for (std::uint64_t i = 0; i < size; ++i) {
    if ((i & t_mask) != 0) continue;
    if ((i & control_mask) != control_mask) continue;
    const std::uint64_t j = i | t_mask;
    const Complex a0 = state[static_cast<Eigen::Index>(i)];
    const Complex a1 = state[static_cast<Eigen::Index>(j)];
    state[static_cast<Eigen::Index>(i)] = c * a0 - s * a1;
    state[static_cast<Eigen::Index>(j)] = s * a0 + c * a1;
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ComplexVector simulate_statevector(const CircuitDescription& circuit) {
  circuit.validate();
  if (circuit.num_qubits > kMaxSimQubits) {
    throw ValidationError("simulate_statevector: register of " +
                          std::to_string(circuit.num_qubits) + " qubits exceeds the cap of " +
                          std::to_string(kMaxSimQubits));
  }
  if (circuit.num_qubits == 0) return ComplexVector::Ones(1);

  ComplexVector state = ComplexVector::Zero(Eigen::Index{1} << circuit.num_qubits);
  state[0] = Complex(1.0, 0.0);
  for (const auto& gate : circuit.gates) {
    switch (gate.kind) {
      case GateKind::Ry:
        apply_ry(state, circuit.num_qubits, gate.theta, gate.qubits[0], 0);
        break;
      case GateKind::CCRy:
        apply_ry(state, circuit.num_qubits, gate.theta, gate.qubits[2],
                 qubit_mask(circuit.num_qubits, gate.qubits[0]) |
                     qubit_mask(circuit.num_qubits, gate.qubits[1]));
        break;
      case GateKind::Measure:
        break;  // terminal readout; sampling happens in sample_circuit
    }
  }
  return state;
}

std::map<std::uint64_t, std::uint64_t> sample_circuit(const CircuitDescription& circuit,
                                                      std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw ValidationError("sample_circuit: shots must be >= 1");
  const ComplexVector state = simulate_statevector(circuit);

  std::vector<double> cumulative(static_cast<std::size_t>(state.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    total += std::norm(state[i]);
    cumulative[static_cast<std::size_t>(i)] = total;
  }

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::uint64_t outcome =
        static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                            state.size() - 1));
    ++counts[outcome];
  }
  return counts;
}

std::string basis_label(std::uint64_t index, Eigen::Index num_qubits) {
  std::string bits(static_cast<std::size_t>(num_qubits), '0');
  for (Eigen::Index q = 0; q < num_qubits; ++q) {
    if (index & qubit_mask(num_qubits, q)) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

namespace {

std::string format_angle(double theta) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", theta);
  return buffer;
}

}  // namespace

std::string circuit_to_text(const CircuitDescription& circuit) {
  circuit.validate();
  std::ostringstream out;
  out << "// pathboltz circuit, " << circuit.num_qubits << " qubits\n";
  for (Eigen::Index q = 0; q < circuit.num_qubits; ++q) {
    out << "qubit q[" << q << "]; // " << circuit.labels[static_cast<std::size_t>(q)] << "\n";
  }
  for (const auto& gate : circuit.gates) {
    switch (gate.kind) {
      case GateKind::Ry:
        out << "ry(" << format_angle(gate.theta) << ") q[" << gate.qubits[0] << "];\n";
        break;
      case GateKind::CCRy:
        out << "ccry(" << format_angle(gate.theta) << ") q[" << gate.qubits[0] << "],q["
            << gate.qubits[1] << "],q[" << gate.qubits[2] << "];\n";
        break;
      case GateKind::Measure:
        out << "measure q[" << gate.qubits[0] << "];\n";
        break;
    }
  }
  return out.str();
}

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

CircuitDescription circuit_from_text(const std::string& text) {
  CircuitDescription circuit;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line.rfind("//", 0) == 0) continue;

    if (line.rfind("qubit", 0) == 0) {
      Eigen::Index q = -1;
      if (std::sscanf(line.c_str(), "qubit q[%td];", &q) != 1) {
        throw ValidationError("circuit text: bad qubit declaration: " + line);
      }
      if (q != circuit.num_qubits) {
        throw ValidationError("circuit text: qubit declarations must be consecutive");
      }
      const auto comment = line.find("// ");
      if (comment == std::string::npos) {
        throw ValidationError("circuit text: qubit declaration is missing its label comment");
      }
      circuit.labels.push_back(line.substr(comment + 3));
      ++circuit.num_qubits;
      continue;
    }
    if (line.rfind("ry", 0) == 0) {
      double theta = 0.0;
      Eigen::Index q = -1;
      if (std::sscanf(line.c_str(), "ry(%lg) q[%td];", &theta, &q) != 2) {
        throw ValidationError("circuit text: bad ry line: " + line);
      }
      circuit.gates.push_back(Gate::ry(theta, q));
      continue;
    }
    if (line.rfind("ccry", 0) == 0) {
      double theta = 0.0;
      Eigen::Index a = -1, b = -1, t = -1;
      if (std::sscanf(line.c_str(), "ccry(%lg) q[%td],q[%td],q[%td];", &theta, &a, &b, &t) != 4) {
        throw ValidationError("circuit text: bad ccry line: " + line);
      }
      circuit.gates.push_back(Gate::ccry(theta, a, b, t));
      continue;
    }
    if (line.rfind("measure", 0) == 0) {
      Eigen::Index q = -1;
      if (std::sscanf(line.c_str(), "measure q[%td];", &q) != 1) {
        throw ValidationError("circuit text: bad measure line: " + line);
      }
      circuit.gates.push_back(Gate::measure(q));
      continue;
    }
    throw ValidationError("circuit text: unrecognized line: " + line);
  }
  circuit.validate();
  return circuit;
}

}  // namespace pathboltz
