#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pathboltz/layered_network.hpp"
#include "pathboltz/operators.hpp"

namespace pathboltz {

enum class GateKind { Ry, CCRy, Measure };

/// Ry(theta) on one target, doubly controlled Ry, or a terminal measurement.
struct Gate {
  GateKind kind = GateKind::Measure;
  double theta = 0.0;
  std::vector<Eigen::Index> qubits;  // Ry: {target}; CCRy: {c0, c1, target}; Measure: {target}

  static Gate ry(double theta, Eigen::Index target);
  static Gate ccry(double theta, Eigen::Index control_a, Eigen::Index control_b,
                   Eigen::Index target);
  static Gate measure(Eigen::Index target);

  bool operator==(const Gate&) const = default;
};

inline constexpr Eigen::Index kMaxEmitQubits = 20;
inline constexpr Eigen::Index kMaxSimQubits = 14;

/// Qubit registry plus ordered gate list. Qubit 0 is the most significant
/// bit of a basis index. Measurements must come after every other gate that
/// touches their target.
struct CircuitDescription {
  Eigen::Index num_qubits = 0;
  std::vector<std::string> labels;
  std::vector<Gate> gates;

  void validate() const;

  bool operator==(const CircuitDescription&) const = default;
};

/// Rotation-template circuit of a two-local real-weight network at time t
/// (hbar = 1): one labeled qubit per basis state of every layer with an
/// Ry(bias * t), one ancilla per nonzero adjacent weight entry with a
/// CCRy(weight * t) controlled by the two node qubits it couples, then a
/// measurement on every qubit.
CircuitDescription emit_circuit(const LayeredNetwork& net, double t);

/// Applies the gates in order to |0...0> and returns the final state
/// (measurements are recorded, not collapsed). Register capped at 14 qubits.
ComplexVector simulate_statevector(const CircuitDescription& circuit);

/// Multinomial sample of basis-state outcomes from |amplitude|^2;
/// deterministic given seed. Keys are basis indices; counts sum to shots.
std::map<std::uint64_t, std::uint64_t> sample_circuit(const CircuitDescription& circuit,
                                                      std::uint64_t shots, std::uint64_t seed);

std::string basis_label(std::uint64_t index, Eigen::Index num_qubits);

/// Line-oriented text form: qubit declarations with labels as comments, then
/// one gate per line. circuit_from_text(circuit_to_text(c)) == c.
std::string circuit_to_text(const CircuitDescription& circuit);
CircuitDescription circuit_from_text(const std::string& text);

}  // namespace pathboltz
