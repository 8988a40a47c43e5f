#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pathboltz/circuits.hpp"
#include "pathboltz/ising.hpp"
#include "pathboltz/layered_network.hpp"
#include "pathboltz/operators.hpp"
#include "pathboltz/path_integral.hpp"
#include "pathboltz/probability_table.hpp"
#include "pathboltz/rbm.hpp"

namespace pathboltz::io {

/// Shortest decimal that round-trips the double (up to 17 significant digits).
std::string format_double(double x);

/// Matrix CSV: first line "rows,cols", then one "re,im" line per entry in
/// row-major order. Values round-trip exactly.
std::string matrix_to_csv(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv(const std::string& text);
void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_csv(const std::filesystem::path& path);

/// Network JSON: {"layers":[{name,dim,kind}], "biases":{layer:[..]},
/// "weights":{"a->b":[[re,im],..]} (row-major pairs),
/// "higher":[{"layers":[..],"tensor":[..]}]}.
std::string network_to_json(const LayeredNetwork& net);
LayeredNetwork network_from_json(const std::string& text);
void write_network_json(const std::filesystem::path& path, const LayeredNetwork& net);
LayeredNetwork read_network_json(const std::filesystem::path& path);

/// RBM JSON: {"n","p","a":[..],"b":[..],"W":[[..]]}.
std::string rbm_to_json(const rbm::RbmParams& params);
rbm::RbmParams rbm_from_json(const std::string& text);
rbm::RbmParams read_rbm_json(const std::filesystem::path& path);

/// Pauli Hamiltonian JSON: {"qubits":N,"terms":[{"sites":[..],"axes":["z",..],"coeff":r}]}.
std::string pauli_to_json(const ising::PauliHamiltonian& h);
ising::PauliHamiltonian pauli_from_json(const std::string& text);
ising::PauliHamiltonian read_pauli_json(const std::filesystem::path& path);

/// Chain dump JSON: {"P","d","scheme","kernels":[[[re,im],..],..]}.
std::string chain_to_json(const TransferChain& chain, SliceScheme scheme);

/// Circuit JSON twin: {"qubits","labels":[..],"gates":[{"kind","theta","qubits":[..]}]}.
std::string circuit_to_json(const CircuitDescription& circuit);
CircuitDescription circuit_from_json(const std::string& text);

/// Table CSV: one column per variable (config index), then "p".
std::string table_to_csv(const ProbabilityTable& table);

/// MapPairs CSV: one row per sample, input values then target values; widths
/// are the network's terminal layer dims.
std::vector<std::pair<RealVector, RealVector>> read_pairs_csv(const std::filesystem::path& path,
                                                              Eigen::Index in_width,
                                                              Eigen::Index out_width);
std::string pairs_to_csv(const std::vector<std::pair<RealVector, RealVector>>& pairs);

/// FNV-1a 64-bit content digest, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

/// Run manifest emitted alongside every CLI output: subcommand, parameters,
/// seed, tool version, and input content digests. Re-running a manifest's
/// command reproduces its outputs byte for byte.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> inputs;      // flag -> path
  std::map<std::string, std::string> digests;     // path -> fnv1a64
  std::map<std::string, std::string> parameters;  // flag -> rendered value
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;

  std::string to_json() const;
};

}  // namespace pathboltz::io
