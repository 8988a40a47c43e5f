#include "pathboltz/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pathboltz/errors.hpp"
#include "pathboltz/version.hpp"

namespace pathboltz::io {

using nlohmann::json;

std::string format_double(double x) {
  // shortest form that parses back to the same double
  for (int precision = 1; precision <= 17; ++precision) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, x);
    double parsed = 0.0;
    std::sscanf(buffer, "%lg", &parsed);
    if (parsed == x) return buffer;
  }
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
  std::ostringstream out;
  out << m.rows() << "," << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << format_double(m(r, c).real()) << "," << format_double(m(r, c).imag()) << "\n";
    }
  }
  return out.str();
}

ComplexMatrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("matrix csv: empty input");

  Eigen::Index rows = 0, cols = 0;
  if (std::sscanf(line.c_str(), "%td,%td", &rows, &cols) != 2 || rows < 1 || cols < 1) {
    throw ValidationError("matrix csv: bad header '" + line + "' (expected rows,cols)");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!std::getline(in, line)) {
        throw ValidationError("matrix csv: expected " + std::to_string(rows * cols) +
                              " entries, file ended early");
      }
      double re = 0.0, im = 0.0;
      if (std::sscanf(line.c_str(), "%lg,%lg", &re, &im) != 2) {
        throw ValidationError("matrix csv: bad entry line '" + line + "'");
      }
      m(r, c) = Complex(re, im);
    }
  }
  if (!all_finite(m)) throw ValidationError("matrix csv: non-finite entries");
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << bytes;
}

void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_file(path, matrix_to_csv(m));
}

ComplexMatrix read_matrix_csv(const std::filesystem::path& path) {
  return matrix_from_csv(read_file(path));
}

namespace {

json complex_matrix_to_pairs(const ComplexMatrix& m) {
  json pairs = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      pairs.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return pairs;
}

ComplexMatrix pairs_to_complex_matrix(const json& pairs, Eigen::Index rows, Eigen::Index cols,
                                      const std::string& what) {
  if (!pairs.is_array() || static_cast<Eigen::Index>(pairs.size()) != rows * cols) {
    throw ValidationError(what + ": expected " + std::to_string(rows * cols) + " [re,im] pairs");
  }
  ComplexMatrix m(rows, cols);
  Eigen::Index k = 0;
  for (const auto& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ValidationError(what + ": entries must be [re,im] pairs");
    }
    m(k / cols, k % cols) = Complex(pair[0].get<double>(), pair[1].get<double>());
    ++k;
  }
  return m;
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(std::string(what) + ": malformed JSON");
  return j;
}

const json& field(const json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

std::string network_to_json(const LayeredNetwork& net) {
  json j;
  j["layers"] = json::array();
  for (const auto& layer : net.layers()) {
    j["layers"].push_back({{"name", layer.name},
                           {"dim", layer.dim},
                           {"kind", layer.kind == LayerKind::Visible ? "visible" : "hidden"}});
  }
  j["biases"] = json::object();
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    json bias = json::array();
    for (Eigen::Index i = 0; i < net.bias(a).size(); ++i) bias.push_back(net.bias(a)[i]);
    j["biases"][net.layer(a).name] = std::move(bias);
  }
  j["weights"] = json::object();
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    j["weights"][net.layer(a).name + "->" + net.layer(a + 1).name] =
        complex_matrix_to_pairs(net.edge_weight(a));
  }
  if (!net.higher_weights().empty()) {
    j["higher"] = json::array();
    for (const auto& hw : net.higher_weights()) {
      json names = json::array();
      for (std::size_t idx : hw.layer_indices) names.push_back(net.layer(idx).name);
      j["higher"].push_back({{"layers", std::move(names)}, {"tensor", hw.tensor}});
    }
  }
  return j.dump(2) + "\n";
}

LayeredNetwork network_from_json(const std::string& text) {
  const json j = parse(text, "network json");

  std::vector<LayerSpec> layers;
  for (const auto& layer : field(j, "layers", "network json")) {
    LayerSpec spec;
    spec.name = field(layer, "name", "network json layer").get<std::string>();
    spec.dim = field(layer, "dim", "network json layer").get<Eigen::Index>();
    const std::string kind = field(layer, "kind", "network json layer").get<std::string>();
    if (kind == "visible") {
      spec.kind = LayerKind::Visible;
    } else if (kind == "hidden") {
      spec.kind = LayerKind::Hidden;
    } else {
      throw ValidationError("network json: layer kind must be visible|hidden, got '" + kind +
                            "'");
    }
    layers.push_back(std::move(spec));
  }
  if (layers.empty()) throw ValidationError("network json: no layers");

  const json& biases_j = field(j, "biases", "network json");
  std::vector<RealVector> biases;
  for (const auto& layer : layers) {
    const auto it = biases_j.find(layer.name);
    if (it == biases_j.end()) {
      throw ValidationError("network json: missing biases for layer '" + layer.name + "'");
    }
    if (!it->is_array() || static_cast<Eigen::Index>(it->size()) != layer.dim) {
      throw ValidationError("network json: biases for '" + layer.name + "' must have dim " +
                            std::to_string(layer.dim) + " entries");
    }
    RealVector bias(layer.dim);
    for (Eigen::Index i = 0; i < layer.dim; ++i) {
      bias[i] = (*it)[static_cast<std::size_t>(i)].get<double>();
    }
    biases.push_back(std::move(bias));
  }

  const json& weights_j = field(j, "weights", "network json");
  std::vector<ComplexMatrix> weights;
  for (std::size_t a = 0; a + 1 < layers.size(); ++a) {
    const std::string key = layers[a].name + "->" + layers[a + 1].name;
    const auto it = weights_j.find(key);
    if (it == weights_j.end()) {
      throw ValidationError("network json: missing weight block '" + key + "'");
    }
    weights.push_back(
        pairs_to_complex_matrix(*it, layers[a].dim, layers[a + 1].dim, "network json '" + key + "'"));
  }

  std::vector<HigherWeight> higher;
  if (j.contains("higher")) {
    for (const auto& hw_j : j["higher"]) {
      HigherWeight hw;
      for (const auto& name : field(hw_j, "layers", "network json higher")) {
        const std::string layer_name = name.get<std::string>();
        bool found = false;
        for (std::size_t a = 0; a < layers.size(); ++a) {
          if (layers[a].name == layer_name) {
            hw.layer_indices.push_back(a);
            found = true;
            break;
          }
        }
        if (!found) {
          throw ValidationError("network json: higher tensor references unknown layer '" +
                                layer_name + "'");
        }
      }
      hw.tensor = field(hw_j, "tensor", "network json higher").get<std::vector<double>>();
      higher.push_back(std::move(hw));
    }
  }
  return LayeredNetwork(std::move(layers), std::move(biases), std::move(weights),
                        std::move(higher));
}

void write_network_json(const std::filesystem::path& path, const LayeredNetwork& net) {
  write_file(path, network_to_json(net));
}

LayeredNetwork read_network_json(const std::filesystem::path& path) {
  return network_from_json(read_file(path));
}

std::string rbm_to_json(const rbm::RbmParams& params) {
  json j;
  j["n"] = params.n;
  j["p"] = params.p;
  j["a"] = std::vector<double>(params.a.data(), params.a.data() + params.a.size());
  j["b"] = std::vector<double>(params.b.data(), params.b.data() + params.b.size());
  json w = json::array();
  for (Eigen::Index i = 0; i < params.w.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < params.w.cols(); ++k) row.push_back(params.w(i, k));
    w.push_back(std::move(row));
  }
  j["W"] = std::move(w);
  return j.dump(2) + "\n";
}

rbm::RbmParams rbm_from_json(const std::string& text) {
  const json j = parse(text, "rbm json");
  rbm::RbmParams params;
  params.n = field(j, "n", "rbm json").get<Eigen::Index>();
  params.p = field(j, "p", "rbm json").get<Eigen::Index>();
  if (params.n < 1 || params.p < 1) throw ValidationError("rbm json: n and p must be >= 1");

  const auto a = field(j, "a", "rbm json").get<std::vector<double>>();
  const auto b = field(j, "b", "rbm json").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(a.size()) != params.n ||
      static_cast<Eigen::Index>(b.size()) != params.p) {
    throw ValidationError("rbm json: a/b lengths must equal n/p");
  }
  params.a = Eigen::Map<const RealVector>(a.data(), params.n);
  params.b = Eigen::Map<const RealVector>(b.data(), params.p);

  const json& w = field(j, "W", "rbm json");
  if (!w.is_array() || static_cast<Eigen::Index>(w.size()) != params.n) {
    throw ValidationError("rbm json: W must have n rows");
  }
  params.w.resize(params.n, params.p);
  for (Eigen::Index i = 0; i < params.n; ++i) {
    const json& row = w[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != params.p) {
      throw ValidationError("rbm json: W rows must have p entries");
    }
    for (Eigen::Index k = 0; k < params.p; ++k) {
      params.w(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  params.validate();
  return params;
}

rbm::RbmParams read_rbm_json(const std::filesystem::path& path) {
  return rbm_from_json(read_file(path));
}

std::string pauli_to_json(const ising::PauliHamiltonian& h) {
  json j;
  j["qubits"] = h.qubits;
  j["terms"] = json::array();
  for (const auto& term : h.terms) {
    json axes = json::array();
    for (const auto axis : term.axes) axes.push_back(ising::to_string(axis));
    j["terms"].push_back(
        {{"sites", term.sites}, {"axes", std::move(axes)}, {"coeff", term.coefficient}});
  }
  return j.dump(2) + "\n";
}

ising::PauliHamiltonian pauli_from_json(const std::string& text) {
  const json j = parse(text, "pauli json");
  ising::PauliHamiltonian h;
  h.qubits = field(j, "qubits", "pauli json").get<int>();
  for (const auto& term_j : field(j, "terms", "pauli json")) {
    ising::PauliTerm term;
    term.sites = field(term_j, "sites", "pauli json term").get<std::vector<int>>();
    for (const auto& axis : field(term_j, "axes", "pauli json term")) {
      term.axes.push_back(ising::axis_from_string(axis.get<std::string>()));
    }
    term.coefficient = field(term_j, "coeff", "pauli json term").get<double>();
    h.terms.push_back(std::move(term));
  }
  h.validate();
  return h;
}

ising::PauliHamiltonian read_pauli_json(const std::filesystem::path& path) {
  return pauli_from_json(read_file(path));
}

std::string chain_to_json(const TransferChain& chain, SliceScheme scheme) {
  json j;
  j["P"] = chain.slices();
  j["d"] = chain.boundary_dim(0);
  j["scheme"] = to_string(scheme);
  j["labels"] = chain.boundary_labels();
  j["kernels"] = json::array();
  for (const auto& kernel : chain.kernels()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        row.push_back({kernel(r, c).real(), kernel(r, c).imag()});
      }
      rows.push_back(std::move(row));
    }
    j["kernels"].push_back(std::move(rows));
  }
  return j.dump(2) + "\n";
}

std::string circuit_to_json(const CircuitDescription& circuit) {
  circuit.validate();
  json j;
  j["qubits"] = circuit.num_qubits;
  j["labels"] = circuit.labels;
  j["gates"] = json::array();
  for (const auto& gate : circuit.gates) {
    json g;
    switch (gate.kind) {
      case GateKind::Ry: g["kind"] = "ry"; break;
      case GateKind::CCRy: g["kind"] = "ccry"; break;
      case GateKind::Measure: g["kind"] = "measure"; break;
    }
    if (gate.kind != GateKind::Measure) g["theta"] = gate.theta;
    g["qubits"] = std::vector<Eigen::Index>(gate.qubits.begin(), gate.qubits.end());
    j["gates"].push_back(std::move(g));
  }
  return j.dump(2) + "\n";
}

CircuitDescription circuit_from_json(const std::string& text) {
  const json j = parse(text, "circuit json");
  CircuitDescription circuit;
  circuit.num_qubits = field(j, "qubits", "circuit json").get<Eigen::Index>();
  circuit.labels = field(j, "labels", "circuit json").get<std::vector<std::string>>();
  for (const auto& g : field(j, "gates", "circuit json")) {
    const std::string kind = field(g, "kind", "circuit json gate").get<std::string>();
    const auto qubits = field(g, "qubits", "circuit json gate").get<std::vector<Eigen::Index>>();
    if (kind == "ry" && qubits.size() == 1) {
      circuit.gates.push_back(Gate::ry(field(g, "theta", "ry gate").get<double>(), qubits[0]));
    } else if (kind == "ccry" && qubits.size() == 3) {
      circuit.gates.push_back(
          Gate::ccry(field(g, "theta", "ccry gate").get<double>(), qubits[0], qubits[1],
                     qubits[2]));
    } else if (kind == "measure" && qubits.size() == 1) {
      circuit.gates.push_back(Gate::measure(qubits[0]));
    } else {
      throw ValidationError("circuit json: bad gate of kind '" + kind + "'");
    }
  }
  circuit.validate();
  return circuit;
}

std::string table_to_csv(const ProbabilityTable& table) {
  std::ostringstream out;
  for (const auto& v : table.variables()) out << v.name << ",";
  out << "p\n";
  std::vector<std::size_t> assignment(table.variables().size());
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    table.decode(idx, assignment);
    for (std::size_t value : assignment) out << value << ",";
    out << format_double(table.masses()[idx]) << "\n";
  }
  return out.str();
}

std::vector<std::pair<RealVector, RealVector>> read_pairs_csv(const std::filesystem::path& path,
                                                              Eigen::Index in_width,
                                                              Eigen::Index out_width) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<RealVector, RealVector>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<double> values;
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ValidationError("pairs csv line " + std::to_string(line_no) + ": bad value '" +
                              cell + "'");
      }
    }
    if (static_cast<Eigen::Index>(values.size()) != in_width + out_width) {
      throw ValidationError("pairs csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(in_width + out_width) + " values, got " +
                            std::to_string(values.size()));
    }
    RealVector x(in_width), y(out_width);
    for (Eigen::Index i = 0; i < in_width; ++i) x[i] = values[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < out_width; ++i) {
      y[i] = values[static_cast<std::size_t>(in_width + i)];
    }
    pairs.emplace_back(std::move(x), std::move(y));
  }
  if (pairs.empty()) throw ValidationError("pairs csv: no data rows");
  return pairs;
}

std::string pairs_to_csv(const std::vector<std::pair<RealVector, RealVector>>& pairs) {
  std::ostringstream out;
  for (const auto& [x, y] : pairs) {
    for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << ",";
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      out << format_double(y[i]) << (i + 1 < y.size() ? "," : "");
    }
    out << "\n";
  }
  return out.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string RunManifest::to_json() const {
  json j;
  j["tool"] = "pathboltz";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["inputs"] = inputs;
  j["digests"] = digests;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

}  // namespace pathboltz::io
