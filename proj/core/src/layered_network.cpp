#include "pathboltz/layered_network.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "pathboltz/errors.hpp"

namespace pathboltz {

LayeredNetwork::LayeredNetwork(std::vector<LayerSpec> layers, std::vector<RealVector> biases,
                               std::vector<ComplexMatrix> edge_weights,
                               std::vector<HigherWeight> higher_weights)
    : layers_(std::move(layers)),
      biases_(std::move(biases)),
      edge_weights_(std::move(edge_weights)),
      higher_weights_(std::move(higher_weights)) {
  if (layers_.empty()) throw ValidationError("LayeredNetwork: needs at least one layer");
  std::set<std::string> names;
  for (const auto& layer : layers_) {
    if (layer.dim < 1) throw ValidationError("LayeredNetwork: layer '" + layer.name +
                                             "' has dim < 1");
    if (!names.insert(layer.name).second) {
      throw ValidationError("LayeredNetwork: duplicate layer name '" + layer.name + "'");
    }
  }
  if (layers_.front().kind != LayerKind::Visible) {
    throw ValidationError("LayeredNetwork: first layer must be visible");
  }
  for (std::size_t a = 1; a + 1 < layers_.size(); ++a) {
    if (layers_[a].kind != LayerKind::Hidden) {
      throw ValidationError("LayeredNetwork: interior layer '" + layers_[a].name +
                            "' must be hidden");
    }
  }
  if (biases_.size() != layers_.size()) {
    throw ValidationError("LayeredNetwork: expected one bias vector per layer");
  }
  for (std::size_t a = 0; a < layers_.size(); ++a) {
    if (biases_[a].size() != layers_[a].dim) {
      throw ValidationError("LayeredNetwork: bias length mismatch on layer '" + layers_[a].name +
                            "'");
    }
    if (!biases_[a].array().isFinite().all()) {
      throw ValidationError("LayeredNetwork: non-finite bias on layer '" + layers_[a].name + "'");
    }
  }
  if (edge_weights_.size() + 1 != layers_.size()) {
    throw ValidationError("LayeredNetwork: expected one weight block per adjacent layer pair");
  }
  for (std::size_t a = 0; a < edge_weights_.size(); ++a) {
    if (edge_weights_[a].rows() != layers_[a].dim || edge_weights_[a].cols() != layers_[a + 1].dim) {
      throw ValidationError("LayeredNetwork: weight block " + std::to_string(a) +
                            " shape mismatch");
    }
    if (!all_finite(edge_weights_[a])) {
      throw ValidationError("LayeredNetwork: non-finite weight block " + std::to_string(a));
    }
  }
  for (const auto& hw : higher_weights_) {
    if (hw.layer_indices.size() < 3) {
      throw ValidationError("LayeredNetwork: higher-order tensor needs k >= 3 layers");
    }
    std::set<std::size_t> distinct(hw.layer_indices.begin(), hw.layer_indices.end());
    if (distinct.size() != hw.layer_indices.size()) {
      throw ValidationError("LayeredNetwork: higher-order tensor repeats a layer");
    }
    std::size_t cells = 1;
    for (std::size_t idx : hw.layer_indices) {
      if (idx >= layers_.size()) {
        throw ValidationError("LayeredNetwork: higher-order tensor references missing layer");
      }
      cells *= static_cast<std::size_t>(layers_[idx].dim);
    }
    if (hw.tensor.size() != cells) {
      throw ValidationError("LayeredNetwork: higher-order tensor has wrong cell count");
    }
  }
}

bool LayeredNetwork::real_weights() const {
  for (const auto& w : edge_weights_) {
    if (w.imag().cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

Eigen::Index LayeredNetwork::total_dim() const {
  Eigen::Index total = 0;
  for (const auto& layer : layers_) total += layer.dim;
  return total;
}

std::size_t LayeredNetwork::layer_index(const std::string& name) const {
  for (std::size_t a = 0; a < layers_.size(); ++a) {
    if (layers_[a].name == name) return a;
  }
  throw ValidationError("LayeredNetwork: unknown layer '" + name + "'");
}

LayeredNetwork LayeredNetwork::with_bias(std::size_t a, RealVector bias) const {
  auto biases = biases_;
  biases.at(a) = std::move(bias);
  return LayeredNetwork(layers_, std::move(biases), edge_weights_, higher_weights_);
}

LayeredNetwork LayeredNetwork::with_edge_weight(std::size_t a, ComplexMatrix weight) const {
  auto weights = edge_weights_;
  weights.at(a) = std::move(weight);
  return LayeredNetwork(layers_, biases_, std::move(weights), higher_weights_);
}

ActivationKind activation_from_string(const std::string& token) {
  if (token == "identity") return ActivationKind::Identity;
  if (token == "tanh") return ActivationKind::Tanh;
  if (token == "logistic") return ActivationKind::Logistic;
  if (token == "softplus") return ActivationKind::Softplus;
  throw ValidationError("unknown activation '" + token +
                        "' (expected identity|tanh|logistic|softplus)");
}

std::string to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Identity: return "identity";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Logistic: return "logistic";
    case ActivationKind::Softplus: return "softplus";
  }
  return "?";
}

double activation_eval(ActivationKind kind, double x) {
  switch (kind) {
    case ActivationKind::Identity: return x;
    case ActivationKind::Tanh: return std::tanh(x);
    case ActivationKind::Logistic: return 1.0 / (1.0 + std::exp(-x));
    case ActivationKind::Softplus:
      // log(1 + e^x), overflow-safe for large |x|
      return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  }
  return x;
}

double activation_derivative(ActivationKind kind, double x) {
  switch (kind) {
    case ActivationKind::Identity: return 1.0;
    case ActivationKind::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::Logistic: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
    case ActivationKind::Softplus: return 1.0 / (1.0 + std::exp(-x));
  }
  return 1.0;
}

HermitianOperator assemble_hamiltonian(const LayeredNetwork& net) {
  if (!net.two_local()) throw KLocalUnsupportedError();

  const Eigen::Index total = net.total_dim();
  ComplexMatrix m = ComplexMatrix::Zero(total, total);

  std::vector<Eigen::Index> offsets(net.layer_count());
  Eigen::Index offset = 0;
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    offsets[a] = offset;
    offset += net.layer(a).dim;
  }
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    for (Eigen::Index i = 0; i < net.layer(a).dim; ++i) {
      m(offsets[a] + i, offsets[a] + i) = net.bias(a)[i];
    }
  }
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    const ComplexMatrix& w = net.edge_weight(a);
    m.block(offsets[a], offsets[a + 1], w.rows(), w.cols()) = w;
    m.block(offsets[a + 1], offsets[a], w.cols(), w.rows()) = w.adjoint();
  }
  return HermitianOperator(std::move(m));
}

TransferChain slice_blocks(const LayeredNetwork& net, const EvolutionParameter& delta_beta) {
  if (net.layer_count() < 2) {
    throw ValidationError("slice_blocks: needs at least two layers");
  }
  const ComplexMatrix full = matrix_exponential(assemble_hamiltonian(net), delta_beta);

  std::vector<Eigen::Index> offsets(net.layer_count());
  Eigen::Index offset = 0;
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    offsets[a] = offset;
    offset += net.layer(a).dim;
  }
  std::vector<ComplexMatrix> kernels;
  std::vector<std::string> labels;
  kernels.reserve(net.layer_count() - 1);
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    kernels.push_back(
        full.block(offsets[a], offsets[a + 1], net.layer(a).dim, net.layer(a + 1).dim));
    labels.push_back(net.layer(a).name);
  }
  labels.push_back(net.layers().back().name);
  return TransferChain(std::move(kernels), std::move(labels));
}

RealVector forward_map(const LayeredNetwork& net, ActivationKind activation,
                       const RealVector& input) {
  if (input.size() != net.layer(0).dim) {
    throw ValidationError("forward_map: input length " + std::to_string(input.size()) +
                          " does not match first layer dim " + std::to_string(net.layer(0).dim));
  }
  if (!net.real_weights()) throw ValidationError("forward_map: requires real weights");

  RealVector h = input;
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    RealVector z = net.edge_weight(a).real().transpose() * h + net.bias(a + 1);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = activation_eval(activation, z[i]);
    h = std::move(z);
  }
  return h;
}

TransferChain classical_chain(const LayeredNetwork& net) {
  if (!net.two_local()) throw KLocalUnsupportedError();
  if (!net.real_weights()) throw ValidationError("classical_chain: requires real weights");
  if (net.layer_count() < 2) throw ValidationError("classical_chain: needs at least two layers");

  std::vector<ComplexMatrix> kernels;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    const bool left_terminal = (a == 0);
    const bool right_terminal = (a + 2 == net.layer_count());
    const double left_share = left_terminal ? 1.0 : 0.5;
    const double right_share = right_terminal ? 1.0 : 0.5;
    const Eigen::MatrixXd w = net.edge_weight(a).real();
    ComplexMatrix kernel(w.rows(), w.cols());
    for (Eigen::Index mu = 0; mu < w.rows(); ++mu) {
      for (Eigen::Index nu = 0; nu < w.cols(); ++nu) {
        const double energy = left_share * net.bias(a)[mu] + w(mu, nu) +
                              right_share * net.bias(a + 1)[nu];
        kernel(mu, nu) = Complex(std::exp(-energy), 0.0);
      }
    }
    kernels.push_back(std::move(kernel));
    labels.push_back(net.layer(a).name);
  }
  labels.push_back(net.layers().back().name);
  return TransferChain(std::move(kernels), std::move(labels));
}

ProbabilityTable network_gibbs_table(const LayeredNetwork& net) {
  if (!net.real_weights()) throw ValidationError("network_gibbs_table: requires real weights");

  std::vector<Variable> vars;
  double cells = 1.0;
  for (const auto& layer : net.layers()) {
    vars.push_back({layer.name, static_cast<std::size_t>(layer.dim)});
    cells *= static_cast<double>(layer.dim);
  }
  if (cells > kPathEnumerationBudget) {
    throw EnumerationBudgetError(cells, kPathEnumerationBudget);
  }
  const std::size_t total = static_cast<std::size_t>(cells);
  const std::size_t n_layers = net.layer_count();

  std::vector<std::size_t> strides(n_layers);
  {
    std::size_t stride = 1;
    for (std::size_t a = n_layers; a-- > 0;) {
      strides[a] = stride;
      stride *= static_cast<std::size_t>(net.layer(a).dim);
    }
  }

  std::vector<double> energies(total);
  std::vector<std::size_t> assignment(n_layers);
  double min_energy = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (std::size_t a = 0; a < n_layers; ++a) {
      assignment[a] = (idx / strides[a]) % static_cast<std::size_t>(net.layer(a).dim);
    }
    double energy = 0.0;
    for (std::size_t a = 0; a < n_layers; ++a) energy += net.bias(a)[assignment[a]];
    for (std::size_t a = 0; a + 1 < n_layers; ++a) {
      energy += net.edge_weight(a)(assignment[a], assignment[a + 1]).real();
    }
    for (const auto& hw : net.higher_weights()) {
      std::size_t cell = 0;
      for (std::size_t k = 0; k < hw.layer_indices.size(); ++k) {
        cell = cell * static_cast<std::size_t>(net.layer(hw.layer_indices[k]).dim) +
               assignment[hw.layer_indices[k]];
      }
      energy += hw.tensor[cell];
    }
    energies[idx] = energy;
    min_energy = std::min(min_energy, energy);
  }

  std::vector<double> weights(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    weights[idx] = std::exp(-(energies[idx] - min_energy));
  }
  return ProbabilityTable::from_weights(std::move(vars), std::move(weights));
}

SimplicialComplex network_complex(const LayeredNetwork& net) {
  SimplicialComplex complex;
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    complex.insert_with_faces({static_cast<int>(a)});
  }
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    if (net.edge_weight(a).cwiseAbs().maxCoeff() > 0.0) {
      complex.insert_with_faces({static_cast<int>(a), static_cast<int>(a + 1)});
    }
  }
  for (const auto& hw : net.higher_weights()) {
    Simplex s;
    for (std::size_t idx : hw.layer_indices) s.push_back(static_cast<int>(idx));
    complex.insert_with_faces(std::move(s));
  }
  return complex;
}

}  // namespace pathboltz
