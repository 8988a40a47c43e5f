#pragma once

#include <string>
#include <vector>

#include "pathboltz/operators.hpp"
#include "pathboltz/path_integral.hpp"
#include "pathboltz/probability_table.hpp"
#include "pathboltz/simplicial_complex.hpp"

namespace pathboltz {

enum class LayerKind { Visible, Hidden };

struct LayerSpec {
  std::string name;
  Eigen::Index dim = 0;
  LayerKind kind = LayerKind::Hidden;
};

/// Rank-k real coupling among k >= 3 distinct layers; `tensor` is row-major
/// over the named layers' basis indices.
struct HigherWeight {
  std::vector<std::size_t> layer_indices;
  std::vector<double> tensor;
};

/// Ordered layer bases with per-layer biases (diagonal operator elements)
/// and per-adjacent-pair weight blocks (off-diagonal elements). The first
/// layer is visible, interior layers are hidden, the last layer may be either.
class LayeredNetwork {
 public:
  LayeredNetwork(std::vector<LayerSpec> layers, std::vector<RealVector> biases,
                 std::vector<ComplexMatrix> edge_weights,
                 std::vector<HigherWeight> higher_weights = {});

  std::size_t layer_count() const { return layers_.size(); }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  const LayerSpec& layer(std::size_t a) const { return layers_[a]; }
  const RealVector& bias(std::size_t a) const { return biases_[a]; }
  const std::vector<RealVector>& biases() const { return biases_; }
  /// Weight block between layers a and a+1, shape dim_a x dim_{a+1}.
  const ComplexMatrix& edge_weight(std::size_t a) const { return edge_weights_[a]; }
  const std::vector<ComplexMatrix>& edge_weights() const { return edge_weights_; }
  const std::vector<HigherWeight>& higher_weights() const { return higher_weights_; }

  bool two_local() const { return higher_weights_.empty(); }
  bool real_weights() const;
  /// Sum of layer dimensions.
  Eigen::Index total_dim() const;

  std::size_t layer_index(const std::string& name) const;

  /// Copy with one replaced bias vector / weight block (used by the trainer).
  LayeredNetwork with_bias(std::size_t a, RealVector bias) const;
  LayeredNetwork with_edge_weight(std::size_t a, ComplexMatrix weight) const;

 private:
  std::vector<LayerSpec> layers_;
  std::vector<RealVector> biases_;
  std::vector<ComplexMatrix> edge_weights_;
  std::vector<HigherWeight> higher_weights_;
};

enum class ActivationKind { Identity, Tanh, Logistic, Softplus };

ActivationKind activation_from_string(const std::string& token);
std::string to_string(ActivationKind kind);
double activation_eval(ActivationKind kind, double x);
double activation_derivative(ActivationKind kind, double x);

/// Dense block-tridiagonal operator on the direct sum of the layer bases:
/// diagonal = concatenated biases, block (a, a+1) = edge weight block, block
/// (a+1, a) = its conjugate transpose. Throws KLocalUnsupportedError if the
/// network has higher-order tensors.
HermitianOperator assemble_hamiltonian(const LayeredNetwork& net);

/// Chain whose k-th kernel is the (layer_k, layer_{k+1}) block of
/// exp(-delta_beta H) for the assembled operator; kernels may be rectangular.
TransferChain slice_blocks(const LayeredNetwork& net, const EvolutionParameter& delta_beta);

/// h_{a+1} = f(W_{a,a+1}^T h_a + bias_{a+1}) iterated through all layers.
/// Requires real weights; input length = first layer dim.
RealVector forward_map(const LayeredNetwork& net, ActivationKind activation,
                       const RealVector& input);

/// Boltzmann-factor chain for a real two-local network: kernel element
/// K_a[mu,nu] = exp(-[c_a b_a(mu) + W_a(mu,nu) + c_{a+1} b_{a+1}(nu)]) with
/// c = 1/2 on interior layers and 1 at the terminals, so a full path's weight
/// is exp(-E(path)) with each node bias counted exactly once.
TransferChain classical_chain(const LayeredNetwork& net);

/// Gibbs table over one variable per layer with energy = sum of node biases,
/// adjacent-pair weights, and higher-order tensor terms along the assignment.
/// Equals the free-endpoint classical_chain distribution on two-local nets.
ProbabilityTable network_gibbs_table(const LayeredNetwork& net);

/// Interaction complex of the network: one vertex per layer, an edge per
/// nonzero adjacent weight block, a (k-1)-simplex per higher-order tensor,
/// closed under faces.
SimplicialComplex network_complex(const LayeredNetwork& net);

}  // namespace pathboltz
