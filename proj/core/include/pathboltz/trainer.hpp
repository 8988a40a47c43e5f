#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathboltz/errors.hpp"

#include "pathboltz/layered_network.hpp"
#include "pathboltz/probability_table.hpp"

namespace pathboltz::trainer {

/// Training target: observed input -> output pairs, a target propagator
/// matrix (first-layer dim x last-layer dim), or a target Gibbs table over
/// the network's layer variables.
struct TrainingSet {
  enum class Mode { MapPairs, TargetPropagator, TargetGibbs };

  Mode mode = Mode::MapPairs;
  std::vector<std::pair<RealVector, RealVector>> pairs;
  ComplexMatrix propagator;
  std::optional<ProbabilityTable> gibbs;

  static TrainingSet map_pairs(std::vector<std::pair<RealVector, RealVector>> pairs);
  static TrainingSet target_propagator(ComplexMatrix target);
  static TrainingSet target_gibbs(ProbabilityTable target);
};

enum class LossKind { SquaredError, KullbackLeibler };
enum class OptimizerKind { GradientDescent, AdamStyle };
enum class GradientMode { Analytic, CentralDifference };

struct FitConfig {
  LossKind loss = LossKind::SquaredError;
  OptimizerKind optimizer = OptimizerKind::GradientDescent;
  double learning_rate = 0.01;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t steps = 1;
  std::uint64_t seed = 0;
  GradientMode gradient = GradientMode::Analytic;
  double fd_step = 1e-5;
  ActivationKind activation = ActivationKind::Identity;

  void validate() const;
};

/// Flat parameter layout: all layer biases in order, then all edge weight
/// blocks row-major. Real-weight networks only.
std::vector<double> pack_parameters(const LayeredNetwork& net);
LayeredNetwork unpack_parameters(const LayeredNetwork& shape, const std::vector<double>& params);

/// MapPairs: sum of squared residuals of the forward map.
/// TargetPropagator: squared Frobenius distance between the in-order product
/// of the weight blocks and the target (biases and activation do not enter).
/// TargetGibbs: KL(target || free-endpoint classical-chain distribution).
double loss(const LayeredNetwork& net, const TrainingSet& data, ActivationKind activation);

/// Gradient in pack_parameters layout. Analytic mode backpropagates through
/// the affine layers (MapPairs), the weight-block product (TargetPropagator,
/// Identity activation only), or the Gibbs expectation difference
/// (TargetGibbs); CentralDifference perturbs each parameter by +-fd_step.
std::vector<double> gradient(const LayeredNetwork& net, const TrainingSet& data,
                             const FitConfig& cfg);

struct FitResult {
  LayeredNetwork net;
  std::vector<double> trace;  // loss before training, then after each step
};

/// Raised when the loss runs away to NaN/Inf and rate halving cannot recover;
/// carries the loss trace up to the failing step.
class FitDivergenceError : public NumericError {
 public:
  FitDivergenceError(const std::string& message, std::vector<double> trace)
      : NumericError(message), trace(std::move(trace)) {}
  std::vector<double> trace;
};

/// Deterministic full-batch descent from the given starting parameters;
/// halves the rate when a step blows the loss up by more than 10x and
/// returns the best parameters seen. Divergence to NaN raises NumericError.
FitResult fit(const LayeredNetwork& net, const TrainingSet& data, const FitConfig& cfg);

/// Fresh start per the default initialization: weights uniform in
/// [-0.1, 0.1] from the seed, biases zero.
LayeredNetwork seeded_init(const LayeredNetwork& shape, std::uint64_t seed);

}  // namespace pathboltz::trainer
