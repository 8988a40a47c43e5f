#include "pathboltz/trainer.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pathboltz/errors.hpp"
#include "pathboltz/parallel.hpp"
#include "pathboltz/path_integral.hpp"

namespace pathboltz::trainer {

TrainingSet TrainingSet::map_pairs(std::vector<std::pair<RealVector, RealVector>> pairs) {
  if (pairs.empty()) throw ValidationError("TrainingSet: needs at least one pair");
  TrainingSet data;
  data.mode = Mode::MapPairs;
  data.pairs = std::move(pairs);
  return data;
}

TrainingSet TrainingSet::target_propagator(ComplexMatrix target) {
  if (target.rows() < 1 || target.cols() < 1 || !all_finite(target)) {
    throw ValidationError("TrainingSet: bad target propagator");
  }
  TrainingSet data;
  data.mode = Mode::TargetPropagator;
  data.propagator = std::move(target);
  return data;
}

TrainingSet TrainingSet::target_gibbs(ProbabilityTable target) {
  TrainingSet data;
  data.mode = Mode::TargetGibbs;
  data.gibbs = std::move(target);
  return data;
}

void FitConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ValidationError("FitConfig: learning rate must be > 0");
  if (steps < 1) throw ValidationError("FitConfig: steps must be >= 1");
  if (!(fd_step > 0.0)) throw ValidationError("FitConfig: finite-difference step must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw ValidationError("FitConfig: momentum parameters must lie in [0, 1)");
  }
}

namespace {

void require_real_weights(const LayeredNetwork& net, const char* what) {
  if (!net.real_weights()) {
    throw ValidationError(std::string(what) + ": requires real weights");
  }
}

struct ParameterLayout {
  std::vector<std::size_t> bias_offsets;
  std::vector<std::size_t> weight_offsets;
  std::size_t total = 0;

  explicit ParameterLayout(const LayeredNetwork& net) {
    std::size_t offset = 0;
    for (std::size_t a = 0; a < net.layer_count(); ++a) {
      bias_offsets.push_back(offset);
      offset += static_cast<std::size_t>(net.layer(a).dim);
    }
    for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
      weight_offsets.push_back(offset);
      offset += static_cast<std::size_t>(net.layer(a).dim) *
                static_cast<std::size_t>(net.layer(a + 1).dim);
    }
    total = offset;
  }
};

// In-order product W_0 W_1 ... of the real weight blocks (first-layer dim x
// last-layer dim); sums over interior indices, one term per path.
Eigen::MatrixXd weight_product(const LayeredNetwork& net) {
  Eigen::MatrixXd product = net.edge_weight(0).real();
  for (std::size_t a = 1; a + 1 < net.layer_count(); ++a) {
    product = product * net.edge_weight(a).real();
  }
  return product;
}

double map_pairs_loss(const LayeredNetwork& net, const TrainingSet& data,
                      ActivationKind activation) {
  KahanSum sum;
  for (const auto& [x, y] : data.pairs) {
    const RealVector out = forward_map(net, activation, x);
    if (out.size() != y.size()) {
      throw ValidationError("loss: target length does not match last layer dim");
    }
    sum.add((out - y).squaredNorm());
  }
  return sum.value();
}

double propagator_loss(const LayeredNetwork& net, const TrainingSet& data) {
  if (net.layer_count() < 2) throw ValidationError("loss: propagator needs >= 2 layers");
  const Eigen::MatrixXd product = weight_product(net);
  if (product.rows() != data.propagator.rows() || product.cols() != data.propagator.cols()) {
    throw ValidationError("loss: target propagator shape mismatch");
  }
  return (product.cast<Complex>() - data.propagator).squaredNorm();
}

ProbabilityTable model_distribution(const LayeredNetwork& net) {
  return path_distribution(classical_chain(net), EndpointMode::Free);
}

void require_matching_table(const LayeredNetwork& net, const ProbabilityTable& table) {
  if (table.variables().size() != net.layer_count()) {
    throw ValidationError("loss: target table arity does not match layer count");
  }
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    if (static_cast<Eigen::Index>(table.variables()[a].cardinality) != net.layer(a).dim) {
      throw ValidationError("loss: target table cardinality mismatch on layer '" +
                            net.layer(a).name + "'");
    }
  }
}

double gibbs_loss(const LayeredNetwork& net, const TrainingSet& data) {
  require_real_weights(net, "loss");
  const ProbabilityTable& target = *data.gibbs;
  require_matching_table(net, target);
  const ProbabilityTable model = model_distribution(net);
  KahanSum kl;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double t = target.masses()[i];
    if (t <= 0.0) continue;
    const double m = model.masses()[i];
    if (m <= 0.0) {
      throw ValidationError("loss: target support outside model support at cell " +
                            std::to_string(i));
    }
    kl.add(t * (std::log(t) - std::log(m)));
  }
  // mathematically >= 0; clamp the roundoff of near-identical tables
  return std::max(kl.value(), 0.0);
}

std::vector<double> map_pairs_gradient(const LayeredNetwork& net, const TrainingSet& data,
                                       ActivationKind activation) {
  const ParameterLayout layout(net);
  std::vector<double> grad(layout.total, 0.0);
  const std::size_t depth = net.layer_count();

  std::vector<Eigen::MatrixXd> weights;
  for (std::size_t a = 0; a + 1 < depth; ++a) weights.push_back(net.edge_weight(a).real());

  for (const auto& [x, y] : data.pairs) {
    // forward with cached pre-activations
    std::vector<RealVector> activations(depth);
    std::vector<RealVector> pre(depth);  // pre[a] defined for a >= 1
    activations[0] = x;
    for (std::size_t a = 0; a + 1 < depth; ++a) {
      pre[a + 1] = weights[a].transpose() * activations[a] + net.bias(a + 1);
      RealVector h(pre[a + 1].size());
      for (Eigen::Index i = 0; i < h.size(); ++i) {
        h[i] = activation_eval(activation, pre[a + 1][i]);
      }
      activations[a + 1] = std::move(h);
    }
    if (activations[depth - 1].size() != y.size()) {
      throw ValidationError("gradient: target length does not match last layer dim");
    }

    // delta[a] = dL/d pre[a]
    RealVector delta = 2.0 * (activations[depth - 1] - y);
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
      delta[i] *= activation_derivative(activation, pre[depth - 1][i]);
    }
    for (std::size_t a = depth - 1; a-- > 0;) {
      // accumulate dL/dW_a and dL/db_{a+1}
      for (Eigen::Index i = 0; i < net.layer(a).dim; ++i) {
        for (Eigen::Index j = 0; j < net.layer(a + 1).dim; ++j) {
          grad[layout.weight_offsets[a] +
               static_cast<std::size_t>(i * net.layer(a + 1).dim + j)] +=
              activations[a][i] * delta[j];
        }
      }
      for (Eigen::Index j = 0; j < net.layer(a + 1).dim; ++j) {
        grad[layout.bias_offsets[a + 1] + static_cast<std::size_t>(j)] += delta[j];
      }
      if (a == 0) break;
      RealVector next = weights[a] * delta;
      for (Eigen::Index i = 0; i < next.size(); ++i) {
        next[i] *= activation_derivative(activation, pre[a][i]);
      }
      delta = std::move(next);
    }
  }
  return grad;
}

std::vector<double> propagator_gradient(const LayeredNetwork& net, const TrainingSet& data) {
  const ParameterLayout layout(net);
  std::vector<double> grad(layout.total, 0.0);
  const std::size_t blocks = net.layer_count() - 1;

  std::vector<Eigen::MatrixXd> weights;
  for (std::size_t a = 0; a < blocks; ++a) weights.push_back(net.edge_weight(a).real());

  const Eigen::MatrixXd product = weight_product(net);
  if (product.rows() != data.propagator.rows() || product.cols() != data.propagator.cols()) {
    throw ValidationError("gradient: target propagator shape mismatch");
  }
  // L = || N - T ||_F^2 with N real: dL/dN = 2 (N - Re T)
  const Eigen::MatrixXd dn = 2.0 * (product - data.propagator.real());

  for (std::size_t a = 0; a < blocks; ++a) {
    Eigen::MatrixXd left = Eigen::MatrixXd::Identity(net.layer(0).dim, net.layer(0).dim);
    for (std::size_t k = 0; k < a; ++k) left = left * weights[k];
    Eigen::MatrixXd right =
        Eigen::MatrixXd::Identity(net.layers().back().dim, net.layers().back().dim);
    for (std::size_t k = blocks; k-- > a + 1;) right = weights[k] * right;

    const Eigen::MatrixXd dw = left.transpose() * dn * right.transpose();
    for (Eigen::Index i = 0; i < dw.rows(); ++i) {
      for (Eigen::Index j = 0; j < dw.cols(); ++j) {
        grad[layout.weight_offsets[a] + static_cast<std::size_t>(i * dw.cols() + j)] = dw(i, j);
      }
    }
  }
  return grad;
}

std::vector<double> gibbs_gradient(const LayeredNetwork& net, const TrainingSet& data) {
  const ProbabilityTable& target = *data.gibbs;
  require_matching_table(net, target);
  const ProbabilityTable model = model_distribution(net);

  const ParameterLayout layout(net);
  std::vector<double> grad(layout.total, 0.0);

  // dKL/dtheta = E_target[dE/dtheta] - E_model[dE/dtheta]; node and pair
  // marginals carry all of E's parameter derivatives.
  const auto accumulate = [&](const ProbabilityTable& table, double sign) {
    std::vector<std::size_t> assignment(table.variables().size());
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      const double p = table.masses()[idx];
      if (p == 0.0) continue;
      table.decode(idx, assignment);
      for (std::size_t a = 0; a < net.layer_count(); ++a) {
        grad[layout.bias_offsets[a] + assignment[a]] += sign * p;
      }
      for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
        grad[layout.weight_offsets[a] +
             assignment[a] * static_cast<std::size_t>(net.layer(a + 1).dim) + assignment[a + 1]] +=
            sign * p;
      }
    }
  };
  accumulate(target, 1.0);
  accumulate(model, -1.0);
  return grad;
}

}  // namespace

std::vector<double> pack_parameters(const LayeredNetwork& net) {
  require_real_weights(net, "pack_parameters");
  const ParameterLayout layout(net);
  std::vector<double> params(layout.total);
  for (std::size_t a = 0; a < net.layer_count(); ++a) {
    for (Eigen::Index i = 0; i < net.layer(a).dim; ++i) {
      params[layout.bias_offsets[a] + static_cast<std::size_t>(i)] = net.bias(a)[i];
    }
  }
  for (std::size_t a = 0; a + 1 < net.layer_count(); ++a) {
    const auto& w = net.edge_weight(a);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        params[layout.weight_offsets[a] + static_cast<std::size_t>(i * w.cols() + j)] =
            w(i, j).real();
      }
    }
  }
  return params;
}

LayeredNetwork unpack_parameters(const LayeredNetwork& shape, const std::vector<double>& params) {
  const ParameterLayout layout(shape);
  if (params.size() != layout.total) {
    throw ValidationError("unpack_parameters: expected " + std::to_string(layout.total) +
                          " parameters, got " + std::to_string(params.size()));
  }
  std::vector<RealVector> biases;
  for (std::size_t a = 0; a < shape.layer_count(); ++a) {
    RealVector bias(shape.layer(a).dim);
    for (Eigen::Index i = 0; i < bias.size(); ++i) {
      bias[i] = params[layout.bias_offsets[a] + static_cast<std::size_t>(i)];
    }
    biases.push_back(std::move(bias));
  }
  std::vector<ComplexMatrix> weights;
  for (std::size_t a = 0; a + 1 < shape.layer_count(); ++a) {
    ComplexMatrix w(shape.layer(a).dim, shape.layer(a + 1).dim);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = Complex(
            params[layout.weight_offsets[a] + static_cast<std::size_t>(i * w.cols() + j)], 0.0);
      }
    }
    weights.push_back(std::move(w));
  }
  return LayeredNetwork(shape.layers(), std::move(biases), std::move(weights),
                        shape.higher_weights());
}

double loss(const LayeredNetwork& net, const TrainingSet& data, ActivationKind activation) {
  switch (data.mode) {
    case TrainingSet::Mode::MapPairs: return map_pairs_loss(net, data, activation);
    case TrainingSet::Mode::TargetPropagator: return propagator_loss(net, data);
    case TrainingSet::Mode::TargetGibbs: return gibbs_loss(net, data);
  }
  throw ValidationError("loss: unknown training mode");
}

std::vector<double> gradient(const LayeredNetwork& net, const TrainingSet& data,
                             const FitConfig& cfg) {
  cfg.validate();
  require_real_weights(net, "gradient");

  if (cfg.gradient == GradientMode::CentralDifference) {
    const std::vector<double> params = pack_parameters(net);
    std::vector<double> grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
      std::vector<double> probe = params;
      probe[k] = params[k] + cfg.fd_step;
      const double up = loss(unpack_parameters(net, probe), data, cfg.activation);
      probe[k] = params[k] - cfg.fd_step;
      const double down = loss(unpack_parameters(net, probe), data, cfg.activation);
      grad[k] = (up - down) / (2.0 * cfg.fd_step);
    }
    return grad;
  }

  switch (data.mode) {
    case TrainingSet::Mode::MapPairs: return map_pairs_gradient(net, data, cfg.activation);
    case TrainingSet::Mode::TargetPropagator:
      if (cfg.activation != ActivationKind::Identity) {
        throw ValidationError(
            "gradient: analytic propagator gradients need the identity activation; "
            "use central differences for nonlinear activations");
      }
      return propagator_gradient(net, data);
    case TrainingSet::Mode::TargetGibbs: return gibbs_gradient(net, data);
  }
  throw ValidationError("gradient: unknown training mode");
}

FitResult fit(const LayeredNetwork& net, const TrainingSet& data, const FitConfig& cfg) {
  cfg.validate();
  require_real_weights(net, "fit");
  if (cfg.loss == LossKind::KullbackLeibler && data.mode != TrainingSet::Mode::TargetGibbs) {
    throw ValidationError("fit: KL loss applies to Gibbs targets only");
  }
  if (cfg.loss == LossKind::SquaredError && data.mode == TrainingSet::Mode::TargetGibbs) {
    throw ValidationError("fit: Gibbs targets use the KL loss");
  }

  std::vector<double> params = pack_parameters(net);
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);  // Adam moments
  double rate = cfg.learning_rate;

  double current = loss(net, data, cfg.activation);
  std::vector<double> trace{current};
  std::vector<double> best = params;
  double best_loss = current;

  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    const LayeredNetwork current_net = unpack_parameters(net, params);
    const std::vector<double> grad = gradient(current_net, data, cfg);

    const std::vector<double> saved_m = m, saved_v = v;
    for (int halving = 0;; ++halving) {
      std::vector<double> candidate = params;
      if (cfg.optimizer == OptimizerKind::GradientDescent) {
        for (std::size_t k = 0; k < candidate.size(); ++k) candidate[k] -= rate * grad[k];
      } else {
        m = saved_m;
        v = saved_v;
        const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
        const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
        for (std::size_t k = 0; k < candidate.size(); ++k) {
          m[k] = cfg.adam_beta1 * m[k] + (1.0 - cfg.adam_beta1) * grad[k];
          v[k] = cfg.adam_beta2 * v[k] + (1.0 - cfg.adam_beta2) * grad[k] * grad[k];
          candidate[k] -= rate * (m[k] / bc1) / (std::sqrt(v[k] / bc2) + cfg.adam_epsilon);
        }
      }

      double candidate_loss;
      try {
        candidate_loss = loss(unpack_parameters(net, candidate), data, cfg.activation);
      } catch (const ValidationError&) {
        candidate_loss = std::numeric_limits<double>::quiet_NaN();
      }

      if (std::isfinite(candidate_loss) &&
          candidate_loss <= 10.0 * std::max(current, 1e-300)) {
        params = std::move(candidate);
        current = candidate_loss;
        break;
      }
      rate *= 0.5;
      if (halving >= 60) {
        throw FitDivergenceError("fit: diverged at step " + std::to_string(step) +
                                     " (loss = " + std::to_string(candidate_loss) + ")",
                                 trace);
      }
    }

    trace.push_back(current);
    if (current < best_loss) {
      best_loss = current;
      best = params;
    }
  }
  return {unpack_parameters(net, best), std::move(trace)};
}

LayeredNetwork seeded_init(const LayeredNetwork& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng] {
    return (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 0.2 - 0.1;
  };
  std::vector<RealVector> biases;
  for (std::size_t a = 0; a < shape.layer_count(); ++a) {
    biases.push_back(RealVector::Zero(shape.layer(a).dim));
  }
  std::vector<ComplexMatrix> weights;
  for (std::size_t a = 0; a + 1 < shape.layer_count(); ++a) {
    ComplexMatrix w(shape.layer(a).dim, shape.layer(a + 1).dim);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = Complex(uniform(), 0.0);
    }
    weights.push_back(std::move(w));
  }
  return LayeredNetwork(shape.layers(), std::move(biases), std::move(weights),
                        shape.higher_weights());
}

}  // namespace pathboltz::trainer
