#pragma once

#include <cstdint>
#include <vector>

#include "pathboltz/layered_network.hpp"
#include "pathboltz/probability_table.hpp"

namespace pathboltz::rbm {

using Eigen::Index;

inline constexpr std::size_t kMaxEnumerationSpins = 24;

/// Bipartite +-1 spin energy model: E(v, h) = a.v + b.h + v^T W h.
/// Parameters are dimensionless (any inverse temperature is absorbed).
struct RbmParams {
  Index n = 0;  // visible spins
  Index p = 0;  // hidden spins
  RealVector a;
  RealVector b;
  Eigen::MatrixXd w;  // n x p

  void validate() const;
};

/// Spin values are exactly +1 or -1 (sigma-z eigenvalues). Configuration
/// index convention: spin i sits at bit (count-1-i), bit 0 means spin +1,
/// so index 0 is the all-up configuration.
struct SpinConfiguration {
  std::vector<int> values;
};

double spin_from_bits(std::size_t config, Index count, Index site);
SpinConfiguration config_from_index(std::size_t config, Index count);

double energy(const RbmParams& params, const SpinConfiguration& v, const SpinConfiguration& h);

/// Exact joint over variables ("v", 2^n) and ("h", 2^p) with mass
/// exp(-E)/Z; energies are max-shifted before exponentiation.
ProbabilityTable gibbs_table(const RbmParams& params);

/// Analytic hidden trace: p(v) proportional to
/// exp(-a.v) prod_j 2 cosh(b_j + sum_i W_ij v_i).
ProbabilityTable visible_marginal(const RbmParams& params);

/// psi(v) = sqrt(p(v)) over the 2^n visible configurations; unit 2-norm.
RealVector ansatz(const RbmParams& params);

/// Block Gibbs sampler: all hidden spins conditionally resampled given the
/// visibles, then vice versa, once per sweep. Deterministic given seed;
/// returns the empirical joint over (v, h) from the post-burn-in sweeps.
ProbabilityTable gibbs_sample(const RbmParams& params, std::size_t sweeps, std::size_t burn_in,
                              std::uint64_t seed);

/// Two-layer network over configuration bases: visible layer of dim 2^n with
/// per-configuration bias a.v, hidden layer of dim 2^p with bias b.h, and
/// weight matrix (v, h) -> v^T W h. Its classical chain reproduces the Gibbs
/// table.
LayeredNetwork as_layered(const RbmParams& params);

}  // namespace pathboltz::rbm
