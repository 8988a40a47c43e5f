#include "pathboltz/rbm.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pathboltz/errors.hpp"

namespace pathboltz::rbm {

void RbmParams::validate() const {
  if (n < 1 || p < 1) throw ValidationError("RbmParams: n and p must be >= 1");
  if (a.size() != n || b.size() != p || w.rows() != n || w.cols() != p) {
    throw ValidationError("RbmParams: parameter shapes do not match n, p");
  }
  if (!a.array().isFinite().all() || !b.array().isFinite().all() ||
      !w.array().isFinite().all()) {
    throw ValidationError("RbmParams: non-finite parameters");
  }
}

double spin_from_bits(std::size_t config, Index count, Index site) {
  return ((config >> (count - 1 - site)) & 1u) ? -1.0 : 1.0;
}

SpinConfiguration config_from_index(std::size_t config, Index count) {
  SpinConfiguration out;
  out.values.resize(count);
  for (Index i = 0; i < count; ++i) {
    out.values[i] = ((config >> (count - 1 - i)) & 1u) ? -1 : 1;
  }
  return out;
}

namespace {

void require_spins(const SpinConfiguration& s, Index expected, const char* what) {
  if (static_cast<Index>(s.values.size()) != expected) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(expected) +
                          " spins, got " + std::to_string(s.values.size()));
  }
  for (int v : s.values) {
    if (v != 1 && v != -1) throw ValidationError(std::string(what) + ": spins must be +-1");
  }
}

void require_enumeration_budget(Index spins) {
  if (static_cast<std::size_t>(spins) > kMaxEnumerationSpins) {
    throw ValidationError("spin enumeration limited to " +
                          std::to_string(kMaxEnumerationSpins) + " spins, got " +
                          std::to_string(spins));
  }
}

double config_energy(const RbmParams& params, std::size_t v_idx, std::size_t h_idx) {
  double e = 0.0;
  for (Index i = 0; i < params.n; ++i) e += params.a[i] * spin_from_bits(v_idx, params.n, i);
  for (Index j = 0; j < params.p; ++j) e += params.b[j] * spin_from_bits(h_idx, params.p, j);
  for (Index i = 0; i < params.n; ++i) {
    const double vi = spin_from_bits(v_idx, params.n, i);
    for (Index j = 0; j < params.p; ++j) {
      e += params.w(i, j) * vi * spin_from_bits(h_idx, params.p, j);
    }
  }
  return e;
}

// Uniform double in [0, 1) from the top 53 bits of a fully specified engine,
// so sampling is bit-stable across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double energy(const RbmParams& params, const SpinConfiguration& v, const SpinConfiguration& h) {
  params.validate();
  require_spins(v, params.n, "energy(v)");
  require_spins(h, params.p, "energy(h)");
  double e = 0.0;
  for (Index i = 0; i < params.n; ++i) e += params.a[i] * v.values[i];
  for (Index j = 0; j < params.p; ++j) e += params.b[j] * h.values[j];
  for (Index i = 0; i < params.n; ++i) {
    for (Index j = 0; j < params.p; ++j) e += params.w(i, j) * v.values[i] * h.values[j];
  }
  return e;
}

ProbabilityTable gibbs_table(const RbmParams& params) {
  params.validate();
  require_enumeration_budget(params.n + params.p);
  const std::size_t nv = std::size_t{1} << params.n;
  const std::size_t nh = std::size_t{1} << params.p;

  std::vector<double> energies(nv * nh);
  double min_energy = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t h = 0; h < nh; ++h) {
      const double e = config_energy(params, v, h);
      energies[v * nh + h] = e;
      min_energy = std::min(min_energy, e);
    }
  }
  std::vector<double> weights(nv * nh);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = std::exp(-(energies[i] - min_energy));
  }
  return ProbabilityTable::from_weights({{"v", nv}, {"h", nh}}, std::move(weights));
}

ProbabilityTable visible_marginal(const RbmParams& params) {
  params.validate();
  require_enumeration_budget(params.n);
  const std::size_t nv = std::size_t{1} << params.n;

  // log p(v) up to a constant; log(2 cosh x) = |x| + log1p(exp(-2|x|)).
  std::vector<double> logmass(nv);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < nv; ++v) {
    double lm = 0.0;
    for (Index i = 0; i < params.n; ++i) lm -= params.a[i] * spin_from_bits(v, params.n, i);
    for (Index j = 0; j < params.p; ++j) {
      double field = params.b[j];
      for (Index i = 0; i < params.n; ++i) {
        field += params.w(i, j) * spin_from_bits(v, params.n, i);
      }
      // log(2 cosh x) = |x| + log1p(exp(-2|x|)), overflow-safe
      const double ax = std::abs(field);
      lm += ax + std::log1p(std::exp(-2.0 * ax));
    }
    logmass[v] = lm;
    max_log = std::max(max_log, lm);
  }
  std::vector<double> weights(nv);
  for (std::size_t v = 0; v < nv; ++v) weights[v] = std::exp(logmass[v] - max_log);
  return ProbabilityTable::from_weights({{"v", nv}}, std::move(weights));
}

RealVector ansatz(const RbmParams& params) {
  const ProbabilityTable marginal = visible_marginal(params);
  RealVector psi(marginal.size());
  for (std::size_t v = 0; v < marginal.size(); ++v) psi[v] = std::sqrt(marginal.masses()[v]);
  return psi;
}

ProbabilityTable gibbs_sample(const RbmParams& params, std::size_t sweeps, std::size_t burn_in,
                              std::uint64_t seed) {
  params.validate();
  require_enumeration_budget(params.n + params.p);
  if (sweeps < 1) throw ValidationError("gibbs_sample: sweeps must be >= 1");

  std::mt19937_64 rng(seed);
  std::vector<int> v(params.n), h(params.p);
  for (Index i = 0; i < params.n; ++i) v[i] = uniform01(rng) < 0.5 ? 1 : -1;
  for (Index j = 0; j < params.p; ++j) h[j] = uniform01(rng) < 0.5 ? 1 : -1;

  const std::size_t nv = std::size_t{1} << params.n;
  const std::size_t nh = std::size_t{1} << params.p;
  std::vector<double> counts(nv * nh, 0.0);

  // p(s = +1 | field) = logistic(-2 field), field = bias + coupling sum.
  const auto flip = [&](double field) { return uniform01(rng) < 1.0 / (1.0 + std::exp(2.0 * field)); };

  for (std::size_t sweep = 0; sweep < burn_in + sweeps; ++sweep) {
    for (Index j = 0; j < params.p; ++j) {
      double field = params.b[j];
      for (Index i = 0; i < params.n; ++i) field += params.w(i, j) * v[i];
      h[j] = flip(field) ? 1 : -1;
    }
    for (Index i = 0; i < params.n; ++i) {
      double field = params.a[i];
      for (Index j = 0; j < params.p; ++j) field += params.w(i, j) * h[j];
      v[i] = flip(field) ? 1 : -1;
    }
    if (sweep >= burn_in) {
      std::size_t v_idx = 0, h_idx = 0;
      for (Index i = 0; i < params.n; ++i) v_idx = (v_idx << 1) | (v[i] < 0 ? 1u : 0u);
      for (Index j = 0; j < params.p; ++j) h_idx = (h_idx << 1) | (h[j] < 0 ? 1u : 0u);
      counts[v_idx * nh + h_idx] += 1.0;
    }
  }
  return ProbabilityTable::from_weights({{"v", nv}, {"h", nh}}, std::move(counts));
}

LayeredNetwork as_layered(const RbmParams& params) {
  params.validate();
  require_enumeration_budget(params.n + params.p);
  const std::size_t nv = std::size_t{1} << params.n;
  const std::size_t nh = std::size_t{1} << params.p;

  RealVector visible_bias(nv), hidden_bias(nh);
  for (std::size_t v = 0; v < nv; ++v) {
    double e = 0.0;
    for (Index i = 0; i < params.n; ++i) e += params.a[i] * spin_from_bits(v, params.n, i);
    visible_bias[v] = e;
  }
  for (std::size_t h = 0; h < nh; ++h) {
    double e = 0.0;
    for (Index j = 0; j < params.p; ++j) e += params.b[j] * spin_from_bits(h, params.p, j);
    hidden_bias[h] = e;
  }
  ComplexMatrix weight(nv, nh);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t h = 0; h < nh; ++h) {
      double e = 0.0;
      for (Index i = 0; i < params.n; ++i) {
        const double vi = spin_from_bits(v, params.n, i);
        for (Index j = 0; j < params.p; ++j) {
          e += params.w(i, j) * vi * spin_from_bits(h, params.p, j);
        }
      }
      weight(v, h) = Complex(e, 0.0);
    }
  }
  return LayeredNetwork(
      {{"v", static_cast<Index>(nv), LayerKind::Visible},
       {"h", static_cast<Index>(nh), LayerKind::Hidden}},
      {std::move(visible_bias), std::move(hidden_bias)}, {std::move(weight)});
}

}  // namespace pathboltz::rbm
