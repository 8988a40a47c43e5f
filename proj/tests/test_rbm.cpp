#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathboltz/errors.hpp"
#include "pathboltz/path_integral.hpp"
#include "pathboltz/rbm.hpp"

using namespace pathboltz;
using rbm::RbmParams;
using rbm::SpinConfiguration;

namespace {

RbmParams zero_params(Eigen::Index n, Eigen::Index p) {
  RbmParams params;
  params.n = n;
  params.p = p;
  params.a = RealVector::Zero(n);
  params.b = RealVector::Zero(p);
  params.w = Eigen::MatrixXd::Zero(n, p);
  return params;
}

RbmParams random_params(std::uint64_t seed, Eigen::Index n, Eigen::Index p, double scale = 1.0) {
  auto gen = oracles::rng(seed);
  RbmParams params = zero_params(n, p);
  for (Eigen::Index i = 0; i < n; ++i) params.a[i] = scale * oracles::uniform(gen);
  for (Eigen::Index j = 0; j < p; ++j) params.b[j] = scale * oracles::uniform(gen);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) params.w(i, j) = scale * oracles::uniform(gen);
  }
  return params;
}

double table_tv(const ProbabilityTable& a, const ProbabilityTable& b) {
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a.masses()[i] - b.masses()[i]);
  return tv / 2.0;
}

}  // namespace

TEST_CASE("energy on explicit configurations") {
  RbmParams ones = zero_params(1, 1);
  ones.a << 1.0;
  ones.b << 1.0;
  ones.w << 1.0;

  CHECK(rbm::energy(zero_params(1, 1), {{1}}, {{1}}) == 0.0);
  CHECK(rbm::energy(ones, {{1}}, {{1}}) == 3.0);
  CHECK(rbm::energy(ones, {{1}}, {{-1}}) == -1.0);

  CHECK_THROWS_AS(rbm::energy(ones, {{1, 1}}, {{1}}), ValidationError);
  CHECK_THROWS_AS(rbm::energy(ones, {{2}}, {{1}}), ValidationError);
}

TEST_CASE("configuration index convention: bit 0 means spin up, site 0 is the msb") {
  CHECK(rbm::spin_from_bits(0, 3, 0) == 1.0);
  CHECK(rbm::spin_from_bits(0b100, 3, 0) == -1.0);
  CHECK(rbm::spin_from_bits(0b100, 3, 1) == 1.0);
  CHECK(rbm::spin_from_bits(0b001, 3, 2) == -1.0);

  const SpinConfiguration c = rbm::config_from_index(0b101, 3);
  CHECK(c.values == std::vector<int>{-1, 1, -1});
}

TEST_CASE("gibbs_table of the zero model is uniform") {
  const ProbabilityTable table = rbm::gibbs_table(zero_params(1, 1));
  REQUIRE(table.size() == 4);
  for (double p : table.masses()) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("gibbs_table is normalized and matches direct enumeration") {
  const RbmParams params = random_params(101, 2, 3);
  const ProbabilityTable table = rbm::gibbs_table(params);

  double sum = 0.0;
  for (double p : table.masses()) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-12);

  // direct enumeration without the max-shift
  double z = 0.0;
  std::vector<double> expected;
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t h = 0; h < 8; ++h) {
      const double e = rbm::energy(params, rbm::config_from_index(v, 2),
                                   rbm::config_from_index(h, 3));
      expected.push_back(std::exp(-e));
      z += expected.back();
    }
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(table.masses()[i] - expected[i] / z) < 1e-12);
  }
}

TEST_CASE("visible_marginal agrees with the hidden-trace of the joint") {
  const RbmParams params = random_params(103, 3, 3);
  const ProbabilityTable joint = rbm::gibbs_table(params);
  const ProbabilityTable direct = rbm::visible_marginal(params);
  const ProbabilityTable summed = joint.marginal({"v"});
  REQUIRE(direct.size() == summed.size());
  for (std::size_t v = 0; v < direct.size(); ++v) {
    CHECK(std::abs(direct.masses()[v] - summed.masses()[v]) < 1e-12);
  }
}

TEST_CASE("visible_marginal special cases") {
  const ProbabilityTable uniform = rbm::visible_marginal(zero_params(3, 2));
  for (double p : uniform.masses()) CHECK(p == doctest::Approx(1.0 / 8.0).epsilon(1e-14));

  // a = 0, b = 0: p(v) proportional to cosh(w v), symmetric under v -> -v
  RbmParams params = zero_params(1, 1);
  params.w << 0.8;
  const ProbabilityTable sym = rbm::visible_marginal(params);
  CHECK(sym.masses()[0] == doctest::Approx(sym.masses()[1]).epsilon(1e-14));
}

TEST_CASE("ansatz is the elementwise square root of the marginal") {
  const RealVector flat = rbm::ansatz(zero_params(2, 2));
  for (Eigen::Index v = 0; v < flat.size(); ++v) CHECK(flat[v] == doctest::Approx(0.5));

  const RbmParams params = random_params(107, 2, 2);
  const RealVector psi = rbm::ansatz(params);
  const ProbabilityTable marginal = rbm::visible_marginal(params);
  double norm = 0.0;
  for (Eigen::Index v = 0; v < psi.size(); ++v) {
    CHECK(psi[v] >= 0.0);
    CHECK(std::abs(psi[v] * psi[v] - marginal.masses()[static_cast<std::size_t>(v)]) < 1e-12);
    norm += psi[v] * psi[v];
  }
  CHECK(std::abs(norm - 1.0) < 1e-12);
}

TEST_CASE("joint factorizes as marginal times the product of conditionals") {
  const RbmParams params = random_params(109, 3, 3);
  const ProbabilityTable joint = rbm::gibbs_table(params);
  const ProbabilityTable marginal = rbm::visible_marginal(params);

  for (std::size_t v = 0; v < 8; ++v) {
    for (std::size_t h = 0; h < 8; ++h) {
      double conditional = 1.0;
      for (Eigen::Index j = 0; j < params.p; ++j) {
        double field = params.b[j];
        for (Eigen::Index i = 0; i < params.n; ++i) {
          field += params.w(i, j) * rbm::spin_from_bits(v, params.n, i);
        }
        const double hj = rbm::spin_from_bits(h, params.p, j);
        conditional *= std::exp(-field * hj) / (2.0 * std::cosh(field));
      }
      CHECK(std::abs(joint.masses()[v * 8 + h] - marginal.masses()[v] * conditional) < 1e-12);
    }
  }
}

TEST_CASE("spin-flip relabelings of the table") {
  const RbmParams params = random_params(113, 2, 2);

  // flipping every spin negates the bias terms and preserves the couplings
  RbmParams bias_negated = params;
  bias_negated.a = -params.a;
  bias_negated.b = -params.b;
  const ProbabilityTable table = rbm::gibbs_table(params);
  const ProbabilityTable flipped = rbm::gibbs_table(bias_negated);
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t h = 0; h < 4; ++h) {
      CHECK(std::abs(table.masses()[v * 4 + h] - flipped.masses()[(v ^ 3u) * 4 + (h ^ 3u)]) <
            1e-12);
    }
  }

  // flipping only the hidden register negates its biases and the couplings
  RbmParams hidden_negated = params;
  hidden_negated.b = -params.b;
  hidden_negated.w = -params.w;
  const ProbabilityTable hidden_flipped = rbm::gibbs_table(hidden_negated);
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t h = 0; h < 4; ++h) {
      CHECK(std::abs(table.masses()[v * 4 + h] - hidden_flipped.masses()[v * 4 + (h ^ 3u)]) <
            1e-12);
    }
  }
}

TEST_CASE("gibbs_sample is deterministic and converges in total variation") {
  const RbmParams params = random_params(127, 2, 2, 0.6);
  const ProbabilityTable exact = rbm::gibbs_table(params);

  const ProbabilityTable once = rbm::gibbs_sample(params, 20000, 500, 99);
  const ProbabilityTable twice = rbm::gibbs_sample(params, 20000, 500, 99);
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once.masses()[i] == twice.masses()[i]);
  }

  CHECK(table_tv(once, exact) < 0.03);

  // total variation shrinks as sweeps grow tenfold
  const double tv_small = table_tv(rbm::gibbs_sample(params, 2000, 500, 7), exact);
  const double tv_large = table_tv(rbm::gibbs_sample(params, 200000, 500, 7), exact);
  CHECK(tv_large < tv_small + 0.002);

  CHECK_THROWS_AS(rbm::gibbs_sample(params, 0, 0, 1), ValidationError);
}

TEST_CASE("as_layered reproduces the sign pattern of v h products") {
  RbmParams params = zero_params(1, 1);
  params.w << 0.7;
  const LayeredNetwork net = rbm::as_layered(params);
  const ComplexMatrix& w = net.edge_weight(0);
  CHECK(w(0, 0) == Complex(0.7, 0));
  CHECK(w(0, 1) == Complex(-0.7, 0));
  CHECK(w(1, 0) == Complex(-0.7, 0));
  CHECK(w(1, 1) == Complex(0.7, 0));

  const LayeredNetwork zeros = rbm::as_layered(zero_params(2, 2));
  CHECK(zeros.edge_weight(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(zeros.bias(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(zeros.bias(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the layered image's classical chain reproduces the gibbs table") {
  const RbmParams params = random_params(131, 2, 2);
  const ProbabilityTable direct = rbm::gibbs_table(params);
  const ProbabilityTable via_chain =
      path_distribution(classical_chain(rbm::as_layered(params)), EndpointMode::Free);
  REQUIRE(direct.size() == via_chain.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(std::abs(direct.masses()[i] - via_chain.masses()[i]) < 1e-12);
  }
}

TEST_CASE("enumeration budget guards") {
  RbmParams params = zero_params(20, 20);
  CHECK_THROWS_AS(rbm::gibbs_table(params), ValidationError);
  CHECK_THROWS_AS(rbm::as_layered(params), ValidationError);
}
