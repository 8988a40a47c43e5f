#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathboltz/entropy.hpp"
#include "pathboltz/errors.hpp"
#include "pathboltz/layered_network.hpp"
#include "pathboltz/path_integral.hpp"

using namespace pathboltz;

namespace {

ProbabilityTable random_joint(std::uint64_t seed, std::vector<Variable> vars) {
  std::size_t cells = 1;
  for (const auto& v : vars) cells *= v.cardinality;
  auto gen = oracles::rng(seed);
  return ProbabilityTable(std::move(vars), oracles::random_masses(gen, cells));
}

ProbabilityTable product_table(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> joint;
  for (double pa : a) {
    for (double pb : b) joint.push_back(pa * pb);
  }
  return ProbabilityTable({{"x", a.size()}, {"h1", b.size()}}, std::move(joint));
}

/// Markov chain joint from a random positive-weight layered model.
ProbabilityTable markov_chain_joint(std::uint64_t seed, const std::vector<Eigen::Index>& dims) {
  auto gen = oracles::rng(seed);
  std::vector<LayerSpec> layers;
  std::vector<RealVector> biases;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    layers.push_back({"v" + std::to_string(a), dims[a],
                      a == 0 ? LayerKind::Visible : LayerKind::Hidden});
    RealVector bias(dims[a]);
    for (Eigen::Index i = 0; i < dims[a]; ++i) bias[i] = oracles::uniform(gen);
    biases.push_back(std::move(bias));
  }
  std::vector<ComplexMatrix> weights;
  for (std::size_t a = 0; a + 1 < dims.size(); ++a) {
    ComplexMatrix w(dims[a], dims[a + 1]);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = Complex(oracles::uniform(gen), 0.0);
    }
    weights.push_back(std::move(w));
  }
  const LayeredNetwork net(std::move(layers), std::move(biases), std::move(weights));
  return path_distribution(classical_chain(net), EndpointMode::Free);
}

}  // namespace

TEST_CASE("shannon entropy basics") {
  const ProbabilityTable uniform({{"x", 4}}, {0.25, 0.25, 0.25, 0.25});
  CHECK(shannon(uniform) == doctest::Approx(std::log(4.0)).epsilon(1e-14));

  const ProbabilityTable point({{"x", 3}}, {0.0, 1.0, 0.0});
  CHECK(shannon(point) == 0.0);

  const std::vector<double> a{0.2, 0.5, 0.3};
  const std::vector<double> b{0.6, 0.4};
  const ProbabilityTable prod = product_table(a, b);
  CHECK(std::abs(shannon(prod) - oracles::raw_entropy(a) - oracles::raw_entropy(b)) < 1e-12);
}

TEST_CASE("shannon bounds") {
  const ProbabilityTable joint = random_joint(301, {{"x", 3}, {"y", 4}});
  const double s = shannon(joint);
  CHECK(s >= 0.0);
  CHECK(s <= std::log(12.0) + 1e-12);
}

TEST_CASE("marginalize against the nested-loop oracle") {
  const ProbabilityTable joint = random_joint(307, {{"x", 2}, {"y", 3}, {"z", 2}});

  const ProbabilityTable all = joint.marginal({"x", "y", "z"});
  for (std::size_t i = 0; i < joint.size(); ++i) {
    CHECK(all.masses()[i] == doctest::Approx(joint.masses()[i]).epsilon(1e-15));
  }

  const ProbabilityTable keep = joint.marginal({"x", "z"});
  const std::vector<double> expected = oracles::raw_marginal(joint.masses(), {2, 3, 2}, {0, 2});
  REQUIRE(keep.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(keep.masses()[i] - expected[i]) < 1e-14);
  }

  const std::vector<double> a{0.7, 0.3};
  const std::vector<double> b{0.1, 0.2, 0.7};
  const ProbabilityTable prod = product_table(a, b);
  const ProbabilityTable first = prod.marginal({"x"});
  CHECK(std::abs(first.masses()[0] - 0.7) < 1e-14);
  CHECK(std::abs(first.masses()[1] - 0.3) < 1e-14);

  CHECK_THROWS_AS(joint.marginal({"nope"}), ValidationError);
}

TEST_CASE("chain entropy vanishes on independent variables") {
  const std::vector<double> a{0.2, 0.8};
  const std::vector<double> b{0.5, 0.25, 0.25};
  CHECK(std::abs(chain_entropy(product_table(a, b))) < 1e-12);
}

TEST_CASE("two-variable chain entropy is the mutual information") {
  const ProbabilityTable joint = random_joint(311, {{"x", 3}, {"h1", 3}});
  const double value = chain_entropy(joint);

  // independent mutual-information computation on raw masses
  const auto px = oracles::raw_marginal(joint.masses(), {3, 3}, {0});
  const auto ph = oracles::raw_marginal(joint.masses(), {3, 3}, {1});
  const double mi = oracles::raw_entropy(px) + oracles::raw_entropy(ph) -
                    oracles::raw_entropy(joint.masses());
  CHECK(std::abs(value - mi) < 1e-12);
  CHECK(value >= 0.0);
  CHECK(value <= std::min(oracles::raw_entropy(px), oracles::raw_entropy(ph)) + 1e-12);
}

TEST_CASE("chain entropy decomposes into adjacent mutual informations") {
  const ProbabilityTable joint = random_joint(313, {{"x", 2}, {"h1", 3}, {"h2", 2}});
  const double value = chain_entropy(joint);

  // sum of adjacent pair mutual informations minus interior single entropies
  const std::vector<std::size_t> cards{2, 3, 2};
  const auto masses = joint.masses();
  const auto s = [&](std::vector<std::size_t> keep) {
    return oracles::raw_entropy(oracles::raw_marginal(masses, cards, keep));
  };
  const double mi01 = s({0}) + s({1}) - s({0, 1});
  const double mi12 = s({1}) + s({2}) - s({1, 2});
  CHECK(std::abs(value - (mi01 + mi12 - s({1}))) < 1e-12);

  CHECK_THROWS_AS(chain_entropy(random_joint(317, {{"x", 4}})), ValidationError);
}

TEST_CASE("tree entropy is exact on Markov chains") {
  const ProbabilityTable joint = markov_chain_joint(331, {2, 3, 2, 2});
  const double bethe = tree_bethe_entropy(joint, chain_edges(joint));
  CHECK(std::abs(bethe - shannon(joint)) < 1e-10);
}

TEST_CASE("tree entropy on independent variables and single edges") {
  const std::vector<double> a{0.3, 0.7};
  const std::vector<double> b{0.5, 0.5};
  const ProbabilityTable prod = product_table(a, b);
  const double bethe = tree_bethe_entropy(prod, chain_edges(prod));
  CHECK(std::abs(bethe - oracles::raw_entropy(a) - oracles::raw_entropy(b)) < 1e-12);

  const ProbabilityTable pair = random_joint(337, {{"x", 3}, {"h1", 2}});
  CHECK(std::abs(tree_bethe_entropy(pair, {{"x", "h1"}}) - shannon(pair)) < 1e-12);
}

TEST_CASE("tree entropy validates its edge set") {
  const ProbabilityTable joint = random_joint(347, {{"a", 2}, {"b", 2}, {"c", 2}});
  CHECK_THROWS_AS(tree_bethe_entropy(joint, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                  ValidationError);
  CHECK_THROWS_AS(tree_bethe_entropy(joint, {{"a", "b"}}), ValidationError);
  CHECK_THROWS_AS(tree_bethe_entropy(joint, {{"a", "a"}}), ValidationError);
}

TEST_CASE("containment multiplicities on a triangle") {
  SimplicialComplex triangle;
  triangle.insert_with_faces({0, 1, 2});
  const auto counts = multiplicities(triangle, MultiplicityMode::Containment);
  CHECK(counts.at({0}) == 4);  // itself, two edges, the face
  CHECK(counts.at({0, 1}) == 2);
  CHECK(counts.at({0, 1, 2}) == 1);
}

TEST_CASE("moebius numbers: lone edge and shared edge") {
  SimplicialComplex edge;
  edge.insert_with_faces({0, 1});
  const auto lone = multiplicities(edge, MultiplicityMode::Moebius);
  CHECK(lone.at({0, 1}) == 1);
  CHECK(lone.at({0}) == 0);
  CHECK(lone.at({1}) == 0);

  SimplicialComplex bowtie;
  bowtie.insert_with_faces({0, 1, 2});
  bowtie.insert_with_faces({1, 2, 3});
  const auto shared = multiplicities(bowtie, MultiplicityMode::Moebius);
  CHECK(shared.at({0, 1, 2}) == 1);
  CHECK(shared.at({1, 2, 3}) == 1);
  CHECK(shared.at({1, 2}) == -1);
  CHECK(shared.at({0, 1}) == 0);
  CHECK(shared.at({1}) == 0);
}

TEST_CASE("kikuchi with containment counts expands as the signed sum") {
  const ProbabilityTable joint = random_joint(353, {{"x", 2}, {"h1", 2}, {"h2", 2}});
  SimplicialComplex triangle;
  triangle.insert_with_faces({0, 1, 2});

  const std::vector<std::size_t> cards{2, 2, 2};
  const auto masses = joint.masses();
  const auto s = [&](std::vector<std::size_t> keep) {
    return oracles::raw_entropy(oracles::raw_marginal(masses, cards, keep));
  };
  const double expected = 4.0 * (s({0}) + s({1}) + s({2})) -
                          2.0 * (s({0, 1}) + s({0, 2}) + s({1, 2})) + s({0, 1, 2});
  CHECK(std::abs(kikuchi_entropy(joint, triangle, MultiplicityMode::Containment) - expected) <
        1e-12);
}

TEST_CASE("kikuchi with containment counts keeps the rank sign pattern") {
  // independent pair on a single edge: nodes enter +, the edge enters -
  const std::vector<double> a{0.25, 0.75};
  const std::vector<double> b{0.4, 0.6};
  const ProbabilityTable prod = product_table(a, b);
  SimplicialComplex edge;
  edge.insert_with_faces({0, 1});
  const double sa = oracles::raw_entropy(a);
  const double sb = oracles::raw_entropy(b);
  // vertices are counted twice (self + edge), the edge once
  CHECK(std::abs(kikuchi_entropy(prod, edge, MultiplicityMode::Containment) -
                 (2.0 * (sa + sb) - (sa + sb))) < 1e-12);
}

TEST_CASE("kikuchi with moebius numbers equals the tree form on rank-1 complexes") {
  const ProbabilityTable joint = random_joint(359, {{"a", 2}, {"b", 3}, {"c", 2}, {"d", 2}});
  SimplicialComplex path;
  path.insert_with_faces({0, 1});
  path.insert_with_faces({1, 2});
  path.insert_with_faces({2, 3});
  const double kikuchi = kikuchi_entropy(joint, path, MultiplicityMode::Moebius);
  const double bethe = tree_bethe_entropy(joint, chain_edges(joint));
  CHECK(std::abs(kikuchi - bethe) < 1e-12);

  // also on a star tree, where a vertex has degree 3
  SimplicialComplex star;
  star.insert_with_faces({0, 1});
  star.insert_with_faces({0, 2});
  star.insert_with_faces({0, 3});
  const double star_kikuchi = kikuchi_entropy(joint, star, MultiplicityMode::Moebius);
  const double star_bethe =
      tree_bethe_entropy(joint, {{"a", "b"}, {"a", "c"}, {"a", "d"}});
  CHECK(std::abs(star_kikuchi - star_bethe) < 1e-12);
}

TEST_CASE("kikuchi with moebius numbers is exact on a junction tree") {
  // joint p(a,b,c,d) = p1(a,b,c) p2(d | b,c): Markov across the shared pair
  auto gen = oracles::rng(367);
  const auto p1 = oracles::random_masses(gen, 8);
  std::vector<double> p2(16);  // p(d | b, c) indexed by (b, c, d)
  for (std::size_t bc = 0; bc < 4; ++bc) {
    const double u = oracles::uniform(gen, 0.1, 0.9);
    p2[bc * 2] = u;
    p2[bc * 2 + 1] = 1.0 - u;
  }
  std::vector<double> joint_masses(16);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t d = 0; d < 2; ++d) {
          joint_masses[((a * 2 + b) * 2 + c) * 2 + d] =
              p1[(a * 2 + b) * 2 + c] * p2[(b * 2 + c) * 2 + d];
        }
      }
    }
  }
  const ProbabilityTable joint({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, joint_masses);

  SimplicialComplex bowtie;
  bowtie.insert_with_faces({0, 1, 2});
  bowtie.insert_with_faces({1, 2, 3});
  const double kikuchi = kikuchi_entropy(joint, bowtie, MultiplicityMode::Moebius);
  CHECK(std::abs(kikuchi - shannon(joint)) < 1e-12);
}

TEST_CASE("kikuchi rejects vertices outside the variable set") {
  const ProbabilityTable joint = random_joint(373, {{"a", 2}, {"b", 2}});
  SimplicialComplex complex;
  complex.insert_with_faces({0, 5});
  CHECK_THROWS_AS(kikuchi_entropy(joint, complex, MultiplicityMode::Moebius), ValidationError);
}
