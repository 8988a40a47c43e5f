// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Usage: pathboltz_acceptance [path-to-pathboltz-cli]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pathboltz/circuits.hpp"
#include "pathboltz/entropy.hpp"
#include "pathboltz/io.hpp"
#include "pathboltz/ising.hpp"
#include "pathboltz/layered_network.hpp"
#include "pathboltz/operators.hpp"
#include "pathboltz/path_integral.hpp"
#include "pathboltz/rbm.hpp"
#include "pathboltz/trainer.hpp"

using namespace pathboltz;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<bool()>& check) {
  bool ok = false;
  std::string note;
  try {
    ok = check();
  } catch (const std::exception& err) {
    note = std::string(" (") + err.what() + ")";
  }
  std::printf("[%s] criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
              note.c_str());
  if (!ok) ++failures;
}

rbm::RbmParams random_rbm(std::mt19937_64& gen, Eigen::Index n, Eigen::Index p,
                          double scale = 1.0) {
  rbm::RbmParams params;
  params.n = n;
  params.p = p;
  params.a = RealVector::Zero(n);
  params.b = RealVector::Zero(p);
  params.w = Eigen::MatrixXd::Zero(n, p);
  for (Eigen::Index i = 0; i < n; ++i) params.a[i] = scale * oracles::uniform(gen);
  for (Eigen::Index j = 0; j < p; ++j) params.b[j] = scale * oracles::uniform(gen);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) params.w(i, j) = scale * oracles::uniform(gen);
  }
  return params;
}

double max_table_deviation(const ProbabilityTable& a, const ProbabilityTable& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.masses()[i] - b.masses()[i]));
  }
  return worst;
}

LayeredNetwork random_real_net(std::mt19937_64& gen, const std::vector<Eigen::Index>& dims,
                               bool last_visible) {
  std::vector<LayerSpec> layers;
  std::vector<RealVector> biases;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    LayerKind kind = LayerKind::Hidden;
    if (a == 0 || (last_visible && a + 1 == dims.size())) kind = LayerKind::Visible;
    layers.push_back({"L" + std::to_string(a), dims[a], kind});
    RealVector bias(dims[a]);
    for (Eigen::Index i = 0; i < dims[a]; ++i) bias[i] = 0.4 * oracles::uniform(gen);
    biases.push_back(std::move(bias));
  }
  std::vector<ComplexMatrix> weights;
  for (std::size_t a = 0; a + 1 < dims.size(); ++a) {
    ComplexMatrix w(dims[a], dims[a + 1]);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = Complex(0.6 * oracles::uniform(gen), 0.0);
      }
    }
    weights.push_back(std::move(w));
  }
  return LayeredNetwork(std::move(layers), std::move(biases), std::move(weights));
}

std::string cli_binary;  // set from argv[1] when provided

int run_cli(const std::string& args, int threads) {
  const std::string command = "PATHBOLTZ_THREADS=" + std::to_string(threads) + " '" + cli_binary +
                              "' " + args + " > /dev/null 2>&1";
  return std::system(command.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_binary = argv[1];

  criterion(1, "path enumeration equals kernel contraction (200 random chains, 1e-12)", [] {
    auto gen = oracles::rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Index dim = 2 + static_cast<Eigen::Index>(gen() % 3);
      const std::size_t slices = 1 + static_cast<std::size_t>(gen() % 4);
      std::vector<ComplexMatrix> kernels;
      for (std::size_t k = 0; k < slices; ++k) {
        kernels.push_back(oracles::random_hermitian(gen, dim));
      }
      const TransferChain chain(kernels);
      const Eigen::Index start = static_cast<Eigen::Index>(gen() % dim);
      const Eigen::Index end = static_cast<Eigen::Index>(gen() % dim);
      if (std::abs(amplitude_by_enumeration(chain, start, end) -
                   amplitude_by_contraction(chain, start, end)) > 1e-12) {
        return false;
      }
    }
    return true;
  });

  criterion(2, "exact slicing reproduces the propagator; real time stays unitary (1e-10)", [] {
    auto gen = oracles::rng(1002);
    for (Eigen::Index dim : {2, 4, 8}) {
      const HermitianOperator h(oracles::random_hermitian(gen, dim));
      for (const std::size_t slices : {1u, 4u, 9u}) {
        const auto thermal = EvolutionParameter::thermal(1.1);
        if (frobenius_distance(contract(build_chain(h, thermal, slices, SliceScheme::Exact)),
                               matrix_exponential(h, thermal)) > 1e-10) {
          return false;
        }
        const auto real_time = EvolutionParameter::real_time(0.9);
        const ComplexMatrix evolved =
            contract(build_chain(h, real_time, slices, SliceScheme::Exact));
        if (frobenius_distance(evolved, matrix_exponential(h, real_time)) > 1e-10) return false;
        if (!check_unitary(evolved, 1e-10)) return false;
      }
    }
    return true;
  });

  criterion(3, "split error ratios: first order in [1.6,2.4], strang in [3.4,4.6]", [] {
    auto gen = oracles::rng(61);
    const HermitianOperator h(oracles::random_hermitian(gen, 4));
    const auto beta = EvolutionParameter::thermal(1.0);
    for (const std::size_t p : {8u, 16u, 32u}) {
      const double first = trotter_error(h, beta, p, SliceScheme::SplitFirstOrder) /
                           trotter_error(h, beta, 2 * p, SliceScheme::SplitFirstOrder);
      if (first < 1.6 || first > 2.4) return false;
      const double strang = trotter_error(h, beta, p, SliceScheme::SplitStrang) /
                            trotter_error(h, beta, 2 * p, SliceScheme::SplitStrang);
      if (strang < 3.4 || strang > 4.6) return false;
    }
    return true;
  });

  criterion(4, "partition function: trace form vs eigenvalue sum (1e-10), two-level closed form",
            [] {
              auto gen = oracles::rng(1004);
              const ComplexMatrix m = oracles::random_hermitian(gen, 6);
              const double beta = 0.85;
              const Complex z =
                  partition_function(HermitianOperator(m), EvolutionParameter::thermal(beta));
              Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
              double eigensum = 0.0;
              for (Eigen::Index k = 0; k < 6; ++k) {
                eigensum += std::exp(-beta * solver.eigenvalues()[k]);
              }
              if (std::abs(z - Complex(eigensum, 0)) > 1e-10) return false;

              ComplexMatrix two_level = ComplexMatrix::Zero(2, 2);
              two_level(1, 1) = Complex(1.0, 0);
              const Complex z2 = partition_function(HermitianOperator(two_level),
                                                    EvolutionParameter::thermal(std::log(2.0)));
              return std::abs(z2 - Complex(1.5, 0)) <= 1e-12;
            });

  criterion(5, "joint table = z-only thermal diagonal = classical chain (50 models, 1e-12)", [] {
    auto gen = oracles::rng(1005);
    for (int trial = 0; trial < 50; ++trial) {
      const rbm::RbmParams params = random_rbm(gen, 2, 2);
      const ProbabilityTable direct = rbm::gibbs_table(params);
      const ProbabilityTable via_pauli =
          ising::thermal_diagonal(ising::rbm_to_pauli(params), 1.0);
      const ProbabilityTable via_chain =
          path_distribution(classical_chain(rbm::as_layered(params)), EndpointMode::Free);
      if (max_table_deviation(direct, via_pauli) > 1e-12) return false;
      if (max_table_deviation(direct, via_chain) > 1e-12) return false;
      if (max_table_deviation(via_pauli, via_chain) > 1e-12) return false;
    }
    return true;
  });

  criterion(6, "closed-form visible marginal (1e-12) and unit-norm amplitude vector", [] {
    auto gen = oracles::rng(1006);
    for (int trial = 0; trial < 20; ++trial) {
      const rbm::RbmParams params = random_rbm(gen, 3, 3);
      const ProbabilityTable closed = rbm::visible_marginal(params);
      const ProbabilityTable summed = rbm::gibbs_table(params).marginal({"v"});
      if (max_table_deviation(closed, summed) > 1e-12) return false;

      const RealVector psi = rbm::ansatz(params);
      double norm = 0.0;
      for (Eigen::Index v = 0; v < psi.size(); ++v) norm += psi[v] * psi[v];
      if (std::abs(norm - 1.0) > 1e-12) return false;
    }
    return true;
  });

  criterion(7, "block Gibbs sampler within 0.01 total variation at 2e5 sweeps (5 seeds)", [] {
    auto gen = oracles::rng(1007);
    const rbm::RbmParams params = random_rbm(gen, 2, 2, 0.8);
    const ProbabilityTable exact = rbm::gibbs_table(params);
    for (const std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
      const ProbabilityTable empirical = rbm::gibbs_sample(params, 200000, 1000, seed);
      double tv = 0.0;
      for (std::size_t i = 0; i < exact.size(); ++i) {
        tv += std::abs(empirical.masses()[i] - exact.masses()[i]);
      }
      if (tv / 2.0 > 0.01) return false;
    }
    return true;
  });

  criterion(8, "entropy stack: chain formula, tree form, cluster form agree as required", [] {
    auto gen = oracles::rng(1008);

    // two-layer chain formula is the (nonnegative) mutual information
    const LayeredNetwork pair_net = random_real_net(gen, {3, 3}, true);
    const ProbabilityTable pair = path_distribution(classical_chain(pair_net), EndpointMode::Free);
    const double chain_value = chain_entropy(pair);
    {
      const auto& masses = pair.masses();
      const auto px = oracles::raw_marginal(masses, {3, 3}, {0});
      const auto ph = oracles::raw_marginal(masses, {3, 3}, {1});
      const double mi =
          oracles::raw_entropy(px) + oracles::raw_entropy(ph) - oracles::raw_entropy(masses);
      if (std::abs(chain_value - mi) > 1e-12 || chain_value < -1e-15) return false;
    }

    // longer chains decompose into adjacent mutual informations minus
    // interior single-variable entropies
    const LayeredNetwork chain_net = random_real_net(gen, {2, 3, 2, 2}, true);
    const ProbabilityTable joint =
        path_distribution(classical_chain(chain_net), EndpointMode::Free);
    {
      const std::vector<std::size_t> cards{2, 3, 2, 2};
      const auto& masses = joint.masses();
      const auto s = [&](std::vector<std::size_t> keep) {
        return oracles::raw_entropy(oracles::raw_marginal(masses, cards, keep));
      };
      const double decomposition = (s({0}) + s({1}) - s({0, 1})) + (s({1}) + s({2}) - s({1, 2})) +
                                   (s({2}) + s({3}) - s({2, 3})) - s({1}) - s({2});
      if (std::abs(chain_entropy(joint) - decomposition) > 1e-12) return false;
    }

    // tree form is exact on chain-Markov joints
    if (std::abs(tree_bethe_entropy(joint, chain_edges(joint)) - shannon(joint)) > 1e-10) {
      return false;
    }

    // cluster form with recursive counting numbers reduces to the tree form
    SimplicialComplex path_complex;
    path_complex.insert_with_faces({0, 1});
    path_complex.insert_with_faces({1, 2});
    path_complex.insert_with_faces({2, 3});
    const double kikuchi = kikuchi_entropy(joint, path_complex, MultiplicityMode::Moebius);
    return std::abs(kikuchi - tree_bethe_entropy(joint, chain_edges(joint))) <= 1e-12;
  });

  criterion(9, "circuit semantics: rotations, control table, sampling, round-trip, census", [] {
    // single-qubit rotation probabilities at five angles
    for (const double theta : {0.3, M_PI / 3, M_PI / 2, 1.9, 2.7}) {
      CircuitDescription c;
      c.num_qubits = 1;
      c.labels = {"q"};
      c.gates = {Gate::ry(theta, 0), Gate::measure(0)};
      const ComplexVector state = simulate_statevector(c);
      const double expected = std::sin(theta / 2) * std::sin(theta / 2);
      if (std::abs(std::norm(state[1]) - expected) > 1e-12) return false;
    }

    // doubly controlled rotation fires only on |11>
    for (int preparation = 0; preparation < 4; ++preparation) {
      CircuitDescription c;
      c.num_qubits = 3;
      c.labels = {"c0", "c1", "t"};
      if (preparation & 2) c.gates.push_back(Gate::ry(M_PI, 0));
      if (preparation & 1) c.gates.push_back(Gate::ry(M_PI, 1));
      c.gates.push_back(Gate::ccry(2.1, 0, 1, 2));
      const ComplexVector state = simulate_statevector(c);
      double p1 = 0.0;
      for (Eigen::Index i = 0; i < 8; ++i) {
        if (i & 1) p1 += std::norm(state[i]);
      }
      const double expected =
          preparation == 3 ? std::sin(2.1 / 2) * std::sin(2.1 / 2) : 0.0;
      if (std::abs(p1 - expected) > 1e-12) return false;
    }

    // sampled frequency of a balanced rotation inside three sigma
    {
      CircuitDescription c;
      c.num_qubits = 1;
      c.labels = {"q"};
      c.gates = {Gate::ry(M_PI / 2, 0), Gate::measure(0)};
      const auto counts = sample_circuit(c, 100000, 31);
      const double frequency =
          static_cast<double>(counts.count(1) ? counts.at(1) : 0) / 100000.0;
      if (std::abs(frequency - 0.5) > 3.0 * 0.5 / std::sqrt(100000.0)) return false;
    }

    // serialization round-trip on 100 random circuits
    auto gen = oracles::rng(1009);
    for (int trial = 0; trial < 100; ++trial) {
      CircuitDescription c;
      c.num_qubits = 2 + static_cast<Eigen::Index>(gen() % 4);
      for (Eigen::Index q = 0; q < c.num_qubits; ++q) c.labels.push_back("q" + std::to_string(q));
      for (int g = 0; g < 8; ++g) {
        const auto target = static_cast<Eigen::Index>(gen() % c.num_qubits);
        if (c.num_qubits >= 3 && gen() % 2 == 0) {
          const auto c0 = (target + 1) % c.num_qubits;
          const auto c1 = (target + 2) % c.num_qubits;
          c.gates.push_back(Gate::ccry(oracles::uniform(gen, -6, 6), c0, c1, target));
        } else {
          c.gates.push_back(Gate::ry(oracles::uniform(gen, -6, 6), target));
        }
      }
      for (Eigen::Index q = 0; q < c.num_qubits; ++q) c.gates.push_back(Gate::measure(q));
      if (!(circuit_from_text(circuit_to_text(c)) == c)) return false;
      if (!(io::circuit_from_json(io::circuit_to_json(c)) == c)) return false;
    }

    // register census for a one-visible, two-hidden-layer network with four
    // nonzero weight entries
    Eigen::MatrixXd w01(1, 2), w12(2, 2);
    w01 << 0.4, -0.2;
    w12 << 0.5, 0.0, 0.0, -0.7;
    std::vector<LayerSpec> layers{{"x", 1, LayerKind::Visible},
                                  {"h1", 2, LayerKind::Hidden},
                                  {"h2", 2, LayerKind::Hidden}};
    const LayeredNetwork net(layers,
                             {RealVector::Constant(1, 0.2), RealVector::Constant(2, 0.1),
                              RealVector::Constant(2, -0.3)},
                             {w01.cast<Complex>(), w12.cast<Complex>()});
    const CircuitDescription c = emit_circuit(net, 0.7);
    std::size_t node_qubits = 5, ry = 0, ccry = 0, measure = 0;
    for (const auto& g : c.gates) {
      if (g.kind == GateKind::Ry) ++ry;
      if (g.kind == GateKind::CCRy) ++ccry;
      if (g.kind == GateKind::Measure) ++measure;
    }
    return c.num_qubits == 9 && ry == node_qubits && ccry == 4 && measure == 9;
  });

  criterion(10, "trainer: gradient check 1e-6, teacher-student 4/5 seeds, self-target KL", [] {
    auto gen = oracles::rng(1010);

    // analytic vs central difference on a 29-parameter network
    {
      const LayeredNetwork teacher = random_real_net(gen, {2, 3, 2}, true);
      const LayeredNetwork student = random_real_net(gen, {2, 3, 2}, true);
      std::vector<std::pair<RealVector, RealVector>> pairs;
      for (int s = 0; s < 12; ++s) {
        RealVector x(2);
        x << oracles::uniform(gen), oracles::uniform(gen);
        pairs.emplace_back(x, forward_map(teacher, ActivationKind::Tanh, x));
      }
      const auto data = trainer::TrainingSet::map_pairs(pairs);
      trainer::FitConfig analytic;
      analytic.activation = ActivationKind::Tanh;
      trainer::FitConfig fd = analytic;
      fd.gradient = trainer::GradientMode::CentralDifference;
      const auto g_an = trainer::gradient(student, data, analytic);
      const auto g_fd = trainer::gradient(student, data, fd);
      for (std::size_t k = 0; k < g_an.size(); ++k) {
        const double scale = std::max({1.0, std::abs(g_an[k]), std::abs(g_fd[k])});
        if (std::abs(g_an[k] - g_fd[k]) / scale > 1e-6) return false;
      }
    }

    // teacher-student recovery on at least four of five seeds
    {
      const LayeredNetwork teacher = random_real_net(gen, {2, 3, 2}, true);
      std::vector<std::pair<RealVector, RealVector>> pairs;
      for (int s = 0; s < 20; ++s) {
        RealVector x(2);
        x << oracles::uniform(gen), oracles::uniform(gen);
        pairs.emplace_back(x, forward_map(teacher, ActivationKind::Identity, x));
      }
      const auto data = trainer::TrainingSet::map_pairs(pairs);
      int recovered = 0;
      for (const std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        trainer::FitConfig cfg;
        cfg.optimizer = trainer::OptimizerKind::AdamStyle;
        cfg.learning_rate = 0.05;
        cfg.steps = 5000;
        cfg.seed = seed;
        const auto result = trainer::fit(trainer::seeded_init(teacher, seed), data, cfg);
        if (result.trace.back() <= 1e-6) ++recovered;
      }
      if (recovered < 4) return false;
    }

    // a known bipartite model recovered from its own table
    {
      const rbm::RbmParams params = random_rbm(gen, 2, 2, 0.7);
      const auto data = trainer::TrainingSet::target_gibbs(rbm::gibbs_table(params));
      trainer::FitConfig cfg;
      cfg.loss = trainer::LossKind::KullbackLeibler;
      cfg.optimizer = trainer::OptimizerKind::AdamStyle;
      cfg.learning_rate = 0.05;
      cfg.steps = 2000;
      const auto result =
          trainer::fit(trainer::seeded_init(rbm::as_layered(params), 9), data, cfg);
      return result.trace.back() <= 1e-4;
    }
  });

  criterion(11, "CLI outputs are byte-stable across reruns and thread counts", [] {
    if (cli_binary.empty()) return false;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pathboltz_acceptance";
    fs::create_directories(dir);

    // seeded sampler runs
    {
      auto gen = oracles::rng(1011);
      io::write_file(dir / "rbm.json", io::rbm_to_json(random_rbm(gen, 2, 2, 0.5)));
      const std::string base = "rbm --spec '" + (dir / "rbm.json").string() +
                               "' --sample --sweeps 20000 --burn-in 500 --seed 7 --out '";
      if (run_cli(base + (dir / "s1.csv").string() + "'", 1) != 0) return false;
      if (run_cli(base + (dir / "s2.csv").string() + "'", 4) != 0) return false;
      if (io::read_file(dir / "s1.csv") != io::read_file(dir / "s2.csv")) return false;
    }

    // threaded path enumeration
    {
      auto gen = oracles::rng(1012);
      io::write_matrix_csv(dir / "H.csv", oracles::random_hermitian(gen, 6));
      const std::string base = "propagate --hamiltonian '" + (dir / "H.csv").string() +
                               "' --beta 0.9 --slices 8 --scheme exact --start 0 --end 1 "
                               "--method enumerate --out '";
      if (run_cli(base + (dir / "p1.json").string() + "'", 1) != 0) return false;
      if (run_cli(base + (dir / "p2.json").string() + "'", 6) != 0) return false;
      if (io::read_file(dir / "p1.json") != io::read_file(dir / "p2.json")) return false;
    }

    // deterministic training
    {
      auto gen = oracles::rng(1013);
      const LayeredNetwork net = random_real_net(gen, {2, 3, 2}, true);
      io::write_network_json(dir / "net.json", net);
      std::vector<std::pair<RealVector, RealVector>> pairs;
      for (int s = 0; s < 8; ++s) {
        RealVector x(2);
        x << oracles::uniform(gen), oracles::uniform(gen);
        pairs.emplace_back(x, forward_map(net, ActivationKind::Identity, x));
      }
      io::write_file(dir / "pairs.csv", io::pairs_to_csv(pairs));
      const std::string base = "train --network '" + (dir / "net.json").string() + "' --data '" +
                               (dir / "pairs.csv").string() +
                               "' --loss sq --opt adam --lr 0.02 --steps 40 --seed 11 "
                               "--init random --trace '" +
                               (dir / "trace.csv").string() + "' --out '";
      if (run_cli(base + (dir / "t1.json").string() + "'", 1) != 0) return false;
      const std::string trace_one = io::read_file(dir / "trace.csv");
      if (run_cli(base + (dir / "t2.json").string() + "'", 3) != 0) return false;
      if (io::read_file(dir / "t1.json") != io::read_file(dir / "t2.json")) return false;
      return io::read_file(dir / "trace.csv") == trace_one;
    }
  });

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
