// pathboltz command-line tool: propagators, spin models, entropies, circuits,
// and network training over the shared file schemas.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathboltz/circuits.hpp"
#include "pathboltz/entropy.hpp"
#include "pathboltz/errors.hpp"
#include "pathboltz/io.hpp"
#include "pathboltz/ising.hpp"
#include "pathboltz/layered_network.hpp"
#include "pathboltz/operators.hpp"
#include "pathboltz/path_integral.hpp"
#include "pathboltz/rbm.hpp"
#include "pathboltz/trainer.hpp"
#include "pathboltz/version.hpp"

namespace fs = std::filesystem;
using namespace pathboltz;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

/// Collects inputs, parameters, and outputs for the manifest written next to
/// the primary output file.
class Run {
 public:
  explicit Run(std::string subcommand) { manifest_.subcommand = std::move(subcommand); }

  std::string input(const std::string& flag, const fs::path& path) {
    const std::string content = io::read_file(path);
    manifest_.inputs[flag] = path.string();
    manifest_.digests[path.string()] = io::fnv1a64_hex(content);
    return content;
  }

  void param(const std::string& name, const std::string& value) {
    manifest_.parameters[name] = value;
  }
  void param(const std::string& name, double value) {
    manifest_.parameters[name] = io::format_double(value);
  }
  void param(const std::string& name, std::size_t value) {
    manifest_.parameters[name] = std::to_string(value);
  }
  void seed(std::uint64_t seed) { manifest_.seed = seed; }

  void emit(const fs::path& path, const std::string& content) {
    io::write_file(path, content);
    manifest_.outputs.push_back(path.string());
  }

  /// Writes the manifest next to the first output (no outputs, no manifest).
  void finish() {
    if (manifest_.outputs.empty()) return;
    fs::path manifest_path(manifest_.outputs.front());
    manifest_path.replace_extension(".manifest.json");
    io::write_file(manifest_path, manifest_.to_json());
  }

 private:
  io::RunManifest manifest_;
};

EvolutionParameter beta_from_flags(double beta, double time, bool beta_set, bool time_set) {
  if (beta_set == time_set) {
    throw ValidationError("exactly one of --beta and --time is required");
  }
  return beta_set ? EvolutionParameter::thermal(beta) : EvolutionParameter::real_time(time);
}

/// Operator input: either a dense matrix CSV or a Pauli-term JSON.
HermitianOperator operator_from_flags(Run& run, const fs::path& matrix_csv,
                                      const fs::path& pauli_json) {
  if (matrix_csv.empty() == pauli_json.empty()) {
    throw ValidationError("exactly one of --hamiltonian and --pauli is required");
  }
  if (!matrix_csv.empty()) {
    return HermitianOperator(io::matrix_from_csv(run.input("hamiltonian", matrix_csv)));
  }
  return ising::build_dense(io::pauli_from_json(run.input("pauli", pauli_json)));
}

std::string complex_to_string(Complex z) {
  return io::format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         io::format_double(std::abs(z.imag())) + "i";
}

std::vector<std::size_t> parse_slice_list(const std::string& text) {
  std::vector<std::size_t> slices;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      const long value = std::stol(token);
      if (value < 1) throw std::out_of_range("nonpositive");
      slices.push_back(static_cast<std::size_t>(value));
    } catch (const std::exception&) {
      throw ValidationError("--slices: bad slice count '" + token + "'");
    }
  }
  if (slices.empty()) throw ValidationError("--slices: empty list");
  return slices;
}

std::string entropy_terms_csv(const std::vector<EntropyTerm>& terms, double total) {
  std::ostringstream out;
  out << "term,entropy,multiplicity,contribution\n";
  for (const auto& term : terms) {
    out << term.label << "," << io::format_double(term.value) << "," << term.multiplicity << ","
        << io::format_double(term.contribution) << "\n";
  }
  out << "total,,," << io::format_double(total) << "\n";
  return out.str();
}

int run_propagate(const fs::path& hamiltonian, const fs::path& pauli, double beta, bool beta_set,
                  double time, bool time_set, std::size_t slices, const std::string& scheme,
                  Eigen::Index start, Eigen::Index end, const std::string& method,
                  const fs::path& dump_chain, const fs::path& out) {
  Run run("propagate");
  const HermitianOperator h = operator_from_flags(run, hamiltonian, pauli);
  const EvolutionParameter parameter = beta_from_flags(beta, time, beta_set, time_set);
  const SliceScheme slice_scheme = slice_scheme_from_string(scheme);
  if (method != "contract" && method != "enumerate") {
    throw ValidationError("--method must be contract|enumerate");
  }
  run.param("beta", complex_to_string(parameter.beta()));
  run.param("slices", slices);
  run.param("scheme", scheme);
  run.param("start", static_cast<std::size_t>(start));
  run.param("end", static_cast<std::size_t>(end));
  run.param("method", method);

  const TransferChain chain = build_chain(h, parameter, slices, slice_scheme);
  const Complex amplitude = method == "enumerate" ? amplitude_by_enumeration(chain, start, end)
                                                  : amplitude_by_contraction(chain, start, end);

  std::printf("amplitude[%td -> %td] = %s\n", start, end, complex_to_string(amplitude).c_str());

  if (!dump_chain.empty()) run.emit(dump_chain, io::chain_to_json(chain, slice_scheme));
  if (!out.empty()) {
    std::ostringstream json;
    json << "{\n  \"re\": " << io::format_double(amplitude.real())
         << ",\n  \"im\": " << io::format_double(amplitude.imag()) << "\n}\n";
    run.emit(out, json.str());
  }
  run.finish();
  return 0;
}

int run_partition(const fs::path& hamiltonian, const fs::path& pauli, double beta, bool beta_set,
                  double time, bool time_set, const fs::path& out) {
  Run run("partition");
  const HermitianOperator h = operator_from_flags(run, hamiltonian, pauli);
  const EvolutionParameter parameter = beta_from_flags(beta, time, beta_set, time_set);
  run.param("beta", complex_to_string(parameter.beta()));

  const Complex z = partition_function(h, parameter);
  if (parameter.kind() == BetaKind::Thermal) {
    std::printf("Z = %s\n", io::format_double(z.real()).c_str());
  } else {
    std::printf("Z = %s\n", complex_to_string(z).c_str());
  }
  if (!out.empty()) {
    std::ostringstream json;
    json << "{\n  \"re\": " << io::format_double(z.real())
         << ",\n  \"im\": " << io::format_double(z.imag()) << "\n}\n";
    run.emit(out, json.str());
  }
  run.finish();
  return 0;
}

int run_rbm(const fs::path& spec, bool exact, bool sample, bool marginal, bool ansatz_out,
            std::size_t sweeps, std::size_t burn_in, std::uint64_t seed, const fs::path& out) {
  Run run("rbm");
  const rbm::RbmParams params = io::rbm_from_json(run.input("spec", spec));
  if (exact == sample) throw ValidationError("exactly one of --exact and --sample is required");

  std::string csv;
  if (exact) {
    if (marginal) {
      csv = io::table_to_csv(rbm::visible_marginal(params));
    } else if (ansatz_out) {
      const RealVector psi = rbm::ansatz(params);
      std::ostringstream text;
      text << "v,amplitude\n";
      for (Eigen::Index v = 0; v < psi.size(); ++v) {
        text << v << "," << io::format_double(psi[v]) << "\n";
      }
      csv = text.str();
    } else {
      csv = io::table_to_csv(rbm::gibbs_table(params));
    }
    run.param("mode", std::string(marginal ? "marginal" : (ansatz_out ? "ansatz" : "exact")));
  } else {
    run.param("mode", std::string("sample"));
    run.param("sweeps", sweeps);
    run.param("burn-in", burn_in);
    run.seed(seed);
    csv = io::table_to_csv(rbm::gibbs_sample(params, sweeps, burn_in, seed));
  }

  std::fputs(csv.c_str(), stdout);
  if (!out.empty()) run.emit(out, csv);
  run.finish();
  return 0;
}

int run_entropy(const fs::path& network, const std::string& mode, const std::string& multiplicity,
                const fs::path& out) {
  Run run("entropy");
  const LayeredNetwork net = io::network_from_json(run.input("network", network));
  run.param("mode", mode);

  const ProbabilityTable joint = network_gibbs_table(net);
  std::vector<EntropyTerm> terms;
  double total = 0.0;
  if (mode == "paper") {
    terms = chain_entropy_terms(joint);
    total = chain_entropy(joint);
    // mutual-information decomposition reported alongside the signed sum
    for (const auto& mi : adjacent_mutual_information(joint)) terms.push_back(mi);
  } else if (mode == "bethe") {
    terms = tree_bethe_terms(joint, chain_edges(joint));
    total = tree_bethe_entropy(joint, chain_edges(joint));
  } else if (mode == "kikuchi") {
    const MultiplicityMode counting = multiplicity_mode_from_string(multiplicity);
    const SimplicialComplex complex = network_complex(net);
    terms = kikuchi_terms(joint, complex, counting);
    total = kikuchi_entropy(joint, complex, counting);
    run.param("multiplicity", multiplicity);
  } else {
    throw ValidationError("--mode must be paper|bethe|kikuchi");
  }

  const std::string csv = entropy_terms_csv(terms, total);
  std::fputs(csv.c_str(), stdout);
  if (!out.empty()) run.emit(out, csv);
  run.finish();
  return 0;
}

int run_train(const fs::path& network, const fs::path& pairs_path,
              const fs::path& propagator_path, const fs::path& gibbs_path,
              const std::string& loss_kind, const std::string& optimizer, double lr,
              std::size_t steps, std::uint64_t seed, const std::string& grad_mode, double fd_step,
              const std::string& activation, const std::string& init, const fs::path& out,
              const fs::path& trace_path) {
  Run run("train");
  LayeredNetwork net = io::network_from_json(run.input("network", network));

  const int sources = (!pairs_path.empty()) + (!propagator_path.empty()) + (!gibbs_path.empty());
  if (sources != 1) {
    throw ValidationError(
        "exactly one of --data, --target-propagator, --target-rbm is required");
  }

  std::optional<trainer::TrainingSet> data;
  if (!pairs_path.empty()) {
    run.input("data", pairs_path);
    data = trainer::TrainingSet::map_pairs(io::read_pairs_csv(
        pairs_path, net.layer(0).dim, net.layers().back().dim));
  } else if (!propagator_path.empty()) {
    data = trainer::TrainingSet::target_propagator(
        io::matrix_from_csv(run.input("target-propagator", propagator_path)));
  } else {
    const rbm::RbmParams params = io::rbm_from_json(run.input("target-rbm", gibbs_path));
    data = trainer::TrainingSet::target_gibbs(rbm::gibbs_table(params));
  }

  trainer::FitConfig cfg;
  if (loss_kind == "sq") {
    cfg.loss = trainer::LossKind::SquaredError;
  } else if (loss_kind == "kl") {
    cfg.loss = trainer::LossKind::KullbackLeibler;
  } else {
    throw ValidationError("--loss must be sq|kl");
  }
  if (optimizer == "gd") {
    cfg.optimizer = trainer::OptimizerKind::GradientDescent;
  } else if (optimizer == "adam") {
    cfg.optimizer = trainer::OptimizerKind::AdamStyle;
  } else {
    throw ValidationError("--opt must be gd|adam");
  }
  if (grad_mode == "analytic") {
    cfg.gradient = trainer::GradientMode::Analytic;
  } else if (grad_mode == "fd") {
    cfg.gradient = trainer::GradientMode::CentralDifference;
  } else {
    throw ValidationError("--grad must be analytic|fd");
  }
  cfg.learning_rate = lr;
  cfg.steps = steps;
  cfg.seed = seed;
  cfg.fd_step = fd_step;
  cfg.activation = activation_from_string(activation);

  if (init == "random") {
    net = trainer::seeded_init(net, seed);
  } else if (init != "warm") {
    throw ValidationError("--init must be warm|random");
  }

  run.param("loss", loss_kind);
  run.param("opt", optimizer);
  run.param("lr", lr);
  run.param("steps", steps);
  run.param("grad", grad_mode);
  run.param("activation", activation);
  run.param("init", init);
  run.seed(seed);

  const auto emit_trace = [&](const std::vector<double>& trace) {
    if (trace_path.empty()) return;
    std::ostringstream csv;
    csv << "step,loss\n";
    for (std::size_t s = 0; s < trace.size(); ++s) {
      csv << s << "," << io::format_double(trace[s]) << "\n";
    }
    run.emit(trace_path, csv.str());
  };

  try {
    const trainer::FitResult result = trainer::fit(net, *data, cfg);
    std::printf("final loss = %s\n", io::format_double(result.trace.back()).c_str());
    if (!out.empty()) run.emit(out, io::network_to_json(result.net));
    emit_trace(result.trace);
    run.finish();
    return 0;
  } catch (const trainer::FitDivergenceError& err) {
    emit_trace(err.trace);
    run.finish();
    throw;
  }
}

int run_circuit(bool emit_mode, const fs::path& network, double time, std::uint64_t shots,
                std::uint64_t seed, const fs::path& out) {
  Run run(emit_mode ? "circuit emit" : "circuit sim");
  const LayeredNetwork net = io::network_from_json(run.input("network", network));
  run.param("time", time);
  const CircuitDescription circuit = emit_circuit(net, time);

  if (emit_mode) {
    const std::string text = circuit_to_text(circuit);
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) {
      run.emit(out, text);
      fs::path twin = out;
      twin.replace_extension(".json");
      run.emit(twin, io::circuit_to_json(circuit));
    }
    run.finish();
    return 0;
  }

  run.param("shots", static_cast<std::size_t>(shots));
  run.seed(seed);
  const ComplexVector state = simulate_statevector(circuit);
  const auto counts = sample_circuit(circuit, shots, seed);

  std::ostringstream csv;
  csv << "outcome,bitstring,count,frequency,probability\n";
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const auto it = counts.find(static_cast<std::uint64_t>(i));
    const std::uint64_t count = it == counts.end() ? 0 : it->second;
    if (count == 0 && std::norm(state[i]) < 1e-15) continue;
    csv << i << "," << basis_label(static_cast<std::uint64_t>(i), circuit.num_qubits) << ","
        << count << ","
        << io::format_double(static_cast<double>(count) / static_cast<double>(shots)) << ","
        << io::format_double(std::norm(state[i])) << "\n";
  }
  std::fputs(csv.str().c_str(), stdout);
  if (!out.empty()) run.emit(out, csv.str());
  run.finish();
  return 0;
}

int run_trotter(const fs::path& hamiltonian, const fs::path& pauli, double beta, bool beta_set,
                double time, bool time_set, const std::string& scheme,
                const std::string& slice_list, const fs::path& out) {
  Run run("trotter");
  const HermitianOperator h = operator_from_flags(run, hamiltonian, pauli);
  const EvolutionParameter parameter = beta_from_flags(beta, time, beta_set, time_set);
  const SliceScheme slice_scheme = slice_scheme_from_string(scheme);
  const std::vector<std::size_t> slices = parse_slice_list(slice_list);
  run.param("beta", complex_to_string(parameter.beta()));
  run.param("scheme", scheme);
  run.param("slices", slice_list);

  std::ostringstream csv;
  csv << "slices,error,ratio\n";
  double previous = 0.0;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const double error = trotter_error(h, parameter, slices[i], slice_scheme);
    csv << slices[i] << "," << io::format_double(error) << ",";
    if (i > 0 && error > 0.0) csv << io::format_double(previous / error);
    csv << "\n";
    previous = error;
  }
  std::fputs(csv.str().c_str(), stdout);
  if (!out.empty()) run.emit(out, csv.str());
  run.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layered propagators, bipartite spin models, entropies, and circuit templates"};
  app.set_version_flag("--version", std::string("pathboltz ") + kVersion);
  app.require_subcommand(1);

  // propagate
  auto* propagate = app.add_subcommand("propagate", "slice exp(-beta H) and evaluate amplitudes");
  fs::path pr_h, pr_pauli, pr_dump, pr_out;
  double pr_beta = 0.0, pr_time = 0.0;
  std::size_t pr_slices = 1;
  std::string pr_scheme = "exact", pr_method = "contract";
  Eigen::Index pr_start = 0, pr_end = 0;
  propagate->add_option("--hamiltonian", pr_h, "operator matrix CSV");
  propagate->add_option("--pauli", pr_pauli, "Pauli-term JSON realized densely");
  auto* pr_beta_opt = propagate->add_option("--beta", pr_beta, "inverse temperature (> 0)");
  auto* pr_time_opt = propagate->add_option("--time", pr_time, "real evolution time");
  propagate->add_option("--slices", pr_slices, "slice count P (default 1)");
  propagate->add_option("--scheme", pr_scheme, "exact|first|strang (default exact)");
  propagate->add_option("--start", pr_start, "start basis index")->required();
  propagate->add_option("--end", pr_end, "end basis index")->required();
  propagate->add_option("--method", pr_method, "contract|enumerate (default contract)");
  propagate->add_option("--dump-chain", pr_dump, "write the slice kernels as JSON");
  propagate->add_option("--out", pr_out, "write the amplitude as JSON");

  // partition
  auto* partition = app.add_subcommand("partition", "trace of exp(-beta H)");
  fs::path pa_h, pa_pauli, pa_out;
  double pa_beta = 0.0, pa_time = 0.0;
  partition->add_option("--hamiltonian", pa_h, "operator matrix CSV");
  partition->add_option("--pauli", pa_pauli, "Pauli-term JSON realized densely");
  auto* pa_beta_opt = partition->add_option("--beta", pa_beta, "inverse temperature (> 0)");
  auto* pa_time_opt = partition->add_option("--time", pa_time, "real evolution time");
  partition->add_option("--out", pa_out, "write Z as JSON");

  // rbm
  auto* rbm_cmd = app.add_subcommand("rbm", "exact tables and block Gibbs sampling");
  fs::path rb_spec, rb_out;
  bool rb_exact = false, rb_sample = false, rb_marginal = false, rb_ansatz = false;
  std::size_t rb_sweeps = 100000, rb_burn = 1000;
  std::uint64_t rb_seed = 0;
  rbm_cmd->add_option("--spec", rb_spec, "model JSON {n,p,a,b,W}")->required();
  rbm_cmd->add_flag("--exact", rb_exact, "emit the exact joint table");
  rbm_cmd->add_flag("--sample", rb_sample, "emit an empirical table from block Gibbs");
  rbm_cmd->add_flag("--marginal", rb_marginal, "with --exact: emit the visible marginal");
  rbm_cmd->add_flag("--ansatz", rb_ansatz, "with --exact: emit sqrt-marginal amplitudes");
  rbm_cmd->add_option("--sweeps", rb_sweeps, "sampling sweeps (default 100000)");
  rbm_cmd->add_option("--burn-in", rb_burn, "discarded sweeps (default 1000)");
  rbm_cmd->add_option("--seed", rb_seed, "sampler seed (default 0)");
  rbm_cmd->add_option("--out", rb_out, "write the table CSV");

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "layer entropies of a network's Gibbs table");
  fs::path en_net, en_out;
  std::string en_mode = "paper", en_mult = "moebius";
  entropy_cmd->add_option("--network", en_net, "network JSON")->required();
  entropy_cmd->add_option("--mode", en_mode, "paper|bethe|kikuchi (default paper)");
  entropy_cmd->add_option("--multiplicity", en_mult, "paper|moebius (default moebius)");
  entropy_cmd->add_option("--out", en_out, "write the per-term CSV");

  // train
  auto* train = app.add_subcommand("train", "fit biases and weights to targets");
  fs::path tr_net, tr_pairs, tr_prop, tr_gibbs, tr_out, tr_trace;
  std::string tr_loss = "sq", tr_opt = "gd", tr_grad = "analytic", tr_act = "identity",
              tr_init = "warm";
  double tr_lr = 0.01, tr_fd = 1e-5;
  std::size_t tr_steps = 1000;
  std::uint64_t tr_seed = 0;
  train->add_option("--network", tr_net, "initial network JSON")->required();
  train->add_option("--data", tr_pairs, "input/target rows CSV");
  train->add_option("--target-propagator", tr_prop, "target propagator matrix CSV");
  train->add_option("--target-rbm", tr_gibbs, "model JSON whose joint table is the target");
  train->add_option("--loss", tr_loss, "sq|kl (default sq)");
  train->add_option("--opt", tr_opt, "gd|adam (default gd)");
  train->add_option("--lr", tr_lr, "learning rate (default 0.01)");
  train->add_option("--steps", tr_steps, "descent steps (default 1000)");
  train->add_option("--seed", tr_seed, "seed for --init random");
  train->add_option("--grad", tr_grad, "analytic|fd (default analytic)");
  train->add_option("--fd-step", tr_fd, "central-difference step (default 1e-5)");
  train->add_option("--activation", tr_act, "identity|tanh|logistic|softplus");
  train->add_option("--init", tr_init, "warm|random (default warm)");
  train->add_option("--out", tr_out, "write the trained network JSON");
  train->add_option("--trace", tr_trace, "write the loss trace CSV");

  // circuit
  auto* circuit = app.add_subcommand("circuit", "rotation-template circuits from a network");
  circuit->require_subcommand(1);
  auto* emit = circuit->add_subcommand("emit", "emit the circuit text and JSON twin");
  auto* sim = circuit->add_subcommand("sim", "simulate and sample the circuit");
  fs::path ci_net, ci_out;
  double ci_time = 1.0;
  std::uint64_t ci_shots = 100000, ci_seed = 0;
  for (auto* sub : {emit, sim}) {
    sub->add_option("--network", ci_net, "network JSON")->required();
    sub->add_option("--time", ci_time, "evolution time scaling the angles (default 1)");
    sub->add_option("--out", ci_out, "output path");
  }
  sim->add_option("--shots", ci_shots, "measurement shots (default 100000)");
  sim->add_option("--seed", ci_seed, "sampling seed (default 0)");

  // trotter
  auto* trotter = app.add_subcommand("trotter", "splitting error versus slice count");
  fs::path to_h, to_pauli, to_out;
  double to_beta = 0.0, to_time = 0.0;
  std::string to_scheme = "first", to_slices = "8,16,32";
  trotter->add_option("--hamiltonian", to_h, "operator matrix CSV");
  trotter->add_option("--pauli", to_pauli, "Pauli-term JSON realized densely");
  auto* to_beta_opt = trotter->add_option("--beta", to_beta, "inverse temperature (> 0)");
  auto* to_time_opt = trotter->add_option("--time", to_time, "real evolution time");
  trotter->add_option("--scheme", to_scheme, "exact|first|strang (default first)");
  trotter->add_option("--slices", to_slices, "comma list of slice counts (default 8,16,32)");
  trotter->add_option("--out", to_out, "write the error table CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForVersion& version) {
    return app.exit(version);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitValidation;
  }

  try {
    if (propagate->parsed()) {
      return run_propagate(pr_h, pr_pauli, pr_beta, pr_beta_opt->count() > 0, pr_time,
                           pr_time_opt->count() > 0, pr_slices, pr_scheme, pr_start, pr_end,
                           pr_method, pr_dump, pr_out);
    }
    if (partition->parsed()) {
      return run_partition(pa_h, pa_pauli, pa_beta, pa_beta_opt->count() > 0, pa_time,
                           pa_time_opt->count() > 0, pa_out);
    }
    if (rbm_cmd->parsed()) {
      return run_rbm(rb_spec, rb_exact, rb_sample, rb_marginal, rb_ansatz, rb_sweeps, rb_burn,
                     rb_seed, rb_out);
    }
    if (entropy_cmd->parsed()) return run_entropy(en_net, en_mode, en_mult, en_out);
    if (train->parsed()) {
      return run_train(tr_net, tr_pairs, tr_prop, tr_gibbs, tr_loss, tr_opt, tr_lr, tr_steps,
                       tr_seed, tr_grad, tr_fd, tr_act, tr_init, tr_out, tr_trace);
    }
    if (circuit->parsed()) {
      return run_circuit(emit->parsed(), ci_net, ci_time, ci_shots, ci_seed, ci_out);
    }
    if (trotter->parsed()) {
      return run_trotter(to_h, to_pauli, to_beta, to_beta_opt->count() > 0, to_time,
                         to_time_opt->count() > 0, to_scheme, to_slices, to_out);
    }
  } catch (const NumericError& err) {
    std::fprintf(stderr, "numeric failure: %s\n", err.what());
    return kExitNumeric;
  } catch (const ValidationError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitValidation;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitValidation;
  }
  return kExitValidation;
}
