#include "pathboltz/entropy.hpp"

#include <cmath>
#include <map>
#include <set>

#include "pathboltz/errors.hpp"
#include "pathboltz/parallel.hpp"

namespace pathboltz {

double shannon(const ProbabilityTable& dist) {
  KahanSum total;
  KahanSum entropy;
  for (double p : dist.masses()) {
    total.add(p);
    if (p > 0.0) entropy.add(-p * std::log(p));
  }
  if (std::abs(total.value() - 1.0) > kTableNormTol) {
    throw ValidationError("shannon: distribution is not normalized");
  }
  return entropy.value();
}

ProbabilityTable marginalize(const ProbabilityTable& joint,
                             const std::vector<std::string>& keep) {
  return joint.marginal(keep);
}

namespace {

double pair_entropy(const ProbabilityTable& joint, const std::string& a, const std::string& b) {
  return shannon(joint.marginal({a, b}));
}

double single_entropy(const ProbabilityTable& joint, const std::string& a) {
  return shannon(joint.marginal({a}));
}

}  // namespace

std::vector<EntropyTerm> chain_entropy_terms(const ProbabilityTable& joint) {
  const auto& vars = joint.variables();
  if (vars.size() < 2) throw ValidationError("chain_entropy: needs at least two variables");

  std::vector<EntropyTerm> terms;
  for (const auto& v : vars) {
    const double s = single_entropy(joint, v.name);
    terms.push_back({"S[" + v.name + "]", s, 1, s});
  }
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    const double s = pair_entropy(joint, vars[i].name, vars[i + 1].name);
    terms.push_back({"-S[" + vars[i].name + "," + vars[i + 1].name + "]", s, 1, -s});
  }
  return terms;
}

double chain_entropy(const ProbabilityTable& joint) {
  KahanSum sum;
  for (const auto& term : chain_entropy_terms(joint)) sum.add(term.contribution);
  return sum.value();
}

std::vector<EntropyTerm> adjacent_mutual_information(const ProbabilityTable& joint) {
  const auto& vars = joint.variables();
  std::vector<EntropyTerm> terms;
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    const double mi = single_entropy(joint, vars[i].name) +
                      single_entropy(joint, vars[i + 1].name) -
                      pair_entropy(joint, vars[i].name, vars[i + 1].name);
    terms.push_back({"I(" + vars[i].name + ";" + vars[i + 1].name + ")", mi, 1, mi});
  }
  return terms;
}

EdgeList chain_edges(const ProbabilityTable& joint) {
  EdgeList edges;
  const auto& vars = joint.variables();
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    edges.emplace_back(vars[i].name, vars[i + 1].name);
  }
  return edges;
}

std::vector<EntropyTerm> tree_bethe_terms(const ProbabilityTable& joint, const EdgeList& tree) {
  const auto& vars = joint.variables();
  std::map<std::string, std::size_t> degree;
  for (const auto& v : vars) degree[v.name] = 0;

  // Union-find cycle check over variable indices.
  std::vector<std::size_t> parent(vars.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<EntropyTerm> terms;
  for (const auto& [a, b] : tree) {
    const std::size_t ia = joint.variable_index(a);
    const std::size_t ib = joint.variable_index(b);
    if (ia == ib) throw ValidationError("tree_bethe_entropy: self-loop on '" + a + "'");
    const std::size_t ra = find(ia), rb = find(ib);
    if (ra == rb) throw ValidationError("tree_bethe_entropy: edge set contains a cycle");
    parent[ra] = rb;
    ++degree[a];
    ++degree[b];
    const double s = pair_entropy(joint, a, b);
    terms.push_back({"S[" + a + "," + b + "]", s, 1, s});
  }
  if (tree.size() + 1 != vars.size()) {
    throw ValidationError("tree_bethe_entropy: edge set does not span the variables");
  }
  for (const auto& v : vars) {
    const long long counting = 1 - static_cast<long long>(degree[v.name]);
    const double s = single_entropy(joint, v.name);
    terms.push_back({"S[" + v.name + "]", s, counting, static_cast<double>(counting) * s});
  }
  return terms;
}

double tree_bethe_entropy(const ProbabilityTable& joint, const EdgeList& tree) {
  KahanSum sum;
  for (const auto& term : tree_bethe_terms(joint, tree)) sum.add(term.contribution);
  return sum.value();
}

std::vector<EntropyTerm> kikuchi_terms(const ProbabilityTable& joint,
                                       const SimplicialComplex& complex,
                                       MultiplicityMode mode) {
  const auto& vars = joint.variables();
  const auto counts = multiplicities(complex, mode);

  std::vector<EntropyTerm> terms;
  for (const auto& simplex : complex.simplices()) {
    std::vector<std::string> names;
    std::string label;
    for (int vertex : simplex) {
      if (vertex < 0 || static_cast<std::size_t>(vertex) >= vars.size()) {
        throw ValidationError("kikuchi_entropy: complex vertex " + std::to_string(vertex) +
                              " does not index a variable");
      }
      if (!label.empty()) label += ",";
      label += vars[static_cast<std::size_t>(vertex)].name;
      names.push_back(vars[static_cast<std::size_t>(vertex)].name);
    }
    const double s = shannon(joint.marginal(names));
    const long long m = counts.at(simplex);
    const int rank = static_cast<int>(simplex.size()) - 1;
    // Containment counts are unsigned and take the printed (-1)^rank; the
    // Moebius numbers carry their signs intrinsically.
    const double sign = mode == MultiplicityMode::Containment ? (rank % 2 == 0 ? 1.0 : -1.0) : 1.0;
    terms.push_back({"S[" + label + "]", s, m, sign * static_cast<double>(m) * s});
  }
  return terms;
}

double kikuchi_entropy(const ProbabilityTable& joint, const SimplicialComplex& complex,
                       MultiplicityMode mode) {
  KahanSum sum;
  for (const auto& term : kikuchi_terms(joint, complex, mode)) sum.add(term.contribution);
  return sum.value();
}

}  // namespace pathboltz
