#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pathboltz/probability_table.hpp"
#include "pathboltz/simplicial_complex.hpp"

namespace pathboltz {

/// -sum p ln p in nats, with 0 ln 0 = 0.
double shannon(const ProbabilityTable& dist);

/// Alias for ProbabilityTable::marginal.
ProbabilityTable marginalize(const ProbabilityTable& joint, const std::vector<std::string>& keep);

/// Inclusion-exclusion entropy of a chain-ordered joint (first variable is
/// the terminal, the rest the interior layers):
///   S[x] + sum_i S[h_i] - S[x,h_1] - sum_i S[h_i,h_{i+1}].
/// For two variables this is the mutual information I(x; h_1) >= 0; in
/// general it equals sum of adjacent mutual informations minus the interior
/// single-variable entropies.
double chain_entropy(const ProbabilityTable& joint);

using EdgeList = std::vector<std::pair<std::string, std::string>>;

/// sum_edges S[pair] - sum_nodes (deg - 1) S[node]. The edge set must be an
/// acyclic spanning tree over the joint's variables; exact when the joint is
/// Markov with respect to the tree.
double tree_bethe_entropy(const ProbabilityTable& joint, const EdgeList& tree);

/// Signed, multiplicity-weighted cluster-entropy sum over a simplicial
/// complex whose vertex ids index the joint's variables.
///   Containment mode: sum over clusters of (-1)^rank * S * M with M the
///     containment count.
///   Moebius mode: sum of c * S with c the recursive overcounting numbers
///     (signs are intrinsic to c); exact on junction trees and equal to the
///     Bethe form on rank-1 complexes.
double kikuchi_entropy(const ProbabilityTable& joint, const SimplicialComplex& complex,
                       MultiplicityMode mode);

/// Per-cluster breakdown used by the CLI report.
struct EntropyTerm {
  std::string label;
  double value = 0.0;        // cluster entropy S
  long long multiplicity = 1;
  double contribution = 0.0; // signed, multiplicity-weighted
};

std::vector<EntropyTerm> chain_entropy_terms(const ProbabilityTable& joint);
std::vector<EntropyTerm> tree_bethe_terms(const ProbabilityTable& joint, const EdgeList& tree);
std::vector<EntropyTerm> kikuchi_terms(const ProbabilityTable& joint,
                                       const SimplicialComplex& complex, MultiplicityMode mode);

/// Adjacent mutual informations of a chain-ordered joint, reported next to
/// chain_entropy by the CLI.
std::vector<EntropyTerm> adjacent_mutual_information(const ProbabilityTable& joint);

/// Path-graph edge list over the joint's variables, in order.
EdgeList chain_edges(const ProbabilityTable& joint);

}  // namespace pathboltz
