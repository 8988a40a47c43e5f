#pragma once

#include <string>
#include <vector>

#include "pathboltz/operators.hpp"
#include "pathboltz/probability_table.hpp"
#include "pathboltz/rbm.hpp"
#include "pathboltz/simplicial_complex.hpp"

namespace pathboltz::ising {

enum class PauliAxis { X, Y, Z };

PauliAxis axis_from_string(const std::string& token);
std::string to_string(PauliAxis axis);

/// coeff * sigma_{axes_0}(sites_0) ... sigma_{axes_{k-1}}(sites_{k-1});
/// k = sites.size() is the term's locality.
struct PauliTerm {
  std::vector<int> sites;
  std::vector<PauliAxis> axes;
  double coefficient = 0.0;
};

inline constexpr int kMaxDenseQubits = 14;

/// Sum of Pauli terms on N qubits. Qubit 0 is the most significant bit of
/// the computational basis index.
struct PauliHamiltonian {
  int qubits = 0;
  std::vector<PauliTerm> terms;

  void validate() const;
};

/// Dense 2^N x 2^N realization (N <= 14).
HermitianOperator build_dense(const PauliHamiltonian& h);

/// diag(exp(-beta H)) / Tr exp(-beta H) over computational basis states,
/// as a table with one binary variable per qubit (q0 slowest).
ProbabilityTable thermal_diagonal(const PauliHamiltonian& h, double beta);

/// z-only image of a bipartite spin model on n+p qubits: a_i z_i, b_j z_{n+j},
/// W_ij z_i z_{n+j}; zero coefficients are omitted.
PauliHamiltonian rbm_to_pauli(const rbm::RbmParams& params);

/// Interaction complex: a (k-1)-simplex per k-local term, closed under faces.
SimplicialComplex interaction_complex(const PauliHamiltonian& h);

}  // namespace pathboltz::ising
