#include "pathboltz/ising.hpp"

#include <cmath>
#include <set>
#include <string>

#include "pathboltz/errors.hpp"

namespace pathboltz::ising {

PauliAxis axis_from_string(const std::string& token) {
  if (token == "x") return PauliAxis::X;
  if (token == "y") return PauliAxis::Y;
  if (token == "z") return PauliAxis::Z;
  throw ValidationError("unknown Pauli axis '" + token + "' (expected x|y|z)");
}

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    case PauliAxis::Z: return "z";
  }
  return "?";
}

void PauliHamiltonian::validate() const {
  if (qubits < 1) throw ValidationError("PauliHamiltonian: needs at least one qubit");
  for (const auto& term : terms) {
    if (term.sites.empty()) throw ValidationError("PauliHamiltonian: empty term");
    if (term.sites.size() != term.axes.size()) {
      throw ValidationError("PauliHamiltonian: sites/axes length mismatch");
    }
    std::set<int> seen;
    for (int site : term.sites) {
      if (site < 0 || site >= qubits) {
        throw ValidationError("PauliHamiltonian: site " + std::to_string(site) +
                              " outside register of " + std::to_string(qubits));
      }
      if (!seen.insert(site).second) {
        throw ValidationError("PauliHamiltonian: duplicate site " + std::to_string(site) +
                              " within a term");
      }
    }
    if (!std::isfinite(term.coefficient)) {
      throw ValidationError("PauliHamiltonian: non-finite coefficient");
    }
  }
}

namespace {

ComplexMatrix pauli_matrix(PauliAxis axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
      break;
    case PauliAxis::Y:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case PauliAxis::Z:
      m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
      break;
  }
  return m;
}

}  // namespace

HermitianOperator build_dense(const PauliHamiltonian& h) {
  h.validate();
  if (h.qubits > kMaxDenseQubits) {
    throw ValidationError("build_dense: register of " + std::to_string(h.qubits) +
                          " qubits exceeds the dense cap of " + std::to_string(kMaxDenseQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << h.qubits;
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);

  for (const auto& term : h.terms) {
    // Qubit 0 is the leftmost Kronecker factor (most significant bit).
    ComplexMatrix op = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < h.qubits; ++q) {
      ComplexMatrix factor = ComplexMatrix::Identity(2, 2);
      for (std::size_t k = 0; k < term.sites.size(); ++k) {
        if (term.sites[k] == q) factor = pauli_matrix(term.axes[k]);
      }
      ComplexMatrix next(op.rows() * 2, op.cols() * 2);
      for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
          next.block(r * 2, c * 2, 2, 2) = op(r, c) * factor;
        }
      }
      op = std::move(next);
    }
    sum += term.coefficient * op;
  }
  return HermitianOperator(std::move(sum));
}

ProbabilityTable thermal_diagonal(const PauliHamiltonian& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("thermal_diagonal: beta must be finite and > 0");
  }
  const HermitianOperator dense = build_dense(h);
  const ComplexMatrix rho = matrix_exponential(dense, EvolutionParameter::thermal(beta));

  std::vector<Variable> vars;
  vars.reserve(h.qubits);
  for (int q = 0; q < h.qubits; ++q) vars.push_back({"q" + std::to_string(q), 2});

  std::vector<double> weights(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    // exp(-beta H) is positive definite; the diagonal is real up to roundoff.
    weights[static_cast<std::size_t>(i)] = std::max(rho(i, i).real(), 0.0);
  }
  return ProbabilityTable::from_weights(std::move(vars), std::move(weights));
}

PauliHamiltonian rbm_to_pauli(const rbm::RbmParams& params) {
  params.validate();
  PauliHamiltonian h;
  h.qubits = static_cast<int>(params.n + params.p);
  for (Eigen::Index i = 0; i < params.n; ++i) {
    if (params.a[i] != 0.0) {
      h.terms.push_back({{static_cast<int>(i)}, {PauliAxis::Z}, params.a[i]});
    }
  }
  for (Eigen::Index j = 0; j < params.p; ++j) {
    if (params.b[j] != 0.0) {
      h.terms.push_back({{static_cast<int>(params.n + j)}, {PauliAxis::Z}, params.b[j]});
    }
  }
  for (Eigen::Index i = 0; i < params.n; ++i) {
    for (Eigen::Index j = 0; j < params.p; ++j) {
      if (params.w(i, j) != 0.0) {
        h.terms.push_back({{static_cast<int>(i), static_cast<int>(params.n + j)},
                           {PauliAxis::Z, PauliAxis::Z},
                           params.w(i, j)});
      }
    }
  }
  return h;
}

SimplicialComplex interaction_complex(const PauliHamiltonian& h) {
  h.validate();
  SimplicialComplex complex;
  for (const auto& term : h.terms) {
    complex.insert_with_faces(Simplex(term.sites.begin(), term.sites.end()));
  }
  return complex;
}

}  // namespace pathboltz::ising
