#include "pathboltz/operators.hpp"

#include <cmath>
#include <string>

#include "pathboltz/errors.hpp"

namespace pathboltz {

bool all_finite(const ComplexMatrix& m) {
  return m.array().isFinite().all();
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

bool check_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "check_hermitian");
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool check_unitary(const ComplexMatrix& m, double tol) {
  require_square(m, "check_unitary");
  ComplexMatrix gram = m.adjoint() * m;
  gram.diagonal().array() -= Complex(1.0, 0.0);
  return gram.cwiseAbs().maxCoeff() <= tol;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("frobenius_distance: shape mismatch " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
  return (a - b).norm();
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  require_square(matrix_, "HermitianOperator");
  if (!all_finite(matrix_)) throw ValidationError("HermitianOperator: non-finite entries");
  const double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw ValidationError("HermitianOperator: max |M - M^dagger| = " + std::to_string(dev) +
                          " exceeds tolerance " + std::to_string(tol));
  }
}

EvolutionParameter EvolutionParameter::thermal(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("EvolutionParameter::thermal: beta must be finite and > 0");
  }
  return {Complex(beta, 0.0), BetaKind::Thermal};
}

EvolutionParameter EvolutionParameter::real_time(double t) {
  if (!std::isfinite(t)) throw ValidationError("EvolutionParameter::real_time: t must be finite");
  return {Complex(0.0, t), BetaKind::RealTime};
}

EvolutionParameter EvolutionParameter::general(Complex beta) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw ValidationError("EvolutionParameter::general: beta must be finite");
  }
  return {beta, BetaKind::General};
}

EvolutionParameter EvolutionParameter::sliced(std::size_t slices) const {
  if (slices == 0) throw ValidationError("EvolutionParameter::sliced: slice count must be >= 1");
  return {beta_ / static_cast<double>(slices), kind_};
}

EvolutionParameter EvolutionParameter::conjugated() const {
  return {std::conj(beta_), kind_ == BetaKind::RealTime ? BetaKind::RealTime : kind_};
}

ComplexMatrix matrix_exponential(const HermitianOperator& h, const EvolutionParameter& beta) {
  const ComplexMatrix& m = h.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("matrix_exponential: eigendecomposition did not converge for dim " +
                       std::to_string(m.rows()));
  }
  const ComplexMatrix& vectors = solver.eigenvectors();
  const RealVector& values = solver.eigenvalues();

  const double scale = std::max(1.0, m.norm());
  const double residual =
      (vectors * values.asDiagonal() * vectors.adjoint() - m).norm();
  if (residual > 1e-10 * scale * static_cast<double>(m.rows())) {
    throw NumericError("matrix_exponential: eigendecomposition residual " +
                       std::to_string(residual) + " out of tolerance (dim " +
                       std::to_string(m.rows()) + ")");
  }

  ComplexVector exp_values(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    exp_values[k] = std::exp(-beta.beta() * values[k]);
  }
  return vectors * exp_values.asDiagonal() * vectors.adjoint();
}

}  // namespace pathboltz
