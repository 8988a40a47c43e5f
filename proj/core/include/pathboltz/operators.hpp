#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pathboltz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-10;

bool all_finite(const ComplexMatrix& m);

/// true iff M is square and max entrywise |M - M^dagger| <= tol (absolute).
bool check_hermitian(const ComplexMatrix& m, double tol = kHermiticityTol);

/// true iff M is square and max entrywise |M^dagger M - I| <= tol.
bool check_unitary(const ComplexMatrix& m, double tol = kUnitarityTol);

/// sqrt(sum |A - B|^2); shapes must match.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Dense Hermitian operator, certified at construction: square, finite
/// entries, max |M - M^dagger| <= tol.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix matrix, double tol = kHermiticityTol);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

enum class BetaKind { Thermal, RealTime, General };

/// Complex evolution parameter beta of exp(-beta H). Thermal means beta real
/// and positive (inverse temperature); RealTime means beta = i t with hbar = 1,
/// so exp(-beta H) = exp(-i t H) is a unitary; General admits any complex value.
class EvolutionParameter {
 public:
  static EvolutionParameter thermal(double beta);
  static EvolutionParameter real_time(double t);
  static EvolutionParameter general(Complex beta);

  Complex beta() const { return beta_; }
  BetaKind kind() const { return kind_; }

  /// beta / slices, keeping the interpretation tag.
  EvolutionParameter sliced(std::size_t slices) const;

  /// Complex conjugate parameter (thermal is self-conjugate).
  EvolutionParameter conjugated() const;

 private:
  EvolutionParameter(Complex beta, BetaKind kind) : beta_(beta), kind_(kind) {}
  Complex beta_;
  BetaKind kind_;
};

/// exp(-beta H) by unitary eigendecomposition H = V diag(lambda) V^dagger.
/// Throws NumericError if the decomposition fails or its reconstruction
/// residual is out of tolerance.
ComplexMatrix matrix_exponential(const HermitianOperator& h, const EvolutionParameter& beta);

}  // namespace pathboltz
