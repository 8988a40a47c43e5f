#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pathboltz {

/// Bad inputs: shape mismatches, schema violations, budget overruns.
/// The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown: failed decompositions, divergent optimization.
/// The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit path enumeration would exceed the path budget; the caller
/// should switch to contraction.
class EnumerationBudgetError : public ValidationError {
 public:
  EnumerationBudgetError(double paths, double budget)
      : ValidationError("path enumeration budget exceeded: " + std::to_string(paths) +
                        " paths > " + std::to_string(budget)),
        paths(paths),
        budget(budget) {}
  double paths;
  double budget;
};

/// A transfer kernel entry is negative or has an imaginary part where a
/// probabilistic reading is required. Carries the offending entry so the
/// caller can report it; entries are never silently replaced by |.|.
class NegativeKernelEntryError : public ValidationError {
 public:
  NegativeKernelEntryError(std::size_t kernel, long long row, long long col,
                           std::complex<double> value)
      : ValidationError("kernel " + std::to_string(kernel) + " entry (" + std::to_string(row) +
                        "," + std::to_string(col) + ") = " + std::to_string(value.real()) + "+" +
                        std::to_string(value.imag()) +
                        "i is not a nonnegative real; no probabilistic reading exists"),
        kernel(kernel),
        row(row),
        col(col),
        value(value) {}
  std::size_t kernel;
  long long row;
  long long col;
  std::complex<double> value;
};

/// A network carries k-local weight tensors, which have no two-local
/// operator assembly. Use the Pauli-term path for k-local models.
class KLocalUnsupportedError : public ValidationError {
 public:
  KLocalUnsupportedError()
      : ValidationError(
            "network has k-local weight tensors; dense assembly covers pairwise "
            "networks only (build a k-local Pauli model instead)") {}
};

}  // namespace pathboltz
