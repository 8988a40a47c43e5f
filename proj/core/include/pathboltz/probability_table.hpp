#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pathboltz {

struct Variable {
  std::string name;
  std::size_t cardinality = 0;
};

inline constexpr double kTableNormTol = 1e-12;

/// Normalized joint distribution over named discrete variables. Masses are
/// stored row-major with the LAST variable fastest. Tables are immutable
/// after construction and always satisfy: masses >= 0, sum = 1 +- 1e-12.
class ProbabilityTable {
 public:
  /// Validating constructor; `masses` must already be normalized.
  ProbabilityTable(std::vector<Variable> variables, std::vector<double> masses);

  /// Normalizes nonnegative weights (their sum must be positive and finite).
  static ProbabilityTable from_weights(std::vector<Variable> variables,
                                       std::vector<double> weights);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<double>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }

  std::size_t index_of(std::span<const std::size_t> assignment) const;
  void decode(std::size_t index, std::span<std::size_t> assignment) const;
  double mass(std::span<const std::size_t> assignment) const;

  /// Marginal over `keep` (a subset of variable names, order-insensitive);
  /// kept variables stay in this table's order.
  ProbabilityTable marginal(const std::vector<std::string>& keep) const;

  std::size_t variable_index(const std::string& name) const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> masses_;
  std::vector<std::size_t> strides_;
};

/// Largest product space a table is allowed to materialize.
inline constexpr std::size_t kTableCellBudget = 1u << 24;

}  // namespace pathboltz
