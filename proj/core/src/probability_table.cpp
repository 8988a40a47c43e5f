#include "pathboltz/probability_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pathboltz/errors.hpp"
#include "pathboltz/parallel.hpp"

namespace pathboltz {

namespace {

std::vector<std::size_t> make_strides(const std::vector<Variable>& vars) {
  std::vector<std::size_t> strides(vars.size());
  std::size_t stride = 1;
  for (std::size_t i = vars.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= vars[i].cardinality;
  }
  return strides;
}

std::size_t product_size(const std::vector<Variable>& vars) {
  std::size_t total = 1;
  for (const auto& v : vars) {
    if (v.cardinality == 0) throw ValidationError("ProbabilityTable: variable '" + v.name +
                                                  "' has cardinality 0");
    if (total > kTableCellBudget / v.cardinality) {
      throw ValidationError("ProbabilityTable: product space exceeds cell budget");
    }
    total *= v.cardinality;
  }
  return total;
}

void require_unique_names(const std::vector<Variable>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v.name).second) {
      throw ValidationError("ProbabilityTable: duplicate variable name '" + v.name + "'");
    }
  }
}

}  // namespace

ProbabilityTable::ProbabilityTable(std::vector<Variable> variables, std::vector<double> masses)
    : variables_(std::move(variables)), masses_(std::move(masses)) {
  require_unique_names(variables_);
  const std::size_t total = product_size(variables_);
  if (masses_.size() != total) {
    throw ValidationError("ProbabilityTable: mass vector has " + std::to_string(masses_.size()) +
                          " cells, product space has " + std::to_string(total));
  }
  KahanSum sum;
  for (double p : masses_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("ProbabilityTable: masses must be finite and >= 0");
    }
    sum.add(p);
  }
  if (std::abs(sum.value() - 1.0) > kTableNormTol) {
    throw ValidationError("ProbabilityTable: masses sum to " + std::to_string(sum.value()) +
                          ", expected 1 within " + std::to_string(kTableNormTol));
  }
  strides_ = make_strides(variables_);
}

ProbabilityTable ProbabilityTable::from_weights(std::vector<Variable> variables,
                                                std::vector<double> weights) {
  KahanSum sum;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("ProbabilityTable: weights must be finite and >= 0");
    }
    sum.add(w);
  }
  const double z = sum.value();
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw ValidationError("ProbabilityTable: weight sum must be positive and finite");
  }
  for (double& w : weights) w /= z;
  return ProbabilityTable(std::move(variables), std::move(weights));
}

std::size_t ProbabilityTable::index_of(std::span<const std::size_t> assignment) const {
  if (assignment.size() != variables_.size()) {
    throw ValidationError("ProbabilityTable: assignment arity mismatch");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= variables_[i].cardinality) {
      throw ValidationError("ProbabilityTable: value out of range for variable '" +
                            variables_[i].name + "'");
    }
    index += assignment[i] * strides_[i];
  }
  return index;
}

void ProbabilityTable::decode(std::size_t index, std::span<std::size_t> assignment) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    assignment[i] = (index / strides_[i]) % variables_[i].cardinality;
  }
}

double ProbabilityTable::mass(std::span<const std::size_t> assignment) const {
  return masses_[index_of(assignment)];
}

std::size_t ProbabilityTable::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  throw ValidationError("ProbabilityTable: unknown variable '" + name + "'");
}

ProbabilityTable ProbabilityTable::marginal(const std::vector<std::string>& keep) const {
  std::vector<bool> kept(variables_.size(), false);
  for (const auto& name : keep) kept[variable_index(name)] = true;

  std::vector<Variable> out_vars;
  std::vector<std::size_t> out_pos;  // position of each kept variable in this table
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (kept[i]) {
      out_vars.push_back(variables_[i]);
      out_pos.push_back(i);
    }
  }
  if (out_vars.empty()) throw ValidationError("ProbabilityTable: marginal over no variables");

  const auto out_strides = make_strides(out_vars);
  std::size_t out_size = 1;
  for (const auto& v : out_vars) out_size *= v.cardinality;

  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> assignment(variables_.size());
  for (std::size_t idx = 0; idx < masses_.size(); ++idx) {
    decode(idx, assignment);
    std::size_t out_idx = 0;
    for (std::size_t k = 0; k < out_pos.size(); ++k) {
      out_idx += assignment[out_pos[k]] * out_strides[k];
    }
    out[out_idx] += masses_[idx];
  }
  return ProbabilityTable(std::move(out_vars), std::move(out));
}

}  // namespace pathboltz
