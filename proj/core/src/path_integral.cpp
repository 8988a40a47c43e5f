#include "pathboltz/path_integral.hpp"

#include <cmath>
#include <string>

#include "pathboltz/errors.hpp"
#include "pathboltz/parallel.hpp"

namespace pathboltz {

SliceScheme slice_scheme_from_string(const std::string& token) {
  if (token == "exact") return SliceScheme::Exact;
  if (token == "first") return SliceScheme::SplitFirstOrder;
  if (token == "strang") return SliceScheme::SplitStrang;
  throw ValidationError("unknown slice scheme '" + token + "' (expected exact|first|strang)");
}

std::string to_string(SliceScheme scheme) {
  switch (scheme) {
    case SliceScheme::Exact: return "exact";
    case SliceScheme::SplitFirstOrder: return "first";
    case SliceScheme::SplitStrang: return "strang";
  }
  return "?";
}

TransferChain::TransferChain(std::vector<ComplexMatrix> kernels,
                             std::vector<std::string> boundary_labels)
    : kernels_(std::move(kernels)), labels_(std::move(boundary_labels)) {
  if (kernels_.empty()) throw ValidationError("TransferChain: needs at least one kernel");
  for (std::size_t k = 0; k < kernels_.size(); ++k) {
    if (kernels_[k].rows() < 1 || kernels_[k].cols() < 1) {
      throw ValidationError("TransferChain: kernel " + std::to_string(k) + " is empty");
    }
    if (!all_finite(kernels_[k])) {
      throw ValidationError("TransferChain: kernel " + std::to_string(k) +
                            " has non-finite entries");
    }
    if (k > 0 && kernels_[k - 1].cols() != kernels_[k].rows()) {
      throw ValidationError("TransferChain: kernel " + std::to_string(k) +
                            " rows do not match previous kernel cols");
    }
  }
  if (labels_.empty()) {
    labels_.reserve(kernels_.size() + 1);
    for (std::size_t b = 0; b <= kernels_.size(); ++b) labels_.push_back("b" + std::to_string(b));
  }
  if (labels_.size() != kernels_.size() + 1) {
    throw ValidationError("TransferChain: expected one label per boundary");
  }
}

Eigen::Index TransferChain::boundary_dim(std::size_t boundary) const {
  if (boundary > kernels_.size()) throw ValidationError("TransferChain: boundary out of range");
  return boundary < kernels_.size() ? kernels_[boundary].rows() : kernels_.back().cols();
}

namespace {

ComplexMatrix split_kernel(const HermitianOperator& h, const EvolutionParameter& dbeta,
                           SliceScheme scheme) {
  const ComplexMatrix& m = h.matrix();
  ComplexMatrix off = m;
  off.diagonal().setZero();
  const HermitianOperator off_part(std::move(off));

  auto diag_exp = [&](const EvolutionParameter& p) {
    ComplexVector d(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) d[i] = std::exp(-p.beta() * m(i, i));
    return d;
  };

  switch (scheme) {
    case SliceScheme::Exact:
      return matrix_exponential(h, dbeta);
    case SliceScheme::SplitFirstOrder:
      return diag_exp(dbeta).asDiagonal() * matrix_exponential(off_part, dbeta);
    case SliceScheme::SplitStrang: {
      const ComplexVector half = diag_exp(dbeta.sliced(2));
      return half.asDiagonal() * matrix_exponential(off_part, dbeta) * half.asDiagonal();
    }
  }
  throw ValidationError("build_chain: unknown scheme");
}

double interior_path_count(const TransferChain& chain) {
  double count = 1.0;
  for (std::size_t b = 1; b < chain.slices(); ++b) {
    count *= static_cast<double>(chain.boundary_dim(b));
  }
  return count;
}

}  // namespace

TransferChain build_chain(const HermitianOperator& h, const EvolutionParameter& beta,
                          std::size_t slices, SliceScheme scheme) {
  if (slices == 0) throw ValidationError("build_chain: slice count must be >= 1");
  const ComplexMatrix kernel = split_kernel(h, beta.sliced(slices), scheme);
  return TransferChain(std::vector<ComplexMatrix>(slices, kernel));
}

Complex path_weight(const TransferChain& chain, const PathIndex& path) {
  if (path.size() != chain.slices() + 1) {
    throw ValidationError("path_weight: path has " + std::to_string(path.size()) +
                          " indices, chain has " + std::to_string(chain.slices() + 1) +
                          " boundaries");
  }
  Complex weight(1.0, 0.0);
  for (std::size_t k = 0; k < chain.slices(); ++k) {
    const ComplexMatrix& kernel = chain.kernel(k);
    if (path[k] < 0 || path[k] >= kernel.rows() || path[k + 1] < 0 ||
        path[k + 1] >= kernel.cols()) {
      throw ValidationError("path_weight: index out of range at slice " + std::to_string(k));
    }
    weight *= kernel(path[k], path[k + 1]);
  }
  return weight;
}

Complex amplitude_by_enumeration(const TransferChain& chain, Eigen::Index start,
                                 Eigen::Index end) {
  const std::size_t slice_count = chain.slices();
  if (start < 0 || start >= chain.boundary_dim(0) || end < 0 ||
      end >= chain.boundary_dim(slice_count)) {
    throw ValidationError("amplitude_by_enumeration: endpoint out of range");
  }
  if (slice_count == 1) return chain.kernel(0)(start, end);

  const double paths = interior_path_count(chain);
  if (paths > kPathEnumerationBudget) {
    throw EnumerationBudgetError(paths, kPathEnumerationBudget);
  }
  const std::size_t total = static_cast<std::size_t>(paths);
  const std::size_t interior = slice_count - 1;

  std::vector<Eigen::Index> dims(interior);
  for (std::size_t b = 1; b < slice_count; ++b) dims[b - 1] = chain.boundary_dim(b);

  // Fixed 4096-path blocks, each Kahan-summed on its own; block sums are then
  // combined in block order, so the result does not depend on thread count.
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (total + kBlock - 1) / kBlock;

  const auto block_sum = [&](std::size_t block) {
    const std::size_t begin = block * kBlock;
    const std::size_t stop = std::min(begin + kBlock, total);
    KahanComplexSum sum;
    std::vector<Eigen::Index> idx(interior);
    for (std::size_t flat = begin; flat < stop; ++flat) {
      std::size_t rest = flat;
      for (std::size_t i = interior; i-- > 0;) {
        idx[i] = static_cast<Eigen::Index>(rest % static_cast<std::size_t>(dims[i]));
        rest /= static_cast<std::size_t>(dims[i]);
      }
      Complex weight = chain.kernel(0)(start, idx[0]);
      for (std::size_t k = 1; k < slice_count - 1; ++k) {
        weight *= chain.kernel(k)(idx[k - 1], idx[k]);
      }
      weight *= chain.kernel(slice_count - 1)(idx[interior - 1], end);
      sum.add(weight);
    }
    return sum.value();
  };

  const std::vector<Complex> partials = run_blocks(blocks, block_sum);
  KahanComplexSum sum;
  for (const Complex& p : partials) sum.add(p);
  return sum.value();
}

ComplexMatrix contract(const TransferChain& chain) {
  ComplexMatrix product = chain.kernel(0);
  for (std::size_t k = 1; k < chain.slices(); ++k) product *= chain.kernel(k);
  return product;
}

Complex amplitude_by_contraction(const TransferChain& chain, Eigen::Index start,
                                 Eigen::Index end) {
  if (start < 0 || start >= chain.boundary_dim(0) || end < 0 ||
      end >= chain.boundary_dim(chain.slices())) {
    throw ValidationError("amplitude_by_contraction: endpoint out of range");
  }
  return contract(chain)(start, end);
}

Complex partition_function(const HermitianOperator& h, const EvolutionParameter& beta) {
  return matrix_exponential(h, beta).trace();
}

double trotter_error(const HermitianOperator& h, const EvolutionParameter& beta,
                     std::size_t slices, SliceScheme scheme) {
  const TransferChain chain = build_chain(h, beta, slices, scheme);
  return frobenius_distance(contract(chain), matrix_exponential(h, beta));
}

ProbabilityTable path_distribution(const TransferChain& chain, EndpointMode mode,
                                   Eigen::Index start, Eigen::Index end) {
  const std::size_t slice_count = chain.slices();

  for (std::size_t k = 0; k < slice_count; ++k) {
    const ComplexMatrix& kernel = chain.kernel(k);
    for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        const Complex z = kernel(r, c);
        if (std::abs(z.imag()) > kStoquasticTol || z.real() < -kStoquasticTol) {
          throw NegativeKernelEntryError(k, r, c, z);
        }
      }
    }
  }
  if (mode == EndpointMode::Fixed) {
    if (start < 0 || start >= chain.boundary_dim(0) || end < 0 ||
        end >= chain.boundary_dim(slice_count)) {
      throw ValidationError("path_distribution: endpoint out of range");
    }
  }

  std::vector<Variable> vars(slice_count + 1);
  double cells = 1.0;
  for (std::size_t b = 0; b <= slice_count; ++b) {
    vars[b] = {chain.boundary_labels()[b], static_cast<std::size_t>(chain.boundary_dim(b))};
    cells *= static_cast<double>(chain.boundary_dim(b));
  }
  if (cells > kPathEnumerationBudget) {
    throw EnumerationBudgetError(cells, kPathEnumerationBudget);
  }

  const std::size_t total = static_cast<std::size_t>(cells);
  std::vector<double> weights(total, 0.0);
  std::vector<std::size_t> assignment(slice_count + 1);
  std::vector<std::size_t> strides(slice_count + 1);
  {
    std::size_t stride = 1;
    for (std::size_t b = slice_count + 1; b-- > 0;) {
      strides[b] = stride;
      stride *= vars[b].cardinality;
    }
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (std::size_t b = 0; b <= slice_count; ++b) {
      assignment[b] = (idx / strides[b]) % vars[b].cardinality;
    }
    if (mode == EndpointMode::Fixed &&
        (assignment[0] != static_cast<std::size_t>(start) ||
         assignment[slice_count] != static_cast<std::size_t>(end))) {
      continue;
    }
    double weight = 1.0;
    for (std::size_t k = 0; k < slice_count; ++k) {
      weight *= std::max(chain.kernel(k)(assignment[k], assignment[k + 1]).real(), 0.0);
    }
    weights[idx] = weight;
  }
  return ProbabilityTable::from_weights(std::move(vars), std::move(weights));
}

}  // namespace pathboltz
