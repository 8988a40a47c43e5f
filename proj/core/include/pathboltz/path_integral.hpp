#pragma once

#include <string>
#include <vector>

#include "pathboltz/operators.hpp"
#include "pathboltz/probability_table.hpp"

namespace pathboltz {

/// Kernel recipe for one slice of exp(-beta H).
///   Exact:           exp(-dbeta H)
///   SplitFirstOrder: exp(-dbeta D) exp(-dbeta O)
///   SplitStrang:     exp(-dbeta D/2) exp(-dbeta O) exp(-dbeta D/2)
/// with D the diagonal (bias) part of H and O the off-diagonal (weight) part.
enum class SliceScheme { Exact, SplitFirstOrder, SplitStrang };

SliceScheme slice_scheme_from_string(const std::string& token);
std::string to_string(SliceScheme scheme);

/// Ordered slice kernels. Kernel k maps boundary k to boundary k+1, so a
/// chain with P kernels has P+1 boundaries; rectangular kernels are allowed
/// as long as adjacent shapes agree.
class TransferChain {
 public:
  explicit TransferChain(std::vector<ComplexMatrix> kernels,
                         std::vector<std::string> boundary_labels = {});

  std::size_t slices() const { return kernels_.size(); }
  Eigen::Index boundary_dim(std::size_t boundary) const;
  const ComplexMatrix& kernel(std::size_t k) const { return kernels_[k]; }
  const std::vector<ComplexMatrix>& kernels() const { return kernels_; }
  const std::vector<std::string>& boundary_labels() const { return labels_; }

 private:
  std::vector<ComplexMatrix> kernels_;
  std::vector<std::string> labels_;
};

/// One basis index per slice boundary (length P+1).
using PathIndex = std::vector<Eigen::Index>;

inline constexpr double kPathEnumerationBudget = 1e7;
inline constexpr double kStoquasticTol = 1e-12;

/// P identical kernels for dbeta = beta/P under the given scheme.
TransferChain build_chain(const HermitianOperator& h, const EvolutionParameter& beta,
                          std::size_t slices, SliceScheme scheme);

/// Product of kernel matrix elements along one path.
Complex path_weight(const TransferChain& chain, const PathIndex& path);

/// Sum of path_weight over every interior index assignment with the given
/// endpoints. Throws EnumerationBudgetError beyond kPathEnumerationBudget
/// interior paths; the block-partitioned compensated sum is bit-stable
/// across thread counts.
Complex amplitude_by_enumeration(const TransferChain& chain, Eigen::Index start,
                                 Eigen::Index end);

/// (K_1 K_2 ... K_P)[start, end]: the resummed form of the path sum.
Complex amplitude_by_contraction(const TransferChain& chain, Eigen::Index start,
                                 Eigen::Index end);

/// Full kernel product of the chain.
ComplexMatrix contract(const TransferChain& chain);

/// Tr exp(-beta H).
Complex partition_function(const HermitianOperator& h, const EvolutionParameter& beta);

/// Frobenius distance between the contracted P-slice chain and exp(-beta H).
double trotter_error(const HermitianOperator& h, const EvolutionParameter& beta,
                     std::size_t slices, SliceScheme scheme);

enum class EndpointMode { Free, Fixed };

/// Joint distribution over all boundary variables with mass proportional to
/// the path weight. Requires elementwise nonnegative real kernels (within
/// kStoquasticTol roundoff); otherwise NegativeKernelEntryError. Fixed mode
/// conditions on the given endpoints, Free leaves them as variables.
ProbabilityTable path_distribution(const TransferChain& chain, EndpointMode mode,
                                   Eigen::Index start = 0, Eigen::Index end = 0);

}  // namespace pathboltz
