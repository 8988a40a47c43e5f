#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace pathboltz {

/// Worker count for block-parallel reductions: PATHBOLTZ_THREADS if set
/// (clamped to >= 1), otherwise the hardware concurrency.
std::size_t worker_count();

/// Compensated (Kahan) accumulator. Summation order fixed by the caller.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_;
  KahanSum im_;
};

/// Runs `block(b)` for b in [0, blocks) on up to worker_count() threads and
/// returns the results indexed by block. Each block is computed by exactly
/// one thread, so combining the returned values in block order gives a
/// reduction whose result is independent of the thread count.
std::vector<std::complex<double>> run_blocks(
    std::size_t blocks, const std::function<std::complex<double>(std::size_t)>& block);

}  // namespace pathboltz
