#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcrps {

/// Maximal run of indices [first, last] sharing one fitted value.
struct PavBlock {
  std::size_t first;
  std::size_t last;
  double value;
};

struct PavResult {
  std::vector<double> fitted;
  std::vector<PavBlock> blocks;
};

/// Weighted least-squares fit under a nondecreasing constraint. Each block
/// value is the weighted mean of its members.
PavResult pav_isotonic(std::span<const double> values, std::span<const double> weights);

/// Same as pav_isotonic with a nonincreasing constraint.
PavResult pav_antitonic(std::span<const double> values, std::span<const double> weights);

/// Minimizes the weighted pinball loss at level alpha under a nondecreasing
/// constraint. A pooled block takes the smallest weighted alpha-quantile of
/// its values (smallest v with cumulative weight >= alpha * total weight).
PavResult pav_quantile(std::span<const double> values, std::span<const double> weights,
                       double alpha);

namespace detail {

struct PoolBlock {
  std::size_t first;
  double sum;
  double weight;
  double level;
  double mean() const { return level; }
};

/// Stack-based PAV on pre-weighted sums. On return `stack` holds the level
/// sets in index order with nondecreasing means. An unpooled entry keeps
/// levels[i] exactly when given (else sums[i] / weights[i]). Inputs are not
/// validated.
void pool_nondecreasing(std::span<const double> sums, std::span<const double> weights,
                        std::vector<PoolBlock>& stack, std::span<const double> levels = {});

}  // namespace detail

}  // namespace pcrps
