#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcrps/core.hpp"

namespace pcrps {

struct PermutationResult {
  double p_value = 1.0;
  /// Mean of scores_a - scores_b.
  double actual_stat = 0.0;
  std::size_t n_permutations = 0;
  std::size_t block_length = 0;
  std::uint64_t seed = 0;
};

/// One-sided block sign-flip test of equal mean score. Score differences
/// a - b are cut into consecutive blocks of 2 * lead_days (the last one may
/// be shorter); each permutation flips every block's sign with probability
/// 1/2. With R = #{stat < actual} + #{stat == actual} / 2 + 1/2, the
/// p-value is R / N clipped to [1 / (2N), 1]. Small p favours model A.
PermutationResult block_permutation_test(std::span<const double> scores_a,
                                         std::span<const double> scores_b, int lead_days,
                                         std::size_t n_permutations = 1000,
                                         std::uint64_t seed = 0);

/// Seed of the independent RNG stream for one grid cell.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t cell);

struct CellPValue {
  double lat = 0.0;
  double lon = 0.0;
  std::size_t n_used = 0;
  /// NaN when the cell has fewer than 2 complete triples.
  double p_value = 0.0;
};

struct PValueOptions {
  int lead_days = 1;
  std::size_t n_permutations = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Per cell: in-sample IDR CRPS series of both models against truth, then
/// block_permutation_test. Cells are returned in (lat, lon) index order.
std::vector<CellPValue> gridpoint_p_values(const GridField& model_a, const GridField& model_b,
                                           const GridField& truth, const PValueOptions& options);

struct BoxSummary {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quartiles (linear interpolation between order statistics) of the
/// finite p-values.
BoxSummary summarize_p_values(std::span<const CellPValue> cells);

}  // namespace pcrps
