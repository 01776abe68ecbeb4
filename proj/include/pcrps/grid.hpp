#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcrps/core.hpp"
#include "pcrps/scoring.hpp"

namespace pcrps {

/// cos(lat) weight of a regular lat-lon cell; 0 at the poles.
double lat_weight(double lat_degrees);

struct CellResult {
  std::size_t lat_index = 0;
  std::size_t lon_index = 0;
  double lat = 0.0;
  double lon = 0.0;
  std::size_t n_used = 0;
  PcSummary summary;
};

struct ExcludedCell {
  double lat = 0.0;
  double lon = 0.0;
  std::size_t n_used = 0;
};

struct Aggregate {
  double pc = 0.0;
  double pc0 = 0.0;
  double pcs = 0.0;
  double weight_sum = 0.0;
  std::size_t n_cells = 0;
};

struct EvalReport {
  std::string model;
  std::string truth;
  int lead_days = 0;
  /// Cells in (lat, lon) index order, excluded cells omitted.
  std::vector<CellResult> cells;
  std::vector<ExcludedCell> excluded;
  Aggregate aggregate;
};

/// Latitude-weighted means of per-cell pc and pc0; pcs from the weighted
/// sums. Weights are renormalized over the given cells.
Aggregate aggregate_cells(std::span<const CellResult> cells);

struct GridEvalOptions {
  unsigned threads = 1;
  std::string model;
  std::string truth;
  int lead_days = 0;
};

/// Per-cell PC of forecast vs truth time series. Pairs with a missing
/// entry are dropped; cells left with fewer than 2 pairs are excluded.
EvalReport evaluate_grid(const GridField& forecast, const GridField& truth,
                         const GridEvalOptions& options = {});

struct CellSkill {
  double value = 0.0;
  bool degenerate = false;
};

/// 1 - pc / reference per cell; reference == 0 gives a degenerate 0.
std::vector<CellSkill> skill_vs_reference(std::span<const double> pc,
                                          std::span<const double> reference);

}  // namespace pcrps
