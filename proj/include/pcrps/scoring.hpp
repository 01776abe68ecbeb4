#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcrps/core.hpp"

namespace pcrps {

/// CRPS of a step distribution, integrated exactly piece by piece.
double crps(const StepDistribution& F, double y);

/// CRPS through the kernel form E|Y - y| - E|Y - Y'| / 2.
double crps_energy(const StepDistribution& F, double y);

/// CRPS with the integrand restricted to z >= threshold.
double tw_crps(const StepDistribution& F, double y, double threshold);

/// Arithmetic mean of crps over forecast/outcome pairs.
double mean_crps(std::span<const StepDistribution> forecasts, std::span<const double> y);

struct PcSummary {
  double pc = 0.0;
  double pc0 = 0.0;
  double pcs = 0.0;
  std::size_t n = 0;
  /// Outcomes are constant, so pc0 == 0 and pcs is reported as 0.
  bool degenerate = false;
};

/// Potential CRPS of a deterministic forecast: mean CRPS of the in-sample
/// isotonic distributional regression fit, with climatology and skill.
PcSummary pc(const PairedSample& sample);

/// Mean CRPS of the empirical climatology, i.e. half the Gini mean
/// difference of y, from the order statistics in O(n log n).
double pc0(std::span<const double> y);

struct Skill {
  double value = 0.0;
  bool degenerate = false;
};

/// (pc0 - pc) / pc0, or 0 flagged degenerate when pc0 == 0.
Skill pcs(double pc, double pc0);

}  // namespace pcrps
