#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcrps/core.hpp"

namespace pcrps {

double rmse(const PairedSample& sample);
double mae(const PairedSample& sample);

/// Mean pinball loss rho_alpha(y - x), rho_alpha(u) = u (alpha - 1{u < 0}).
double quantile_loss(const PairedSample& sample, double alpha);

struct Correlation {
  double value = 0.0;
  /// An anomaly series has zero variance; value is reported as 0.
  bool degenerate = false;
};

/// Anomaly correlation coefficient: Pearson correlation of x - c and y - c.
/// The one-argument form uses c = mean(y).
Correlation acc(const PairedSample& sample);
Correlation acc(const PairedSample& sample, double climatology);
/// Per-instance climatology, e.g. a seasonal cycle.
Correlation acc(const PairedSample& sample, std::span<const double> climatology);

/// Coefficient of predictive ability: pairwise concordance of x with y over
/// pairs of distinct outcomes, each pair weighted by the difference of the
/// outcome midranks and forecast ties counted half. Equals
/// (1 + cov(rank x, rank y) / var(rank y)) / 2 and is computed that way.
/// Throws AllOutcomesEqual when y is constant.
double cpa(const PairedSample& sample);

/// Midranks (ties get the mean of the ranks they span), 1-based.
std::vector<double> midranks(std::span<const double> v);

struct MetricRow {
  std::string label;
  double rmse = 0.0;
  double mae = 0.0;
  double quantile_loss = 0.0;
  double pc = 0.0;
  double acc = 0.0;
  double cpa = 0.0;
  double pcs = 0.0;
};

struct MetricTable {
  double alpha = 0.9;
  std::vector<MetricRow> rows;
};

/// All table measures of one forecast/outcome sample.
MetricRow evaluate_metrics(std::string label, const PairedSample& sample, double alpha);

}  // namespace pcrps
