#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcrps/core.hpp"
#include "pcrps/pav.hpp"

namespace pcrps {

/// In-sample isotonic distributional regression (EasyUQ) fit.
///
/// Rows correspond to the sorted unique covariate values (groups), columns
/// to the sorted unique outcomes (thresholds). Entry (j, k) is the fitted
/// CDF of group j at threshold k. Each column is stored as its PAV level
/// sets, so memory grows with the number of blocks rather than g * m.
class IdrFit {
 public:
  const std::vector<double>& groups() const noexcept { return groups_; }
  const std::vector<double>& group_sizes() const noexcept { return group_sizes_; }
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  std::size_t n_groups() const noexcept { return groups_.size(); }
  std::size_t n_thresholds() const noexcept { return thresholds_.size(); }

  double cdf(std::size_t group, std::size_t threshold) const;
  std::vector<double> row(std::size_t group) const;
  std::vector<double> column(std::size_t threshold) const;

  /// Index of the group whose covariate equals x exactly.
  std::optional<std::size_t> find_group(double x) const;

 private:
  friend IdrFit fit_idr(const PairedSample& sample);

  std::vector<double> groups_;
  std::vector<double> group_sizes_;
  std::vector<double> thresholds_;
  // Column k owns blocks [column_offsets_[k], column_offsets_[k + 1]).
  std::vector<std::size_t> column_offsets_;
  std::vector<std::size_t> block_first_;
  std::vector<double> block_value_;
};

IdrFit fit_idr(const PairedSample& sample);

/// Predictive CDF of the largest group with covariate <= x0, or of the
/// first group when x0 lies below all of them. Zero-mass thresholds are
/// dropped.
StepDistribution predict(const IdrFit& fit, double x0);

/// Fitted distribution of every instance, in sample order. Throws
/// SampleMismatch when an x has no exact group in the fit.
std::vector<StepDistribution> in_sample_distributions(const IdrFit& fit,
                                                      const PairedSample& sample);

/// CRPS of each instance's in-sample fitted distribution against its own
/// outcome, in sample order. Does not materialize the fit.
std::vector<double> in_sample_crps(const PairedSample& sample);

namespace detail {

/// Mean in-sample CRPS of the fit, computed blockwise per threshold.
double in_sample_mean_crps(const PairedSample& sample);

}  // namespace detail

}  // namespace pcrps
