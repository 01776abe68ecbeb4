#include "pcrps/idr.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pcrps {

namespace {

// Covariate groups and outcome thresholds of a sample, with each instance
// mapped to its group and threshold index.
struct Grouped {
  std::vector<double> groups;
  std::vector<double> sizes;
  std::vector<double> thresholds;
  std::vector<std::size_t> group_of;
  std::vector<std::size_t> threshold_of;
  // Instance indices ordered by threshold index.
  std::vector<std::size_t> by_threshold;
};

std::vector<double> sorted_unique(const std::vector<double>& v) {
  std::vector<double> out(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_in(const std::vector<double>& sorted, double v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                  sorted.begin());
}

Grouped group_sample(const PairedSample& sample) {
  const auto& x = sample.x();
  const auto& y = sample.y();
  const std::size_t n = sample.size();
  Grouped g;
  g.groups = sorted_unique(x);
  g.thresholds = sorted_unique(y);
  g.sizes.assign(g.groups.size(), 0.0);
  g.group_of.resize(n);
  g.threshold_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.group_of[i] = index_in(g.groups, x[i]);
    g.threshold_of[i] = index_in(g.thresholds, y[i]);
    g.sizes[g.group_of[i]] += 1.0;
  }
  g.by_threshold.resize(n);
  std::iota(g.by_threshold.begin(), g.by_threshold.end(), std::size_t{0});
  std::stable_sort(g.by_threshold.begin(), g.by_threshold.end(),
                   [&](std::size_t a, std::size_t b) { return g.threshold_of[a] < g.threshold_of[b]; });
  return g;
}

// Level set of one column in group order: groups [first, last] share the
// CDF value `value`; `count` outcomes <= threshold among `weight` instances.
struct ColumnBlock {
  std::size_t first;
  std::size_t last;
  double value;
  double count;
  double weight;
};

// Runs the per-threshold antitonic PAV over all thresholds in increasing
// order and hands each column's level sets to `visit(k, blocks)`.
template <typename Visit>
void sweep_thresholds(const Grouped& g, Visit&& visit) {
  const std::size_t n_groups = g.groups.size();
  const std::size_t m = g.thresholds.size();
  std::vector<double> counts(n_groups, 0.0);
  std::vector<double> rev_counts(n_groups);
  std::vector<double> rev_sizes(g.sizes.rbegin(), g.sizes.rend());
  std::vector<detail::PoolBlock> stack;
  std::vector<ColumnBlock> blocks;

  std::size_t cursor = 0;
  for (std::size_t k = 0; k < m; ++k) {
    while (cursor < g.by_threshold.size() && g.threshold_of[g.by_threshold[cursor]] == k) {
      counts[g.group_of[g.by_threshold[cursor]]] += 1.0;
      ++cursor;
    }
    // Nonincreasing fit in group order == nondecreasing fit on the reversal.
    std::reverse_copy(counts.begin(), counts.end(), rev_counts.begin());
    detail::pool_nondecreasing(rev_counts, rev_sizes, stack);

    blocks.clear();
    for (std::size_t b = stack.size(); b-- > 0;) {
      const std::size_t rev_last = b + 1 < stack.size() ? stack[b + 1].first - 1 : n_groups - 1;
      blocks.push_back({n_groups - 1 - rev_last, n_groups - 1 - stack[b].first, stack[b].mean(),
                        stack[b].sum, stack[b].weight});
    }
    for (std::size_t b = 1; b < blocks.size(); ++b) {
      blocks[b].value = std::min(blocks[b].value, blocks[b - 1].value);
    }
    visit(k, blocks);
  }
}

}  // namespace

double IdrFit::cdf(std::size_t group, std::size_t threshold) const {
  const auto begin = block_first_.begin() + static_cast<std::ptrdiff_t>(column_offsets_[threshold]);
  const auto end = block_first_.begin() + static_cast<std::ptrdiff_t>(column_offsets_[threshold + 1]);
  const auto it = std::upper_bound(begin, end, group) - 1;
  return block_value_[static_cast<std::size_t>(it - block_first_.begin())];
}

std::vector<double> IdrFit::row(std::size_t group) const {
  std::vector<double> out(thresholds_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cdf(group, k);
  return out;
}

std::vector<double> IdrFit::column(std::size_t threshold) const {
  std::vector<double> out(groups_.size());
  for (std::size_t b = column_offsets_[threshold]; b < column_offsets_[threshold + 1]; ++b) {
    const std::size_t last =
        b + 1 < column_offsets_[threshold + 1] ? block_first_[b + 1] : groups_.size();
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(block_first_[b]),
              out.begin() + static_cast<std::ptrdiff_t>(last), block_value_[b]);
  }
  return out;
}

std::optional<std::size_t> IdrFit::find_group(double x) const {
  const auto it = std::lower_bound(groups_.begin(), groups_.end(), x);
  if (it == groups_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - groups_.begin());
}

IdrFit fit_idr(const PairedSample& sample) {
  Grouped g = group_sample(sample);
  IdrFit fit;
  fit.column_offsets_.reserve(g.thresholds.size() + 1);
  fit.column_offsets_.push_back(0);
  sweep_thresholds(g, [&](std::size_t, const std::vector<ColumnBlock>& blocks) {
    for (const auto& b : blocks) {
      fit.block_first_.push_back(b.first);
      fit.block_value_.push_back(b.value);
    }
    fit.column_offsets_.push_back(fit.block_first_.size());
  });
  fit.groups_ = std::move(g.groups);
  fit.group_sizes_ = std::move(g.sizes);
  fit.thresholds_ = std::move(g.thresholds);
  return fit;
}

StepDistribution predict(const IdrFit& fit, double x0) {
  const auto& groups = fit.groups();
  auto it = std::upper_bound(groups.begin(), groups.end(), x0);
  const std::size_t j = it == groups.begin() ? 0 : static_cast<std::size_t>(it - groups.begin()) - 1;

  std::vector<double> points;
  std::vector<double> cdf;
  double previous = 0.0;
  for (std::size_t k = 0; k < fit.n_thresholds(); ++k) {
    const double value = fit.cdf(j, k);
    if (value > previous) {
      points.push_back(fit.thresholds()[k]);
      cdf.push_back(value);
      previous = value;
    }
  }
  return make_step_distribution(std::move(points), std::move(cdf));
}

std::vector<StepDistribution> in_sample_distributions(const IdrFit& fit,
                                                      const PairedSample& sample) {
  std::vector<StepDistribution> out;
  out.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto j = fit.find_group(sample.x()[i]);
    if (!j) {
      throw Error(ErrorCode::SampleMismatch,
                  "x[" + std::to_string(i) + "] has no group in the fit");
    }
    out.push_back(predict(fit, fit.groups()[*j]));
  }
  return out;
}

std::vector<double> in_sample_crps(const PairedSample& sample) {
  const Grouped g = group_sample(sample);
  const std::size_t n = sample.size();
  const std::size_t m = g.thresholds.size();

  // Per group, running sums over thresholds k' < k of d F^2 (below) and
  // d (1 - F)^2 (above).
  std::vector<double> below(g.groups.size(), 0.0);
  std::vector<double> above(g.groups.size(), 0.0);
  std::vector<double> below_at(n, 0.0);
  std::vector<double> above_at(n, 0.0);

  std::size_t cursor = 0;
  sweep_thresholds(g, [&](std::size_t k, const std::vector<ColumnBlock>& blocks) {
    while (cursor < n && g.threshold_of[g.by_threshold[cursor]] == k) {
      const std::size_t i = g.by_threshold[cursor++];
      below_at[i] = below[g.group_of[i]];
      above_at[i] = above[g.group_of[i]];
    }
    if (k + 1 == m) return;
    const double width = g.thresholds[k + 1] - g.thresholds[k];
    for (const auto& b : blocks) {
      const double lo = width * b.value * b.value;
      const double hi = width * (1.0 - b.value) * (1.0 - b.value);
      for (std::size_t j = b.first; j <= b.last; ++j) {
        below[j] += lo;
        above[j] += hi;
      }
    }
  });

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = below_at[i] + (above[g.group_of[i]] - above_at[i]);
  }
  return out;
}

namespace detail {

double in_sample_mean_crps(const PairedSample& sample) {
  const Grouped g = group_sample(sample);
  const std::size_t m = g.thresholds.size();
  double total = 0.0;
  sweep_thresholds(g, [&](std::size_t k, const std::vector<ColumnBlock>& blocks) {
    if (k + 1 == m) return;
    const double width = g.thresholds[k + 1] - g.thresholds[k];
    double column = 0.0;
    for (const auto& b : blocks) {
      // sum over the block's instances of (F - 1{y <= z_k})^2
      column += b.value * b.value * b.weight - 2.0 * b.value * b.count + b.count;
    }
    total += width * column;
  });
  return total / static_cast<double>(sample.size());
}

}  // namespace detail

}  // namespace pcrps
