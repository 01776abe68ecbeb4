#include "pcrps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcrps/scoring.hpp"

namespace pcrps {

double rmse(const PairedSample& sample) {
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double e = sample.x()[i] - sample.y()[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(sample.size()));
}

double mae(const PairedSample& sample) {
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) sum += std::abs(sample.x()[i] - sample.y()[i]);
  return sum / static_cast<double>(sample.size());
}

double quantile_loss(const PairedSample& sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = sample.y()[i] - sample.x()[i];
    sum += u * (alpha - (u < 0.0 ? 1.0 : 0.0));
  }
  return sum / static_cast<double>(sample.size());
}

namespace {

Correlation pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return {0.0, true};
  return {std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0), false};
}

}  // namespace

Correlation acc(const PairedSample& sample) {
  const auto& y = sample.y();
  return acc(sample, std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size()));
}

Correlation acc(const PairedSample& sample, double climatology) {
  std::vector<double> clim(sample.size(), climatology);
  return acc(sample, clim);
}

Correlation acc(const PairedSample& sample, std::span<const double> climatology) {
  if (climatology.size() != sample.size()) {
    throw Error(ErrorCode::LengthMismatch, "climatology length differs from sample");
  }
  std::vector<double> fa(sample.size());
  std::vector<double> oa(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    fa[i] = sample.x()[i] - climatology[i];
    oa[i] = sample.y()[i] - climatology[i];
  }
  return pearson(fa, oa);
}

std::vector<double> midranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double cpa(const PairedSample& sample) {
  const auto rx = midranks(sample.x());
  const auto ry = midranks(sample.y());
  // Both rank vectors have mean (n + 1) / 2.
  const double center = 0.5 * (static_cast<double>(sample.size()) + 1.0);
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - center) * (ry[i] - center);
    var += (ry[i] - center) * (ry[i] - center);
  }
  if (var == 0.0) throw Error(ErrorCode::AllOutcomesEqual, "CPA needs two distinct outcomes");
  return std::clamp(0.5 * (1.0 + cov / var), 0.0, 1.0);
}

MetricRow evaluate_metrics(std::string label, const PairedSample& sample, double alpha) {
  MetricRow row;
  row.label = std::move(label);
  row.rmse = rmse(sample);
  row.mae = mae(sample);
  row.quantile_loss = quantile_loss(sample, alpha);
  const PcSummary summary = pc(sample);
  row.pc = summary.pc;
  row.pcs = summary.pcs;
  row.acc = acc(sample).value;
  row.cpa = cpa(sample);
  return row;
}

}  // namespace pcrps
