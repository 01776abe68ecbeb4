#include "pcrps/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pcrps/idr.hpp"

namespace pcrps {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, std::string(what) + " is not finite");
}

// Integral of (F(z) - 1{y <= z})^2 over z >= lower.
double integrate_from(const StepDistribution& F, double y, double lower) {
  const auto& t = F.points();
  const auto& p = F.cdf();
  auto length = [lower](double a, double b) {
    a = std::max(a, lower);
    return b > a ? b - a : 0.0;
  };

  // Below the support F = 0, so only z >= y contributes; above it F = 1,
  // so only z < y contributes.
  double total = length(y, t.front());
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double a = t[k];
    const double b = t[k + 1];
    const double f = p[k];
    total += f * f * length(a, std::min(b, y));
    total += (1.0 - f) * (1.0 - f) * length(std::max(a, y), b);
  }
  total += length(t.back(), y);
  return total;
}

}  // namespace

double crps(const StepDistribution& F, double y) {
  require_finite(y, "outcome");
  return integrate_from(F, y, -std::numeric_limits<double>::infinity());
}

double crps_energy(const StepDistribution& F, double y) {
  require_finite(y, "outcome");
  const auto& t = F.points();
  double to_outcome = 0.0;
  double spread = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double pk = F.mass(k);
    to_outcome += pk * std::abs(t[k] - y);
    for (std::size_t l = 0; l < t.size(); ++l) spread += pk * F.mass(l) * std::abs(t[k] - t[l]);
  }
  return to_outcome - 0.5 * spread;
}

double tw_crps(const StepDistribution& F, double y, double threshold) {
  require_finite(y, "outcome");
  if (std::isnan(threshold)) throw Error(ErrorCode::NonFiniteValue, "threshold is NaN");
  return integrate_from(F, y, threshold);
}

double mean_crps(std::span<const StepDistribution> forecasts, std::span<const double> y) {
  if (forecasts.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "forecasts and outcomes differ in length");
  }
  if (y.empty()) throw Error(ErrorCode::EmptyInput, "no forecast cases");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += crps(forecasts[i], y[i]);
  return sum / static_cast<double>(y.size());
}

double pc0(std::span<const double> y) {
  if (y.empty()) throw Error(ErrorCode::EmptyInput, "no outcomes");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw Error(ErrorCode::NonFiniteValue, "y[" + std::to_string(i) + "] is not finite");
    }
  }
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  // Sum over pairs of |y_i - y_j| written through the order-statistic gaps:
  // gap k (between the k-th and (k+1)-th smallest) separates k(n - k) pairs.
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const double kk = static_cast<double>(k);
    sum += kk * (n - kk) * (sorted[k] - sorted[k - 1]);
  }
  return sum / (n * n);
}

Skill pcs(double pc, double pc0) {
  if (pc0 == 0.0) return {0.0, true};
  return {(pc0 - pc) / pc0, false};
}

PcSummary pc(const PairedSample& sample) {
  PcSummary out;
  out.n = sample.size();
  out.pc = std::max(0.0, detail::in_sample_mean_crps(sample));
  out.pc0 = pc0(sample.y());
  const Skill skill = pcs(out.pc, out.pc0);
  out.pcs = skill.value;
  out.degenerate = skill.degenerate;
  return out;
}

}  // namespace pcrps
