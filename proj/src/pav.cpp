#include "pcrps/pav.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pcrps/core.hpp"

namespace pcrps {

namespace {

void validate(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::LengthMismatch, "values and weights differ in length");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NonFiniteValue, "values[" + std::to_string(i) + "] is not finite");
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NonPositiveWeight,
                  "weights[" + std::to_string(i) + "] must be positive and finite");
    }
  }
}

// Floating error may leave violations of order 1e-16 between blocks;
// forward-propagating the running maximum removes them.
void clamp_nondecreasing(std::vector<double>& fitted) {
  for (std::size_t i = 1; i < fitted.size(); ++i) {
    if (fitted[i] < fitted[i - 1]) fitted[i] = fitted[i - 1];
  }
}

// Adjacent blocks that ended on the same value form one level set.
void merge_equal_blocks(PavResult& r) {
  std::vector<PavBlock> merged;
  for (const auto& b : r.blocks) {
    if (!merged.empty() && merged.back().value == b.value) {
      merged.back().last = b.last;
    } else {
      merged.push_back(b);
    }
  }
  r.blocks = std::move(merged);
}

PavResult reversed(PavResult r) {
  const std::size_t n = r.fitted.size();
  std::reverse(r.fitted.begin(), r.fitted.end());
  std::reverse(r.blocks.begin(), r.blocks.end());
  for (auto& b : r.blocks) {
    const std::size_t first = n - 1 - b.last;
    b.last = n - 1 - b.first;
    b.first = first;
  }
  return r;
}

}  // namespace

namespace detail {

void pool_nondecreasing(std::span<const double> sums, std::span<const double> weights,
                        std::vector<PoolBlock>& stack, std::span<const double> levels) {
  stack.clear();
  for (std::size_t i = 0; i < sums.size(); ++i) {
    PoolBlock cur{i, sums[i], weights[i], levels.empty() ? sums[i] / weights[i] : levels[i]};
    while (!stack.empty() && stack.back().mean() > cur.mean()) {
      const PoolBlock& prev = stack.back();
      cur.first = prev.first;
      cur.sum += prev.sum;
      cur.weight += prev.weight;
      cur.level = cur.sum / cur.weight;
      stack.pop_back();
    }
    stack.push_back(cur);
  }
}

}  // namespace detail

PavResult pav_isotonic(std::span<const double> values, std::span<const double> weights) {
  validate(values, weights);
  const std::size_t n = values.size();
  std::vector<double> sums(n);
  for (std::size_t i = 0; i < n; ++i) sums[i] = weights[i] * values[i];

  std::vector<detail::PoolBlock> stack;
  detail::pool_nondecreasing(sums, weights, stack, values);

  PavResult out;
  out.fitted.resize(n);
  out.blocks.reserve(stack.size());
  for (std::size_t b = 0; b < stack.size(); ++b) {
    const std::size_t last = b + 1 < stack.size() ? stack[b + 1].first - 1 : n - 1;
    const double value = stack[b].mean();
    std::fill(out.fitted.begin() + static_cast<std::ptrdiff_t>(stack[b].first),
              out.fitted.begin() + static_cast<std::ptrdiff_t>(last + 1), value);
    out.blocks.push_back({stack[b].first, last, value});
  }
  clamp_nondecreasing(out.fitted);
  for (auto& b : out.blocks) b.value = out.fitted[b.first];
  merge_equal_blocks(out);
  return out;
}

PavResult pav_antitonic(std::span<const double> values, std::span<const double> weights) {
  validate(values, weights);
  std::vector<double> v(values.rbegin(), values.rend());
  std::vector<double> w(weights.rbegin(), weights.rend());
  return reversed(pav_isotonic(v, w));
}

namespace {

struct QuantileBlock {
  std::size_t first;
  std::vector<std::pair<double, double>> members;  // (value, weight), sorted by value
  double total_weight;
  double value;
};

double left_quantile(const std::vector<std::pair<double, double>>& members, double total,
                     double alpha) {
  const double target = alpha * total;
  double cumulative = 0.0;
  for (const auto& [v, w] : members) {
    cumulative += w;
    if (cumulative >= target) return v;
  }
  return members.back().first;
}

}  // namespace

PavResult pav_quantile(std::span<const double> values, std::span<const double> weights,
                       double alpha) {
  validate(values, weights);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
  }
  const std::size_t n = values.size();
  std::vector<QuantileBlock> stack;
  for (std::size_t i = 0; i < n; ++i) {
    QuantileBlock cur{i, {{values[i], weights[i]}}, weights[i], values[i]};
    while (!stack.empty() && stack.back().value > cur.value) {
      QuantileBlock& prev = stack.back();
      std::vector<std::pair<double, double>> merged;
      merged.reserve(prev.members.size() + cur.members.size());
      std::merge(prev.members.begin(), prev.members.end(), cur.members.begin(),
                 cur.members.end(), std::back_inserter(merged));
      cur.first = prev.first;
      cur.members = std::move(merged);
      cur.total_weight += prev.total_weight;
      cur.value = left_quantile(cur.members, cur.total_weight, alpha);
      stack.pop_back();
    }
    stack.push_back(std::move(cur));
  }

  PavResult out;
  out.fitted.resize(n);
  for (std::size_t b = 0; b < stack.size(); ++b) {
    const std::size_t last = b + 1 < stack.size() ? stack[b + 1].first - 1 : n - 1;
    for (std::size_t i = stack[b].first; i <= last; ++i) out.fitted[i] = stack[b].value;
    out.blocks.push_back({stack[b].first, last, stack[b].value});
  }
  merge_equal_blocks(out);
  return out;
}

}  // namespace pcrps
