#include "pcrps/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pcrps/idr.hpp"

namespace pcrps {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t seed, std::size_t cell) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(cell));
}

PermutationResult block_permutation_test(std::span<const double> scores_a,
                                         std::span<const double> scores_b, int lead_days,
                                         std::size_t n_permutations, std::uint64_t seed) {
  if (scores_a.size() != scores_b.size()) {
    throw Error(ErrorCode::LengthMismatch, "score series differ in length");
  }
  if (scores_a.empty()) throw Error(ErrorCode::EmptySeries, "no scores to compare");
  if (lead_days < 1) throw Error(ErrorCode::InvalidArgument, "lead_days must be >= 1");
  if (n_permutations < 1) throw Error(ErrorCode::InvalidArgument, "need at least one permutation");

  const std::size_t n = scores_a.size();
  const std::size_t block = 2 * static_cast<std::size_t>(lead_days);
  std::vector<double> block_sums;
  for (std::size_t start = 0; start < n; start += block) {
    double s = 0.0;
    for (std::size_t i = start; i < std::min(n, start + block); ++i) s += scores_a[i] - scores_b[i];
    block_sums.push_back(s);
  }

  // Same summation route for the actual and the permuted statistics, so an
  // all-positive sign pattern reproduces the actual value bit for bit.
  const double scale = static_cast<double>(n);
  double actual = 0.0;
  for (double s : block_sums) actual += s;
  actual /= scale;

  std::mt19937_64 rng(seed);
  double rank = 0.5;
  for (std::size_t p = 0; p < n_permutations; ++p) {
    double stat = 0.0;
    for (double s : block_sums) stat += (rng() >> 63) ? -s : s;
    stat /= scale;
    if (stat < actual) {
      rank += 1.0;
    } else if (stat == actual) {
      rank += 0.5;
    }
  }

  const double N = static_cast<double>(n_permutations);
  PermutationResult out;
  out.p_value = std::clamp(rank / N, 1.0 / (2.0 * N), 1.0);
  out.actual_stat = actual;
  out.n_permutations = n_permutations;
  out.block_length = block;
  out.seed = seed;
  return out;
}

std::vector<CellPValue> gridpoint_p_values(const GridField& model_a, const GridField& model_b,
                                           const GridField& truth, const PValueOptions& options) {
  model_a.validate();
  model_b.validate();
  truth.validate();
  require_same_coordinates(model_a, truth);
  require_same_coordinates(model_b, truth);

  const std::size_t n_lon = truth.n_lon();
  std::vector<CellPValue> out(truth.n_cells());
  parallel_for(out.size(), options.threads, [&](std::size_t cell) {
    const std::size_t ilat = cell / n_lon;
    const std::size_t ilon = cell % n_lon;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> t;
    for (std::size_t k = 0; k < truth.n_time(); ++k) {
      const double va = model_a.at(k, ilat, ilon);
      const double vb = model_b.at(k, ilat, ilon);
      const double vt = truth.at(k, ilat, ilon);
      if (std::isnan(va) || std::isnan(vb) || std::isnan(vt)) continue;
      a.push_back(va);
      b.push_back(vb);
      t.push_back(vt);
    }
    CellPValue& r = out[cell];
    r.lat = truth.lats[ilat];
    r.lon = truth.lons[ilon];
    r.n_used = t.size();
    if (t.size() < 2) {
      r.p_value = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    const auto crps_a = in_sample_crps(make_sample(std::move(a), t));
    const auto crps_b = in_sample_crps(make_sample(std::move(b), t));
    r.p_value = block_permutation_test(crps_a, crps_b, options.lead_days, options.n_permutations,
                                       cell_seed(options.seed, cell))
                    .p_value;
  });
  return out;
}

namespace {

double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

BoxSummary summarize_p_values(std::span<const CellPValue> cells) {
  std::vector<double> p;
  for (const auto& c : cells) {
    if (std::isfinite(c.p_value)) p.push_back(c.p_value);
  }
  BoxSummary s;
  s.count = p.size();
  if (p.empty()) {
    s.min = s.q1 = s.median = s.q3 = s.max = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(p.begin(), p.end());
  s.min = p.front();
  s.q1 = sorted_quantile(p, 0.25);
  s.median = sorted_quantile(p, 0.5);
  s.q3 = sorted_quantile(p, 0.75);
  s.max = p.back();
  return s;
}

}  // namespace pcrps
