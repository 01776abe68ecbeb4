#pragma once

// Brute-force reference computations. They share no code with the library
// beyond the StepDistribution type, and are meant for small inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pcrps/core.hpp"

namespace oracle {

/// Contiguous partitions of [0, n): bit i of mask set means a cut after i.
template <typename Visit>
void for_each_partition(std::size_t n, Visit&& visit) {
  const std::uint64_t count = n == 0 ? 1 : (std::uint64_t{1} << (n - 1));
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        blocks.emplace_back(start, i);
        start = i + 1;
      }
    }
    blocks.emplace_back(start, n - 1);
    visit(blocks);
  }
}

struct LsFit {
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> fitted;
};

/// Weighted least squares under a monotone constraint, by enumerating all
/// level-set partitions whose block means respect the order.
inline LsFit exhaustive_monotone_ls(const std::vector<double>& v, const std::vector<double>& w,
                                    bool increasing) {
  LsFit best;
  for_each_partition(v.size(), [&](const auto& blocks) {
    std::vector<double> means;
    for (auto [a, b] : blocks) {
      double sw = 0, swv = 0;
      for (std::size_t i = a; i <= b; ++i) {
        sw += w[i];
        swv += w[i] * v[i];
      }
      means.push_back(swv / sw);
    }
    for (std::size_t k = 1; k < means.size(); ++k) {
      if (increasing ? means[k] < means[k - 1] : means[k] > means[k - 1]) return;
    }
    double obj = 0;
    std::vector<double> fitted(v.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (std::size_t i = blocks[k].first; i <= blocks[k].second; ++i) {
        fitted[i] = means[k];
        obj += w[i] * (v[i] - means[k]) * (v[i] - means[k]);
      }
    }
    if (obj < best.objective) best = {obj, fitted};
  });
  return best;
}

inline double ls_objective(const std::vector<double>& v, const std::vector<double>& w,
                           const std::vector<double>& f) {
  double obj = 0;
  for (std::size_t i = 0; i < v.size(); ++i) obj += w[i] * (v[i] - f[i]) * (v[i] - f[i]);
  return obj;
}

/// Exact rational a / b with b > 0.
struct Rational {
  std::int64_t num;
  std::int64_t den;
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// min over l >= i of max over k <= i of the weighted mean of v[k..l], in
/// exact rational arithmetic; inputs must be integers.
inline std::vector<double> minmax_isotonic_exact(const std::vector<std::int64_t>& v,
                                                 const std::vector<std::int64_t>& w) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool have_min = false;
    Rational best{0, 1};
    for (std::size_t l = i; l < n; ++l) {
      bool have_max = false;
      Rational inner{0, 1};
      for (std::size_t k = 0; k <= i; ++k) {
        std::int64_t s = 0, sw = 0;
        for (std::size_t t = k; t <= l; ++t) {
          s += w[t] * v[t];
          sw += w[t];
        }
        Rational r{s, sw};
        if (!have_max || inner < r) inner = r, have_max = true;
      }
      if (!have_min || inner < best) best = inner, have_min = true;
    }
    out[i] = best.to_double();
  }
  return out;
}

/// Same formula in floating point, for non-integer inputs.
inline std::vector<double> minmax_isotonic(const std::vector<double>& v, const std::vector<double>& w) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = i; l < n; ++l) {
      double inner = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k <= i; ++k) {
        double s = 0, sw = 0;
        for (std::size_t t = k; t <= l; ++t) {
          s += w[t] * v[t];
          sw += w[t];
        }
        inner = std::max(inner, s / sw);
      }
      best = std::min(best, inner);
    }
    out[i] = best;
  }
  return out;
}

inline double pinball(double u, double alpha) { return u * (alpha - (u < 0 ? 1.0 : 0.0)); }

inline double pinball_objective(const std::vector<double>& v, const std::vector<double>& w,
                                const std::vector<double>& f, double alpha) {
  double obj = 0;
  for (std::size_t i = 0; i < v.size(); ++i) obj += w[i] * pinball(v[i] - f[i], alpha);
  return obj;
}

/// Minimum weighted pinball loss over nondecreasing vectors. Some optimum
/// takes values in the data set, so all nondecreasing sequences over the
/// sorted unique values are enumerated.
inline double exhaustive_isotonic_pinball(const std::vector<double>& v, const std::vector<double>& w,
                                          double alpha) {
  std::vector<double> levels(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> f(n);
  // Recursive enumeration of nondecreasing index sequences.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t lo) -> void {
    if (pos == n) {
      for (std::size_t i = 0; i < n; ++i) f[i] = levels[idx[i]];
      best = std::min(best, pinball_objective(v, w, f, alpha));
      return;
    }
    for (std::size_t k = lo; k < levels.size(); ++k) {
      idx[pos] = k;
      self(self, pos + 1, k);
    }
  };
  rec(rec, 0, 0);
  return best;
}

/// Minimum over stochastically ordered step-CDF families supported on the
/// outcomes of the mean CRPS. The objective separates over thresholds into
/// antitonic least-squares problems in the covariate groups, each solved
/// exhaustively.
inline double exhaustive_idr_mean_crps(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> groups(x), thresholds(y);
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  double total = 0;
  for (std::size_t k = 0; k + 1 < thresholds.size(); ++k) {
    std::vector<double> size(groups.size(), 0), count(groups.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto g = static_cast<std::size_t>(
          std::lower_bound(groups.begin(), groups.end(), x[i]) - groups.begin());
      size[g] += 1;
      if (y[i] <= thresholds[k]) count[g] += 1;
    }
    std::vector<double> mean(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) mean[g] = count[g] / size[g];
    const LsFit fit = exhaustive_monotone_ls(mean, size, false);
    // Per instance (F - 1)^2 or F^2; the group part beyond the LS objective
    // is the within-group variance of the indicator.
    double column = fit.objective;
    for (std::size_t g = 0; g < groups.size(); ++g) column += count[g] * (1.0 - mean[g]);
    total += (thresholds[k + 1] - thresholds[k]) * column;
  }
  return total / static_cast<double>(x.size());
}

/// CRPS by Gauss-Kronrod quadrature of (F(z) - 1{y <= z})^2, evaluated
/// pointwise, over the pieces between consecutive breakpoints.
inline double quadrature_crps(const pcrps::StepDistribution& F, double y,
                              double lower = -std::numeric_limits<double>::infinity()) {
  std::vector<double> breaks(F.points());
  breaks.push_back(y);
  std::sort(breaks.begin(), breaks.end());
  auto integrand = [&](double z) {
    const double ind = y <= z ? 1.0 : 0.0;
    const double d = F(z) - ind;
    return d * d;
  };
  double total = 0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = std::max(breaks[k], lower);
    double b = breaks[k + 1];
    if (!(b > a)) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 5, 1e-12);
  }
  return total;
}

inline double pc0_double_loop(const std::vector<double>& y) {
  double s = 0;
  for (double a : y)
    for (double b : y) s += std::abs(a - b);
  const double n = static_cast<double>(y.size());
  return s / (2 * n * n);
}

/// Pairwise concordance over pairs with y_i < y_j, weighted by the outcome
/// midrank difference, forecast ties counted half.
inline double cpa_pairs(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] < y[i]) less += 1;
      if (y[j] == y[i]) equal += 1;
    }
    rank[i] = less + (equal + 1) / 2;
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(y[i] < y[j])) continue;
      const double wgt = rank[j] - rank[i];
      den += wgt;
      num += wgt * (x[i] < x[j] ? 1.0 : (x[i] == x[j] ? 0.5 : 0.0));
    }
  }
  return num / den;
}

/// True when y is a nondecreasing function of x: after sorting by x, y is
/// nondecreasing and constant within tied x.
inline bool monotone_after_pooling(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[i] <= x[j] && y[i] > y[j]) return false;
    }
  }
  return true;
}

/// Random step distribution with m jump points on a coarse lattice.
inline pcrps::StepDistribution random_step(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> pts;
  while (pts.size() < m) {
    pts.push_back(u(rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  std::vector<double> mass(m);
  std::uniform_real_distribution<double> p(0.05, 1.0);
  for (auto& v : mass) v = p(rng);
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  std::vector<double> cdf(m);
  double c = 0;
  for (std::size_t k = 0; k < m; ++k) cdf[k] = (c += mass[k] / total);
  cdf.back() = 1.0;
  return pcrps::make_step_distribution(pts, cdf);
}

}  // namespace oracle
