#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcrps {

enum class ErrorCode {
  LengthMismatch,
  NonFiniteValue,
  EmptyInput,
  NotSorted,
  NotMonotoneCdf,
  LastNotOne,
  ProbabilityOutOfRange,
  EmptyEnsemble,
  NonPositiveWeight,
  AlphaOutOfRange,
  SampleMismatch,
  CoordinateMismatch,
  LatitudeOutOfRange,
  InsufficientData,
  EmptySeries,
  ConvergenceFailure,
  AllOutcomesEqual,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Exception type for every recoverable failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Aligned forecast/outcome pairs for one model at one location and lead.
/// Immutable once built; construct through make_sample.
class PairedSample {
 public:
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }

 private:
  PairedSample(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {}

  friend PairedSample make_sample(std::vector<double> x, std::vector<double> y);

  std::vector<double> x_;
  std::vector<double> y_;
};

/// Validates lengths (equal, >= 1) and finiteness; keeps input order.
PairedSample make_sample(std::vector<double> x, std::vector<double> y);

/// Discrete predictive CDF, right-continuous: F(z) = cdf[k] for
/// points[k] <= z < points[k+1], 0 below points[0] and 1 from points.back().
class StepDistribution {
 public:
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& cdf() const noexcept { return cdf_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// F(z).
  double operator()(double z) const;

  /// Probability mass at points()[k].
  double mass(std::size_t k) const { return k == 0 ? cdf_[0] : cdf_[k] - cdf_[k - 1]; }

 private:
  StepDistribution(std::vector<double> points, std::vector<double> cdf)
      : points_(std::move(points)), cdf_(std::move(cdf)) {}

  friend StepDistribution make_step_distribution(std::vector<double> points,
                                                 std::vector<double> cdf);

  std::vector<double> points_;
  std::vector<double> cdf_;
};

StepDistribution make_step_distribution(std::vector<double> points, std::vector<double> cdf);

/// Empirical distribution of ensemble members (equal weights).
StepDistribution from_ensemble(std::span<const double> members);

/// Time x lat x lon field. values are row-major with time outermost and
/// longitude innermost; NaN marks a missing value.
struct GridField {
  std::vector<std::int64_t> times;
  std::vector<double> lats;
  std::vector<double> lons;
  std::vector<double> values;
  std::string variable;
  std::string units;

  std::size_t n_time() const noexcept { return times.size(); }
  std::size_t n_lat() const noexcept { return lats.size(); }
  std::size_t n_lon() const noexcept { return lons.size(); }
  std::size_t n_cells() const noexcept { return lats.size() * lons.size(); }

  double at(std::size_t t, std::size_t lat, std::size_t lon) const {
    return values[(t * lats.size() + lat) * lons.size() + lon];
  }

  /// Time series of cell (lat, lon), missing values included.
  std::vector<double> series(std::size_t lat, std::size_t lon) const;

  /// Throws InvalidArgument / LatitudeOutOfRange / NotSorted on violations.
  void validate() const;
};

/// Throws CoordinateMismatch naming the first differing coordinate.
void require_same_coordinates(const GridField& a, const GridField& b);

/// Drops pairs where either entry is NaN. Returns the retained pairs.
struct CompletePairs {
  std::vector<double> x;
  std::vector<double> y;
};
CompletePairs drop_missing(std::span<const double> x, std::span<const double> y);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Worker count for `requested` (0 = PC_THREADS env var, else hardware).
unsigned resolve_threads(unsigned requested);

}  // namespace pcrps
