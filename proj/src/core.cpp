#include "pcrps/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace pcrps {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::NotMonotoneCdf: return "NotMonotoneCdf";
    case ErrorCode::LastNotOne: return "LastNotOne";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::SampleMismatch: return "SampleMismatch";
    case ErrorCode::CoordinateMismatch: return "CoordinateMismatch";
    case ErrorCode::LatitudeOutOfRange: return "LatitudeOutOfRange";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::AllOutcomesEqual: return "AllOutcomesEqual";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::NonFiniteValue,
                  std::string(what) + "[" + std::to_string(i) + "] is not finite");
    }
  }
}

}  // namespace

PairedSample make_sample(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "x has " + std::to_string(x.size()) +
                                               " entries, y has " + std::to_string(y.size()));
  }
  if (x.empty()) throw Error(ErrorCode::EmptyInput, "sample needs at least one pair");
  require_finite(x, "x");
  require_finite(y, "y");
  return PairedSample(std::move(x), std::move(y));
}

double StepDistribution::operator()(double z) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), z);
  if (it == points_.begin()) return 0.0;
  return cdf_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

StepDistribution make_step_distribution(std::vector<double> points, std::vector<double> cdf) {
  if (points.size() != cdf.size()) {
    throw Error(ErrorCode::LengthMismatch, "points and cdf differ in length");
  }
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "distribution needs a jump point");
  require_finite(points, "points");
  require_finite(cdf, "cdf");
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!(points[k - 1] < points[k])) {
      throw Error(ErrorCode::NotSorted,
                  "points not strictly increasing at index " + std::to_string(k));
    }
    if (cdf[k] < cdf[k - 1]) {
      throw Error(ErrorCode::NotMonotoneCdf, "cdf decreases at index " + std::to_string(k));
    }
  }
  if (!(cdf.front() > 0.0) || cdf.front() > 1.0) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "first cdf value must lie in (0, 1]");
  }
  if (std::abs(cdf.back() - 1.0) > 1e-12) {
    throw Error(ErrorCode::LastNotOne, "last cdf value must be 1");
  }
  cdf.back() = 1.0;
  return StepDistribution(std::move(points), std::move(cdf));
}

StepDistribution from_ensemble(std::span<const double> members) {
  if (members.empty()) throw Error(ErrorCode::EmptyEnsemble, "no ensemble members");
  require_finite(members, "members");
  std::vector<double> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> points;
  std::vector<double> cdf;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    points.push_back(sorted[i]);
    cdf.push_back(static_cast<double>(i + 1) / n);
  }
  cdf.back() = 1.0;
  return make_step_distribution(std::move(points), std::move(cdf));
}

std::vector<double> GridField::series(std::size_t lat, std::size_t lon) const {
  std::vector<double> out(times.size());
  for (std::size_t t = 0; t < times.size(); ++t) out[t] = at(t, lat, lon);
  return out;
}

namespace {

bool strictly_monotone(const std::vector<double>& v) {
  if (v.size() < 2) return true;
  const bool up = v[1] > v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

void GridField::validate() const {
  if (values.size() != times.size() * lats.size() * lons.size()) {
    throw Error(ErrorCode::InvalidArgument, "grid values do not match coordinate dimensions");
  }
  for (double lat : lats) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
      throw Error(ErrorCode::LatitudeOutOfRange, "latitude " + std::to_string(lat));
    }
  }
  for (double lon : lons) {
    if (!(lon >= 0.0 && lon < 360.0)) {
      throw Error(ErrorCode::InvalidArgument, "longitude outside [0, 360): " + std::to_string(lon));
    }
  }
  if (!strictly_monotone(lats)) throw Error(ErrorCode::NotSorted, "latitudes not strictly monotone");
  if (!strictly_monotone(lons)) throw Error(ErrorCode::NotSorted, "longitudes not strictly monotone");
  for (double v : values) {
    if (std::isinf(v)) throw Error(ErrorCode::NonFiniteValue, "grid contains an infinite value");
  }
}

void require_same_coordinates(const GridField& a, const GridField& b) {
  auto mismatch = [](const std::string& what) {
    throw Error(ErrorCode::CoordinateMismatch, what);
  };
  if (a.times.size() != b.times.size()) mismatch("time dimension differs");
  if (a.lats.size() != b.lats.size()) mismatch("lat dimension differs");
  if (a.lons.size() != b.lons.size()) mismatch("lon dimension differs");
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (a.times[i] != b.times[i]) {
      mismatch("times[" + std::to_string(i) + "]: " + std::to_string(a.times[i]) + " vs " +
               std::to_string(b.times[i]));
    }
  }
  for (std::size_t i = 0; i < a.lats.size(); ++i) {
    if (a.lats[i] != b.lats[i]) {
      mismatch("lats[" + std::to_string(i) + "]: " + std::to_string(a.lats[i]) + " vs " +
               std::to_string(b.lats[i]));
    }
  }
  for (std::size_t i = 0; i < a.lons.size(); ++i) {
    if (a.lons[i] != b.lons[i]) {
      mismatch("lons[" + std::to_string(i) + "]: " + std::to_string(a.lons[i]) + " vs " +
               std::to_string(b.lons[i]));
    }
  }
}

CompletePairs drop_missing(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "series differ in length");
  CompletePairs out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) continue;
    out.x.push_back(x[i]);
    out.y.push_back(y[i]);
  }
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace pcrps
