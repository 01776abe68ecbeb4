#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pcrps/metrics.hpp"

namespace pcrps {

/// Uniform variates on (0, 1) from a seeded mt19937_64: the top 53 bits of
/// each 64-bit output k give (k + 0.5) / 2^53. This stream definition is
/// part of the reproducibility contract of the simulation.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

/// Inverse of the Gamma(shape, scale) CDF. Throws ConvergenceFailure if the
/// root cannot be bracketed or refined to 1e-10.
double gamma_quantile(double alpha, double shape, double scale);

struct SimConfig {
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  bool squared_outcome = false;
};

struct World {
  std::vector<double> w;
  std::vector<double> y;
};

/// Gamma shape and scale of Y given W = w.
double gamma_shape(double w);
double gamma_scale(double w);

/// W ~ U(0, 10); Y | W ~ Gamma(sqrt(W), min(max(W, 1), 6)), drawn by
/// inverse transform. Each instance consumes two uniforms: W then Y.
World draw_world(const SimConfig& config);

/// The four forecasters (w, conditional mean, median, 0.90-quantile)
/// scored against y, or y^2 when config.squared_outcome is set.
MetricTable run_study(const SimConfig& config);

}  // namespace pcrps
