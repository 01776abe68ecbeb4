#pragma once

#include <string>
#include <vector>

#include "pcrps/metrics.hpp"

namespace pcrps::svg {

struct Series {
  std::string label;
  std::vector<double> values;
};

/// One small panel per metric: x = model index, y = metric value, models
/// joined by a polyline. Static SVG 1.1, no scripts.
std::string metric_strip_chart(const std::string& title, const std::vector<std::string>& models,
                               const std::vector<Series>& metrics);

/// Strip chart of the seven table columns.
std::string metric_table_chart(const MetricTable& table, const std::string& title);

}  // namespace pcrps::svg
