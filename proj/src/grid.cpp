#include "pcrps/grid.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace pcrps {

double lat_weight(double lat_degrees) {
  if (!(std::abs(lat_degrees) <= 90.0)) {
    throw Error(ErrorCode::LatitudeOutOfRange, "latitude " + std::to_string(lat_degrees));
  }
  if (std::abs(lat_degrees) == 90.0) return 0.0;
  return std::max(0.0, std::cos(lat_degrees * std::numbers::pi / 180.0));
}

Aggregate aggregate_cells(std::span<const CellResult> cells) {
  Aggregate out;
  double wpc = 0.0;
  double wpc0 = 0.0;
  for (const auto& c : cells) {
    const double w = lat_weight(c.lat);
    out.weight_sum += w;
    wpc += w * c.summary.pc;
    wpc0 += w * c.summary.pc0;
  }
  out.n_cells = cells.size();
  if (out.weight_sum > 0.0) {
    out.pc = wpc / out.weight_sum;
    out.pc0 = wpc0 / out.weight_sum;
  }
  out.pcs = wpc0 > 0.0 ? (wpc0 - wpc) / wpc0 : 0.0;
  return out;
}

EvalReport evaluate_grid(const GridField& forecast, const GridField& truth,
                         const GridEvalOptions& options) {
  forecast.validate();
  truth.validate();
  require_same_coordinates(forecast, truth);

  const std::size_t n_lon = forecast.n_lon();
  const std::size_t n_cells = forecast.n_cells();
  std::vector<std::optional<CellResult>> results(n_cells);
  std::vector<std::size_t> used(n_cells, 0);

  parallel_for(n_cells, options.threads, [&](std::size_t cell) {
    const std::size_t ilat = cell / n_lon;
    const std::size_t ilon = cell % n_lon;
    const auto fx = forecast.series(ilat, ilon);
    const auto ty = truth.series(ilat, ilon);
    CompletePairs pairs = drop_missing(fx, ty);
    used[cell] = pairs.x.size();
    if (pairs.x.size() < 2) return;
    CellResult r;
    r.lat_index = ilat;
    r.lon_index = ilon;
    r.lat = forecast.lats[ilat];
    r.lon = forecast.lons[ilon];
    r.n_used = pairs.x.size();
    r.summary = pc(make_sample(std::move(pairs.x), std::move(pairs.y)));
    results[cell] = r;
  });

  EvalReport report;
  report.model = options.model;
  report.truth = options.truth;
  report.lead_days = options.lead_days;
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    if (results[cell]) {
      report.cells.push_back(*results[cell]);
    } else {
      report.excluded.push_back(
          {forecast.lats[cell / n_lon], forecast.lons[cell % n_lon], used[cell]});
    }
  }
  report.aggregate = aggregate_cells(report.cells);
  return report;
}

std::vector<CellSkill> skill_vs_reference(std::span<const double> pc,
                                          std::span<const double> reference) {
  if (pc.size() != reference.size()) {
    throw Error(ErrorCode::CoordinateMismatch, "skill fields have different cell counts");
  }
  std::vector<CellSkill> out(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (reference[i] == 0.0) {
      out[i] = {0.0, true};
    } else {
      out[i] = {1.0 - pc[i] / reference[i], false};
    }
  }
  return out;
}

}  // namespace pcrps
