#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pcrps/grid.hpp"

using namespace pcrps;

namespace {

GridField make_grid(std::vector<double> lats, std::vector<double> lons, std::size_t n_time) {
  GridField g;
  for (std::size_t t = 0; t < n_time; ++t) g.times.push_back(static_cast<std::int64_t>(t) * 43200);
  g.lats = std::move(lats);
  g.lons = std::move(lons);
  g.values.assign(n_time * g.lats.size() * g.lons.size(), 0.0);
  return g;
}

double& cell(GridField& g, std::size_t t, std::size_t lat, std::size_t lon) {
  return g.values[(t * g.lats.size() + lat) * g.lons.size() + lon];
}

CellResult with_pc(double lat, double pc_value, double pc0_value) {
  CellResult c;
  c.lat = lat;
  c.summary.pc = pc_value;
  c.summary.pc0 = pc0_value;
  return c;
}

}  // namespace

TEST(LatWeight, Examples) {
  EXPECT_EQ(lat_weight(0), 1.0);
  EXPECT_NEAR(lat_weight(60), 0.5, 1e-15);
  EXPECT_EQ(lat_weight(90), 0.0);
  EXPECT_EQ(lat_weight(-90), 0.0);
  EXPECT_THROW(lat_weight(90.5), Error);
}

TEST(Aggregate, Examples) {
  const std::vector<CellResult> equator{with_pc(0, 0.2, 1), with_pc(0, 0.4, 1)};
  EXPECT_NEAR(aggregate_cells(equator).pc, 0.3, 1e-15);

  const std::vector<CellResult> mixed{with_pc(0, 0.2, 1), with_pc(60, 0.4, 1)};
  const auto agg = aggregate_cells(mixed);
  EXPECT_NEAR(agg.pc, (0.2 + 0.5 * 0.4) / 1.5, 1e-15);
  EXPECT_NEAR(agg.pcs, 1.0 - agg.pc, 1e-15);
}

TEST(EvaluateGrid, PerfectForecastAndConsistency) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  GridField truth = make_grid({-45, 0, 45}, {0, 120, 240}, 40);
  for (auto& v : truth.values) v = z(rng);
  const auto report = evaluate_grid(truth, truth);
  ASSERT_EQ(report.cells.size(), 9u);
  EXPECT_EQ(report.aggregate.pc, 0.0);
  EXPECT_EQ(report.aggregate.pcs, 1.0);

  GridField noisy = truth;
  for (auto& v : noisy.values) v += z(rng);
  const auto r = evaluate_grid(noisy, truth, {.threads = 3});
  double wsum = 0, wpc = 0, wpc0 = 0;
  for (const auto& c : r.cells) {
    EXPECT_NEAR(c.summary.pcs, (c.summary.pc0 - c.summary.pc) / c.summary.pc0, 1e-12);
    const double w = std::cos(c.lat * M_PI / 180);
    wsum += w;
    wpc += w * c.summary.pc;
    wpc0 += w * c.summary.pc0;
  }
  EXPECT_NEAR(r.aggregate.pc, wpc / wsum, 1e-12);
  EXPECT_NEAR(r.aggregate.pc0, wpc0 / wsum, 1e-12);
  EXPECT_NEAR(r.aggregate.pcs, (wpc0 - wpc) / wpc0, 1e-12);

  // Thread count does not change the result.
  const auto serial = evaluate_grid(noisy, truth, {.threads = 1});
  EXPECT_EQ(serial.aggregate.pc, r.aggregate.pc);
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    EXPECT_EQ(serial.cells[i].summary.pc, r.cells[i].summary.pc);
  }
}

TEST(EvaluateGrid, EqualLatitudesGiveUnweightedMean) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  GridField truth = make_grid({30}, {0, 10, 20, 30}, 25);
  for (auto& v : truth.values) v = z(rng);
  GridField f = truth;
  for (auto& v : f.values) v += z(rng);
  const auto r = evaluate_grid(f, truth);
  double mean = 0;
  for (const auto& c : r.cells) mean += c.summary.pc;
  EXPECT_NEAR(r.aggregate.pc, mean / r.cells.size(), 1e-12);
}

TEST(EvaluateGrid, CellOrderDoesNotMatter) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  GridField truth = make_grid({-30, 10, 50}, {0, 100}, 30);
  for (auto& v : truth.values) v = z(rng);
  GridField f = truth;
  for (auto& v : f.values) v += z(rng);

  // Same data with latitudes reversed.
  auto flip = [](const GridField& g) {
    GridField out = g;
    out.lats.assign(g.lats.rbegin(), g.lats.rend());
    for (std::size_t t = 0; t < g.n_time(); ++t)
      for (std::size_t i = 0; i < g.n_lat(); ++i)
        for (std::size_t j = 0; j < g.n_lon(); ++j)
          out.values[(t * g.n_lat() + i) * g.n_lon() + j] = g.at(t, g.n_lat() - 1 - i, j);
    return out;
  };
  const auto a = evaluate_grid(f, truth);
  const auto b = evaluate_grid(flip(f), flip(truth));
  EXPECT_NEAR(a.aggregate.pc, b.aggregate.pc, 1e-12);
  EXPECT_NEAR(a.aggregate.pcs, b.aggregate.pcs, 1e-12);
}

TEST(EvaluateGrid, MissingDataAndExclusions) {
  const double nan = std::nan("");
  GridField truth = make_grid({0, 60}, {0}, 4);
  GridField f = truth;
  for (std::size_t t = 0; t < 4; ++t) {
    cell(truth, t, 0, 0) = t;
    cell(f, t, 0, 0) = 3.0 - t;
    cell(truth, t, 1, 0) = t;
    cell(f, t, 1, 0) = t;
  }
  cell(f, 1, 0, 0) = nan;
  auto r = evaluate_grid(f, truth);
  ASSERT_EQ(r.cells.size(), 2u);
  EXPECT_EQ(r.cells[0].n_used, 3u);

  for (std::size_t t = 0; t < 4; ++t) cell(f, t, 1, 0) = nan;
  r = evaluate_grid(f, truth);
  ASSERT_EQ(r.cells.size(), 1u);
  ASSERT_EQ(r.excluded.size(), 1u);
  EXPECT_EQ(r.excluded[0].lat, 60.0);
  EXPECT_EQ(r.excluded[0].n_used, 0u);
  EXPECT_EQ(r.aggregate.pc, r.cells[0].summary.pc);
  EXPECT_EQ(r.aggregate.weight_sum, 1.0);
}

TEST(EvaluateGrid, CoordinateMismatch) {
  GridField a = make_grid({0, 10}, {0}, 3);
  GridField b = make_grid({0, 11}, {0}, 3);
  try {
    evaluate_grid(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoordinateMismatch);
  }
}

TEST(SkillVsReference, Examples) {
  const std::vector<double> pc{0.4, 0.0, 0.3, 0.1};
  const std::vector<double> ref{0.4, 0.5, 0.4, 0.0};
  const auto s = skill_vs_reference(pc, ref);
  EXPECT_EQ(s[0].value, 0.0);
  EXPECT_EQ(s[1].value, 1.0);
  EXPECT_NEAR(s[2].value, 0.25, 1e-15);
  EXPECT_TRUE(s[3].degenerate);
  EXPECT_THROW(skill_vs_reference(pc, std::vector<double>{1.0}), Error);
}
