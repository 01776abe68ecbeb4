// pcrps: potential CRPS evaluation of deterministic forecasts.
//
// Exit codes: 0 success, 2 unreadable or malformed input, 3 validation
// failure (non-finite values, coordinate mismatch, ...).

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcrps/core.hpp"
#include "pcrps/grid.hpp"
#include "pcrps/inference.hpp"
#include "pcrps/io.hpp"
#include "pcrps/metrics.hpp"
#include "pcrps/scoring.hpp"
#include "pcrps/sim.hpp"
#include "pcrps/svg.hpp"

namespace fs = std::filesystem;
using namespace pcrps;

namespace {

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension();
  p += suffix;
  return p;
}

int cmd_pc(const std::string& input, double alpha, bool as_json) {
  const io::Series series = io::read_series_csv(input);
  CompletePairs pairs = drop_missing(series.x, series.y);
  const std::size_t n_rows = series.x.size();
  const PairedSample sample = make_sample(std::move(pairs.x), std::move(pairs.y));

  const PcSummary s = pc(sample);
  const double r = rmse(sample);
  const double m = mae(sample);
  const double ql = quantile_loss(sample, alpha);
  const Correlation a = acc(sample);
  double c = std::nan("");
  try {
    c = cpa(sample);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AllOutcomesEqual) throw;
  }

  if (as_json) {
    nlohmann::json j;
    j["n_rows"] = n_rows;
    j["n_used"] = sample.size();
    j["pc"] = s.pc;
    j["pc0"] = s.pc0;
    j["pcs"] = s.pcs;
    j["degenerate_climatology"] = s.degenerate;
    j["rmse"] = r;
    j["mae"] = m;
    j["alpha"] = alpha;
    j["quantile_loss"] = ql;
    j["acc"] = a.value;
    j["acc_degenerate"] = a.degenerate;
    j["cpa"] = std::isnan(c) ? nlohmann::json(nullptr) : nlohmann::json(c);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "n_used " << sample.size() << " of " << n_rows << "\n"
            << "PC     " << io::format_number(s.pc) << "\n"
            << "PC0    " << io::format_number(s.pc0) << "\n"
            << "PCS    " << io::format_number(s.pcs) << (s.degenerate ? " (degenerate climatology)" : "")
            << "\n"
            << "RMSE   " << io::format_number(r) << "\n"
            << "MAE    " << io::format_number(m) << "\n"
            << "QL" << alpha << " " << io::format_number(ql) << "\n"
            << "ACC    " << io::format_number(a.value) << (a.degenerate ? " (degenerate)" : "") << "\n"
            << "CPA    " << (std::isnan(c) ? "nan (all outcomes equal)" : io::format_number(c)) << "\n";
  return 0;
}

int cmd_grid_eval(const std::string& forecast_path, const std::string& truth_path,
                  const std::string& out, const std::string& skill_ref, int lead_days,
                  unsigned threads) {
  const GridField forecast = io::read_grid(forecast_path);
  const GridField truth = io::read_grid(truth_path);
  GridEvalOptions options;
  options.threads = resolve_threads(threads);
  options.model = fs::path(forecast_path).stem().string();
  options.truth = fs::path(truth_path).stem().string();
  options.lead_days = lead_days;
  const EvalReport report = evaluate_grid(forecast, truth, options);

  io::write_file(out, io::format_eval_csv(report));
  io::write_file(sibling(out, ".json"), io::format_eval_json(report));

  if (!skill_ref.empty()) {
    const GridField reference = io::read_grid(skill_ref);
    options.model = fs::path(skill_ref).stem().string();
    const EvalReport ref_report = evaluate_grid(reference, truth, options);
    // Keep the cells evaluated in both reports, in report order.
    EvalReport shared = report;
    shared.cells.clear();
    std::vector<double> pcs;
    std::vector<double> refs;
    std::size_t r = 0;
    for (const auto& c : report.cells) {
      while (r < ref_report.cells.size() &&
             (ref_report.cells[r].lat_index < c.lat_index ||
              (ref_report.cells[r].lat_index == c.lat_index && ref_report.cells[r].lon_index < c.lon_index))) {
        ++r;
      }
      if (r < ref_report.cells.size() && ref_report.cells[r].lat_index == c.lat_index &&
          ref_report.cells[r].lon_index == c.lon_index) {
        shared.cells.push_back(c);
        pcs.push_back(c.summary.pc);
        refs.push_back(ref_report.cells[r].summary.pc);
      }
    }
    const auto skill = skill_vs_reference(pcs, refs);
    io::write_file(sibling(out, ".skill.csv"), io::format_skill_csv(shared, refs, skill));
  }

  std::cout << "cells " << report.cells.size() << " evaluated, " << report.excluded.size()
            << " excluded\n"
            << "PC  " << io::format_number(report.aggregate.pc) << "\n"
            << "PC0 " << io::format_number(report.aggregate.pc0) << "\n"
            << "PCS " << io::format_number(report.aggregate.pcs) << "\n";
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const std::string& truth_path,
                int lead_days, std::size_t permutations, std::uint64_t seed, const std::string& out,
                unsigned threads) {
  const GridField a = io::read_grid(a_path);
  const GridField b = io::read_grid(b_path);
  const GridField truth = io::read_grid(truth_path);
  PValueOptions options;
  options.lead_days = lead_days;
  options.n_permutations = permutations;
  options.seed = seed;
  options.threads = resolve_threads(threads);
  const auto cells = gridpoint_p_values(a, b, truth, options);
  const BoxSummary box = summarize_p_values(cells);

  io::CompareMeta meta;
  meta.model_a = fs::path(a_path).stem().string();
  meta.model_b = fs::path(b_path).stem().string();
  meta.lead_days = lead_days;
  meta.n_permutations = permutations;
  meta.seed = seed;
  io::write_file(out, io::format_pvalue_csv(cells));
  io::write_file(sibling(out, ".summary.csv"), io::format_box_summary_csv(meta, box));

  std::cout << meta.model_a << " vs " << meta.model_b << ", lead " << lead_days << " d, "
            << box.count << " cells\n"
            << "p quartiles: " << io::format_number(box.q1) << " " << io::format_number(box.median)
            << " " << io::format_number(box.q3) << "\n";
  return 0;
}

int cmd_simulate(std::size_t n, std::uint64_t seed, bool squared, const std::string& out) {
  SimConfig config;
  config.n = n;
  config.seed = seed;
  config.squared_outcome = squared;
  const MetricTable table = run_study(config);
  const std::string title = std::string("Simulation study, n = ") + std::to_string(n) +
                            ", seed = " + std::to_string(seed) +
                            (squared ? ", squared outcome" : "");
  if (!out.empty()) {
    io::write_file(out, io::format_metric_csv(table));
    io::write_file(sibling(out, ".svg"), svg::metric_table_chart(table, title));
  }
  std::cout << title << "\n"
            << "rng: mt19937_64(seed), u = ((k >> 11) + 0.5) / 2^53, two draws per instance (W, Y)\n"
            << io::format_metric_text(table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potential CRPS (PC) evaluation of deterministic forecasts"};
  app.require_subcommand(1);

  std::string input;
  double alpha = 0.9;
  bool as_json = false;
  auto* pc_cmd = app.add_subcommand("pc", "PC, PC0, PCS and baseline scores of a time,x,y series");
  pc_cmd->add_option("--input", input, "series CSV with header time,x,y")->required();
  pc_cmd->add_option("--alpha", alpha, "quantile loss level")->check(CLI::Range(0.0, 1.0));
  pc_cmd->add_flag("--json", as_json, "print JSON instead of text");

  std::string forecast, truth, out, skill_ref;
  int lead_days = 1;
  unsigned threads = 0;
  auto* grid_cmd = app.add_subcommand("grid-eval", "per-cell and latitude-weighted PC of a grid");
  grid_cmd->add_option("--forecast", forecast, "forecast grid file")->required();
  grid_cmd->add_option("--truth", truth, "ground truth grid file")->required();
  grid_cmd->add_option("--out", out, "per-cell CSV; aggregate JSON goes next to it")->required();
  grid_cmd->add_option("--skill-ref", skill_ref, "reference forecast grid for per-cell skill");
  grid_cmd->add_option("--lead-days", lead_days, "lead time recorded in the report");
  grid_cmd->add_option("--threads", threads, "worker threads (default: PC_THREADS or all cores)");

  std::string model_a, model_b;
  std::size_t permutations = 1000;
  std::uint64_t seed = 0;
  auto* cmp_cmd = app.add_subcommand("compare", "grid-point block permutation tests of equal PC");
  cmp_cmd->add_option("--model-a", model_a, "model A grid file")->required();
  cmp_cmd->add_option("--model-b", model_b, "model B grid file")->required();
  cmp_cmd->add_option("--truth", truth, "ground truth grid file")->required();
  cmp_cmd->add_option("--lead-days", lead_days, "lead time k in days; blocks have length 2k")
      ->required()
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--permutations", permutations, "block permutation samples")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", seed, "RNG seed");
  cmp_cmd->add_option("--out", out, "per-cell p-value CSV; summary CSV goes next to it")->required();
  cmp_cmd->add_option("--threads", threads, "worker threads (default: PC_THREADS or all cores)");

  std::size_t n = 10000;
  bool squared = false;
  auto* sim_cmd = app.add_subcommand("simulate", "regenerate the Gamma simulation study table");
  sim_cmd->add_option("--n", n, "sample size")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "RNG seed");
  sim_cmd->add_flag("--squared", squared, "score against the squared outcome");
  sim_cmd->add_option("--out", out, "table CSV; SVG chart goes next to it");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pc_cmd->parsed()) return cmd_pc(input, alpha, as_json);
    if (grid_cmd->parsed()) return cmd_grid_eval(forecast, truth, out, skill_ref, lead_days, threads);
    if (cmp_cmd->parsed()) {
      return cmd_compare(model_a, model_b, truth, lead_days, permutations, seed, out, threads);
    }
    if (sim_cmd->parsed()) return cmd_simulate(n, seed, squared, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
