#include "pcrps/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pcrps::svg {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string metric_strip_chart(const std::string& title, const std::vector<std::string>& models,
                               const std::vector<Series>& metrics) {
  constexpr double panel_w = 150.0;
  constexpr double panel_h = 200.0;
  constexpr double margin_l = 50.0;
  constexpr double margin_t = 50.0;
  constexpr double gap = 30.0;
  const double width = margin_l + metrics.size() * (panel_w + gap);
  const double height = margin_t + panel_h + 90.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width, "%.0f")
      << "\" height=\"" << fmt(height, "%.0f") << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2, "%.1f") << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";

  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const auto& values = metrics[m].values;
    const double x0 = margin_l + m * (panel_w + gap);
    const double y0 = margin_t;
    double lo = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    double hi = values.empty() ? 1.0 : *std::max_element(values.begin(), values.end());
    if (hi - lo < 1e-9 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5 * std::max(1e-3, std::abs(lo) * 0.1);
      hi += 0.5 * std::max(1e-3, std::abs(hi) * 0.1);
    }
    const double pad = 0.1 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto px = [&](std::size_t i) {
      return x0 + panel_w * (values.size() < 2 ? 0.5 : static_cast<double>(i) / (values.size() - 1) * 0.8 + 0.1);
    };
    auto py = [&](double v) { return y0 + panel_h * (1.0 - (v - lo) / (hi - lo)); };

    out << "<g>\n<rect x=\"" << fmt(x0, "%.1f") << "\" y=\"" << fmt(y0, "%.1f") << "\" width=\""
        << fmt(panel_w, "%.1f") << "\" height=\"" << fmt(panel_h, "%.1f")
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x0 + panel_w / 2, "%.1f") << "\" y=\"" << fmt(y0 - 8, "%.1f")
        << "\" text-anchor=\"middle\">" << escape(metrics[m].label) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 4, "%.1f") << "\" y=\"" << fmt(y0 + 10, "%.1f")
        << "\" text-anchor=\"end\" font-size=\"9\">" << fmt(hi) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 4, "%.1f") << "\" y=\"" << fmt(y0 + panel_h, "%.1f")
        << "\" text-anchor=\"end\" font-size=\"9\">" << fmt(lo) << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << (i ? " " : "") << fmt(px(i), "%.2f") << "," << fmt(py(values[i]), "%.2f");
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << "<circle cx=\"" << fmt(px(i), "%.2f") << "\" cy=\"" << fmt(py(values[i]), "%.2f")
          << "\" r=\"3\" fill=\"steelblue\"><title>" << escape(i < models.size() ? models[i] : "")
          << ": " << fmt(values[i]) << "</title></circle>\n";
      out << "<text x=\"" << fmt(px(i), "%.2f") << "\" y=\"" << fmt(y0 + panel_h + 14, "%.1f")
          << "\" text-anchor=\"middle\" font-size=\"9\">" << (i + 1) << "</text>\n";
    }
    out << "</g>\n";
  }

  double legend_y = margin_t + panel_h + 40.0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << "<text x=\"" << fmt(margin_l, "%.1f") << "\" y=\"" << fmt(legend_y + 12.0 * i, "%.1f")
        << "\" font-size=\"10\">" << (i + 1) << ": " << escape(models[i]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string metric_table_chart(const MetricTable& table, const std::string& title) {
  std::vector<std::string> models;
  std::vector<Series> metrics = {{"RMSE", {}}, {"MAE", {}}, {"QL", {}}, {"PC", {}},
                                 {"ACC", {}},  {"CPA", {}}, {"PCS", {}}};
  metrics[2].label = "QL" + fmt(table.alpha, "%.2f");
  for (const auto& r : table.rows) {
    models.push_back(r.label);
    const double v[] = {r.rmse, r.mae, r.quantile_loss, r.pc, r.acc, r.cpa, r.pcs};
    for (std::size_t m = 0; m < metrics.size(); ++m) metrics[m].values.push_back(v[m]);
  }
  return metric_strip_chart(title, models, metrics);
}

}  // namespace pcrps::svg
