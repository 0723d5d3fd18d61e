#include "uqcal/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace uqcal {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
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

struct Frame {
  double x0, y0, w, h;  // plot area in pixels, y grows down
  double px(double x) const { return x0 + x * w; }
  double py(double y) const { return y0 + (1.0 - y) * h; }
};

void svg_header(std::ostringstream& out, unsigned width, unsigned height,
                const std::string& title, const std::string& x_label,
                const std::string& y_label, const Frame& f) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(f.x0 + f.w / 2) << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n";
  // axes
  out << "<line x1=\"" << fmt(f.x0) << "\" y1=\"" << fmt(f.y0) << "\" x2=\""
      << fmt(f.x0) << "\" y2=\"" << fmt(f.y0 + f.h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << fmt(f.x0) << "\" y1=\"" << fmt(f.y0 + f.h)
      << "\" x2=\"" << fmt(f.x0 + f.w) << "\" y2=\"" << fmt(f.y0 + f.h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // ticks every 0.2
  for (int i = 0; i <= 5; ++i) {
    double v = i / 5.0;
    out << "<text x=\"" << fmt(f.px(v)) << "\" y=\"" << fmt(f.y0 + f.h + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">"
        << fmt(v) << "</text>\n"
        << "<text x=\"" << fmt(f.x0 - 8) << "\" y=\"" << fmt(f.py(v) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">"
        << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << fmt(f.x0 + f.w / 2) << "\" y=\""
      << fmt(f.y0 + f.h + 38)
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << fmt(f.y0 + f.h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 "
      << fmt(f.y0 + f.h / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
}

}  // namespace

std::string reliability_svg(const DiagramSpec& spec) {
  if (spec.series.empty())
    throw std::invalid_argument("reliability_svg: no series");
  std::set<std::string> labels;
  for (const auto& s : spec.series)
    if (!labels.insert(s.label).second)
      throw std::invalid_argument("reliability_svg: duplicate series label \"" +
                                  s.label + "\"");

  Frame f{64.0, 40.0, spec.width - 96.0, spec.height - 110.0};
  std::ostringstream out;
  svg_header(out, spec.width, spec.height, spec.title, spec.x_label,
             spec.y_label, f);

  // x = y reference
  out << "<line class=\"reference\" x1=\"" << fmt(f.px(0)) << "\" y1=\""
      << fmt(f.py(0)) << "\" x2=\"" << fmt(f.px(1)) << "\" y2=\"" << fmt(f.py(1))
      << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    std::string color =
        s.color.empty() ? kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))]
                        : s.color;
    out << "<g class=\"series\" fill=\"" << color << "\" stroke=\"" << color
        << "\">\n";
    for (const auto& bin : s.report.bins) {
      if (bin.count == 0) continue;
      double x = f.px(bin.mean_conf);
      double y = f.py(bin.mean_acc);
      double half = std::sqrt(bin.acc_variance);
      double y_top = f.py(std::min(1.0, bin.mean_acc + half));
      double y_bot = f.py(std::max(0.0, bin.mean_acc - half));
      out << "<line class=\"errorbar\" x1=\"" << fmt(x) << "\" y1=\""
          << fmt(y_top) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(y_bot)
          << "\" stroke-width=\"1\"/>\n"
          << "<circle class=\"marker\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
          << "\" r=\"3.5\"/>\n";
    }
    out << "</g>\n";
    // legend entry
    double ly = 46.0 + 18.0 * si;
    out << "<rect x=\"" << fmt(f.x0 + f.w - 170) << "\" y=\"" << fmt(ly - 9)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << fmt(f.x0 + f.w - 155) << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(s.label) << " (ECE " << fmt4(s.report.ece) << ")</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string accuracy_histogram_svg(const std::vector<double>& accuracies,
                                   unsigned bins, unsigned width,
                                   unsigned height) {
  if (accuracies.empty() || bins < 1)
    throw std::invalid_argument("accuracy_histogram_svg: bad input");
  std::vector<std::size_t> count(bins, 0);
  for (double a : accuracies) {
    auto idx = a <= 0.0 ? 0
                        : static_cast<std::size_t>(
                              std::ceil(a * static_cast<double>(bins)) - 1.0);
    if (idx >= bins) idx = bins - 1;
    count[idx]++;
  }
  std::size_t peak = *std::max_element(count.begin(), count.end());
  Frame f{64.0, 40.0, width - 96.0, height - 110.0};
  std::ostringstream out;
  svg_header(out, width, height, "Accuracy histogram", "Accuracy", "Frequency",
             f);
  for (unsigned b = 0; b < bins; ++b) {
    double frac = peak ? static_cast<double>(count[b]) /
                             static_cast<double>(peak)
                       : 0.0;
    double x = f.px(static_cast<double>(b) / bins);
    double bw = f.w / bins;
    out << "<rect class=\"bar\" x=\"" << fmt(x + 1) << "\" y=\"" << fmt(f.py(frac))
        << "\" width=\"" << fmt(bw - 2) << "\" height=\""
        << fmt(f.py(0) - f.py(frac)) << "\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

SummaryTable summary_table(const AggregateSummary& agg,
                           const std::vector<std::string>& method_order,
                           const std::string& scaled_method) {
  auto scaled_it = agg.methods.find(scaled_method);
  if (scaled_it == agg.methods.end())
    throw std::invalid_argument("summary_table: missing scaled-baseline method \"" +
                                scaled_method + "\"");
  const double scaled_ece = scaled_it->second.mean_ece;

  std::vector<std::string> order;
  for (const auto& m : method_order)
    if (agg.methods.count(m)) order.push_back(m);
  for (const auto& [name, _] : agg.methods)
    if (std::find(order.begin(), order.end(), name) == order.end())
      order.push_back(name);

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "method,mean_ece,var_ece,mean_t,mean_c,pct_vs_scaled\n";
  auto cell = [](const nlohmann::json& v) { return v.dump(); };
  for (const auto& name : order) {
    const auto& row = agg.methods.at(name);
    nlohmann::json j;
    j["method"] = name;
    j["mean_ece"] = row.mean_ece;
    j["var_ece"] = row.var_ece;
    j["mean_t"] = row.mean_t ? nlohmann::json(*row.mean_t) : nullptr;
    j["mean_c"] = row.mean_c ? nlohmann::json(*row.mean_c) : nullptr;
    if (scaled_ece == 0.0) {
      j["pct_vs_scaled"] = nullptr;
      j["note"] = "scaled-baseline ECE is 0; percent change undefined";
    } else {
      j["pct_vs_scaled"] = 100.0 * (row.mean_ece - scaled_ece) / scaled_ece;
    }
    csv << cell(j["method"]).substr(1, cell(j["method"]).size() - 2) << ','
        << cell(j["mean_ece"]) << ',' << cell(j["var_ece"]) << ','
        << cell(j["mean_t"]) << ',' << cell(j["mean_c"]) << ','
        << cell(j["pct_vs_scaled"]) << '\n';
    rows.push_back(std::move(j));
  }
  nlohmann::json doc;
  doc["runs"] = agg.runs;
  doc["methods"] = std::move(rows);
  return {doc.dump(2) + "\n", csv.str()};
}

}  // namespace uqcal
