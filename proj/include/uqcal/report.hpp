#pragma once

#include <string>
#include <vector>

#include "uqcal/metrics.hpp"

namespace uqcal {

struct DiagramSeries {
  std::string label;
  EceReport report;
  std::string color;  // SVG color; picked from a fixed palette when empty
};

struct DiagramSpec {
  std::vector<DiagramSeries> series;  // >= 1, labels unique
  std::string title = "Reliability diagram";
  std::string x_label = "Confidence";
  std::string y_label = "Accuracy";
  unsigned width = 640;
  unsigned height = 480;
};

// Standalone SVG: x = y reference line, one marker per non-empty bin at
// (mean_conf, mean_acc) with a vertical bar of half-length
// sqrt(acc_variance), per-series ECE in the legend. Byte-deterministic.
std::string reliability_svg(const DiagramSpec& spec);

// Accuracy histogram over the same renderer; a minor extra.
std::string accuracy_histogram_svg(const std::vector<double>& accuracies,
                                   unsigned bins, unsigned width = 640,
                                   unsigned height = 480);

struct SummaryTable {
  std::string json;
  std::string csv;  // header: method,mean_ece,var_ece,mean_t,mean_c,pct_vs_scaled
};

// Rows per method with percent change in mean ECE vs. the scaled baseline
// (negative = improvement). `method_order` fixes row order; methods absent
// from it follow alphabetically. Requires agg to contain `scaled_method`.
SummaryTable summary_table(const AggregateSummary& agg,
                           const std::vector<std::string>& method_order,
                           const std::string& scaled_method = "scaled");

}  // namespace uqcal
