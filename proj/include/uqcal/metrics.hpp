#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uqcal {

struct BinStats {
  unsigned index;      // 1..M
  double lower, upper; // bin covers (lower, upper]; bin 1 also takes conf 0
  std::size_t count;
  double mean_conf;    // 0 when empty
  double mean_acc;     // 0 when empty
  double acc_variance; // population variance of accuracies in the bin
};

struct EceReport {
  double ece;
  std::vector<BinStats> bins;  // length M
  std::size_t n;
};

// ECE over (confidence, accuracy) pairs with M equal-width half-open bins.
// Throws on empty input, m_bins < 1, or values outside [0,1].
EceReport ece(const std::vector<std::pair<double, double>>& pairs,
              unsigned m_bins);

struct MethodResult {
  double ece;
  std::optional<double> t;  // fitted temperature, when the method has one
  std::optional<double> c;  // fitted offset, when the method has one
};

struct RunSummary {
  unsigned run_index;
  std::uint64_t seed;
  std::map<std::string, MethodResult> methods;
};

struct AggregateRow {
  double mean_ece;
  double var_ece;  // unbiased sample variance; 0 for a single run
  std::optional<double> mean_t;
  std::optional<double> mean_c;
};

struct AggregateSummary {
  std::map<std::string, AggregateRow> methods;
  unsigned runs;
};

// Mean and unbiased sample variance of ECE per method, plus mean T / mean C.
// Throws if the runs do not share an identical method set.
AggregateSummary aggregate_runs(const std::vector<RunSummary>& runs);

}  // namespace uqcal
