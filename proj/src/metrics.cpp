#include "uqcal/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace uqcal {

EceReport ece(const std::vector<std::pair<double, double>>& pairs,
              unsigned m_bins) {
  if (pairs.empty()) throw std::invalid_argument("ece: empty input");
  if (m_bins < 1) throw std::invalid_argument("ece: m_bins < 1");
  const auto m = static_cast<std::size_t>(m_bins);

  std::vector<std::size_t> count(m, 0);
  std::vector<double> conf_sum(m, 0.0), acc_sum(m, 0.0), acc_sq_sum(m, 0.0);
  for (const auto& [conf, acc] : pairs) {
    if (conf < 0.0 || conf > 1.0)
      throw std::invalid_argument("ece: confidence outside [0,1]");
    if (acc < 0.0 || acc > 1.0)
      throw std::invalid_argument("ece: accuracy outside [0,1]");
    // bin b covers ((b-1)/M, b/M]; conf 0 goes to bin 1
    std::size_t idx =
        conf <= 0.0
            ? 0
            : static_cast<std::size_t>(
                  std::ceil(conf * static_cast<double>(m)) - 1.0);
    if (idx >= m) idx = m - 1;
    count[idx]++;
    conf_sum[idx] += conf;
    acc_sum[idx] += acc;
    acc_sq_sum[idx] += acc * acc;
  }

  EceReport report;
  report.n = pairs.size();
  report.ece = 0.0;
  const double n = static_cast<double>(pairs.size());
  for (std::size_t b = 0; b < m; ++b) {
    BinStats bin;
    bin.index = static_cast<unsigned>(b + 1);
    bin.lower = static_cast<double>(b) / static_cast<double>(m);
    bin.upper = static_cast<double>(b + 1) / static_cast<double>(m);
    bin.count = count[b];
    if (count[b] > 0) {
      const double c = static_cast<double>(count[b]);
      bin.mean_conf = conf_sum[b] / c;
      bin.mean_acc = acc_sum[b] / c;
      double var = acc_sq_sum[b] / c - bin.mean_acc * bin.mean_acc;
      bin.acc_variance = var > 0.0 ? var : 0.0;
      report.ece += c / n * std::abs(bin.mean_acc - bin.mean_conf);
    } else {
      bin.mean_conf = 0.0;
      bin.mean_acc = 0.0;
      bin.acc_variance = 0.0;
    }
    report.bins.push_back(bin);
  }
  return report;
}

AggregateSummary aggregate_runs(const std::vector<RunSummary>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate_runs: no runs");
  for (const auto& run : runs) {
    if (run.methods.size() != runs.front().methods.size())
      throw std::invalid_argument("aggregate_runs: inconsistent method sets");
    for (const auto& [name, _] : runs.front().methods)
      if (!run.methods.count(name))
        throw std::invalid_argument(
            "aggregate_runs: method \"" + name + "\" missing from a run");
  }

  AggregateSummary agg;
  agg.runs = static_cast<unsigned>(runs.size());
  const double n = static_cast<double>(runs.size());
  for (const auto& [name, _] : runs.front().methods) {
    AggregateRow row;
    double sum = 0.0;
    for (const auto& run : runs) sum += run.methods.at(name).ece;
    row.mean_ece = sum / n;
    bool all_equal = true;
    double sq = 0.0;
    for (const auto& run : runs) {
      double e = run.methods.at(name).ece;
      if (e != runs.front().methods.at(name).ece) all_equal = false;
      double d = e - row.mean_ece;
      sq += d * d;
    }
    // identical runs must report exactly zero spread despite mean rounding
    row.var_ece = runs.size() > 1 && !all_equal ? sq / (n - 1.0) : 0.0;

    double t_sum = 0.0, c_sum = 0.0;
    std::size_t t_count = 0, c_count = 0;
    for (const auto& run : runs) {
      const auto& mr = run.methods.at(name);
      if (mr.t) {
        t_sum += *mr.t;
        ++t_count;
      }
      if (mr.c) {
        c_sum += *mr.c;
        ++c_count;
      }
    }
    if (t_count) row.mean_t = t_sum / static_cast<double>(t_count);
    if (c_count) row.mean_c = c_sum / static_cast<double>(c_count);
    agg.methods.emplace(name, row);
  }
  return agg;
}

}  // namespace uqcal
