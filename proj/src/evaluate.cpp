#include "uqcal/evaluate.hpp"

#include <stdexcept>
#include <thread>

namespace uqcal {

namespace {

// Runs fn(i) for i in [0, n) across `jobs` threads. Results land in
// index-addressed slots, so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += jobs) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

EvalResult evaluate(const std::vector<Ensemble>& dataset, BaselineKind kind,
                    EquivalenceOracle* oracle, GroundingProvider* provider,
                    const EvalConfig& cfg) {
  if (dataset.empty()) throw std::invalid_argument("evaluate: empty dataset");
  cfg.grid.validate();
  const std::size_t n = dataset.size();

  // Scores do not depend on split membership; compute them once.
  std::vector<double> conf_baseline(n), accuracy(n), conf_gm(n, 0.0);
  parallel_for(n, cfg.jobs, [&](std::size_t i) {
    try {
      conf_baseline[i] = baseline_confidence(kind, dataset[i], oracle).value;
      accuracy[i] = ensemble_accuracy(dataset[i]);
      if (provider) conf_gm[i] = ensemble_grounding_conf(dataset[i], *provider);
    } catch (const std::exception& ex) {
      throw std::runtime_error("ensemble \"" + dataset[i].id + "\": " + ex.what());
    }
  });

  EvalResult result;
  for (unsigned run = 0; run < cfg.split.repetitions; ++run) {
    auto [val_idx, test_idx] = split_indices(n, cfg.split, run);
    if (val_idx.empty() || test_idx.empty())
      throw std::invalid_argument(
          "evaluate: run " + std::to_string(run) +
          " produced an empty split (n = " + std::to_string(n) + ")");

    std::vector<std::pair<double, double>> val_pairs, test_pairs;
    for (auto i : val_idx) val_pairs.emplace_back(conf_baseline[i], accuracy[i]);
    for (auto i : test_idx) test_pairs.emplace_back(conf_baseline[i], accuracy[i]);

    RunSummary summary;
    summary.run_index = run;
    summary.seed = cfg.split.seed;

    EceReport raw_report = ece(test_pairs, cfg.bins);
    summary.methods["baseline"] = {raw_report.ece, std::nullopt, std::nullopt};

    double t_scaled = fit_temperature(val_pairs, cfg.grid, cfg.bins);
    std::vector<std::pair<double, double>> scaled_pairs;
    for (auto i : test_idx)
      scaled_pairs.emplace_back(temp_scale(conf_baseline[i], t_scaled),
                                accuracy[i]);
    EceReport scaled_report = ece(scaled_pairs, cfg.bins);
    summary.methods["scaled"] = {scaled_report.ece, t_scaled, std::nullopt};

    EceReport fused_report;
    if (provider) {
      std::vector<FusionSample> val_triples;
      for (auto i : val_idx)
        val_triples.push_back({conf_baseline[i], conf_gm[i], accuracy[i]});
      FusedFit fit = fit_fused(val_triples, cfg.grid, cfg.bins);
      std::vector<std::pair<double, double>> fused_pairs;
      for (auto i : test_idx)
        fused_pairs.emplace_back(
            fused_confidence(conf_baseline[i], conf_gm[i], fit.params),
            accuracy[i]);
      fused_report = ece(fused_pairs, cfg.bins);
      summary.methods["fused"] = {fused_report.ece, fit.params.t, fit.params.c};
    }

    if (run == 0) {
      result.run0_reports.emplace_back("baseline", raw_report);
      result.run0_reports.emplace_back("scaled", scaled_report);
      if (provider) result.run0_reports.emplace_back("fused", fused_report);
    }
    result.runs.push_back(std::move(summary));
  }

  result.aggregate = aggregate_runs(result.runs);
  return result;
}

}  // namespace uqcal
