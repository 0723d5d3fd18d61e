#pragma once

#include <string>
#include <vector>

#include "uqcal/baselines.hpp"
#include "uqcal/calibration.hpp"
#include "uqcal/corpus.hpp"
#include "uqcal/grounding.hpp"
#include "uqcal/metrics.hpp"

namespace uqcal {

struct EvalConfig {
  SplitSpec split;
  Grid grid = Grid::defaults();
  unsigned bins = 10;
  unsigned jobs = 1;
};

struct EvalResult {
  std::vector<RunSummary> runs;
  AggregateSummary aggregate;
  // Test-split bin statistics of run 0, one (method, report) entry per
  // method, for reliability diagrams.
  std::vector<std::pair<std::string, EceReport>> run0_reports;
};

// Full pipeline for one baseline: score every ensemble once, then per run
// split / fit on validation / report test ECE for methods "baseline",
// "scaled", and (when a provider is given) "fused". Deterministic for fixed
// inputs and config, independent of cfg.jobs.
EvalResult evaluate(const std::vector<Ensemble>& dataset, BaselineKind kind,
                    EquivalenceOracle* oracle, GroundingProvider* provider,
                    const EvalConfig& cfg);

}  // namespace uqcal
