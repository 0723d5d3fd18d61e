#pragma once

#include <map>
#include <string>

#include "uqcal/corpus.hpp"
#include "uqcal/entailment.hpp"

namespace uqcal {

enum class BaselineKind { LexSim, PredEnt, SemEnt, NumSets };

const char* to_string(BaselineKind kind);
BaselineKind baseline_kind_from_string(const std::string& name);

struct BaselineScore {
  BaselineKind kind;
  double value;  // in [0,1]
  std::map<std::string, double> diagnostics;
};

// Sum of per-token log probabilities, log p(r|x). Throws on empty sequence.
double response_logprob(const ResponseSample& s);

// Mean ROUGE-L F1 over the N(N-1)/2 unordered response pairs.
BaselineScore lexsim_confidence(const Ensemble& e);

// Monte-Carlo predictive entropy PE = -(1/N) sum log p(r|x); value exp(-PE).
BaselineScore predent_confidence(const Ensemble& e);

// Semantic entropy over normalized cluster masses; value 1 - SE/ln(N),
// clamped to [0,1]. Diagnostics carry raw SE and the cluster count.
BaselineScore sement_confidence(const Ensemble& e, EquivalenceOracle& oracle);

// value 1 - (K-1)/(N-1) where K is the cluster count.
BaselineScore numsets_confidence(const Ensemble& e, EquivalenceOracle& oracle);

// Dispatch on kind. SemEnt/NumSets require the oracle.
BaselineScore baseline_confidence(BaselineKind kind, const Ensemble& e,
                                  EquivalenceOracle* oracle);

}  // namespace uqcal
