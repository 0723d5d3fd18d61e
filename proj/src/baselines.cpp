#include "uqcal/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "uqcal/similarity.hpp"

namespace uqcal {

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::LexSim:
      return "lexsim";
    case BaselineKind::PredEnt:
      return "predent";
    case BaselineKind::SemEnt:
      return "sement";
    case BaselineKind::NumSets:
      return "numsets";
  }
  return "?";
}

BaselineKind baseline_kind_from_string(const std::string& name) {
  if (name == "lexsim") return BaselineKind::LexSim;
  if (name == "predent") return BaselineKind::PredEnt;
  if (name == "sement") return BaselineKind::SemEnt;
  if (name == "numsets") return BaselineKind::NumSets;
  throw std::invalid_argument("unknown baseline kind: " + name);
}

double response_logprob(const ResponseSample& s) {
  if (s.token_logprobs.empty())
    throw std::invalid_argument("response_logprob: empty token_logprobs");
  double sum = 0.0;
  for (double lp : s.token_logprobs) sum += lp;
  return sum;
}

BaselineScore lexsim_confidence(const Ensemble& e) {
  std::vector<TokenSeq> toks;
  toks.reserve(e.samples.size());
  for (const auto& s : e.samples) toks.push_back(tokenize(s.text));
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < toks.size(); ++i)
    for (std::size_t j = i + 1; j < toks.size(); ++j) {
      sum += rouge_l_f(toks[i], toks[j]);
      ++pairs;
    }
  double value = sum / static_cast<double>(pairs);
  return {BaselineKind::LexSim, value,
          {{"pair_count", static_cast<double>(pairs)}}};
}

BaselineScore predent_confidence(const Ensemble& e) {
  double sum = 0.0;
  for (const auto& s : e.samples) sum += response_logprob(s);
  double pe = -sum / static_cast<double>(e.samples.size());
  return {BaselineKind::PredEnt, std::exp(-pe), {{"raw_entropy", pe}}};
}

BaselineScore sement_confidence(const Ensemble& e, EquivalenceOracle& oracle) {
  const std::size_t n = e.samples.size();
  std::vector<std::string> texts;
  texts.reserve(n);
  std::vector<double> logprobs;
  logprobs.reserve(n);
  for (const auto& s : e.samples) {
    texts.push_back(s.text);
    logprobs.push_back(response_logprob(s));
  }
  Clustering c = cluster(texts, oracle);
  const std::size_t k = c.clusters.size();

  // Shift by the max response logprob before exponentiating; the shift
  // cancels in the cluster-mass normalization.
  double shift = *std::max_element(logprobs.begin(), logprobs.end());
  std::vector<double> masses;
  masses.reserve(k);
  double total = 0.0;
  for (const auto& members : c.clusters) {
    double m = 0.0;
    for (auto idx : members) m += std::exp(logprobs[idx] - shift);
    m /= static_cast<double>(members.size());
    masses.push_back(m);
    total += m;
  }
  if (total == 0.0)
    throw std::runtime_error("sement_confidence: all cluster masses underflowed");
  double se = 0.0;
  for (double m : masses) {
    double p = m / total;
    if (p > 0.0) se -= p * std::log(p);
  }
  double value = k == 1 ? 1.0
                        : std::clamp(1.0 - se / std::log(static_cast<double>(n)),
                                     0.0, 1.0);
  return {BaselineKind::SemEnt, value,
          {{"raw_entropy", se}, {"cluster_count", static_cast<double>(k)}}};
}

BaselineScore numsets_confidence(const Ensemble& e, EquivalenceOracle& oracle) {
  const std::size_t n = e.samples.size();
  std::vector<std::string> texts;
  texts.reserve(n);
  for (const auto& s : e.samples) texts.push_back(s.text);
  const std::size_t k = cluster(texts, oracle).clusters.size();
  double value = 1.0 - static_cast<double>(k - 1) / static_cast<double>(n - 1);
  return {BaselineKind::NumSets, value,
          {{"cluster_count", static_cast<double>(k)}}};
}

BaselineScore baseline_confidence(BaselineKind kind, const Ensemble& e,
                                  EquivalenceOracle* oracle) {
  switch (kind) {
    case BaselineKind::LexSim:
      return lexsim_confidence(e);
    case BaselineKind::PredEnt:
      return predent_confidence(e);
    case BaselineKind::SemEnt:
    case BaselineKind::NumSets:
      if (!oracle)
        throw std::invalid_argument(
            std::string(to_string(kind)) + " requires an equivalence oracle");
      return kind == BaselineKind::SemEnt ? sement_confidence(e, *oracle)
                                          : numsets_confidence(e, *oracle);
  }
  throw std::logic_error("unreachable baseline kind");
}

}  // namespace uqcal
