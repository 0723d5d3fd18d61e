#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "uqcal/corpus.hpp"
#include "uqcal/entailment.hpp"  // ProviderError

namespace uqcal {

enum class Verdict { Yes, No, NotSure };

// Case-insensitive parse of the one-word grounding reply.
// Throws ProviderError(Malformed) naming the reply on anything else.
Verdict parse_verdict(const std::string& text);

// Yes -> 1.0; No and NotSure -> 0.0.
double map_verdict(Verdict v);

// Yields a grounding confidence in [0,1] per (ensemble, sample).
// Implementations must be deterministic within a run and tolerate
// concurrent calls.
class GroundingProvider {
public:
  virtual ~GroundingProvider() = default;
  virtual double confidence(const Ensemble& e, std::size_t sample_index) = 0;
};

// Replays the grounding_conf values recorded in the dataset.
// Missing values raise a ProviderError naming the ensemble id.
std::unique_ptr<GroundingProvider> offline_provider();

enum class GroundingMode { Verdict, Score };

// Remote grounding model (POST <endpoint>/ground, {"image_ref","statement"}).
// Verdict mode maps the one-word reply through map_verdict; score mode accepts
// a numeric score and clamps it to [0,1] with a warning. Memoized per
// (image_ref, statement) pair.
std::unique_ptr<GroundingProvider> remote_provider(
    const std::string& endpoint, GroundingMode mode,
    std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));

// Conf_GM: arithmetic mean of per-sample grounding confidence.
double ensemble_grounding_conf(const Ensemble& e, GroundingProvider& provider);

// Prompt template for operators wiring a foundation model behind the
// verdict-mode endpoint; "{response_text}" is the slot for the statement.
extern const char* const kGroundingPromptTemplate;

}  // namespace uqcal
