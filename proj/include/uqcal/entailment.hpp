#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqcal {

// Error from a remote oracle/provider: network failure, timeout, or a reply
// that does not match the wire contract.
class ProviderError : public std::runtime_error {
public:
  enum class Kind { Network, Timeout, Malformed };
  ProviderError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Semantic-equivalence relation. Implementations must be reflexive,
// symmetric as exposed, deterministic within a run, and safe to call
// concurrently.
class EquivalenceOracle {
public:
  virtual ~EquivalenceOracle() = default;
  virtual bool equivalent(const std::string& a, const std::string& b) = 0;
};

// equivalent iff the normalized token sequences are equal.
std::unique_ptr<EquivalenceOracle> exact_match_oracle();

// equivalent iff Jaccard similarity of the token sets >= threshold.
// Throws std::invalid_argument for threshold outside [0,1].
std::unique_ptr<EquivalenceOracle> overlap_oracle(double threshold);

// Bidirectional entailment against a remote NLI endpoint
// (POST <endpoint>/nli, {"premise","hypothesis"} -> {"label"}).
// Results are memoized per unordered text pair.
std::unique_ptr<EquivalenceOracle> remote_nli_oracle(
    const std::string& endpoint,
    std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));

struct Clustering {
  std::vector<std::vector<std::size_t>> clusters;  // partition of {0..N-1}
};

// Greedy single-pass clustering: each response is compared against the first
// member of each existing cluster, in cluster-creation order.
Clustering cluster(const std::vector<std::string>& responses,
                   EquivalenceOracle& oracle);

}  // namespace uqcal
