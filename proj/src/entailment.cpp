#include "uqcal/entailment.hpp"

#include <set>

#include <httplib.h>
#include <json.hpp>

#include "uqcal/similarity.hpp"

namespace uqcal {

namespace {

class ExactMatchOracle final : public EquivalenceOracle {
public:
  bool equivalent(const std::string& a, const std::string& b) override {
    return tokenize(a) == tokenize(b);
  }
};

class OverlapOracle final : public EquivalenceOracle {
public:
  explicit OverlapOracle(double threshold) : threshold_(threshold) {}

  bool equivalent(const std::string& a, const std::string& b) override {
    auto ta = tokenize(a);
    auto tb = tokenize(b);
    std::set<std::string> sa(ta.begin(), ta.end());
    std::set<std::string> sb(tb.begin(), tb.end());
    if (sa.empty() && sb.empty()) return true;
    std::size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    std::size_t uni = sa.size() + sb.size() - inter;
    double jaccard = static_cast<double>(inter) / static_cast<double>(uni);
    return jaccard >= threshold_;
  }

private:
  double threshold_;
};

class RemoteNliOracle final : public EquivalenceOracle {
public:
  RemoteNliOracle(std::string endpoint, std::chrono::milliseconds timeout)
      : endpoint_(std::move(endpoint)), timeout_(timeout) {}

  bool equivalent(const std::string& a, const std::string& b) override {
    auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    bool result = entails(a, b) && entails(b, a);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(std::move(key), result);
    return result;
  }

private:
  bool entails(const std::string& premise, const std::string& hypothesis) {
    httplib::Client client(endpoint_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    nlohmann::json body = {{"premise", premise}, {"hypothesis", hypothesis}};
    auto res = client.Post("/nli", body.dump(), "application/json");
    if (!res) {
      auto kind = res.error() == httplib::Error::ConnectionTimeout ||
                          res.error() == httplib::Error::Read
                      ? ProviderError::Kind::Timeout
                      : ProviderError::Kind::Network;
      throw ProviderError(kind, "nli request to " + endpoint_ +
                                    " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200)
      throw ProviderError(ProviderError::Kind::Malformed,
                          "nli endpoint " + endpoint_ + " returned status " +
                              std::to_string(res->status));
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("label") ||
        !reply["label"].is_string())
      throw ProviderError(ProviderError::Kind::Malformed,
                          "nli endpoint " + endpoint_ +
                              " sent malformed body for pair (\"" + premise +
                              "\", \"" + hypothesis + "\"): " + res->body);
    std::string label = reply["label"].get<std::string>();
    if (label == "entailment") return true;
    if (label == "neutral" || label == "contradiction") return false;
    throw ProviderError(ProviderError::Kind::Malformed,
                        "nli endpoint " + endpoint_ + " sent unknown label \"" +
                            label + "\"");
  }

  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, bool> cache_;
};

}  // namespace

std::unique_ptr<EquivalenceOracle> exact_match_oracle() {
  return std::make_unique<ExactMatchOracle>();
}

std::unique_ptr<EquivalenceOracle> overlap_oracle(double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("overlap_oracle: threshold outside [0,1]");
  return std::make_unique<OverlapOracle>(threshold);
}

std::unique_ptr<EquivalenceOracle> remote_nli_oracle(
    const std::string& endpoint, std::chrono::milliseconds timeout) {
  return std::make_unique<RemoteNliOracle>(endpoint, timeout);
}

Clustering cluster(const std::vector<std::string>& responses,
                   EquivalenceOracle& oracle) {
  if (responses.empty())
    throw std::invalid_argument("cluster: empty response list");
  Clustering c;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    bool placed = false;
    for (auto& members : c.clusters) {
      if (oracle.equivalent(responses[members.front()], responses[i])) {
        members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) c.clusters.push_back({i});
  }
  return c;
}

}  // namespace uqcal
