#include "uqcal/grounding.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

namespace uqcal {

const char* const kGroundingPromptTemplate =
    "I have an image and a short statement that describes a specific part of "
    "the image. Your job is to verify if this statement accurately reflects "
    "what is shown in the image.\n\n"
    "Image: <attached>\n\n"
    "Statement: \"{response_text}\"\n\n"
    "Instructions: Respond with only one word - either \"Yes\" if the "
    "statement is correct, \"No\" if the statement is incorrect, or \"Not "
    "sure\" if you are uncertain. Do not provide any additional explanations.";

Verdict parse_verdict(const std::string& text) {
  std::string t;
  for (char c : text)
    t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  // trim
  auto b = t.find_first_not_of(" \t\r\n.");
  auto e = t.find_last_not_of(" \t\r\n.");
  t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
  if (t == "yes") return Verdict::Yes;
  if (t == "no") return Verdict::No;
  if (t == "not sure" || t == "notsure" || t == "not_sure") return Verdict::NotSure;
  throw ProviderError(ProviderError::Kind::Malformed,
                      "unparseable verdict reply: \"" + text + "\"");
}

double map_verdict(Verdict v) { return v == Verdict::Yes ? 1.0 : 0.0; }

namespace {

class OfflineProvider final : public GroundingProvider {
public:
  double confidence(const Ensemble& e, std::size_t sample_index) override {
    const auto& s = e.samples.at(sample_index);
    if (!s.grounding_conf)
      throw ProviderError(ProviderError::Kind::Malformed,
                          "ensemble \"" + e.id + "\" sample " +
                              std::to_string(sample_index) +
                              " has no recorded grounding_conf");
    return *s.grounding_conf;
  }
};

class RemoteProvider final : public GroundingProvider {
public:
  RemoteProvider(std::string endpoint, GroundingMode mode,
                 std::chrono::milliseconds timeout)
      : endpoint_(std::move(endpoint)), mode_(mode), timeout_(timeout) {}

  double confidence(const Ensemble& e, std::size_t sample_index) override {
    const std::string& statement = e.samples.at(sample_index).text;
    auto key = std::make_pair(e.image_ref, statement);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    double value = query(e.image_ref, statement);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(std::move(key), value);
    return value;
  }

private:
  double query(const std::string& image_ref, const std::string& statement) {
    httplib::Client client(endpoint_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    nlohmann::json body = {{"image_ref", image_ref}, {"statement", statement}};
    auto res = client.Post("/ground", body.dump(), "application/json");
    if (!res) {
      auto kind = res.error() == httplib::Error::ConnectionTimeout ||
                          res.error() == httplib::Error::Read
                      ? ProviderError::Kind::Timeout
                      : ProviderError::Kind::Network;
      throw ProviderError(kind, "grounding request to " + endpoint_ +
                                    " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200)
      throw ProviderError(ProviderError::Kind::Malformed,
                          "grounding endpoint " + endpoint_ +
                              " returned status " + std::to_string(res->status));
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded())
      throw ProviderError(ProviderError::Kind::Malformed,
                          "grounding endpoint " + endpoint_ +
                              " sent malformed body: " + res->body);
    if (mode_ == GroundingMode::Verdict) {
      if (!reply.contains("verdict") || !reply["verdict"].is_string())
        throw ProviderError(ProviderError::Kind::Malformed,
                            "grounding endpoint " + endpoint_ +
                                " sent no verdict: " + res->body);
      return map_verdict(parse_verdict(reply["verdict"].get<std::string>()));
    }
    if (!reply.contains("score") || !reply["score"].is_number())
      throw ProviderError(ProviderError::Kind::Malformed,
                          "grounding endpoint " + endpoint_ +
                              " sent no score: " + res->body);
    double score = reply["score"].get<double>();
    if (score < 0.0 || score > 1.0) {
      std::cerr << "warning: grounding score " << score
                << " outside [0,1], clamping\n";
      score = std::clamp(score, 0.0, 1.0);
    }
    return score;
  }

  std::string endpoint_;
  GroundingMode mode_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, double> cache_;
};

}  // namespace

std::unique_ptr<GroundingProvider> offline_provider() {
  return std::make_unique<OfflineProvider>();
}

std::unique_ptr<GroundingProvider> remote_provider(
    const std::string& endpoint, GroundingMode mode,
    std::chrono::milliseconds timeout) {
  return std::make_unique<RemoteProvider>(endpoint, mode, timeout);
}

double ensemble_grounding_conf(const Ensemble& e, GroundingProvider& provider) {
  double sum = 0.0;
  for (std::size_t i = 0; i < e.samples.size(); ++i)
    sum += provider.confidence(e, i);
  return sum / static_cast<double>(e.samples.size());
}

}  // namespace uqcal
