#include "uqcal/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace uqcal {

namespace {

const std::set<std::string> kEnsembleKeys = {"id", "question", "image_ref",
                                             "accuracy", "samples"};
const std::set<std::string> kSampleKeys = {"text", "token_logprobs",
                                           "grounding_conf", "correct"};

ResponseSample parse_sample(const nlohmann::json& j, std::size_t line,
                            std::size_t sample_idx) {
  auto ctx = [&](const std::string& field) {
    return "samples[" + std::to_string(sample_idx) + "]." + field;
  };
  if (!j.is_object()) throw ParseError("sample is not an object", line);
  ResponseSample s;
  if (!j.contains("text") || !j["text"].is_string())
    throw ParseError(ctx("text") + ": missing or not a string", line);
  s.text = j["text"].get<std::string>();
  if (j.contains("token_logprobs")) {
    const auto& lp = j["token_logprobs"];
    if (!lp.is_array())
      throw ParseError(ctx("token_logprobs") + ": not an array", line);
    if (lp.empty())
      throw ParseError(ctx("token_logprobs") + ": present but empty", line);
    for (const auto& v : lp) {
      if (!v.is_number())
        throw ParseError(ctx("token_logprobs") + ": non-numeric entry", line);
      double d = v.get<double>();
      if (d > 0.0)
        throw ParseError(ctx("token_logprobs") + ": entry " +
                             nlohmann::json(d).dump() + " > 0",
                         line);
      s.token_logprobs.push_back(d);
    }
  }
  if (j.contains("grounding_conf")) {
    if (!j["grounding_conf"].is_number())
      throw ParseError(ctx("grounding_conf") + ": not a number", line);
    double g = j["grounding_conf"].get<double>();
    if (g < 0.0 || g > 1.0)
      throw ParseError(ctx("grounding_conf") + ": " + nlohmann::json(g).dump() +
                           " outside [0,1]",
                       line);
    s.grounding_conf = g;
  }
  if (j.contains("correct")) {
    if (!j["correct"].is_boolean())
      throw ParseError(ctx("correct") + ": not a boolean", line);
    s.correct = j["correct"].get<bool>();
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kSampleKeys.count(it.key())) s.extra[it.key()] = it.value();
  return s;
}

Ensemble parse_ensemble(const nlohmann::json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError("record is not an object", line);
  Ensemble e;
  if (!j.contains("id") || !j["id"].is_string())
    throw ParseError("id: missing or not a string", line);
  e.id = j["id"].get<std::string>();
  if (!j.contains("question") || !j["question"].is_string())
    throw ParseError("question: missing or not a string", line);
  e.question = j["question"].get<std::string>();
  if (!j.contains("image_ref") || !j["image_ref"].is_string())
    throw ParseError("image_ref: missing or not a string", line);
  e.image_ref = j["image_ref"].get<std::string>();
  if (j.contains("accuracy")) {
    if (!j["accuracy"].is_number())
      throw ParseError("accuracy: not a number", line);
    double a = j["accuracy"].get<double>();
    if (a < 0.0 || a > 1.0)
      throw ParseError("accuracy: " + nlohmann::json(a).dump() +
                           " outside [0,1]",
                       line);
    e.accuracy = a;
  }
  if (!j.contains("samples") || !j["samples"].is_array())
    throw ParseError("samples: missing or not an array", line);
  std::size_t idx = 0;
  for (const auto& sj : j["samples"]) e.samples.push_back(parse_sample(sj, line, idx++));
  if (e.samples.size() < 2)
    throw ParseError("samples: need at least 2, got " +
                         std::to_string(e.samples.size()),
                     line);
  if (!e.accuracy) {
    for (std::size_t i = 0; i < e.samples.size(); ++i)
      if (!e.samples[i].correct)
        throw ParseError("accuracy absent and samples[" + std::to_string(i) +
                             "].correct missing",
                         line);
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kEnsembleKeys.count(it.key())) e.extra[it.key()] = it.value();
  return e;
}

}  // namespace

std::vector<Ensemble> parse_dataset(std::istream& in) {
  std::vector<Ensemble> out;
  std::set<std::string> seen;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON", line_no);
    Ensemble e = parse_ensemble(j, line_no);
    if (!seen.insert(e.id).second)
      throw ParseError("duplicate id \"" + e.id + "\"", line_no);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Ensemble> parse_dataset_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open input file: " + path);
  return parse_dataset(f);
}

std::string serialize_ensemble(const Ensemble& e) {
  nlohmann::json j = e.extra.is_object() ? e.extra : nlohmann::json::object();
  j["id"] = e.id;
  j["question"] = e.question;
  j["image_ref"] = e.image_ref;
  if (e.accuracy) j["accuracy"] = *e.accuracy;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : e.samples) {
    nlohmann::json sj = s.extra.is_object() ? s.extra : nlohmann::json::object();
    sj["text"] = s.text;
    if (!s.token_logprobs.empty()) sj["token_logprobs"] = s.token_logprobs;
    if (s.grounding_conf) sj["grounding_conf"] = *s.grounding_conf;
    if (s.correct) sj["correct"] = *s.correct;
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  return j.dump();
}

std::string serialize_dataset(const std::vector<Ensemble>& data) {
  std::ostringstream out;
  for (const auto& e : data) out << serialize_ensemble(e) << '\n';
  return out.str();
}

double ensemble_accuracy(const Ensemble& e) {
  if (e.accuracy) return *e.accuracy;
  std::size_t correct = 0;
  for (const auto& s : e.samples)
    if (s.correct && *s.correct) ++correct;
  return static_cast<double>(correct) / static_cast<double>(e.samples.size());
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, const SplitSpec& spec, unsigned run_index) {
  if (n == 0) throw std::invalid_argument("split: empty dataset");
  if (spec.validation_fraction <= 0.0 || spec.validation_fraction >= 1.0)
    throw std::invalid_argument("split: validation_fraction outside (0,1)");
  std::mt19937_64 rng(spec.seed + 0x9E3779B97F4A7C15ULL * (run_index + 1ULL));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  // Fisher-Yates spelled out; std::shuffle is implementation-defined.
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(idx[i], idx[j]);
  }
  // round-half-to-even; nearbyint honors the default FE_TONEAREST mode
  auto k = static_cast<std::size_t>(
      std::nearbyint(spec.validation_fraction * static_cast<double>(n)));
  std::vector<std::size_t> validation(idx.begin(), idx.begin() + k);
  std::vector<std::size_t> test(idx.begin() + k, idx.end());
  std::sort(validation.begin(), validation.end());
  std::sort(test.begin(), test.end());
  return {std::move(validation), std::move(test)};
}

std::pair<std::vector<Ensemble>, std::vector<Ensemble>>
split(const std::vector<Ensemble>& data, const SplitSpec& spec, unsigned run_index) {
  auto [vi, ti] = split_indices(data.size(), spec, run_index);
  std::pair<std::vector<Ensemble>, std::vector<Ensemble>> out;
  for (auto i : vi) out.first.push_back(data[i]);
  for (auto i : ti) out.second.push_back(data[i]);
  return out;
}

}  // namespace uqcal
