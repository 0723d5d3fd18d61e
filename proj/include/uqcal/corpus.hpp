#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace uqcal {

// Error raised while parsing a record stream; carries the 1-based line number
// when the failure is tied to a specific line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                                : std::move(message)),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ResponseSample {
  std::string text;
  std::vector<double> token_logprobs;  // empty = absent; each entry <= 0
  std::optional<double> grounding_conf;  // in [0,1] when present
  std::optional<bool> correct;
  nlohmann::json extra = nlohmann::json::object();  // unknown fields, kept for round-trip
};

struct Ensemble {
  std::string id;
  std::string question;
  std::string image_ref;
  std::optional<double> accuracy;  // in [0,1] when present
  std::vector<ResponseSample> samples;  // size >= 2
  nlohmann::json extra = nlohmann::json::object();
};

struct SplitSpec {
  double validation_fraction = 0.2;  // in (0,1)
  std::uint64_t seed = 0;
  unsigned repetitions = 5;
};

// Parses line-delimited records. Throws ParseError naming the offending field
// and line on any schema violation; ids must be unique across the stream.
std::vector<Ensemble> parse_dataset(std::istream& in);
std::vector<Ensemble> parse_dataset_file(const std::string& path);

// Canonical single-line serialization (sorted keys, shortest float repr).
// parse_dataset(serialize(x)) round-trips byte-identically, unknown fields included.
std::string serialize_ensemble(const Ensemble& e);
std::string serialize_dataset(const std::vector<Ensemble>& data);

// Explicit accuracy field wins over per-sample correct flags.
double ensemble_accuracy(const Ensemble& e);

// Deterministic split of indices [0, n) into (validation, test), both in
// ascending index order. |validation| = round-half-even(fraction * n).
// Depends only on (spec.seed, run_index).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, const SplitSpec& spec, unsigned run_index);

std::pair<std::vector<Ensemble>, std::vector<Ensemble>>
split(const std::vector<Ensemble>& data, const SplitSpec& spec, unsigned run_index);

}  // namespace uqcal
