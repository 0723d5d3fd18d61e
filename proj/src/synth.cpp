#include "uqcal/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace uqcal {

namespace {

enum class Archetype { ConsistentCorrect, ConsistentWrong, Inconsistent };

// 53-bit uniform in [0,1); spelled out so the stream is reproducible from
// the documented generator alone.
double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}

std::string pick_word(std::mt19937_64& rng, std::size_t vocab) {
  return "w" + std::to_string(rng() % vocab);
}

double grounding_signal(std::mt19937_64& rng, bool correct, double fidelity) {
  bool faithful = uniform(rng) < fidelity;
  bool as_correct = faithful ? correct : !correct;
  return as_correct ? uniform_in(rng, 0.85, 1.0) : uniform_in(rng, 0.0, 0.15);
}

}  // namespace

std::vector<Ensemble> generate(const SynthConfig& cfg) {
  if (cfg.n_ensembles == 0 || cfg.n_samples == 0 || cfg.vocab_size == 0)
    throw std::invalid_argument("generate: sizes must be positive");
  if (cfg.frac_consistent_wrong < 0.0 || cfg.frac_consistent_wrong > 1.0 ||
      cfg.grounding_fidelity < 0.0 || cfg.grounding_fidelity > 1.0)
    throw std::invalid_argument("generate: fractions must lie in [0,1]");

  const std::size_t n = cfg.n_ensembles;
  auto n_wrong = static_cast<std::size_t>(
      std::nearbyint(cfg.frac_consistent_wrong * static_cast<double>(n)));
  const std::size_t rest = n - n_wrong;
  const std::size_t n_correct = (rest + 1) / 2;
  const std::size_t n_incons = rest / 2;

  std::vector<Archetype> archetypes;
  archetypes.insert(archetypes.end(), n_correct, Archetype::ConsistentCorrect);
  archetypes.insert(archetypes.end(), n_wrong, Archetype::ConsistentWrong);
  archetypes.insert(archetypes.end(), n_incons, Archetype::Inconsistent);

  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = archetypes.size() - 1; i > 0; --i)
    std::swap(archetypes[i], archetypes[rng() % (i + 1)]);

  std::vector<Ensemble> out;
  out.reserve(n);
  std::size_t counters[3] = {0, 0, 0};
  const char* prefixes[3] = {"cc", "cw", "ix"};
  constexpr std::size_t kTokens = 4;  // fixed response length

  for (std::size_t i = 0; i < n; ++i) {
    Archetype a = archetypes[i];
    auto ai = static_cast<std::size_t>(a);
    Ensemble e;
    e.id = std::string(prefixes[ai]) + "-" + std::to_string(counters[ai]++);
    e.question = "what is shown in image " + std::to_string(i) + "?";
    e.image_ref = "img://synthetic/" + std::to_string(i);

    std::string shared_text;
    if (a != Archetype::Inconsistent) {
      shared_text = pick_word(rng, cfg.vocab_size);
      for (std::size_t t = 1; t < kTokens; ++t)
        shared_text += " " + pick_word(rng, cfg.vocab_size);
    }

    std::size_t correct_count = 0;
    for (std::size_t s = 0; s < cfg.n_samples; ++s) {
      ResponseSample sample;
      bool correct;
      double lp_lo, lp_hi;
      switch (a) {
        case Archetype::ConsistentCorrect:
          sample.text = shared_text;
          correct = true;
          lp_lo = -0.1;
          lp_hi = -0.02;
          break;
        case Archetype::ConsistentWrong:
          sample.text = shared_text;
          correct = false;
          // top of the consistent range: keeps PredEnt on archetype (b)
          // above the dataset median
          lp_lo = -0.02;
          lp_hi = 0.0;
          break;
        case Archetype::Inconsistent:
        default:
          sample.text = pick_word(rng, cfg.vocab_size);
          for (std::size_t t = 1; t < kTokens; ++t)
            sample.text += " " + pick_word(rng, cfg.vocab_size);
          correct = uniform(rng) < 0.5;
          lp_lo = -2.0;
          lp_hi = -0.5;
          break;
      }
      for (std::size_t t = 0; t < kTokens; ++t)
        sample.token_logprobs.push_back(uniform_in(rng, lp_lo, lp_hi));
      sample.correct = correct;
      sample.grounding_conf =
          grounding_signal(rng, correct, cfg.grounding_fidelity);
      if (correct) ++correct_count;
      e.samples.push_back(std::move(sample));
    }
    e.accuracy = static_cast<double>(correct_count) /
                 static_cast<double>(cfg.n_samples);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace uqcal
