#pragma once

#include <cstdint>
#include <vector>

#include "uqcal/corpus.hpp"

namespace uqcal {

struct SynthConfig {
  std::size_t n_ensembles = 75;
  std::size_t n_samples = 20;
  double frac_consistent_wrong = 1.0 / 3.0;
  double grounding_fidelity = 0.9;  // probability the grounding signal
                                    // reflects true correctness
  std::size_t vocab_size = 50;
  std::uint64_t seed = 0;
};

// Three archetypes: consistent-correct (ids "cc-*"), consistent-wrong
// ("cw-*", fraction frac_consistent_wrong), and inconsistent ("ix-*", half
// of the remainder). Deterministic for a fixed seed.
std::vector<Ensemble> generate(const SynthConfig& cfg);

}  // namespace uqcal
