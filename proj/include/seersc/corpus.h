#pragma once

#include <cstdint>
#include <string>

#include "seersc/dataset.h"

namespace seersc {

// Difficulty mix for a synthetic simulation corpus.
//
// Easy problems put most direct-answer mass on the gold label and reason to
// it almost surely. Hard problems spread direct answers over several labels
// (near-uniform, Dirichlet-distributed) and reason to gold only a minority
// of the time. The remaining 1 - easy - trap share is hard.
struct CorpusSpec {
  std::string name = "sim";
  int64_t problems = 500;
  double easy_fraction = 0.7;

  double easy_direct_top_min = 0.95;
  double easy_direct_top_max = 0.999;
  int64_t easy_distractors_min = 1;
  int64_t easy_distractors_max = 3;
  double easy_reasoning_gold_min = 0.99;
  double easy_reasoning_gold_max = 0.999;

  int64_t hard_direct_labels_min = 5;
  int64_t hard_direct_labels_max = 8;
  double hard_direct_concentration = 8.0;
  double hard_reasoning_gold_min = 0.35;
  double hard_reasoning_gold_max = 0.5;
  int64_t hard_wrong_labels_min = 3;
  int64_t hard_wrong_labels_max = 5;
  double hard_wrong_concentration = 2.0;

  // Trap problems: System 1 mostly repeats one wrong answer, but with low
  // token confidence, while the gold minority is confident. Reasoning
  // behaves as for hard problems. Trap ids follow the hard ones.
  double trap_fraction = 0.0;
  double trap_direct_wrong_share = 0.93;
  double trap_wrong_confidence = 0.3;
  double trap_gold_confidence = 0.95;

  TokenRange direct_tokens{8, 32};
  TokenRange reasoning_tokens{2000, 4000};
  double tokens_per_second = 100.0;
  double temperature_sharpness = 1.0;
  double direct_reference_temperature = 0.5;
  double reasoning_reference_temperature = 1.0;
  double logprob_jitter = 0.02;
};

// Throws std::invalid_argument for inconsistent ranges or fractions.
void validate(const CorpusSpec& spec);

// Deterministic in (spec, seed). Problem ids are "<name>-0000", ...; each
// problem's metadata records its difficulty.
Dataset generate_corpus(const CorpusSpec& spec, uint64_t seed);

}  // namespace seersc
