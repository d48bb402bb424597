#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seersc/backend.h"
#include "seersc/dataset.h"
#include "seersc/strategies.h"

namespace seersc {

struct RunReport {
  StrategyConfig config;
  std::vector<StrategyOutcome> outcomes;
  double accuracy = 0.0;
  double mean_tokens_thousands = 0.0;
  double mean_latency_s = 0.0;
  uint64_t seed = 0;
  int64_t repeat = 0;
  // Modeled (back-to-back problem latencies) for simulated backends,
  // measured host time otherwise.
  double wall_time_s = 0.0;
  int64_t failures = 0;

  bool operator==(const RunReport&) const = default;
};

struct ExperimentOptions {
  uint64_t seed = 0;
  int64_t repeats = 1;
  int workers = 1;
  // Token logprobs dominate memory on long runs; they are dropped from the
  // stored traces unless asked for.
  bool keep_logprobs = false;
  ExtractionRule extraction;
};

// Seed used by repeat `r` of a run seeded with `seed`.
uint64_t repeat_seed(uint64_t seed, int64_t repeat);

// Runs every config for every repeat over all problems. Problems are spread
// over `workers` threads; results do not depend on the worker count. A
// backend error on one problem marks that outcome failed and counts it as
// incorrect.
std::vector<RunReport> run_experiment(const Dataset& dataset,
                                      const std::vector<StrategyConfig>& configs,
                                      Backend& backend, const ExperimentOptions& options);

// Recomputes accuracy, mean tokens and mean latency from the outcomes.
void aggregate(RunReport& report, const Dataset& dataset);

}  // namespace seersc
