#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seersc/experiment.h"

namespace seersc {

enum class AblationKind { kTemperature, kSampleSize, kWeighting };

AblationKind parse_ablation(std::string_view text);
std::string_view to_string(AblationKind kind);

struct EntropySummary {
  double mean = 0.0;
  double stdev = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  int64_t single = 0;
  int64_t half = 0;
  int64_t full = 0;
};

EntropySummary summarize_entropy(const std::vector<RunReport>& reports);

struct AblationRow {
  std::string knob;
  std::string value;
  EntropySummary entropy;
  double accuracy = 0.0;
  double mean_latency_s = 0.0;
  double mean_tokens_thousands = 0.0;
  // Mean over problems of the across-seed variance of System-1 entropy.
  double entropy_seed_variance = 0.0;
};

struct AblationOptions {
  ExperimentOptions experiment;
  // Seeds used for the across-seed entropy variance column.
  int64_t variance_seeds = 8;
};

// System-1 entropy of every problem under `cfg` (System 2 is not run).
std::vector<double> system1_entropies(const Dataset& dataset, Backend& backend,
                                      const StrategyConfig& cfg, uint64_t seed,
                                      const ExtractionRule& rule = {});

// Mean over problems of the variance of system1_entropies across
// `seeds` consecutive seeds starting at `seed`.
double entropy_seed_variance(const Dataset& dataset, Backend& backend, const StrategyConfig& cfg,
                             uint64_t seed, int64_t seeds, const ExtractionRule& rule = {});

// One SeerSC experiment per value. `values` are temperatures, sample sizes
// M, or weighting names ("confidence", "shannon") depending on `kind`.
std::vector<AblationRow> run_ablation(const Dataset& dataset, Backend& backend,
                                      const StrategyConfig& base, AblationKind kind,
                                      const std::vector<std::string>& values,
                                      const AblationOptions& options);

std::string ablation_to_csv(const std::vector<AblationRow>& rows);
std::string format_ablation_table(const std::vector<AblationRow>& rows);

}  // namespace seersc
