#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seersc/backend.h"

namespace seersc {

// Label that the simulator renders as an empty completion, i.e. a sample
// whose answer cannot be extracted.
inline constexpr std::string_view kNoAnswerLabel = "";

struct TokenRange {
  int64_t min = 1;
  int64_t max = 1;

  bool operator==(const TokenRange&) const = default;
};

// Ground truth that the simulator samples from for one problem.
//
// Distributions are specified at their mode's reference temperature. At
// temperature t each probability is raised to (t_ref / t)^sharpness and the
// result renormalized; t = 0 collapses onto the most likely label(s).
struct SimProblemProfile {
  std::string problem_id;
  std::map<std::string, double> direct_dist;
  std::map<std::string, double> reasoning_dist;
  std::string gold;
  TokenRange direct_token_range{8, 32};
  TokenRange reasoning_token_range{2000, 4000};
  double tokens_per_second = 100.0;
  double temperature_sharpness = 1.0;
  double direct_reference_temperature = 0.5;
  double reasoning_reference_temperature = 1.0;
  // Per-token logprobs are ln(q) minus a uniform draw from [0, jitter), where
  // q is the drawn label's reshaped probability unless the label has an
  // entry here, in which case that per-token probability is used instead.
  double logprob_jitter = 0.02;
  std::map<std::string, double> direct_confidence;
  std::map<std::string, double> reasoning_confidence;

  bool operator==(const SimProblemProfile&) const = default;
};

// Throws std::invalid_argument naming the first violated invariant.
void validate(const SimProblemProfile& profile);

// Distribution after temperature reshaping, in label order.
std::vector<std::pair<std::string, double>> reshape_distribution(
    const std::map<std::string, double>& dist, double temperature,
    double reference_temperature, double sharpness);

// Stream key for one sample; identical inputs always give the same key.
uint64_t sample_key(uint64_t base_seed, std::string_view problem_id, GenerationMode mode,
                    int64_t sample_index);

// Draws one completion. `key` comes from sample_key. The answer field is
// left empty; token_count is clipped to max_tokens, which drops the final
// answer marker.
Completion simulate_sample(const SimProblemProfile& profile, GenerationMode mode,
                           double temperature, uint64_t key, int64_t sample_index,
                           int64_t max_tokens = INT64_MAX);

class SimulatedBackend final : public Backend {
 public:
  explicit SimulatedBackend(std::vector<SimProblemProfile> profiles);

  std::vector<Completion> generate(const GenerationRequest& request) override;
  BackendStats stats() const override { return counters_.snapshot(); }
  bool simulated_clock() const override { return true; }

  const SimProblemProfile& profile(const std::string& problem_id) const;

 private:
  std::unordered_map<std::string, SimProblemProfile> profiles_;
  StatsCounters counters_;
};

}  // namespace seersc
