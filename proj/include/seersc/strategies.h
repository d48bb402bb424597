#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seersc/allocation.h"
#include "seersc/answer.h"
#include "seersc/backend.h"
#include "seersc/scoring.h"

namespace seersc {

enum class StrategyKind { kCot, kSc, kAc, kEsc, kSeerSc };
enum class VoteKind { kMajority, kTailWeighted };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view text);
std::string_view to_string(VoteKind kind);
VoteKind parse_vote(std::string_view text);

// Drop paths whose lowest window confidence falls below `threshold`.
struct PruningConfig {
  int64_t window_size = kDefaultTraceWindow;
  double threshold = 0.0;

  bool operator==(const PruningConfig&) const = default;
};

struct StrategyConfig {
  StrategyKind strategy = StrategyKind::kSeerSc;
  int64_t n = 8;
  double ac_threshold = 0.95;
  int64_t ac_min_samples = 3;
  int64_t esc_window = 5;
  int64_t seer_m = 64;
  double system1_temperature = 0.5;
  double system2_temperature = 1.0;
  int64_t system1_max_tokens = 256;
  int64_t max_tokens = 16384;
  VoteKind vote = VoteKind::kMajority;
  int64_t vote_window = kDefaultTraceWindow;
  std::optional<PruningConfig> pruning;
  ThresholdConfig thresholds;
  EntropyWeighting weighting = EntropyWeighting::kConfidence;

  bool operator==(const StrategyConfig&) const = default;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const StrategyConfig& cfg);

// Completions issued together; the round costs its slowest member.
struct RoundRecord {
  std::string phase;
  std::vector<int64_t> sample_indices;
  double round_latency_s = 0.0;

  bool operator==(const RoundRecord&) const = default;
};

struct System1Trace {
  std::vector<Completion> completions;
  EntropyReport entropy;
  BudgetDecision budget;
  bool fallback = false;  // no direct answer extracted; full budget used

  bool operator==(const System1Trace&) const = default;
};

struct PrunedPath {
  Completion completion;
  int64_t counted_tokens = 0;

  bool operator==(const PrunedPath&) const = default;
};

struct StrategyOutcome {
  std::string problem_id;
  std::optional<std::string> final_answer;
  std::optional<System1Trace> system1;
  std::vector<Completion> system2;  // completions that entered the vote
  std::vector<PrunedPath> pruned;
  int64_t total_tokens = 0;
  double latency_s = 0.0;
  std::vector<RoundRecord> rounds;
  bool degraded_logprobs = false;
  bool failed = false;
  std::string error;

  bool operator==(const StrategyOutcome&) const = default;
};

// Most frequent answer; ties go to the earliest first appearance.
std::optional<std::string> majority_vote(const std::vector<std::string>& answers);

// Each answered completion votes with the score of its last token window
// (weight 1 without logprobs). Ties go to the earliest first appearance.
std::optional<std::string> weighted_vote(const std::vector<Completion>& completions,
                                         int64_t tail_window = kDefaultTraceWindow);

struct PruneResult {
  std::vector<Completion> kept;
  std::vector<PrunedPath> pruned;
};

// A path is pruned iff its minimum window confidence is below `threshold`.
// Pruned paths count tokens up to the end of their first violating window.
// Paths without logprobs are always kept. If every path would be pruned, the
// one with the highest minimum window score survives so the vote has input.
PruneResult prune_paths(const std::vector<Completion>& completions, int64_t window_size,
                        double threshold);

std::optional<std::string> vote(const std::vector<Completion>& completions,
                                const StrategyConfig& cfg);

StrategyOutcome run_cot(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                        uint64_t seed, const ExtractionRule& rule = {});
StrategyOutcome run_sc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                       uint64_t seed, const ExtractionRule& rule = {});
StrategyOutcome run_ac(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                       uint64_t seed, const ExtractionRule& rule = {});
StrategyOutcome run_esc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                        uint64_t seed, const ExtractionRule& rule = {});
StrategyOutcome run_seersc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                           uint64_t seed, const ExtractionRule& rule = {});

// Dispatches on cfg.strategy.
StrategyOutcome run_strategy(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                             uint64_t seed, const ExtractionRule& rule = {});

}  // namespace seersc
