#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "seersc/answer.h"

namespace seersc {

inline constexpr int64_t kDefaultTraceWindow = 128;

// Outcome of a System-1 probe: how answer mass is spread over categories.
struct EntropyReport {
  std::string problem_id;
  int64_t m = 0;        // distinct categories
  int64_t sampled = 0;  // System-1 samples drawn
  std::map<std::string, double> category_weights;
  std::map<std::string, double> normalized_weights;
  double entropy_nats = 0.0;

  bool operator==(const EntropyReport&) const = default;
};

// Per-window confidence statistics along one generated path.
struct ConfidenceTrace {
  int64_t window_size = kDefaultTraceWindow;
  std::vector<double> window_scores;
  double tail_score = 1.0;
  double min_score = 1.0;
};

enum class EntropyWeighting { kConfidence, kShannon };

std::string_view to_string(EntropyWeighting weighting);
EntropyWeighting parse_entropy_weighting(std::string_view text);

// exp(mean log p) over the tokens, evaluated in log space.
// Throws std::invalid_argument on an empty sequence.
double confidence(std::span<const double> token_logprobs);

// confidence() of the completion's tokens, or 1 when logprobs are missing.
double completion_confidence(const Completion& completion);

// Confidence-weighted answer entropy in nats. Category weight is the sum of
// member confidences; weights are normalized and 0*log(0) is taken as 0.
// `categories` must come from categorize(completions).
EntropyReport weighted_entropy(const std::vector<Completion>& completions,
                               const std::vector<AnswerCategory>& categories);

// Frequency-only entropy: -sum (n_j/total) ln(n_j/total).
double shannon_entropy(const std::vector<AnswerCategory>& categories, int64_t total);

// Dispatches to one of the two estimators and fills a full report either way.
// For kShannon the category weights are the member counts.
EntropyReport answer_entropy(const std::vector<Completion>& completions,
                             const std::vector<AnswerCategory>& categories,
                             EntropyWeighting weighting);

// Splits the tokens into consecutive windows (the last may be shorter) and
// scores each window as exp(mean log p).
ConfidenceTrace confidence_trace(std::span<const double> token_logprobs,
                                 int64_t window_size = kDefaultTraceWindow);

}  // namespace seersc
