#include "seersc/scoring.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace seersc {

std::string_view to_string(EntropyWeighting weighting) {
  return weighting == EntropyWeighting::kConfidence ? "confidence" : "shannon";
}

EntropyWeighting parse_entropy_weighting(std::string_view text) {
  if (text == "confidence") return EntropyWeighting::kConfidence;
  if (text == "shannon") return EntropyWeighting::kShannon;
  throw std::invalid_argument("unknown entropy weighting: " + std::string(text));
}

double confidence(std::span<const double> token_logprobs) {
  if (token_logprobs.empty()) {
    throw std::invalid_argument("empty answer has no confidence");
  }
  const double sum = std::accumulate(token_logprobs.begin(), token_logprobs.end(), 0.0);
  return std::exp(sum / static_cast<double>(token_logprobs.size()));
}

double completion_confidence(const Completion& completion) {
  if (completion.token_logprobs.empty()) return 1.0;
  return confidence(completion.token_logprobs);
}

namespace {

double entropy_of(const std::vector<double>& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  // Rounding can push a single-category result a hair below zero.
  return std::max(h, 0.0);
}

EntropyReport report_from_weights(const std::vector<AnswerCategory>& categories,
                                  const std::vector<double>& weights, int64_t sampled) {
  EntropyReport report;
  report.m = static_cast<int64_t>(categories.size());
  report.sampled = sampled;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> normalized(weights.size());
  for (size_t j = 0; j < weights.size(); ++j) {
    normalized[j] = weights[j] / total;
    report.category_weights[categories[j].label] = weights[j];
    report.normalized_weights[categories[j].label] = normalized[j];
  }
  report.entropy_nats = entropy_of(normalized);
  return report;
}

}  // namespace

EntropyReport weighted_entropy(const std::vector<Completion>& completions,
                               const std::vector<AnswerCategory>& categories) {
  if (categories.empty()) throw std::invalid_argument("no extractable answers");
  std::unordered_map<int64_t, const Completion*> by_index;
  for (const auto& c : completions) by_index.emplace(c.sample_index, &c);

  std::vector<double> weights;
  weights.reserve(categories.size());
  for (const auto& cat : categories) {
    double w = 0.0;
    for (int64_t idx : cat.members) {
      auto it = by_index.find(idx);
      if (it == by_index.end()) {
        throw std::invalid_argument("category member " + std::to_string(idx) +
                                    " not among completions");
      }
      w += completion_confidence(*it->second);
    }
    weights.push_back(w);
  }
  return report_from_weights(categories, weights, static_cast<int64_t>(completions.size()));
}

double shannon_entropy(const std::vector<AnswerCategory>& categories, int64_t total) {
  if (total <= 0) throw std::invalid_argument("shannon entropy needs a positive total");
  std::vector<double> freq;
  freq.reserve(categories.size());
  for (const auto& cat : categories) {
    freq.push_back(static_cast<double>(cat.members.size()) / static_cast<double>(total));
  }
  return entropy_of(freq);
}

EntropyReport answer_entropy(const std::vector<Completion>& completions,
                             const std::vector<AnswerCategory>& categories,
                             EntropyWeighting weighting) {
  if (weighting == EntropyWeighting::kConfidence) {
    return weighted_entropy(completions, categories);
  }
  if (categories.empty()) throw std::invalid_argument("no extractable answers");
  std::vector<double> counts;
  int64_t total = 0;
  for (const auto& cat : categories) {
    counts.push_back(static_cast<double>(cat.members.size()));
    total += static_cast<int64_t>(cat.members.size());
  }
  EntropyReport report =
      report_from_weights(categories, counts, static_cast<int64_t>(completions.size()));
  report.entropy_nats = shannon_entropy(categories, total);
  return report;
}

ConfidenceTrace confidence_trace(std::span<const double> token_logprobs, int64_t window_size) {
  if (token_logprobs.empty()) {
    throw std::invalid_argument("empty path has no confidence trace");
  }
  if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
  ConfidenceTrace trace;
  trace.window_size = window_size;
  const size_t w = static_cast<size_t>(window_size);
  for (size_t begin = 0; begin < token_logprobs.size(); begin += w) {
    const size_t len = std::min(w, token_logprobs.size() - begin);
    trace.window_scores.push_back(confidence(token_logprobs.subspan(begin, len)));
  }
  trace.tail_score = trace.window_scores.back();
  trace.min_score = *std::min_element(trace.window_scores.begin(), trace.window_scores.end());
  return trace;
}

}  // namespace seersc
