#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seersc {

// One benchmark item. gold_answer is stored in normalized form.
struct Problem {
  std::string id;
  std::string prompt;
  std::string gold_answer;
  std::map<std::string, std::string> metadata;

  bool operator==(const Problem&) const = default;
};

enum class GenerationMode { kDirect, kReasoning };

std::string_view to_string(GenerationMode mode);
GenerationMode parse_generation_mode(std::string_view text);

// One sampled generation.
//
// token_logprobs holds natural-log token probabilities (all <= 0). It may be
// empty when the serving backend did not return logprobs, in which case
// logprobs_missing is set and confidence falls back to 1.
struct Completion {
  std::string text;
  std::optional<std::string> answer;
  std::vector<double> token_logprobs;
  int64_t token_count = 0;
  double latency_s = 0.0;
  GenerationMode mode = GenerationMode::kReasoning;
  int64_t sample_index = 0;
  bool logprobs_missing = false;

  bool operator==(const Completion&) const = default;
};

// A distinct normalized answer and the sample indices that produced it.
// Members are kept sorted ascending.
struct AnswerCategory {
  std::string label;
  std::vector<int64_t> members;

  bool operator==(const AnswerCategory&) const = default;
};

// Trim, collapse internal whitespace runs to one space, lowercase, strip
// trailing periods. Idempotent.
std::string normalize_answer(std::string_view raw);

// How a final answer is located inside completion text.
//
// The default takes the content of the last \boxed{...} marker (brace
// balanced), falling back to the last non-empty line. A custom extractor, if
// set, replaces the built-in rule entirely; its result is still normalized.
struct ExtractionRule {
  std::string marker = "\\boxed{";
  bool fallback_to_last_line = true;
  std::function<std::optional<std::string>(std::string_view)> custom;
};

std::optional<std::string> extract_answer(std::string_view text,
                                          const ExtractionRule& rule = {});

// Groups completions by normalized answer in first-appearance order.
// Completions without an answer belong to no category.
std::vector<AnswerCategory> categorize(const std::vector<Completion>& completions);

// Number of completions carrying an extractable answer.
int64_t count_answered(const std::vector<Completion>& completions);

}  // namespace seersc
