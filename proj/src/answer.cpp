#include "seersc/answer.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace seersc {

std::string_view to_string(GenerationMode mode) {
  return mode == GenerationMode::kDirect ? "direct" : "reasoning";
}

GenerationMode parse_generation_mode(std::string_view text) {
  if (text == "direct") return GenerationMode::kDirect;
  if (text == "reasoning") return GenerationMode::kReasoning;
  throw std::invalid_argument("unknown generation mode: " + std::string(text));
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Content of the last brace-balanced `marker...}` span, if any.
std::optional<std::string_view> last_marker_content(std::string_view text,
                                                    std::string_view marker) {
  if (marker.empty()) return std::nullopt;
  size_t pos = text.rfind(marker);
  while (pos != std::string_view::npos) {
    const size_t begin = pos + marker.size();
    int depth = 1;
    for (size_t i = begin; i < text.size(); ++i) {
      if (text[i] == '{') {
        ++depth;
      } else if (text[i] == '}' && --depth == 0) {
        return text.substr(begin, i - begin);
      }
    }
    // Unterminated marker; try an earlier one.
    if (pos == 0) break;
    pos = text.rfind(marker, pos - 1);
  }
  return std::nullopt;
}

std::optional<std::string_view> last_nonempty_line(std::string_view text) {
  size_t end = text.size();
  while (end > 0) {
    size_t start = text.rfind('\n', end - 1);
    start = (start == std::string_view::npos) ? 0 : start + 1;
    std::string_view line = text.substr(start, end - start);
    if (std::any_of(line.begin(), line.end(), [](char c) { return !is_space(c); })) {
      return line;
    }
    if (start == 0) break;
    end = start - 1;
  }
  return std::nullopt;
}

}  // namespace

std::string normalize_answer(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  // Repeated so that normalization stays idempotent on inputs like "x ." or "x..".
  while (!out.empty() && (out.back() == '.' || out.back() == ' ')) out.pop_back();
  return out;
}

std::optional<std::string> extract_answer(std::string_view text, const ExtractionRule& rule) {
  std::optional<std::string> raw;
  if (rule.custom) {
    raw = rule.custom(text);
  } else if (auto boxed = last_marker_content(text, rule.marker)) {
    raw = std::string(*boxed);
  } else if (rule.fallback_to_last_line) {
    if (auto line = last_nonempty_line(text)) raw = std::string(*line);
  }
  if (!raw) return std::nullopt;
  std::string normalized = normalize_answer(*raw);
  if (normalized.empty()) return std::nullopt;
  return normalized;
}

std::vector<AnswerCategory> categorize(const std::vector<Completion>& completions) {
  std::vector<AnswerCategory> categories;
  std::unordered_map<std::string, size_t> slot;
  for (const auto& c : completions) {
    if (!c.answer) continue;
    auto [it, inserted] = slot.try_emplace(*c.answer, categories.size());
    if (inserted) categories.push_back({*c.answer, {}});
    categories[it->second].members.push_back(c.sample_index);
  }
  for (auto& cat : categories) std::sort(cat.members.begin(), cat.members.end());
  return categories;
}

int64_t count_answered(const std::vector<Completion>& completions) {
  return std::count_if(completions.begin(), completions.end(),
                       [](const Completion& c) { return c.answer.has_value(); });
}

}  // namespace seersc
