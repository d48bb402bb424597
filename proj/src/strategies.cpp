#include "seersc/strategies.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace seersc {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kCot:
      return "cot";
    case StrategyKind::kSc:
      return "sc";
    case StrategyKind::kAc:
      return "ac";
    case StrategyKind::kEsc:
      return "esc";
    case StrategyKind::kSeerSc:
      return "seersc";
  }
  return "seersc";
}

StrategyKind parse_strategy(std::string_view text) {
  if (text == "cot") return StrategyKind::kCot;
  if (text == "sc") return StrategyKind::kSc;
  if (text == "ac") return StrategyKind::kAc;
  if (text == "esc") return StrategyKind::kEsc;
  if (text == "seersc") return StrategyKind::kSeerSc;
  throw std::invalid_argument("unknown strategy: " + std::string(text));
}

std::string_view to_string(VoteKind kind) {
  return kind == VoteKind::kMajority ? "majority" : "tail_weighted";
}

VoteKind parse_vote(std::string_view text) {
  if (text == "majority") return VoteKind::kMajority;
  if (text == "tail_weighted") return VoteKind::kTailWeighted;
  throw std::invalid_argument("unknown vote: " + std::string(text));
}

void validate(const StrategyConfig& cfg) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (cfg.n < 1) fail("N must be >= 1");
  if (!(cfg.ac_threshold > 0.0 && cfg.ac_threshold <= 1.0)) fail("ac_threshold must lie in (0, 1]");
  if (cfg.ac_min_samples < 2) fail("ac_min_samples must be >= 2");
  if (cfg.esc_window < 1) fail("esc_window must be >= 1");
  if (cfg.strategy == StrategyKind::kEsc && cfg.esc_window > cfg.n) fail("esc_window must be <= N");
  if (cfg.strategy == StrategyKind::kSeerSc && cfg.seer_m < 2) fail("seer_M must be >= 2");
  if (!(cfg.system1_temperature >= 0.0) || !(cfg.system2_temperature >= 0.0)) {
    fail("temperatures must be >= 0");
  }
  if (cfg.system1_max_tokens < 1 || cfg.max_tokens < 1) fail("max_tokens must be >= 1");
  if (cfg.vote_window < 1) fail("vote_window must be >= 1");
  if (cfg.pruning) {
    if (cfg.pruning->window_size < 1) fail("pruning window must be >= 1");
    if (!(cfg.pruning->threshold >= 0.0 && cfg.pruning->threshold <= 1.0)) {
      fail("pruning threshold must lie in [0, 1]");
    }
  }
  if (cfg.strategy == StrategyKind::kSeerSc) compute_thresholds(cfg.seer_m, cfg.thresholds);
}

std::optional<std::string> majority_vote(const std::vector<std::string>& answers) {
  std::unordered_map<std::string_view, std::pair<int64_t, size_t>> tally;  // count, first
  for (size_t i = 0; i < answers.size(); ++i) {
    auto [it, inserted] = tally.try_emplace(answers[i], 0, i);
    ++it->second.first;
  }
  const std::string* best = nullptr;
  int64_t best_count = 0;
  size_t best_first = 0;
  for (const auto& [answer, entry] : tally) {
    const auto [count, first] = entry;
    if (count > best_count || (count == best_count && first < best_first)) {
      best = &answers[first];
      best_count = count;
      best_first = first;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<std::string> weighted_vote(const std::vector<Completion>& completions,
                                         int64_t tail_window) {
  std::vector<std::string> order;
  std::unordered_map<std::string, double> weight;
  for (const auto& c : completions) {
    if (!c.answer) continue;
    const double w = c.token_logprobs.empty()
                         ? 1.0
                         : confidence_trace(c.token_logprobs, tail_window).tail_score;
    auto [it, inserted] = weight.try_emplace(*c.answer, 0.0);
    if (inserted) order.push_back(*c.answer);
    it->second += w;
  }
  if (order.empty()) return std::nullopt;
  const std::string* best = &order.front();
  for (const auto& label : order) {
    if (weight[label] > weight[*best]) best = &label;
  }
  return *best;
}

PruneResult prune_paths(const std::vector<Completion>& completions, int64_t window_size,
                        double threshold) {
  PruneResult result;
  std::optional<size_t> best_pruned;
  double best_min = -1.0;
  for (const auto& c : completions) {
    if (c.token_logprobs.empty()) {
      result.kept.push_back(c);
      continue;
    }
    const ConfidenceTrace trace = confidence_trace(c.token_logprobs, window_size);
    if (!(trace.min_score < threshold)) {
      result.kept.push_back(c);
      continue;
    }
    const auto first_bad = static_cast<int64_t>(
        std::find_if(trace.window_scores.begin(), trace.window_scores.end(),
                     [threshold](double s) { return s < threshold; }) -
        trace.window_scores.begin());
    const int64_t counted = std::min(c.token_count, (first_bad + 1) * window_size);
    if (trace.min_score > best_min) {
      best_min = trace.min_score;
      best_pruned = result.pruned.size();
    }
    result.pruned.push_back({c, counted});
  }
  if (result.kept.empty() && best_pruned) {
    result.kept.push_back(std::move(result.pruned[*best_pruned].completion));
    result.pruned.erase(result.pruned.begin() + static_cast<std::ptrdiff_t>(*best_pruned));
  }
  return result;
}

std::optional<std::string> vote(const std::vector<Completion>& completions,
                                const StrategyConfig& cfg) {
  if (cfg.vote == VoteKind::kTailWeighted) return weighted_vote(completions, cfg.vote_window);
  std::vector<std::string> answers;
  for (const auto& c : completions) {
    if (c.answer) answers.push_back(*c.answer);
  }
  return majority_vote(answers);
}

namespace {

// Accumulates the rounds, tokens and latency of one strategy run.
class Session {
 public:
  Session(const Problem& problem, Backend& backend, uint64_t seed, const ExtractionRule& rule)
      : problem_(problem), backend_(backend), seed_(seed), rule_(rule) {
    outcome_.problem_id = problem.id;
  }

  std::vector<Completion> round(std::string phase, GenerationMode mode, int64_t n,
                                int64_t first_index, double temperature, int64_t max_tokens) {
    GenerationRequest req;
    req.problem_id = problem_.id;
    req.prompt = problem_.prompt;
    req.mode = mode;
    req.n = n;
    req.temperature = temperature;
    req.max_tokens = max_tokens;
    req.base_seed = seed_;
    req.first_sample_index = first_index;
    std::vector<Completion> batch = backend_.generate(req);
    std::sort(batch.begin(), batch.end(),
              [](const Completion& a, const Completion& b) { return a.sample_index < b.sample_index; });

    RoundRecord record;
    record.phase = std::move(phase);
    for (auto& c : batch) {
      c.answer = extract_answer(c.text, rule_);
      record.sample_indices.push_back(c.sample_index);
      record.round_latency_s = std::max(record.round_latency_s, c.latency_s);
      outcome_.degraded_logprobs = outcome_.degraded_logprobs || c.logprobs_missing;
    }
    outcome_.latency_s += record.round_latency_s;
    outcome_.rounds.push_back(std::move(record));
    return batch;
  }

  // Pruning (when configured) then the configured vote; tallies tokens.
  void finish_with_vote(std::vector<Completion> paths, const StrategyConfig& cfg) {
    if (cfg.pruning && paths.size() > 1) {
      PruneResult pr = prune_paths(paths, cfg.pruning->window_size, cfg.pruning->threshold);
      paths = std::move(pr.kept);
      outcome_.pruned = std::move(pr.pruned);
    }
    outcome_.final_answer = vote(paths, cfg);
    outcome_.system2 = std::move(paths);
    tally_tokens();
  }

  void finish_single(Completion path) {
    outcome_.final_answer = path.answer;
    outcome_.system2 = {std::move(path)};
    tally_tokens();
  }

  StrategyOutcome& outcome() { return outcome_; }

 private:
  void tally_tokens() {
    int64_t tokens = 0;
    if (outcome_.system1) {
      for (const auto& c : outcome_.system1->completions) tokens += c.token_count;
    }
    for (const auto& c : outcome_.system2) tokens += c.token_count;
    for (const auto& p : outcome_.pruned) tokens += p.counted_tokens;
    outcome_.total_tokens = tokens;
  }

  const Problem& problem_;
  Backend& backend_;
  uint64_t seed_;
  const ExtractionRule& rule_;
  StrategyOutcome outcome_;
};

std::optional<std::string> current_top(const std::vector<Completion>& drawn, int64_t* count) {
  std::vector<std::string> answers;
  for (const auto& c : drawn) {
    if (c.answer) answers.push_back(*c.answer);
  }
  auto top = majority_vote(answers);
  *count = top ? std::count(answers.begin(), answers.end(), *top) : 0;
  return top;
}

}  // namespace

StrategyOutcome run_cot(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                        uint64_t seed, const ExtractionRule& rule) {
  validate(cfg);
  Session s(problem, backend, seed, rule);
  auto batch = s.round("reasoning", GenerationMode::kReasoning, 1, 0, cfg.system2_temperature,
                       cfg.max_tokens);
  s.finish_single(std::move(batch.front()));
  return std::move(s.outcome());
}

StrategyOutcome run_sc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                       uint64_t seed, const ExtractionRule& rule) {
  validate(cfg);
  Session s(problem, backend, seed, rule);
  auto batch = s.round("reasoning", GenerationMode::kReasoning, cfg.n, 0, cfg.system2_temperature,
                       cfg.max_tokens);
  if (batch.size() == 1) {
    s.finish_single(std::move(batch.front()));
  } else {
    s.finish_with_vote(std::move(batch), cfg);
  }
  return std::move(s.outcome());
}

StrategyOutcome run_ac(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                       uint64_t seed, const ExtractionRule& rule) {
  validate(cfg);
  Session s(problem, backend, seed, rule);
  std::vector<Completion> drawn;
  while (static_cast<int64_t>(drawn.size()) < cfg.n) {
    auto batch = s.round("reasoning", GenerationMode::kReasoning, 1,
                         static_cast<int64_t>(drawn.size()), cfg.system2_temperature, cfg.max_tokens);
    drawn.push_back(std::move(batch.front()));
    const auto k = static_cast<int64_t>(drawn.size());
    if (k < cfg.ac_min_samples) continue;
    int64_t top_count = 0;
    current_top(drawn, &top_count);
    if (static_cast<double>(top_count) / static_cast<double>(k) >= cfg.ac_threshold) break;
  }
  if (drawn.size() == 1) {
    s.finish_single(std::move(drawn.front()));
  } else {
    s.finish_with_vote(std::move(drawn), cfg);
  }
  return std::move(s.outcome());
}

StrategyOutcome run_esc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                        uint64_t seed, const ExtractionRule& rule) {
  validate(cfg);
  Session s(problem, backend, seed, rule);
  std::vector<Completion> drawn;
  const auto window = static_cast<size_t>(cfg.esc_window);
  while (static_cast<int64_t>(drawn.size()) < cfg.n) {
    const int64_t size = std::min(cfg.esc_window, cfg.n - static_cast<int64_t>(drawn.size()));
    auto batch = s.round("reasoning", GenerationMode::kReasoning, size,
                         static_cast<int64_t>(drawn.size()), cfg.system2_temperature, cfg.max_tokens);
    std::move(batch.begin(), batch.end(), std::back_inserter(drawn));
    if (drawn.size() < window) continue;
    const auto recent = drawn.end() - static_cast<std::ptrdiff_t>(window);
    const bool converged =
        recent->answer && std::all_of(recent, drawn.end(), [&](const Completion& c) {
          return c.answer == recent->answer;
        });
    if (converged) break;
  }
  if (drawn.size() == 1) {
    s.finish_single(std::move(drawn.front()));
  } else {
    s.finish_with_vote(std::move(drawn), cfg);
  }
  return std::move(s.outcome());
}

StrategyOutcome run_seersc(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                           uint64_t seed, const ExtractionRule& rule) {
  validate(cfg);
  Session s(problem, backend, seed, rule);
  const Thresholds thresholds = compute_thresholds(cfg.seer_m, cfg.thresholds);

  System1Trace sys1;
  sys1.completions = s.round("system1", GenerationMode::kDirect, cfg.seer_m, 0,
                             cfg.system1_temperature, cfg.system1_max_tokens);
  const auto categories = categorize(sys1.completions);
  if (categories.empty()) {
    sys1.fallback = true;
    sys1.entropy.sampled = cfg.seer_m;
    sys1.entropy.entropy_nats = std::log(static_cast<double>(cfg.seer_m));
    sys1.budget.entropy_nats = sys1.entropy.entropy_nats;
    sys1.budget.tier = BudgetTier::kFull;
    sys1.budget.samples = cfg.n;
  } else {
    sys1.entropy = answer_entropy(sys1.completions, categories, cfg.weighting);
    sys1.budget = allocate_budget(sys1.entropy.entropy_nats, cfg.n, thresholds);
  }
  sys1.entropy.problem_id = problem.id;
  sys1.budget.problem_id = problem.id;
  const int64_t budget = sys1.budget.samples;
  s.outcome().system1 = std::move(sys1);

  auto paths = s.round("system2", GenerationMode::kReasoning, budget, 0, cfg.system2_temperature,
                       cfg.max_tokens);
  if (budget == 1) {
    s.finish_single(std::move(paths.front()));
  } else {
    s.finish_with_vote(std::move(paths), cfg);
  }
  return std::move(s.outcome());
}

StrategyOutcome run_strategy(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                             uint64_t seed, const ExtractionRule& rule) {
  switch (cfg.strategy) {
    case StrategyKind::kCot:
      return run_cot(problem, backend, cfg, seed, rule);
    case StrategyKind::kSc:
      return run_sc(problem, backend, cfg, seed, rule);
    case StrategyKind::kAc:
      return run_ac(problem, backend, cfg, seed, rule);
    case StrategyKind::kEsc:
      return run_esc(problem, backend, cfg, seed, rule);
    case StrategyKind::kSeerSc:
      return run_seersc(problem, backend, cfg, seed, rule);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace seersc
