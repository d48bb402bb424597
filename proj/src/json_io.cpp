#include "json_io.h"

namespace seersc {

using nlohmann::json;

namespace {

template <typename T>
void get_optional(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

}  // namespace

void to_json(json& j, const Problem& p) {
  j = json{{"id", p.id}, {"prompt", p.prompt}, {"gold", p.gold_answer}};
  if (!p.metadata.empty()) j["metadata"] = p.metadata;
}

void to_json(json& j, const TokenRange& r) { j = json::array({r.min, r.max}); }

void from_json(const json& j, TokenRange& r) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("token range must be [min, max]");
  r.min = j[0].get<int64_t>();
  r.max = j[1].get<int64_t>();
}

void to_json(json& j, const SimProblemProfile& p) {
  j = json{{"problem_id", p.problem_id},
           {"direct_dist", p.direct_dist},
           {"reasoning_dist", p.reasoning_dist},
           {"gold", p.gold},
           {"direct_token_range", p.direct_token_range},
           {"reasoning_token_range", p.reasoning_token_range},
           {"tokens_per_second", p.tokens_per_second},
           {"temperature_sharpness", p.temperature_sharpness},
           {"direct_reference_temperature", p.direct_reference_temperature},
           {"reasoning_reference_temperature", p.reasoning_reference_temperature},
           {"logprob_jitter", p.logprob_jitter}};
  if (!p.direct_confidence.empty()) j["direct_confidence"] = p.direct_confidence;
  if (!p.reasoning_confidence.empty()) j["reasoning_confidence"] = p.reasoning_confidence;
}

void from_json(const json& j, SimProblemProfile& p) {
  j.at("problem_id").get_to(p.problem_id);
  j.at("direct_dist").get_to(p.direct_dist);
  j.at("reasoning_dist").get_to(p.reasoning_dist);
  j.at("gold").get_to(p.gold);
  get_optional(j, "direct_token_range", p.direct_token_range);
  get_optional(j, "reasoning_token_range", p.reasoning_token_range);
  get_optional(j, "tokens_per_second", p.tokens_per_second);
  get_optional(j, "temperature_sharpness", p.temperature_sharpness);
  get_optional(j, "direct_reference_temperature", p.direct_reference_temperature);
  get_optional(j, "reasoning_reference_temperature", p.reasoning_reference_temperature);
  get_optional(j, "logprob_jitter", p.logprob_jitter);
  get_optional(j, "direct_confidence", p.direct_confidence);
  get_optional(j, "reasoning_confidence", p.reasoning_confidence);
}

void to_json(json& j, const Completion& c) {
  j = json{{"sample_index", c.sample_index},
           {"mode", to_string(c.mode)},
           {"text", c.text},
           {"answer", c.answer ? json(*c.answer) : json(nullptr)},
           {"token_count", c.token_count},
           {"latency_s", c.latency_s},
           {"token_logprobs", c.token_logprobs},
           {"logprobs_missing", c.logprobs_missing}};
}

void from_json(const json& j, Completion& c) {
  j.at("sample_index").get_to(c.sample_index);
  c.mode = parse_generation_mode(j.at("mode").get<std::string>());
  j.at("text").get_to(c.text);
  c.answer.reset();
  if (!j.at("answer").is_null()) c.answer = j["answer"].get<std::string>();
  j.at("token_count").get_to(c.token_count);
  j.at("latency_s").get_to(c.latency_s);
  get_optional(j, "token_logprobs", c.token_logprobs);
  get_optional(j, "logprobs_missing", c.logprobs_missing);
}

void to_json(json& j, const EntropyReport& r) {
  j = json{{"problem_id", r.problem_id},
           {"m", r.m},
           {"sampled", r.sampled},
           {"category_weights", r.category_weights},
           {"normalized_weights", r.normalized_weights},
           {"entropy_nats", r.entropy_nats}};
}

void from_json(const json& j, EntropyReport& r) {
  j.at("problem_id").get_to(r.problem_id);
  j.at("m").get_to(r.m);
  j.at("sampled").get_to(r.sampled);
  j.at("category_weights").get_to(r.category_weights);
  j.at("normalized_weights").get_to(r.normalized_weights);
  j.at("entropy_nats").get_to(r.entropy_nats);
}

void to_json(json& j, const BudgetDecision& d) {
  j = json{{"problem_id", d.problem_id},
           {"entropy_nats", d.entropy_nats},
           {"tier", to_string(d.tier)},
           {"samples", d.samples}};
}

void from_json(const json& j, BudgetDecision& d) {
  j.at("problem_id").get_to(d.problem_id);
  j.at("entropy_nats").get_to(d.entropy_nats);
  const auto tier = j.at("tier").get<std::string>();
  d.tier = tier == "single" ? BudgetTier::kSingle
           : tier == "half" ? BudgetTier::kHalf
                            : BudgetTier::kFull;
  j.at("samples").get_to(d.samples);
}

void to_json(json& j, const StrategyConfig& c) {
  j = json{{"strategy", to_string(c.strategy)},
           {"n", c.n},
           {"ac_threshold", c.ac_threshold},
           {"ac_min_samples", c.ac_min_samples},
           {"esc_window", c.esc_window},
           {"seer_m", c.seer_m},
           {"system1_temperature", c.system1_temperature},
           {"system2_temperature", c.system2_temperature},
           {"system1_max_tokens", c.system1_max_tokens},
           {"max_tokens", c.max_tokens},
           {"vote", to_string(c.vote)},
           {"vote_window", c.vote_window},
           {"tau1_fraction", c.thresholds.tau1_fraction},
           {"tau2_fraction", c.thresholds.tau2_fraction},
           {"weighting", to_string(c.weighting)}};
  j["pruning"] = c.pruning ? json{{"window_size", c.pruning->window_size},
                                  {"threshold", c.pruning->threshold}}
                           : json(nullptr);
}

void from_json(const json& j, StrategyConfig& c) {
  c.strategy = parse_strategy(j.at("strategy").get<std::string>());
  j.at("n").get_to(c.n);
  j.at("ac_threshold").get_to(c.ac_threshold);
  j.at("ac_min_samples").get_to(c.ac_min_samples);
  j.at("esc_window").get_to(c.esc_window);
  j.at("seer_m").get_to(c.seer_m);
  j.at("system1_temperature").get_to(c.system1_temperature);
  j.at("system2_temperature").get_to(c.system2_temperature);
  j.at("system1_max_tokens").get_to(c.system1_max_tokens);
  j.at("max_tokens").get_to(c.max_tokens);
  c.vote = parse_vote(j.at("vote").get<std::string>());
  j.at("vote_window").get_to(c.vote_window);
  j.at("tau1_fraction").get_to(c.thresholds.tau1_fraction);
  j.at("tau2_fraction").get_to(c.thresholds.tau2_fraction);
  c.weighting = parse_entropy_weighting(j.at("weighting").get<std::string>());
  c.pruning.reset();
  if (auto it = j.find("pruning"); it != j.end() && !it->is_null()) {
    c.pruning = PruningConfig{it->at("window_size").get<int64_t>(), it->at("threshold").get<double>()};
  }
}

void to_json(json& j, const StrategyOutcome& o) {
  j = json{{"problem_id", o.problem_id},
           {"final_answer", o.final_answer ? json(*o.final_answer) : json(nullptr)},
           {"total_tokens", o.total_tokens},
           {"latency_s", o.latency_s},
           {"degraded_logprobs", o.degraded_logprobs},
           {"failed", o.failed},
           {"error", o.error},
           {"system2", o.system2}};
  json rounds = json::array();
  for (const auto& r : o.rounds) {
    rounds.push_back({{"phase", r.phase},
                      {"sample_indices", r.sample_indices},
                      {"round_latency_s", r.round_latency_s}});
  }
  j["rounds"] = std::move(rounds);
  json pruned = json::array();
  for (const auto& p : o.pruned) {
    pruned.push_back({{"completion", p.completion}, {"counted_tokens", p.counted_tokens}});
  }
  j["pruned"] = std::move(pruned);
  if (o.system1) {
    j["system1"] = {{"completions", o.system1->completions},
                    {"entropy", o.system1->entropy},
                    {"budget", o.system1->budget},
                    {"fallback", o.system1->fallback}};
  } else {
    j["system1"] = nullptr;
  }
}

void from_json(const json& j, StrategyOutcome& o) {
  j.at("problem_id").get_to(o.problem_id);
  o.final_answer.reset();
  if (!j.at("final_answer").is_null()) o.final_answer = j["final_answer"].get<std::string>();
  j.at("total_tokens").get_to(o.total_tokens);
  j.at("latency_s").get_to(o.latency_s);
  j.at("degraded_logprobs").get_to(o.degraded_logprobs);
  j.at("failed").get_to(o.failed);
  j.at("error").get_to(o.error);
  j.at("system2").get_to(o.system2);
  o.rounds.clear();
  for (const auto& r : j.at("rounds")) {
    o.rounds.push_back({r.at("phase").get<std::string>(),
                        r.at("sample_indices").get<std::vector<int64_t>>(),
                        r.at("round_latency_s").get<double>()});
  }
  o.pruned.clear();
  for (const auto& p : j.at("pruned")) {
    o.pruned.push_back({p.at("completion").get<Completion>(), p.at("counted_tokens").get<int64_t>()});
  }
  o.system1.reset();
  if (const auto& s1 = j.at("system1"); !s1.is_null()) {
    System1Trace trace;
    s1.at("completions").get_to(trace.completions);
    s1.at("entropy").get_to(trace.entropy);
    s1.at("budget").get_to(trace.budget);
    s1.at("fallback").get_to(trace.fallback);
    o.system1 = std::move(trace);
  }
}

void to_json(json& j, const RunReport& r) {
  j = json{{"config", r.config},
           {"seed", r.seed},
           {"repeat", r.repeat},
           {"accuracy", r.accuracy},
           {"mean_tokens_thousands", r.mean_tokens_thousands},
           {"mean_latency_s", r.mean_latency_s},
           {"wall_time_s", r.wall_time_s},
           {"failures", r.failures},
           {"outcomes", r.outcomes}};
}

void from_json(const json& j, RunReport& r) {
  j.at("config").get_to(r.config);
  j.at("seed").get_to(r.seed);
  j.at("repeat").get_to(r.repeat);
  j.at("accuracy").get_to(r.accuracy);
  j.at("mean_tokens_thousands").get_to(r.mean_tokens_thousands);
  j.at("mean_latency_s").get_to(r.mean_latency_s);
  j.at("wall_time_s").get_to(r.wall_time_s);
  j.at("failures").get_to(r.failures);
  j.at("outcomes").get_to(r.outcomes);
}

}  // namespace seersc
