#include "seersc/sim_backend.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seersc/rng.h"

namespace seersc {

namespace {

void validate_dist(const std::map<std::string, double>& dist, std::string_view what,
                   const std::string& id) {
  if (dist.empty()) {
    throw std::invalid_argument("profile " + id + ": " + std::string(what) + " is empty");
  }
  double total = 0.0;
  for (const auto& [label, p] : dist) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("profile " + id + ": negative probability in " +
                                  std::string(what));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("profile " + id + ": " + std::string(what) +
                                " does not sum to 1");
  }
}

void validate_range(const TokenRange& range, std::string_view what, const std::string& id) {
  if (range.min < 1 || range.max < range.min) {
    throw std::invalid_argument("profile " + id + ": invalid " + std::string(what));
  }
}

}  // namespace

void validate(const SimProblemProfile& profile) {
  const auto& id = profile.problem_id;
  if (id.empty()) throw std::invalid_argument("profile with empty problem_id");
  validate_dist(profile.direct_dist, "direct_dist", id);
  validate_dist(profile.reasoning_dist, "reasoning_dist", id);
  validate_range(profile.direct_token_range, "direct_token_range", id);
  validate_range(profile.reasoning_token_range, "reasoning_token_range", id);
  if (!(profile.tokens_per_second > 0.0)) {
    throw std::invalid_argument("profile " + id + ": tokens_per_second must be positive");
  }
  if (!(profile.temperature_sharpness > 0.0)) {
    throw std::invalid_argument("profile " + id + ": temperature_sharpness must be positive");
  }
  if (!(profile.direct_reference_temperature > 0.0) ||
      !(profile.reasoning_reference_temperature > 0.0)) {
    throw std::invalid_argument("profile " + id + ": reference temperatures must be positive");
  }
  for (const auto* overrides : {&profile.direct_confidence, &profile.reasoning_confidence}) {
    for (const auto& [label, c] : *overrides) {
      if (!(c > 0.0 && c <= 1.0)) {
        throw std::invalid_argument("profile " + id + ": confidence override for '" + label +
                                    "' must lie in (0, 1]");
      }
    }
  }
  if (!(profile.logprob_jitter >= 0.0)) {
    throw std::invalid_argument("profile " + id + ": logprob_jitter must be nonnegative");
  }
}

std::vector<std::pair<std::string, double>> reshape_distribution(
    const std::map<std::string, double>& dist, double temperature,
    double reference_temperature, double sharpness) {
  std::vector<std::pair<std::string, double>> out(dist.begin(), dist.end());
  double p_max = 0.0;
  for (const auto& [label, p] : out) p_max = std::max(p_max, p);

  if (temperature <= 0.0) {
    // Argmax collapse, uniform over tied modes.
    double ties = 0.0;
    for (auto& [label, p] : out) {
      p = (p == p_max) ? 1.0 : 0.0;
      ties += p;
    }
    for (auto& [label, p] : out) p /= ties;
    return out;
  }

  const double exponent = std::pow(reference_temperature / temperature, sharpness);
  const double log_max = std::log(p_max);
  double total = 0.0;
  for (auto& [label, p] : out) {
    p = (p > 0.0) ? std::exp(exponent * (std::log(p) - log_max)) : 0.0;
    total += p;
  }
  for (auto& [label, p] : out) p /= total;
  return out;
}

uint64_t sample_key(uint64_t base_seed, std::string_view problem_id, GenerationMode mode,
                    int64_t sample_index) {
  uint64_t key = combine_keys(mix64(base_seed), fnv1a(problem_id));
  key = combine_keys(key, mode == GenerationMode::kDirect ? 0x5157ULL : 0x5258ULL);
  return combine_keys(key, static_cast<uint64_t>(sample_index));
}

Completion simulate_sample(const SimProblemProfile& profile, GenerationMode mode,
                           double temperature, uint64_t key, int64_t sample_index,
                           int64_t max_tokens) {
  const bool direct = mode == GenerationMode::kDirect;
  const auto dist = reshape_distribution(
      direct ? profile.direct_dist : profile.reasoning_dist, temperature,
      direct ? profile.direct_reference_temperature : profile.reasoning_reference_temperature,
      profile.temperature_sharpness);
  const TokenRange range = direct ? profile.direct_token_range : profile.reasoning_token_range;

  SplitMix64 rng(key);
  const double u = rng.uniform();
  size_t pick = dist.size() - 1;
  double cdf = 0.0;
  for (size_t i = 0; i < dist.size(); ++i) {
    cdf += dist[i].second;
    if (u < cdf && dist[i].second > 0.0) {
      pick = i;
      break;
    }
  }
  // Floating-point slack at the top of the CDF: take the last label with mass.
  while (dist[pick].second <= 0.0 && pick > 0) --pick;
  const std::string& label = dist[pick].first;
  const double q = dist[pick].second;

  Completion c;
  c.mode = mode;
  c.sample_index = sample_index;
  const int64_t drawn = rng.uniform_int(range.min, range.max);
  c.token_count = std::min(drawn, max_tokens);
  const bool truncated = c.token_count < drawn;

  const auto& overrides = direct ? profile.direct_confidence : profile.reasoning_confidence;
  const auto forced = overrides.find(label);
  const double base = std::log(forced != overrides.end() ? forced->second : q);
  c.token_logprobs.resize(static_cast<size_t>(c.token_count));
  for (auto& lp : c.token_logprobs) {
    lp = std::min(0.0, base - profile.logprob_jitter * rng.uniform());
  }
  c.latency_s = static_cast<double>(c.token_count) / profile.tokens_per_second;

  if (truncated || label == kNoAnswerLabel) {
    c.text = "";
  } else if (direct) {
    c.text = "\\boxed{" + label + "}";
  } else {
    c.text = "Let me work through this step by step.\n[" + std::to_string(c.token_count) +
             " reasoning tokens]\nThe final answer is \\boxed{" + label + "}.";
  }
  return c;
}

SimulatedBackend::SimulatedBackend(std::vector<SimProblemProfile> profiles) {
  for (auto& p : profiles) {
    validate(p);
    std::string id = p.problem_id;
    if (!profiles_.emplace(id, std::move(p)).second) {
      throw std::invalid_argument("duplicate profile for problem " + id);
    }
  }
}

const SimProblemProfile& SimulatedBackend::profile(const std::string& problem_id) const {
  auto it = profiles_.find(problem_id);
  if (it == profiles_.end()) {
    throw std::invalid_argument("no simulation profile for problem " + problem_id);
  }
  return it->second;
}

std::vector<Completion> SimulatedBackend::generate(const GenerationRequest& request) {
  validate(request);
  const auto& prof = profile(request.problem_id);
  std::vector<Completion> out;
  out.reserve(static_cast<size_t>(request.n));
  double round_latency = 0.0;
  for (int64_t i = 0; i < request.n; ++i) {
    const int64_t index = request.first_sample_index + i;
    const uint64_t key = sample_key(request.base_seed, request.problem_id, request.mode, index);
    out.push_back(
        simulate_sample(prof, request.mode, request.temperature, key, index, request.max_tokens));
    round_latency = std::max(round_latency, out.back().latency_s);
  }
  counters_.record_request(out, round_latency, 1);
  return out;
}

}  // namespace seersc
