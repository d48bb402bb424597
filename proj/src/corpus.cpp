#include "seersc/corpus.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "seersc/rng.h"

namespace seersc {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("corpus spec: ") + what);
}

std::vector<double> dirichlet(SplitMix64& rng, size_t k, double alpha) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> out(k);
  for (auto& x : out) x = gamma(rng);
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& x : out) x /= total;
  return out;
}

double uniform_between(SplitMix64& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Distinct integer labels, all different from `taken`.
std::vector<std::string> fresh_labels(SplitMix64& rng, size_t k, std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (out.size() < k) {
    std::string label = std::to_string(rng.uniform_int(0, 999));
    if (taken.insert(label).second) out.push_back(std::move(label));
  }
  return out;
}

// Normalizes so the masses sum to 1 exactly up to rounding.
std::map<std::string, double> make_dist(const std::vector<std::string>& labels,
                                        std::vector<double> mass) {
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  std::map<std::string, double> dist;
  for (size_t i = 0; i < labels.size(); ++i) dist[labels[i]] = mass[i] / total;
  return dist;
}

}  // namespace

void validate(const CorpusSpec& s) {
  check(s.problems >= 1, "problems must be >= 1");
  check(s.easy_fraction >= 0.0 && s.easy_fraction <= 1.0, "easy_fraction must lie in [0, 1]");
  check(0.0 < s.easy_direct_top_min && s.easy_direct_top_min <= s.easy_direct_top_max &&
            s.easy_direct_top_max < 1.0,
        "easy direct top mass must satisfy 0 < min <= max < 1");
  check(1 <= s.easy_distractors_min && s.easy_distractors_min <= s.easy_distractors_max,
        "easy distractor count range");
  check(0.0 < s.easy_reasoning_gold_min && s.easy_reasoning_gold_min <= s.easy_reasoning_gold_max &&
            s.easy_reasoning_gold_max < 1.0,
        "easy reasoning gold mass must satisfy 0 < min <= max < 1");
  check(2 <= s.hard_direct_labels_min && s.hard_direct_labels_min <= s.hard_direct_labels_max,
        "hard direct label count range");
  check(s.hard_direct_concentration > 0.0 && s.hard_wrong_concentration > 0.0,
        "Dirichlet concentrations must be positive");
  check(0.0 < s.hard_reasoning_gold_min && s.hard_reasoning_gold_min <= s.hard_reasoning_gold_max &&
            s.hard_reasoning_gold_max < 1.0,
        "hard reasoning gold mass must satisfy 0 < min <= max < 1");
  check(s.trap_fraction >= 0.0 && s.easy_fraction + s.trap_fraction <= 1.0,
        "easy_fraction + trap_fraction must lie in [0, 1]");
  check(0.0 < s.trap_direct_wrong_share && s.trap_direct_wrong_share < 1.0,
        "trap_direct_wrong_share must lie in (0, 1)");
  check(0.0 < s.trap_wrong_confidence && s.trap_wrong_confidence <= 1.0 &&
            0.0 < s.trap_gold_confidence && s.trap_gold_confidence <= 1.0,
        "trap confidences must lie in (0, 1]");
  check(1 <= s.hard_wrong_labels_min && s.hard_wrong_labels_min <= s.hard_wrong_labels_max,
        "hard wrong label count range");
  check(1 <= s.direct_tokens.min && s.direct_tokens.min <= s.direct_tokens.max, "direct token range");
  check(1 <= s.reasoning_tokens.min && s.reasoning_tokens.min <= s.reasoning_tokens.max,
        "reasoning token range");
  check(s.tokens_per_second > 0.0 && s.temperature_sharpness > 0.0, "rates must be positive");
  check(s.direct_reference_temperature > 0.0 && s.reasoning_reference_temperature > 0.0,
        "reference temperatures must be positive");
  check(s.logprob_jitter >= 0.0, "logprob_jitter must be nonnegative");
}

Dataset generate_corpus(const CorpusSpec& spec, uint64_t seed) {
  validate(spec);
  Dataset ds;
  ds.name = spec.name;
  ds.sim_profiles.emplace();
  const auto easy_count =
      static_cast<int64_t>(std::llround(spec.easy_fraction * static_cast<double>(spec.problems)));
  const auto trap_count =
      static_cast<int64_t>(std::llround(spec.trap_fraction * static_cast<double>(spec.problems)));

  for (int64_t i = 0; i < spec.problems; ++i) {
    SplitMix64 rng(combine_keys(mix64(seed), static_cast<uint64_t>(i)));
    const bool easy = i < easy_count;
    const bool trap = !easy && i >= spec.problems - trap_count;
    const char* difficulty = easy ? "easy" : trap ? "trap" : "hard";
    const std::string id = fmt::format("{}-{:04d}", spec.name, i);

    std::set<std::string> taken;
    const std::string gold = fresh_labels(rng, 1, taken).front();

    SimProblemProfile prof;
    prof.problem_id = id;
    prof.gold = gold;
    prof.direct_token_range = spec.direct_tokens;
    prof.reasoning_token_range = spec.reasoning_tokens;
    prof.tokens_per_second = spec.tokens_per_second;
    prof.temperature_sharpness = spec.temperature_sharpness;
    prof.direct_reference_temperature = spec.direct_reference_temperature;
    prof.reasoning_reference_temperature = spec.reasoning_reference_temperature;
    prof.logprob_jitter = spec.logprob_jitter;

    if (easy) {
      const auto k = static_cast<size_t>(
          rng.uniform_int(spec.easy_distractors_min, spec.easy_distractors_max));
      const auto wrong = fresh_labels(rng, k, taken);
      const double top = uniform_between(rng, spec.easy_direct_top_min, spec.easy_direct_top_max);
      std::vector<std::string> labels{gold};
      labels.insert(labels.end(), wrong.begin(), wrong.end());
      std::vector<double> mass{top};
      for (double share : dirichlet(rng, k, 1.0)) mass.push_back((1.0 - top) * share);
      prof.direct_dist = make_dist(labels, mass);

      const double g = uniform_between(rng, spec.easy_reasoning_gold_min, spec.easy_reasoning_gold_max);
      std::vector<double> rmass{g};
      for (double share : dirichlet(rng, k, 1.0)) rmass.push_back((1.0 - g) * share);
      prof.reasoning_dist = make_dist(labels, rmass);
    } else {
      const auto k = static_cast<size_t>(
          rng.uniform_int(spec.hard_direct_labels_min, spec.hard_direct_labels_max));
      const auto wrong_direct = fresh_labels(rng, k - 1, taken);
      std::vector<std::string> labels{gold};
      labels.insert(labels.end(), wrong_direct.begin(), wrong_direct.end());
      if (trap) {
        prof.direct_dist = make_dist({gold, wrong_direct.front()},
                                     {1.0 - spec.trap_direct_wrong_share, spec.trap_direct_wrong_share});
        prof.direct_confidence[gold] = spec.trap_gold_confidence;
        prof.direct_confidence[wrong_direct.front()] = spec.trap_wrong_confidence;
      } else {
        prof.direct_dist = make_dist(labels, dirichlet(rng, k, spec.hard_direct_concentration));
      }

      const auto w = static_cast<size_t>(
          rng.uniform_int(spec.hard_wrong_labels_min, spec.hard_wrong_labels_max));
      std::vector<std::string> rlabels{gold};
      for (size_t j = 0; j < w; ++j) {
        rlabels.push_back(j < wrong_direct.size() ? wrong_direct[j] : fresh_labels(rng, 1, taken).front());
      }
      const double g = uniform_between(rng, spec.hard_reasoning_gold_min, spec.hard_reasoning_gold_max);
      std::vector<double> rmass{g};
      for (double share : dirichlet(rng, w, spec.hard_wrong_concentration)) rmass.push_back((1.0 - g) * share);
      prof.reasoning_dist = make_dist(rlabels, rmass);
    }

    Problem p;
    p.id = id;
    p.prompt = fmt::format("Synthetic problem {} ({}).", id, difficulty);
    p.gold_answer = gold;
    p.metadata["difficulty"] = difficulty;
    ds.problems.push_back(std::move(p));
    ds.sim_profiles->emplace(id, std::move(prof));
  }
  return ds;
}

}  // namespace seersc
