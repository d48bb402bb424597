#include "seersc/strategies.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scripted_backend.h"

namespace seersc {
namespace {

using testing::alternating_answers;
using testing::constant_answer;
using testing::ScriptedBackend;
using testing::ScriptedSample;

Problem problem() { return Problem{"p", "prompt", "a", {}}; }

StrategyConfig config(StrategyKind kind, int64_t n = 8) {
  StrategyConfig cfg;
  cfg.strategy = kind;
  cfg.n = n;
  return cfg;
}

Completion path(int64_t index, std::string answer, std::vector<double> token_probs) {
  Completion c;
  c.sample_index = index;
  c.answer = std::move(answer);
  for (double p : token_probs) c.token_logprobs.push_back(std::log(p));
  c.token_count = static_cast<int64_t>(c.token_logprobs.size());
  return c;
}

TEST(MajorityVoteTest, Examples) {
  EXPECT_EQ(majority_vote({"x", "y", "x"}), "x");
  EXPECT_EQ(majority_vote({"x", "y"}), "x");
  EXPECT_EQ(majority_vote({"y", "x", "x", "y"}), "y");
  EXPECT_EQ(majority_vote({}), std::nullopt);
}

TEST(WeightedVoteTest, SummedTailWeights) {
  EXPECT_EQ(weighted_vote({path(0, "x", {0.9}), path(1, "x", {0.9}), path(2, "y", {0.95})}, 1), "x");
  EXPECT_EQ(weighted_vote({path(0, "y", {0.9}), path(1, "x", {0.3})}, 1), "y");
  EXPECT_EQ(weighted_vote({path(0, "y", {0.3}), path(1, "x", {0.9})}, 1), "x");
  EXPECT_EQ(weighted_vote({}, 1), std::nullopt);
}

TEST(WeightedVoteTest, OnlyTheTailWindowCounts) {
  // "y" has a weak start but a strong tail.
  EXPECT_EQ(weighted_vote({path(0, "x", {0.9, 0.5}), path(1, "y", {0.1, 0.8})}, 1), "y");
}

TEST(WeightedVoteTest, EqualTailsReduceToMajority) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Completion> paths;
    std::vector<std::string> answers;
    const int n = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i) {
      const std::string a(1, static_cast<char>('a' + rng() % 4));
      paths.push_back(path(i, a, {0.7, 0.7}));
      answers.push_back(a);
    }
    EXPECT_EQ(weighted_vote(paths, 2), majority_vote(answers));
  }
}

TEST(PrunePathsTest, ZeroThresholdIsIdentity) {
  std::vector<Completion> paths{path(0, "x", {0.01, 0.5}), path(1, "y", {0.9})};
  const auto r = prune_paths(paths, 1, 0.0);
  EXPECT_EQ(r.kept, paths);
  EXPECT_TRUE(r.pruned.empty());
}

TEST(PrunePathsTest, CountsTokensThroughFirstViolatingWindow) {
  // Windows of two tokens scoring 0.9, 0.4, 0.8.
  std::vector<Completion> paths{path(0, "x", {0.9, 0.9, 0.4, 0.4, 0.8, 0.8}),
                                path(1, "y", {0.9, 0.9, 0.9, 0.9, 0.9, 0.9})};
  const auto r = prune_paths(paths, 2, 0.5);
  ASSERT_EQ(r.pruned.size(), 1u);
  EXPECT_EQ(r.pruned[0].completion.answer, "x");
  EXPECT_EQ(r.pruned[0].counted_tokens, 4);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].token_count, 6);
}

TEST(PrunePathsTest, KeepsBestPathWhenAllWouldBePruned) {
  std::vector<Completion> paths{path(0, "x", {0.1}), path(1, "y", {0.3}), path(2, "z", {0.2})};
  const auto r = prune_paths(paths, 1, 0.5);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].answer, "y");
  EXPECT_EQ(r.pruned.size(), 2u);
}

TEST(PrunePathsTest, PathsWithoutLogprobsAreKept) {
  Completion c;
  c.answer = "x";
  c.token_count = 50;
  c.logprobs_missing = true;
  const auto r = prune_paths({c}, 4, 0.9);
  EXPECT_EQ(r.kept.size(), 1u);
}

TEST(StrategyConfigTest, ParseAndValidate) {
  for (auto k : {StrategyKind::kCot, StrategyKind::kSc, StrategyKind::kAc, StrategyKind::kEsc,
                 StrategyKind::kSeerSc}) {
    EXPECT_EQ(parse_strategy(to_string(k)), k);
  }
  EXPECT_THROW(parse_strategy("nope"), std::invalid_argument);
  EXPECT_THROW(validate(config(StrategyKind::kSc, 0)), std::invalid_argument);
  auto esc = config(StrategyKind::kEsc, 4);
  EXPECT_THROW(validate(esc), std::invalid_argument);
  auto seer = config(StrategyKind::kSeerSc);
  seer.seer_m = 1;
  EXPECT_THROW(validate(seer), std::invalid_argument);
}

TEST(CotTest, OneSampleOneRound) {
  ScriptedBackend backend([](GenerationMode, int64_t) { return ScriptedSample{"a", 123, 4.5}; });
  const auto o = run_cot(problem(), backend, config(StrategyKind::kCot), 1);
  EXPECT_EQ(o.final_answer, "a");
  EXPECT_EQ(o.rounds.size(), 1u);
  EXPECT_EQ(o.latency_s, 4.5);
  EXPECT_EQ(o.total_tokens, 123);
}

TEST(CotTest, UnextractableAnswerIsAbsent) {
  ScriptedBackend backend([](GenerationMode, int64_t) { return ScriptedSample{std::nullopt}; });
  EXPECT_EQ(run_cot(problem(), backend, config(StrategyKind::kCot), 1).final_answer, std::nullopt);
}

TEST(ScTest, AllSameAnswerOneRound) {
  ScriptedBackend backend(constant_answer("a"));
  const auto o = run_sc(problem(), backend, config(StrategyKind::kSc), 1);
  EXPECT_EQ(o.final_answer, "a");
  EXPECT_EQ(o.rounds.size(), 1u);
  EXPECT_EQ(o.system2.size(), 8u);
  EXPECT_EQ(o.total_tokens, 80);
}

TEST(ScTest, LatencyIsSlowestSample) {
  ScriptedBackend backend([](GenerationMode, int64_t i) {
    return ScriptedSample{"a", 10, static_cast<double>(i + 2)};
  });
  EXPECT_EQ(run_sc(problem(), backend, config(StrategyKind::kSc), 1).latency_s, 9.0);
}

TEST(ScTest, SingleSampleMatchesCot) {
  ScriptedBackend a([](GenerationMode, int64_t) { return ScriptedSample{"q", 7, 3.0}; });
  ScriptedBackend b([](GenerationMode, int64_t) { return ScriptedSample{"q", 7, 3.0}; });
  EXPECT_EQ(run_sc(problem(), a, config(StrategyKind::kSc, 1), 5),
            run_cot(problem(), b, config(StrategyKind::kCot, 1), 5));
}

TEST(AcTest, StopsAtFloorOnIdenticalStream) {
  ScriptedBackend backend(constant_answer("a"));
  const auto o = run_ac(problem(), backend, config(StrategyKind::kAc), 1);
  EXPECT_EQ(o.rounds.size(), 3u);
  EXPECT_EQ(o.system2.size(), 3u);
  EXPECT_EQ(o.final_answer, "a");
  EXPECT_EQ(o.latency_s, 3.0);
}

TEST(AcTest, AlternatingStreamUsesWholeBudget) {
  ScriptedBackend backend(alternating_answers());
  const auto o = run_ac(problem(), backend, config(StrategyKind::kAc), 1);
  EXPECT_EQ(o.rounds.size(), 8u);
  EXPECT_EQ(o.final_answer, "a");
}

TEST(AcTest, SingleSampleBudget) {
  ScriptedBackend backend(alternating_answers());
  const auto o = run_ac(problem(), backend, config(StrategyKind::kAc, 1), 1);
  EXPECT_EQ(o.rounds.size(), 1u);
  EXPECT_EQ(o.final_answer, "a");
}

TEST(EscTest, ConvergedFirstWindowStops) {
  ScriptedBackend backend(constant_answer("a"));
  const auto o = run_esc(problem(), backend, config(StrategyKind::kEsc), 1);
  EXPECT_EQ(o.rounds.size(), 1u);
  EXPECT_EQ(o.system2.size(), 5u);
}

TEST(EscTest, RaggedFinalRound) {
  ScriptedBackend backend(alternating_answers());
  const auto o = run_esc(problem(), backend, config(StrategyKind::kEsc), 1);
  ASSERT_EQ(o.rounds.size(), 2u);
  EXPECT_EQ(o.rounds[0].sample_indices.size(), 5u);
  EXPECT_EQ(o.rounds[1].sample_indices.size(), 3u);
  EXPECT_EQ(o.rounds[1].sample_indices.front(), 5);
}

TEST(EscTest, WindowEqualToBudgetIsOneRound) {
  ScriptedBackend backend(alternating_answers());
  auto cfg = config(StrategyKind::kEsc);
  cfg.esc_window = 8;
  EXPECT_EQ(run_esc(problem(), backend, cfg, 1).rounds.size(), 1u);
}

TEST(SeerScTest, UnanimousSystemOneGivesOnePath) {
  ScriptedBackend backend([](GenerationMode mode, int64_t) {
    return mode == GenerationMode::kDirect ? ScriptedSample{"a", 10, 0.2}
                                           : ScriptedSample{"a", 3000, 30.0};
  });
  const auto o = run_seersc(problem(), backend, config(StrategyKind::kSeerSc), 1);
  ASSERT_TRUE(o.system1);
  EXPECT_EQ(o.system1->entropy.entropy_nats, 0.0);
  EXPECT_EQ(o.system1->budget.samples, 1);
  EXPECT_EQ(o.system2.size(), 1u);
  EXPECT_EQ(o.final_answer, "a");
  EXPECT_EQ(o.total_tokens, 64 * 10 + 3000);
  EXPECT_NEAR(o.latency_s, 30.2, 1e-12);
  ASSERT_EQ(o.rounds.size(), 2u);
  EXPECT_EQ(o.rounds[0].phase, "system1");
  EXPECT_EQ(o.rounds[1].phase, "system2");
}

TEST(SeerScTest, MaximalEntropyGivesFullBudget) {
  ScriptedBackend backend([](GenerationMode mode, int64_t i) {
    return mode == GenerationMode::kDirect ? ScriptedSample{std::to_string(i)}
                                           : ScriptedSample{"a"};
  });
  const auto o = run_seersc(problem(), backend, config(StrategyKind::kSeerSc), 1);
  EXPECT_NEAR(o.system1->entropy.entropy_nats, std::log(64.0), 1e-12);
  EXPECT_EQ(o.system1->budget.tier, BudgetTier::kFull);
  EXPECT_EQ(o.system2.size(), 8u);
}

TEST(SeerScTest, MiddleEntropyGivesHalfBudget) {
  // Three near-equal labels: ln 3 lies between the thresholds for M = 64.
  ScriptedBackend backend([](GenerationMode mode, int64_t i) {
    return mode == GenerationMode::kDirect ? ScriptedSample{std::to_string(i % 3)}
                                           : ScriptedSample{"a"};
  });
  const auto o = run_seersc(problem(), backend, config(StrategyKind::kSeerSc), 1);
  EXPECT_EQ(o.system1->budget.tier, BudgetTier::kHalf);
  EXPECT_EQ(o.system2.size(), 4u);
}

TEST(SeerScTest, EntropyAtUpperThresholdGivesFullBudget) {
  // Four equal labels give ln 4, exactly the upper threshold for M = 64.
  ScriptedBackend backend([](GenerationMode mode, int64_t i) {
    return mode == GenerationMode::kDirect ? ScriptedSample{std::to_string(i % 4)}
                                           : ScriptedSample{"a"};
  });
  const auto o = run_seersc(problem(), backend, config(StrategyKind::kSeerSc), 1);
  EXPECT_EQ(o.system1->budget.tier, BudgetTier::kFull);
}

TEST(SeerScTest, NoSystemOneAnswersFallsBackToFullBudget) {
  ScriptedBackend backend([](GenerationMode mode, int64_t) {
    return mode == GenerationMode::kDirect ? ScriptedSample{std::nullopt} : ScriptedSample{"a"};
  });
  const auto o = run_seersc(problem(), backend, config(StrategyKind::kSeerSc), 1);
  EXPECT_TRUE(o.system1->fallback);
  EXPECT_EQ(o.system2.size(), 8u);
}

TEST(SeerScTest, RequestsUseConfiguredTemperaturesAndModes) {
  ScriptedBackend backend(constant_answer("a"));
  auto cfg = config(StrategyKind::kSeerSc);
  cfg.system1_temperature = 0.25;
  run_seersc(problem(), backend, cfg, 9);
  const auto reqs = backend.requests();
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0].mode, GenerationMode::kDirect);
  EXPECT_EQ(reqs[0].n, 64);
  EXPECT_EQ(reqs[0].temperature, 0.25);
  EXPECT_EQ(reqs[0].max_tokens, cfg.system1_max_tokens);
  EXPECT_EQ(reqs[1].mode, GenerationMode::kReasoning);
  EXPECT_EQ(reqs[1].temperature, 1.0);
  EXPECT_EQ(reqs[1].base_seed, 9u);
}

TEST(SeerScTest, PruningCountsPartialTokens) {
  ScriptedBackend backend([](GenerationMode mode, int64_t i) {
    if (mode == GenerationMode::kDirect) return ScriptedSample{std::to_string(i)};
    return i < 6 ? ScriptedSample{"a", 100, 1.0, 0.9} : ScriptedSample{"b", 100, 1.0, 0.2};
  });
  auto cfg = config(StrategyKind::kSeerSc);
  cfg.pruning = PruningConfig{10, 0.5};
  const auto o = run_seersc(problem(), backend, cfg, 1);
  EXPECT_EQ(o.pruned.size(), 2u);
  EXPECT_EQ(o.system2.size(), 6u);
  EXPECT_EQ(o.total_tokens, 64 * 10 + 6 * 100 + 2 * 10);
}

TEST(StrategyInvariantsTest, RoundsAccountForLatencyAndTokens) {
  std::mt19937 rng(3);
  for (auto kind : {StrategyKind::kCot, StrategyKind::kSc, StrategyKind::kAc, StrategyKind::kEsc,
                    StrategyKind::kSeerSc}) {
    for (int trial = 0; trial < 20; ++trial) {
      const uint32_t salt = rng();
      ScriptedBackend backend([salt](GenerationMode mode, int64_t i) {
        std::mt19937 local(salt ^ static_cast<uint32_t>(i * 7 + (mode == GenerationMode::kDirect)));
        return ScriptedSample{std::to_string(local() % 3), 1 + static_cast<int64_t>(local() % 50),
                              static_cast<double>(local() % 1000) / 100.0};
      });
      const auto o = run_strategy(problem(), backend, config(kind), salt);
      double latency = 0.0;
      for (const auto& r : o.rounds) latency += r.round_latency_s;
      EXPECT_NEAR(o.latency_s, latency, 1e-12);
      EXPECT_EQ(o.total_tokens, backend.stats().tokens);
      EXPECT_LE(static_cast<int64_t>(o.system2.size()), 8);
      EXPECT_GE(o.system2.size(), 1u);
    }
  }
}

}  // namespace
}  // namespace seersc
