#include "seersc/experiment.h"

#include <gtest/gtest.h>

#include "scripted_backend.h"
#include "seersc/corpus.h"
#include "seersc/report.h"
#include "seersc/sim_backend.h"

namespace seersc {
namespace {

Dataset small_corpus(int64_t problems = 40) {
  CorpusSpec spec;
  spec.problems = problems;
  return generate_corpus(spec, 11);
}

std::vector<StrategyConfig> all_strategies() {
  std::vector<StrategyConfig> configs;
  for (auto kind : {StrategyKind::kCot, StrategyKind::kSc, StrategyKind::kAc, StrategyKind::kEsc,
                    StrategyKind::kSeerSc}) {
    StrategyConfig cfg;
    cfg.strategy = kind;
    configs.push_back(cfg);
  }
  return configs;
}

TEST(ExperimentTest, ReportInvariantsRecomputedFromTraces) {
  const auto ds = small_corpus();
  SimulatedBackend backend(profiles_in_order(ds));
  ExperimentOptions opts;
  opts.seed = 5;
  opts.repeats = 2;
  const auto reports = run_experiment(ds, all_strategies(), backend, opts);
  ASSERT_EQ(reports.size(), 10u);
  for (const auto& r : reports) {
    ASSERT_EQ(r.outcomes.size(), ds.problems.size());
    double correct = 0.0, tokens = 0.0, latency = 0.0, wall = 0.0;
    for (size_t i = 0; i < r.outcomes.size(); ++i) {
      const auto& o = r.outcomes[i];
      EXPECT_EQ(o.problem_id, ds.problems[i].id);
      if (o.final_answer == ds.problems[i].gold_answer) correct += 1.0;
      tokens += static_cast<double>(o.total_tokens) / 1000.0;
      latency += o.latency_s;
      wall += o.latency_s;
      for (const auto& c : o.system2) EXPECT_TRUE(c.token_logprobs.empty());
    }
    const double n = static_cast<double>(r.outcomes.size());
    EXPECT_DOUBLE_EQ(r.accuracy, correct / n);
    EXPECT_NEAR(r.mean_tokens_thousands, tokens / n, 1e-12);
    EXPECT_NEAR(r.mean_latency_s, latency / n, 1e-9);
    EXPECT_NEAR(r.wall_time_s, wall, 1e-6);
    EXPECT_EQ(r.seed, repeat_seed(5, r.repeat));
    EXPECT_EQ(r.failures, 0);
  }
}

TEST(ExperimentTest, SameSeedGivesIdenticalReports) {
  const auto ds = small_corpus();
  SimulatedBackend a(profiles_in_order(ds));
  SimulatedBackend b(profiles_in_order(ds));
  ExperimentOptions opts;
  opts.seed = 9;
  opts.repeats = 3;
  const auto ra = run_experiment(ds, all_strategies(), a, opts);
  const auto rb = run_experiment(ds, all_strategies(), b, opts);
  EXPECT_EQ(ra, rb);
  EXPECT_EQ(reports_to_csv(ra), reports_to_csv(rb));
}

TEST(ExperimentTest, WorkerCountDoesNotChangeResults) {
  const auto ds = small_corpus();
  SimulatedBackend backend(profiles_in_order(ds));
  ExperimentOptions serial;
  serial.seed = 2;
  ExperimentOptions parallel = serial;
  parallel.workers = 8;
  EXPECT_EQ(run_experiment(ds, all_strategies(), backend, serial),
            run_experiment(ds, all_strategies(), backend, parallel));
}

TEST(ExperimentTest, KeepLogprobsRetainsTokenData) {
  const auto ds = small_corpus(3);
  SimulatedBackend backend(profiles_in_order(ds));
  ExperimentOptions opts;
  opts.keep_logprobs = true;
  const auto reports = run_experiment(ds, {StrategyConfig{}}, backend, opts);
  EXPECT_FALSE(reports[0].outcomes[0].system2[0].token_logprobs.empty());
}

TEST(ExperimentTest, EmptyDatasetIsAnError) {
  Dataset empty;
  SimulatedBackend backend({});
  EXPECT_THROW(run_experiment(empty, {StrategyConfig{}}, backend, {}), std::invalid_argument);
}

TEST(ExperimentTest, BackendFailureMarksOutcomeFailed) {
  Dataset ds;
  ds.problems = {Problem{"ok", "", "a", {}}, Problem{"bad", "", "a", {}}};
  class FlakyBackend final : public Backend {
   public:
    std::vector<Completion> generate(const GenerationRequest& r) override {
      if (r.problem_id == "bad") throw GenerationError("boom", 4, true);
      return inner_.generate(r);
    }
    BackendStats stats() const override { return inner_.stats(); }
    bool simulated_clock() const override { return true; }

   private:
    testing::ScriptedBackend inner_{testing::constant_answer("a")};
  } backend;
  const auto reports = run_experiment(ds, {StrategyConfig{}}, backend, {});
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].failures, 1);
  EXPECT_TRUE(reports[0].outcomes[1].failed);
  EXPECT_NE(reports[0].outcomes[1].error.find("boom"), std::string::npos);
  EXPECT_DOUBLE_EQ(reports[0].accuracy, 0.5);
}

}  // namespace
}  // namespace seersc
