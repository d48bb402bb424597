#include "seersc/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace seersc {

namespace {

void strip_logprobs(StrategyOutcome& outcome) {
  auto strip = [](Completion& c) { std::vector<double>().swap(c.token_logprobs); };
  if (outcome.system1) std::for_each(outcome.system1->completions.begin(), outcome.system1->completions.end(), strip);
  std::for_each(outcome.system2.begin(), outcome.system2.end(), strip);
  for (auto& p : outcome.pruned) strip(p.completion);
}

StrategyOutcome run_one(const Problem& problem, Backend& backend, const StrategyConfig& cfg,
                        uint64_t seed, const ExperimentOptions& options) {
  StrategyOutcome outcome;
  try {
    outcome = run_strategy(problem, backend, cfg, seed, options.extraction);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    outcome = StrategyOutcome{};
    outcome.problem_id = problem.id;
    outcome.failed = true;
    outcome.error = e.what();
  }
  if (!options.keep_logprobs) strip_logprobs(outcome);
  return outcome;
}

}  // namespace

uint64_t repeat_seed(uint64_t seed, int64_t repeat) { return seed + static_cast<uint64_t>(repeat); }

void aggregate(RunReport& report, const Dataset& dataset) {
  const size_t count = report.outcomes.size();
  if (count == 0) throw std::invalid_argument("report has no outcomes");
  int64_t correct = 0;
  int64_t failures = 0;
  double tokens = 0.0;
  double latency = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const auto& o = report.outcomes[i];
    if (o.failed) ++failures;
    if (o.final_answer && *o.final_answer == dataset.problems[i].gold_answer) ++correct;
    tokens += static_cast<double>(o.total_tokens) / 1000.0;
    latency += o.latency_s;
  }
  const auto n = static_cast<double>(count);
  report.accuracy = static_cast<double>(correct) / n;
  report.mean_tokens_thousands = tokens / n;
  report.mean_latency_s = latency / n;
  report.failures = failures;
}

std::vector<RunReport> run_experiment(const Dataset& dataset,
                                      const std::vector<StrategyConfig>& configs,
                                      Backend& backend, const ExperimentOptions& options) {
  if (dataset.problems.empty()) throw std::invalid_argument("dataset " + dataset.name + " is empty");
  if (configs.empty()) throw std::invalid_argument("no strategy configured");
  if (options.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  for (const auto& cfg : configs) validate(cfg);

  const int workers = std::max(1, options.workers);
  std::vector<RunReport> reports;
  for (const auto& cfg : configs) {
    for (int64_t r = 0; r < options.repeats; ++r) {
      RunReport report;
      report.config = cfg;
      report.repeat = r;
      report.seed = repeat_seed(options.seed, r);
      report.outcomes.resize(dataset.problems.size());

      const auto started = std::chrono::steady_clock::now();
      std::atomic<size_t> next{0};
      auto work = [&] {
        for (size_t i = next.fetch_add(1); i < dataset.problems.size(); i = next.fetch_add(1)) {
          report.outcomes[i] = run_one(dataset.problems[i], backend, cfg, report.seed, options);
        }
      };
      if (workers == 1) {
        work();
      } else {
        std::vector<std::jthread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            try {
              work();
            } catch (...) {
              errors[static_cast<size_t>(w)] = std::current_exception();
              next.store(dataset.problems.size());
            }
          });
        }
        pool.clear();
        for (auto& e : errors) {
          if (e) std::rethrow_exception(e);
        }
      }

      aggregate(report, dataset);
      if (backend.simulated_clock()) {
        report.wall_time_s = 0.0;
        for (const auto& o : report.outcomes) report.wall_time_s += o.latency_s;
      } else {
        report.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      }
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

}  // namespace seersc
