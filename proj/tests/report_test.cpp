#include "seersc/report.h"

#include <gtest/gtest.h>

#include <sstream>

#include "seersc/corpus.h"
#include "seersc/sim_backend.h"
#include "temp_dir.h"

namespace seersc {
namespace {

using testing::read_file;
using testing::TempDir;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<RunReport> run(const std::vector<int64_t>& budgets, bool keep_logprobs = false) {
  CorpusSpec spec;
  spec.problems = 12;
  const auto ds = generate_corpus(spec, 4);
  SimulatedBackend backend(profiles_in_order(ds));
  std::vector<StrategyConfig> configs;
  for (auto kind : {StrategyKind::kSc, StrategyKind::kSeerSc}) {
    for (int64_t n : budgets) {
      StrategyConfig cfg;
      cfg.strategy = kind;
      cfg.n = n;
      configs.push_back(cfg);
    }
  }
  ExperimentOptions opts;
  opts.seed = 1;
  opts.keep_logprobs = keep_logprobs;
  return run_experiment(ds, configs, backend, opts);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(30.0), "30");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(CsvReportTest, HeaderAndOneRow) {
  auto reports = run({8});
  reports.resize(1);
  const auto lines = split_lines(reports_to_csv(reports));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "strategy,N,seed,accuracy,mean_tokens_thousands,mean_latency_s,wall_time_s");
  EXPECT_EQ(lines[1].rfind("sc,8,1,", 0), 0u);
}

TEST(JsonReportTest, RoundTripPreservesTraces) {
  TempDir dir;
  const auto reports = run({4}, true);
  emit_report(reports, ReportFormat::kJson, dir.file("r.json"));
  EXPECT_EQ(load_json_report(dir.file("r.json")), reports);
}

TEST(LatencyScalingTest, OnePointPerBudget) {
  const auto lines = split_lines(latency_scaling_csv(run({1, 2, 4, 8})));
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "strategy,budget_knob,accuracy,mean_latency_s");
  int sc = 0, seer = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].rfind("sc,", 0) == 0) ++sc;
    if (lines[i].rfind("seersc,", 0) == 0) ++seer;
  }
  EXPECT_EQ(sc, 4);
  EXPECT_EQ(seer, 4);
}

TEST(EmitReportTest, ErrorsAndCsvFile) {
  TempDir dir;
  EXPECT_THROW(emit_report({}, ReportFormat::kCsv, dir.file("x.csv")), std::invalid_argument);
  const auto reports = run({8});
  EXPECT_THROW(emit_report(reports, ReportFormat::kCsv, "/nonexistent/dir/x.csv"), std::runtime_error);
  emit_report(reports, ReportFormat::kCsv, dir.file("x.csv"));
  EXPECT_EQ(read_file(dir.file("x.csv")), reports_to_csv(reports));
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::kCsv);
  EXPECT_THROW(parse_report_format("xml"), std::invalid_argument);
}

TEST(FormatTableTest, ListsEveryStrategy) {
  const auto table = format_table(run({8}));
  EXPECT_NE(table.find("seersc"), std::string::npos);
  EXPECT_NE(table.find("sc"), std::string::npos);
}

}  // namespace
}  // namespace seersc
