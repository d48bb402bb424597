#include "seersc/ablation.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "seersc/report.h"

namespace seersc {

AblationKind parse_ablation(std::string_view text) {
  if (text == "temperature") return AblationKind::kTemperature;
  if (text == "m" || text == "M" || text == "sample-size") return AblationKind::kSampleSize;
  if (text == "weighting") return AblationKind::kWeighting;
  throw std::invalid_argument("unknown ablation: " + std::string(text));
}

std::string_view to_string(AblationKind kind) {
  switch (kind) {
    case AblationKind::kTemperature:
      return "system1_temperature";
    case AblationKind::kSampleSize:
      return "seer_m";
    case AblationKind::kWeighting:
      return "weighting";
  }
  return "weighting";
}

EntropySummary summarize_entropy(const std::vector<RunReport>& reports) {
  std::vector<double> values;
  EntropySummary s;
  for (const auto& r : reports) {
    for (const auto& o : r.outcomes) {
      if (!o.system1) continue;
      values.push_back(o.system1->entropy.entropy_nats);
      switch (o.system1->budget.tier) {
        case BudgetTier::kSingle:
          ++s.single;
          break;
        case BudgetTier::kHalf:
          ++s.half;
          break;
        case BudgetTier::kFull:
          ++s.full;
          break;
      }
    }
  }
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / n);
  s.min = values.front();
  s.max = values.back();
  const size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

std::vector<double> system1_entropies(const Dataset& dataset, Backend& backend,
                                      const StrategyConfig& cfg, uint64_t seed,
                                      const ExtractionRule& rule) {
  std::vector<double> out;
  out.reserve(dataset.problems.size());
  for (const auto& problem : dataset.problems) {
    GenerationRequest req;
    req.problem_id = problem.id;
    req.prompt = problem.prompt;
    req.mode = GenerationMode::kDirect;
    req.n = cfg.seer_m;
    req.temperature = cfg.system1_temperature;
    req.max_tokens = cfg.system1_max_tokens;
    req.base_seed = seed;
    auto batch = backend.generate(req);
    for (auto& c : batch) c.answer = extract_answer(c.text, rule);
    const auto categories = categorize(batch);
    out.push_back(categories.empty() ? std::log(static_cast<double>(cfg.seer_m))
                                     : answer_entropy(batch, categories, cfg.weighting).entropy_nats);
  }
  return out;
}

double entropy_seed_variance(const Dataset& dataset, Backend& backend, const StrategyConfig& cfg,
                             uint64_t seed, int64_t seeds, const ExtractionRule& rule) {
  if (seeds < 2) throw std::invalid_argument("entropy variance needs at least two seeds");
  const size_t n = dataset.problems.size();
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
  for (int64_t s = 0; s < seeds; ++s) {
    const auto e = system1_entropies(dataset, backend, cfg, seed + static_cast<uint64_t>(s), rule);
    for (size_t i = 0; i < n; ++i) {
      sum[i] += e[i];
      sum_sq[i] += e[i] * e[i];
    }
  }
  const auto k = static_cast<double>(seeds);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / k;
    total += std::max(0.0, (sum_sq[i] - k * mean * mean) / (k - 1.0));
  }
  return total / static_cast<double>(n);
}

std::vector<AblationRow> run_ablation(const Dataset& dataset, Backend& backend,
                                      const StrategyConfig& base, AblationKind kind,
                                      const std::vector<std::string>& values,
                                      const AblationOptions& options) {
  if (values.empty()) throw std::invalid_argument("ablation needs at least one value");
  std::vector<AblationRow> rows;
  for (const auto& value : values) {
    StrategyConfig cfg = base;
    cfg.strategy = StrategyKind::kSeerSc;
    switch (kind) {
      case AblationKind::kTemperature:
        cfg.system1_temperature = std::stod(value);
        break;
      case AblationKind::kSampleSize:
        cfg.seer_m = std::stoll(value);
        break;
      case AblationKind::kWeighting:
        cfg.weighting = parse_entropy_weighting(value);
        break;
    }
    const auto reports = run_experiment(dataset, {cfg}, backend, options.experiment);

    AblationRow row;
    row.knob = std::string(to_string(kind));
    row.value = value;
    row.entropy = summarize_entropy(reports);
    for (const auto& r : reports) {
      row.accuracy += r.accuracy;
      row.mean_latency_s += r.mean_latency_s;
      row.mean_tokens_thousands += r.mean_tokens_thousands;
    }
    const auto k = static_cast<double>(reports.size());
    row.accuracy /= k;
    row.mean_latency_s /= k;
    row.mean_tokens_thousands /= k;
    if (options.variance_seeds >= 2) {
      row.entropy_seed_variance = entropy_seed_variance(dataset, backend, cfg, options.experiment.seed,
                                                        options.variance_seeds,
                                                        options.experiment.extraction);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ablation_to_csv(const std::vector<AblationRow>& rows) {
  std::string out =
      "knob,value,entropy_mean,entropy_stdev,entropy_min,entropy_median,entropy_max,tier_single,"
      "tier_half,tier_full,entropy_seed_variance,accuracy,mean_tokens_thousands,mean_latency_s\r\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\r\n", r.knob, r.value,
                       format_double(r.entropy.mean), format_double(r.entropy.stdev),
                       format_double(r.entropy.min), format_double(r.entropy.median),
                       format_double(r.entropy.max), r.entropy.single, r.entropy.half, r.entropy.full,
                       format_double(r.entropy_seed_variance), format_double(r.accuracy),
                       format_double(r.mean_tokens_thousands), format_double(r.mean_latency_s));
  }
  return out;
}

std::string format_ablation_table(const std::vector<AblationRow>& rows) {
  std::string out = fmt::format("{:<20} {:>10} {:>8} {:>8} {:>8} {:>15} {:>10} {:>8} {:>12}\n",
                                "knob", "value", "H mean", "H sd", "H med", "tiers 1/h/N",
                                "H seed var", "acc (%)", "latency (s)");
  for (const auto& r : rows) {
    out += fmt::format("{:<20} {:>10} {:>8.4f} {:>8.4f} {:>8.4f} {:>15} {:>10.5f} {:>8.2f} {:>12.2f}\n",
                       r.knob, r.value, r.entropy.mean, r.entropy.stdev, r.entropy.median,
                       fmt::format("{}/{}/{}", r.entropy.single, r.entropy.half, r.entropy.full),
                       r.entropy_seed_variance, 100.0 * r.accuracy, r.mean_latency_s);
  }
  return out;
}

}  // namespace seersc
