#include "cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "seersc/ablation.h"
#include "seersc/corpus.h"
#include "seersc/http_backend.h"
#include "seersc/report.h"
#include "seersc/sim_backend.h"

namespace seersc {

namespace {

struct CommonOptions {
  std::string dataset;
  std::string profiles;
  std::string backend = "sim";
  uint64_t seed = 0;
  int64_t repeats = 1;
  int workers = 1;
  bool keep_logprobs = false;
  std::string out_csv;
  std::string out_json;
  HttpEndpointConfig http;
};

struct StrategyFlags {
  StrategyConfig cfg;
  std::string vote = "majority";
  std::string weighting = "confidence";
  std::optional<double> prune_threshold;
  int64_t prune_window = kDefaultTraceWindow;

  StrategyConfig resolve() const {
    StrategyConfig out = cfg;
    out.vote = parse_vote(vote);
    out.weighting = parse_entropy_weighting(weighting);
    if (prune_threshold) out.pruning = PruningConfig{prune_window, *prune_threshold};
    return out;
  }
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--dataset", o.dataset, "Problems, one JSON record per line")->required();
  app->add_option("--profiles", o.profiles, "Simulation profiles, one JSON record per line");
  app->add_option("--backend", o.backend, "Generation backend")
      ->check(CLI::IsMember({"sim", "http"}))
      ->capture_default_str();
  app->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  app->add_option("--repeats", o.repeats, "Repeats per strategy")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--workers", o.workers, "Problems run concurrently")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_flag("--keep-logprobs", o.keep_logprobs, "Keep token logprobs in JSON traces");
  app->add_option("--out-csv", o.out_csv, "Summary CSV path");
  app->add_option("--out-json", o.out_json, "Full JSON trace path");

  auto& h = o.http;
  app->add_option("--endpoint", h.base_url, "OpenAI-compatible base URL")->capture_default_str();
  app->add_option("--endpoint-path", h.path, "Chat-completions path")->capture_default_str();
  app->add_option("--model", h.model, "Served model name");
  app->add_option("--api-key-env", h.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  app->add_option("--timeout", h.timeout_s, "Per-call timeout in seconds")->capture_default_str();
  app->add_option("--max-in-flight", h.max_in_flight, "Concurrent HTTP calls")->capture_default_str();
  app->add_option("--max-attempts", h.max_attempts, "Attempts per call, including the first")
      ->capture_default_str();
  app->add_option("--backoff", h.backoff_initial_s, "Initial retry backoff in seconds")->capture_default_str();
  app->add_option("--samples-per-call", h.samples_per_call, "Completions per HTTP call (0 = all)")
      ->capture_default_str();
  app->add_flag("--send-seed", h.send_seed, "Forward per-call seeds to the server");
}

void add_strategy_flags(CLI::App* app, StrategyFlags& f) {
  auto& c = f.cfg;
  app->add_option("-N,--n", c.n, "Sampling budget N")->capture_default_str();
  app->add_option("--ac-threshold", c.ac_threshold, "AC stopping frequency")->capture_default_str();
  app->add_option("--ac-min-samples", c.ac_min_samples, "AC samples before the first check")
      ->capture_default_str();
  app->add_option("--esc-window", c.esc_window, "ESC window W")->capture_default_str();
  app->add_option("-M,--seer-m", c.seer_m, "System-1 sample count M")->capture_default_str();
  app->add_option("--system1-temperature", c.system1_temperature)->capture_default_str();
  app->add_option("--system2-temperature", c.system2_temperature)->capture_default_str();
  app->add_option("--system1-max-tokens", c.system1_max_tokens)->capture_default_str();
  app->add_option("--max-tokens", c.max_tokens, "Reasoning max tokens")->capture_default_str();
  app->add_option("--vote", f.vote, "Final vote")
      ->check(CLI::IsMember({"majority", "tail_weighted"}))
      ->capture_default_str();
  app->add_option("--vote-window", c.vote_window, "Tail window for weighted voting")->capture_default_str();
  app->add_option("--prune-threshold", f.prune_threshold, "Prune paths whose min window confidence is below this");
  app->add_option("--prune-window", f.prune_window, "Window for path pruning")->capture_default_str();
  app->add_option("--tau1-fraction", c.thresholds.tau1_fraction)->capture_default_str();
  app->add_option("--tau2-fraction", c.thresholds.tau2_fraction)->capture_default_str();
  app->add_option("--weighting", f.weighting, "System-1 entropy estimator")
      ->check(CLI::IsMember({"confidence", "shannon"}))
      ->capture_default_str();
}

struct Setup {
  Dataset dataset;
  std::unique_ptr<Backend> backend;
};

Setup prepare(const CommonOptions& o) {
  Setup s;
  s.dataset = load_dataset(o.dataset);
  if (o.backend == "sim") {
    if (o.profiles.empty()) throw std::invalid_argument("--backend sim requires --profiles");
    attach_profiles(s.dataset, load_profiles(o.profiles));
    s.backend = std::make_unique<SimulatedBackend>(profiles_in_order(s.dataset));
  } else {
    if (o.http.model.empty()) throw std::invalid_argument("--backend http requires --model");
    s.backend = std::make_unique<HttpBackend>(o.http);
  }
  return s;
}

ExperimentOptions experiment_options(const CommonOptions& o) {
  ExperimentOptions opts;
  opts.seed = o.seed;
  opts.repeats = o.repeats;
  opts.workers = o.workers;
  opts.keep_logprobs = o.keep_logprobs;
  return opts;
}

void write_outputs(const CommonOptions& o, const std::vector<RunReport>& reports) {
  if (!o.out_csv.empty()) emit_report(reports, ReportFormat::kCsv, o.out_csv);
  if (!o.out_json.empty()) emit_report(reports, ReportFormat::kJson, o.out_json);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-guided dynamic self-consistency engine", "seersc"};
  app.set_config("--config", "", "Key-value config file (TOML/INI); flags override it");
  app.require_subcommand(1);

  CommonOptions run_common;
  StrategyFlags run_flags;
  std::string run_strategy_name = "seersc";
  auto* run = app.add_subcommand("run", "Run one strategy over a dataset");
  add_common(run, run_common);
  add_strategy_flags(run, run_flags);
  run->add_option("--strategy", run_strategy_name, "cot, sc, ac, esc or seersc")
      ->check(CLI::IsMember({"cot", "sc", "ac", "esc", "seersc"}))
      ->capture_default_str();

  CommonOptions cmp_common;
  StrategyFlags cmp_flags;
  std::string cmp_strategies = "cot,sc,ac,esc,seersc";
  std::string sweep_n;
  std::string out_scaling;
  auto* compare = app.add_subcommand("compare", "Run several strategies and print a comparison table");
  add_common(compare, cmp_common);
  add_strategy_flags(compare, cmp_flags);
  compare->add_option("--strategies", cmp_strategies, "Comma-separated strategies")->capture_default_str();
  compare->add_option("--sweep-n", sweep_n, "Comma-separated N values for latency-scaling points");
  compare->add_option("--out-scaling", out_scaling, "Latency-scaling CSV path");

  CommonOptions abl_common;
  StrategyFlags abl_flags;
  std::string sweep;
  std::string values;
  int64_t variance_seeds = 8;
  auto* ablate = app.add_subcommand("ablate", "Sweep a System-1 knob for SeerSC");
  add_common(ablate, abl_common);
  add_strategy_flags(ablate, abl_flags);
  ablate->add_option("--sweep", sweep, "temperature, m or weighting")
      ->required()
      ->check(CLI::IsMember({"temperature", "m", "weighting"}));
  ablate->add_option("--values", values, "Comma-separated values of the swept knob")->required();
  ablate->add_option("--variance-seeds", variance_seeds, "Seeds for the entropy variance column (0 = skip)")
      ->capture_default_str();

  CorpusSpec corpus;
  uint64_t corpus_seed = 0;
  std::string out_dataset;
  std::string out_profiles;
  auto* gen = app.add_subcommand("gen-profiles", "Synthesize a simulation corpus");
  gen->add_option("--name", corpus.name)->capture_default_str();
  gen->add_option("--problems", corpus.problems)->capture_default_str();
  gen->add_option("--easy-fraction", corpus.easy_fraction)->capture_default_str();
  gen->add_option("--easy-direct-top-min", corpus.easy_direct_top_min)->capture_default_str();
  gen->add_option("--easy-direct-top-max", corpus.easy_direct_top_max)->capture_default_str();
  gen->add_option("--easy-reasoning-gold-min", corpus.easy_reasoning_gold_min)->capture_default_str();
  gen->add_option("--easy-reasoning-gold-max", corpus.easy_reasoning_gold_max)->capture_default_str();
  gen->add_option("--hard-direct-labels-min", corpus.hard_direct_labels_min)->capture_default_str();
  gen->add_option("--hard-direct-labels-max", corpus.hard_direct_labels_max)->capture_default_str();
  gen->add_option("--hard-direct-concentration", corpus.hard_direct_concentration)->capture_default_str();
  gen->add_option("--hard-reasoning-gold-min", corpus.hard_reasoning_gold_min)->capture_default_str();
  gen->add_option("--hard-reasoning-gold-max", corpus.hard_reasoning_gold_max)->capture_default_str();
  gen->add_option("--trap-fraction", corpus.trap_fraction)->capture_default_str();
  gen->add_option("--trap-direct-wrong-share", corpus.trap_direct_wrong_share)->capture_default_str();
  gen->add_option("--trap-wrong-confidence", corpus.trap_wrong_confidence)->capture_default_str();
  gen->add_option("--trap-gold-confidence", corpus.trap_gold_confidence)->capture_default_str();
  gen->add_option("--direct-tokens-min", corpus.direct_tokens.min)->capture_default_str();
  gen->add_option("--direct-tokens-max", corpus.direct_tokens.max)->capture_default_str();
  gen->add_option("--reasoning-tokens-min", corpus.reasoning_tokens.min)->capture_default_str();
  gen->add_option("--reasoning-tokens-max", corpus.reasoning_tokens.max)->capture_default_str();
  gen->add_option("--tokens-per-second", corpus.tokens_per_second)->capture_default_str();
  gen->add_option("--temperature-sharpness", corpus.temperature_sharpness)->capture_default_str();
  gen->add_option("--logprob-jitter", corpus.logprob_jitter)->capture_default_str();
  gen->add_option("--seed", corpus_seed)->capture_default_str();
  gen->add_option("--out-dataset", out_dataset)->required();
  gen->add_option("--out-profiles", out_profiles)->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run) {
      StrategyConfig cfg = run_flags.resolve();
      cfg.strategy = parse_strategy(run_strategy_name);
      auto setup = prepare(run_common);
      const auto reports = run_experiment(setup.dataset, {cfg}, *setup.backend, experiment_options(run_common));
      out << format_table(reports);
      write_outputs(run_common, reports);
    } else if (*compare) {
      auto setup = prepare(cmp_common);
      const StrategyConfig base = cmp_flags.resolve();
      std::vector<int64_t> budgets{base.n};
      if (!sweep_n.empty()) {
        budgets.clear();
        for (const auto& v : split_list(sweep_n)) budgets.push_back(std::stoll(v));
      }
      std::vector<StrategyConfig> configs;
      for (const auto& name : split_list(cmp_strategies)) {
        for (int64_t n : budgets) {
          StrategyConfig cfg = base;
          cfg.strategy = parse_strategy(name);
          cfg.n = n;
          // The ESC window cannot exceed the budget on small-N sweep points.
          cfg.esc_window = std::min(cfg.esc_window, n);
          configs.push_back(cfg);
        }
      }
      const auto reports = run_experiment(setup.dataset, configs, *setup.backend, experiment_options(cmp_common));
      out << format_table(reports);
      write_outputs(cmp_common, reports);
      if (!out_scaling.empty()) emit_latency_scaling(reports, out_scaling);
    } else if (*ablate) {
      auto setup = prepare(abl_common);
      AblationOptions opts;
      opts.experiment = experiment_options(abl_common);
      opts.variance_seeds = variance_seeds;
      const auto rows = run_ablation(setup.dataset, *setup.backend, abl_flags.resolve(),
                                     parse_ablation(sweep), split_list(values), opts);
      out << format_ablation_table(rows);
      if (!abl_common.out_csv.empty()) {
        std::ofstream f(abl_common.out_csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + abl_common.out_csv);
        f << ablation_to_csv(rows);
      }
    } else if (*gen) {
      Dataset ds = generate_corpus(corpus, corpus_seed);
      save_dataset(ds, out_dataset);
      save_profiles(ds, out_profiles);
      out << fmt::format("wrote {} problems to {} and {}\n", ds.problems.size(), out_dataset, out_profiles);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace seersc
