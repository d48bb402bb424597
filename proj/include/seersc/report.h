#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "seersc/experiment.h"

namespace seersc {

enum class ReportFormat { kJson, kCsv };

ReportFormat parse_report_format(std::string_view text);

// One row per strategy x repeat:
// strategy,N,seed,accuracy,mean_tokens_thousands,mean_latency_s,wall_time_s
std::string reports_to_csv(const std::vector<RunReport>& reports);

// Full traces, including per-problem outcomes.
std::string reports_to_json(const std::vector<RunReport>& reports);
std::vector<RunReport> reports_from_json(const std::string& text);

// One (strategy, budget_knob, accuracy, mean_latency_s) point per distinct
// strategy and N, averaged over repeats.
std::string latency_scaling_csv(const std::vector<RunReport>& reports);

// Throws std::invalid_argument for an empty report list and
// std::runtime_error when the path cannot be written.
void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 const std::filesystem::path& path);
void emit_latency_scaling(const std::vector<RunReport>& reports, const std::filesystem::path& path);

std::vector<RunReport> load_json_report(const std::filesystem::path& path);

// Fixed-width comparison table for terminals.
std::string format_table(const std::vector<RunReport>& reports);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace seersc
