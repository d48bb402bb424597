#include "seersc/report.h"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "json_io.h"

namespace seersc {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument("unknown report format: " + std::string(text));
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

// RFC 4180: quote fields holding a comma, quote, CR or LF; double quotes.
std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  out << content;
  if (!out.flush()) throw std::runtime_error("cannot write report to " + path.string());
}

void require_nonempty(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to emit");
}

}  // namespace

std::string reports_to_csv(const std::vector<RunReport>& reports) {
  std::string out = "strategy,N,seed,accuracy,mean_tokens_thousands,mean_latency_s,wall_time_s\r\n";
  for (const auto& r : reports) {
    out += csv_field(to_string(r.config.strategy));
    out += ',' + std::to_string(r.config.n);
    out += ',' + std::to_string(r.seed);
    out += ',' + format_double(r.accuracy);
    out += ',' + format_double(r.mean_tokens_thousands);
    out += ',' + format_double(r.mean_latency_s);
    out += ',' + format_double(r.wall_time_s);
    out += "\r\n";
  }
  return out;
}

std::string reports_to_json(const std::vector<RunReport>& reports) {
  return json(reports).dump(1) + "\n";
}

std::vector<RunReport> reports_from_json(const std::string& text) {
  return json::parse(text).get<std::vector<RunReport>>();
}

std::string latency_scaling_csv(const std::vector<RunReport>& reports) {
  struct Acc {
    double accuracy = 0.0;
    double latency = 0.0;
    int count = 0;
  };
  // Keep strategies in first-appearance order, knobs ascending.
  std::vector<std::string> order;
  std::map<std::string, std::map<int64_t, Acc>> points;
  for (const auto& r : reports) {
    const std::string name(to_string(r.config.strategy));
    if (!points.count(name)) order.push_back(name);
    Acc& a = points[name][r.config.n];
    a.accuracy += r.accuracy;
    a.latency += r.mean_latency_s;
    ++a.count;
  }
  std::string out = "strategy,budget_knob,accuracy,mean_latency_s\r\n";
  for (const auto& name : order) {
    for (const auto& [knob, a] : points[name]) {
      out += csv_field(name) + ',' + std::to_string(knob) + ',' + format_double(a.accuracy / a.count) +
             ',' + format_double(a.latency / a.count) + "\r\n";
    }
  }
  return out;
}

void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 const std::filesystem::path& path) {
  require_nonempty(reports);
  write_file(path, format == ReportFormat::kCsv ? reports_to_csv(reports) : reports_to_json(reports));
}

void emit_latency_scaling(const std::vector<RunReport>& reports, const std::filesystem::path& path) {
  require_nonempty(reports);
  write_file(path, latency_scaling_csv(reports));
}

std::vector<RunReport> load_json_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open report " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return reports_from_json(buf.str());
}

std::string format_table(const std::vector<RunReport>& reports) {
  std::string out = fmt::format("{:<8} {:>4} {:>6} {:>10} {:>12} {:>14} {:>9}\n", "strategy", "N",
                                "seed", "acc (%)", "tokens (k)", "latency (s)", "failures");
  for (const auto& r : reports) {
    out += fmt::format("{:<8} {:>4} {:>6} {:>10.2f} {:>12.3f} {:>14.2f} {:>9}\n",
                       to_string(r.config.strategy), r.config.n, r.seed, 100.0 * r.accuracy,
                       r.mean_tokens_thousands, r.mean_latency_s, r.failures);
  }
  return out;
}

}  // namespace seersc
