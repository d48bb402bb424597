#include "seersc/dataset.h"

#include <fstream>
#include <set>

#include "json_io.h"

namespace seersc {

using nlohmann::json;

namespace {

template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": malformed record: " +
                             e.what(),
                         line_no);
    }
    if (!record.is_object()) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": record is not an object",
                         line_no);
    }
    try {
      fn(record, line_no);
    } catch (const DatasetError&) {
      throw;
    } catch (const std::exception& e) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
}

std::string required_string(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("missing string field \"") + key + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
  Dataset ds;
  ds.name = path.stem().string();
  std::set<std::string> seen;
  for_each_record(path, [&](const json& record, size_t line_no) {
    Problem p;
    p.id = required_string(record, "id");
    if (p.id.empty()) throw std::invalid_argument("empty id");
    p.prompt = record.value("prompt", std::string{});
    auto gold = record.find("gold");
    if (gold == record.end() || !gold->is_string() || gold->get<std::string>().empty()) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": missing gold answer",
                         line_no);
    }
    p.gold_answer = normalize_answer(gold->get<std::string>());
    if (auto meta = record.find("metadata"); meta != record.end() && meta->is_object()) {
      for (const auto& [k, v] : meta->items()) p.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (!seen.insert(p.id).second) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": duplicate id " + p.id,
                         line_no);
    }
    ds.problems.push_back(std::move(p));
  });
  return ds;
}

std::vector<SimProblemProfile> load_profiles(const std::filesystem::path& path) {
  std::vector<SimProblemProfile> out;
  for_each_record(path, [&](const json& record, size_t) {
    SimProblemProfile p = record.get<SimProblemProfile>();
    validate(p);
    out.push_back(std::move(p));
  });
  return out;
}

void attach_profiles(Dataset& dataset, std::vector<SimProblemProfile> profiles) {
  std::map<std::string, SimProblemProfile> by_id;
  for (auto& p : profiles) {
    std::string id = p.problem_id;
    if (!by_id.emplace(id, std::move(p)).second) throw DatasetError("duplicate profile for " + id);
  }
  std::string missing;
  for (const auto& problem : dataset.problems) {
    if (!by_id.count(problem.id)) missing += (missing.empty() ? "" : ", ") + problem.id;
  }
  if (!missing.empty()) throw DatasetError("no simulation profile for problem(s): " + missing);
  dataset.sim_profiles = std::move(by_id);
}

std::vector<SimProblemProfile> profiles_in_order(const Dataset& dataset) {
  if (!dataset.sim_profiles) throw DatasetError("dataset " + dataset.name + " has no simulation profiles");
  std::vector<SimProblemProfile> out;
  for (const auto& problem : dataset.problems) {
    auto it = dataset.sim_profiles->find(problem.id);
    if (it == dataset.sim_profiles->end()) {
      throw DatasetError("no simulation profile for problem(s): " + problem.id);
    }
    out.push_back(it->second);
  }
  return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  for (const auto& p : dataset.problems) out << json(p).dump() << '\n';
}

void save_profiles(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  for (const auto& p : profiles_in_order(dataset)) out << json(p).dump() << '\n';
}

}  // namespace seersc
