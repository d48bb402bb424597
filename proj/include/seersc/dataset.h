#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seersc/answer.h"
#include "seersc/sim_backend.h"

namespace seersc {

struct Dataset {
  std::string name;
  std::vector<Problem> problems;
  std::optional<std::map<std::string, SimProblemProfile>> sim_profiles;
};

// Raised for malformed dataset or profile files. line() is 1-based, 0 when
// the problem is not tied to a single line.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, size_t line = 0) : std::runtime_error(what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Reads line-delimited JSON records {"id", "prompt", "gold"}. Blank lines are
// skipped; gold answers are normalized on load. The dataset is named after
// the file stem.
Dataset load_dataset(const std::filesystem::path& path);

// Reads one SimProblemProfile JSON record per line.
std::vector<SimProblemProfile> load_profiles(const std::filesystem::path& path);

// Attaches profiles; every problem must have one. The error lists the ids
// that are missing.
void attach_profiles(Dataset& dataset, std::vector<SimProblemProfile> profiles);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
void save_profiles(const Dataset& dataset, const std::filesystem::path& path);

// Profiles of the dataset in problem order; throws if any is missing.
std::vector<SimProblemProfile> profiles_in_order(const Dataset& dataset);

}  // namespace seersc
