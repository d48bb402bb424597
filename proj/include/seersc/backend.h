#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seersc/answer.h"

namespace seersc {

struct GenerationRequest {
  std::string problem_id;
  std::string prompt;
  GenerationMode mode = GenerationMode::kReasoning;
  int64_t n = 1;
  double temperature = 1.0;
  int64_t max_tokens = 16384;
  uint64_t base_seed = 0;
  int64_t first_sample_index = 0;
};

// Throws std::invalid_argument if n or max_tokens is below 1 or the
// temperature is negative.
void validate(const GenerationRequest& request);

struct BackendStats {
  int64_t requests = 0;
  int64_t completions = 0;
  int64_t tokens = 0;
  int64_t attempts = 0;
  double wall_latency_s = 0.0;
};

// Raised when a backend gives up on a request. attempts() counts every try,
// including the first.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, int attempts, bool retryable)
      : std::runtime_error(what), attempts_(attempts), retryable_(retryable) {}

  int attempts() const { return attempts_; }
  bool retryable() const { return retryable_; }

 private:
  int attempts_;
  bool retryable_;
};

// Source of completions. Implementations must be safe to call from many
// threads at once. Returned completions carry text and token data; answer
// extraction is left to the caller.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::vector<Completion> generate(const GenerationRequest& request) = 0;

  virtual BackendStats stats() const = 0;

  // True when latencies are modeled rather than measured, so that run
  // reports can be reproduced byte for byte.
  virtual bool simulated_clock() const = 0;
};

// Lock-free counters shared by both backends.
class StatsCounters {
 public:
  void record_request(const std::vector<Completion>& completions, double latency_s,
                      int64_t attempts);
  void record_attempt() { attempts_.fetch_add(1, std::memory_order_relaxed); }
  BackendStats snapshot() const;

 private:
  std::atomic<int64_t> requests_{0};
  std::atomic<int64_t> completions_{0};
  std::atomic<int64_t> tokens_{0};
  std::atomic<int64_t> attempts_{0};
  std::atomic<double> wall_latency_s_{0.0};
};

}  // namespace seersc
