#include "seersc/backend.h"

namespace seersc {

void validate(const GenerationRequest& request) {
  if (request.n < 1) throw std::invalid_argument("generation request needs n >= 1");
  if (request.max_tokens < 1) throw std::invalid_argument("generation request needs max_tokens >= 1");
  if (!(request.temperature >= 0.0)) {
    throw std::invalid_argument("generation request needs temperature >= 0");
  }
  if (request.first_sample_index < 0) {
    throw std::invalid_argument("first_sample_index must be nonnegative");
  }
}

void StatsCounters::record_request(const std::vector<Completion>& completions, double latency_s,
                                   int64_t attempts) {
  int64_t tokens = 0;
  for (const auto& c : completions) tokens += c.token_count;
  requests_.fetch_add(1, std::memory_order_relaxed);
  completions_.fetch_add(static_cast<int64_t>(completions.size()), std::memory_order_relaxed);
  tokens_.fetch_add(tokens, std::memory_order_relaxed);
  attempts_.fetch_add(attempts, std::memory_order_relaxed);
  double current = wall_latency_s_.load(std::memory_order_relaxed);
  while (!wall_latency_s_.compare_exchange_weak(current, current + latency_s,
                                                std::memory_order_relaxed)) {
  }
}

BackendStats StatsCounters::snapshot() const {
  BackendStats s;
  s.requests = requests_.load(std::memory_order_relaxed);
  s.completions = completions_.load(std::memory_order_relaxed);
  s.tokens = tokens_.load(std::memory_order_relaxed);
  s.attempts = attempts_.load(std::memory_order_relaxed);
  s.wall_latency_s = wall_latency_s_.load(std::memory_order_relaxed);
  return s;
}

}  // namespace seersc
