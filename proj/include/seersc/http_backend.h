#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "seersc/backend.h"

namespace seersc {

// Client settings for an OpenAI-compatible chat-completions server.
struct HttpEndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model;
  // Name of the environment variable holding the bearer token. An unset or
  // empty variable sends no Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_s = 600.0;
  int max_in_flight = 8;
  int max_attempts = 4;
  double backoff_initial_s = 1.0;
  double backoff_multiplier = 2.0;
  // Completions requested per HTTP call; 0 asks for all n in one call.
  int64_t samples_per_call = 0;
  bool send_seed = false;
  // "{prompt}" is replaced with the problem prompt.
  std::string direct_template =
      "{prompt}\n\nRespond with only the final answer inside \\boxed{}, without any reasoning.";
  std::string reasoning_template =
      "{prompt}\n\nPlease reason step by step, and put your final answer within \\boxed{}.";
};

// Maps one chat-completions response body onto completions. Indices start
// at first_sample_index and follow each choice's "index". When a choice has
// no token logprobs its token_logprobs stay empty, logprobs_missing is set
// and token_count is the usage total split evenly across choices.
std::vector<Completion> parse_chat_response(const std::string& body, GenerationMode mode,
                                            int64_t first_sample_index, double latency_s);

// Request body for one call of `n` samples.
std::string build_chat_request(const HttpEndpointConfig& cfg, const GenerationRequest& request,
                               int64_t n, int64_t first_sample_index);

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(HttpEndpointConfig cfg);

  std::vector<Completion> generate(const GenerationRequest& request) override;
  BackendStats stats() const override { return counters_.snapshot(); }
  bool simulated_clock() const override { return false; }

  const HttpEndpointConfig& config() const { return cfg_; }

 private:
  std::vector<Completion> call(const GenerationRequest& request, int64_t n, int64_t first_index);

  void acquire();
  void release();

  HttpEndpointConfig cfg_;
  std::string bearer_;
  StatsCounters counters_;

  std::mutex slots_mu_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
};

}  // namespace seersc
