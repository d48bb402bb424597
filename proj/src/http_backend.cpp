#include "seersc/http_backend.h"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <iostream>
#include <thread>

#include "json.hpp"

namespace seersc {

using nlohmann::json;

namespace {

std::string render_template(std::string tmpl, const std::string& prompt) {
  static constexpr std::string_view kSlot = "{prompt}";
  size_t pos = tmpl.find(kSlot);
  while (pos != std::string::npos) {
    tmpl.replace(pos, kSlot.size(), prompt);
    pos = tmpl.find(kSlot, pos + prompt.size());
  }
  return tmpl;
}

bool retryable_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

void warn_missing_logprobs_once() {
  static std::once_flag once;
  std::call_once(once, [] {
    std::cerr << "warning: server returned no token logprobs; confidences default to 1\n";
  });
}

}  // namespace

std::string build_chat_request(const HttpEndpointConfig& cfg, const GenerationRequest& request,
                               int64_t n, int64_t first_sample_index) {
  const std::string& tmpl = request.mode == GenerationMode::kDirect ? cfg.direct_template
                                                                    : cfg.reasoning_template;
  json body = {
      {"model", cfg.model},
      {"messages", json::array({{{"role", "user"}, {"content", render_template(tmpl, request.prompt)}}})},
      {"n", n},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
      {"logprobs", true},
  };
  if (cfg.send_seed) {
    body["seed"] = static_cast<int64_t>(
        (request.base_seed + static_cast<uint64_t>(first_sample_index)) & 0x7fffffffffffffffULL);
  }
  return body.dump();
}

std::vector<Completion> parse_chat_response(const std::string& body, GenerationMode mode,
                                            int64_t first_sample_index, double latency_s) {
  const json doc = json::parse(body);
  const json& choices = doc.at("choices");
  if (!choices.is_array() || choices.empty()) {
    throw std::runtime_error("chat response carries no choices");
  }
  int64_t usage_tokens = 0;
  if (doc.contains("usage") && doc["usage"].is_object()) {
    usage_tokens = doc["usage"].value("completion_tokens", int64_t{0});
  }
  const auto n_choices = static_cast<int64_t>(choices.size());

  std::vector<Completion> out(choices.size());
  for (size_t pos = 0; pos < choices.size(); ++pos) {
    const json& choice = choices[pos];
    const int64_t index = choice.value("index", static_cast<int64_t>(pos));
    if (index < 0 || index >= n_choices) {
      throw std::runtime_error("chat response choice index out of range");
    }
    Completion& c = out[static_cast<size_t>(index)];
    c.mode = mode;
    c.sample_index = first_sample_index + index;
    c.latency_s = latency_s;

    const json& message = choice.at("message");
    std::string text;
    if (message.contains("reasoning_content") && message["reasoning_content"].is_string()) {
      text = message["reasoning_content"].get<std::string>() + "\n";
    }
    if (message.contains("content") && message["content"].is_string()) {
      text += message["content"].get<std::string>();
    }
    c.text = std::move(text);

    const bool has_logprobs = choice.contains("logprobs") && choice["logprobs"].is_object() &&
                              choice["logprobs"].contains("content") &&
                              choice["logprobs"]["content"].is_array();
    if (has_logprobs) {
      for (const json& tok : choice["logprobs"]["content"]) {
        c.token_logprobs.push_back(std::min(0.0, tok.at("logprob").get<double>()));
      }
      c.token_count = static_cast<int64_t>(c.token_logprobs.size());
    } else {
      c.logprobs_missing = true;
      c.token_count = usage_tokens / n_choices;
    }
  }
  return out;
}

HttpBackend::HttpBackend(HttpEndpointConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
  if (cfg_.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  if (!cfg_.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str())) bearer_ = key;
  }
}

void HttpBackend::acquire() {
  std::unique_lock lock(slots_mu_);
  slots_cv_.wait(lock, [this] { return in_flight_ < cfg_.max_in_flight; });
  ++in_flight_;
}

void HttpBackend::release() {
  {
    std::lock_guard lock(slots_mu_);
    --in_flight_;
  }
  slots_cv_.notify_one();
}

std::vector<Completion> HttpBackend::call(const GenerationRequest& request, int64_t n,
                                          int64_t first_index) {
  const std::string payload = build_chat_request(cfg_, request, n, first_index);
  httplib::Headers headers;
  if (!bearer_.empty()) headers.emplace("Authorization", "Bearer " + bearer_);

  const auto timeout = std::chrono::duration<double>(cfg_.timeout_s);
  double backoff = cfg_.backoff_initial_s;
  std::string last_error;
  for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

    acquire();
    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(cfg_.path, headers, payload, "application/json");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    release();

    bool retryable = true;
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 200 && res->status < 300) {
      auto out = parse_chat_response(res->body, request.mode, first_index, elapsed);
      if (std::any_of(out.begin(), out.end(), [](const Completion& c) { return c.logprobs_missing; })) {
        warn_missing_logprobs_once();
      }
      counters_.record_request(out, elapsed, attempt);
      return out;
    } else {
      last_error = "HTTP " + std::to_string(res->status);
      retryable = retryable_status(res->status);
    }

    if (!retryable || attempt == cfg_.max_attempts) {
      counters_.record_request({}, 0.0, attempt);
      throw GenerationError("generation failed after " + std::to_string(attempt) +
                                " attempt(s): " + last_error,
                            attempt, retryable);
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
    backoff *= cfg_.backoff_multiplier;
  }
  throw GenerationError("generation failed: " + last_error, cfg_.max_attempts, true);
}

std::vector<Completion> HttpBackend::generate(const GenerationRequest& request) {
  validate(request);
  const int64_t per_call = cfg_.samples_per_call > 0 ? cfg_.samples_per_call : request.n;

  std::vector<std::future<std::vector<Completion>>> pending;
  for (int64_t offset = 0; offset < request.n; offset += per_call) {
    const int64_t n = std::min(per_call, request.n - offset);
    const int64_t first = request.first_sample_index + offset;
    pending.push_back(std::async(std::launch::async, [this, &request, n, first] {
      return call(request, n, first);
    }));
  }

  std::vector<Completion> out;
  out.reserve(static_cast<size_t>(request.n));
  std::exception_ptr failure;
  for (auto& f : pending) {
    try {
      auto part = f.get();
      std::move(part.begin(), part.end(), std::back_inserter(out));
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace seersc
