#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "agora/backend.hpp"

namespace agora {

struct HttpRequestData {
  std::string origin;  // scheme://host[:port]
  std::string path;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  double timeout_seconds = 120.0;
};

struct HttpResponseData {
  int status = 0;
  std::string body;
  std::string transport_error;  // non-empty when the request never completed

  bool failed() const { return !transport_error.empty(); }
};

// Seam between the provider adapters and the network; tests substitute a
// recording fake so no desk-scale test ever touches the wire.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponseData send(const HttpRequestData& request) = 0;
};

std::shared_ptr<HttpTransport> make_httplib_transport();

using Sleeper = std::function<void(double seconds)>;

// Append-only mirror of raw provider traffic, for prompt-fidelity
// debugging.
class AuditLog {
 public:
  explicit AuditLog(std::string path) : path_(std::move(path)) {}
  void record(const std::string& line);

 private:
  std::mutex mu_;
  std::string path_;
};

// Chat backend over one of the two supported wire dialects. Retries
// transport errors, 429 and 5xx with exponential backoff and jitter;
// other 4xx responses fail immediately. The concurrency slot is released
// while sleeping so retries never block other in-flight requests.
class LiveBackend : public ChatBackend {
 public:
  enum class Dialect { OpenAi, Anthropic };

  LiveBackend(Dialect dialect, std::string base_url, const std::string& api_key_env,
              BackendPolicy policy, std::shared_ptr<HttpTransport> transport = nullptr,
              Sleeper sleeper = nullptr, std::shared_ptr<AuditLog> audit = nullptr);

  Completion complete(const ModelSpec& spec, const ChatRequest& request,
                      const RequestTag& tag) override;

  // Exposed for the request-translation tests.
  HttpRequestData build_http_request(const ModelSpec& spec, const ChatRequest& request) const;

 private:
  double backoff_delay(int attempt);
  void acquire_slot();
  void release_slot();
  void rate_limit_wait();

  Dialect dialect_;
  std::string origin_;
  std::string base_path_;
  std::string api_key_;
  bool has_key_ = false;
  BackendPolicy policy_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  std::shared_ptr<AuditLog> audit_;

  std::mutex slot_mu_;
  std::condition_variable_any slot_cv_;
  int in_flight_ = 0;

  std::mutex bucket_mu_;
  double bucket_tokens_ = 0.0;
  std::chrono::steady_clock::time_point bucket_last_{};
  bool bucket_started_ = false;

  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

// Builds the backend a model spec calls for; resolves credentials now so a
// missing key is a configuration error at startup, not at call time.
std::shared_ptr<ChatBackend> make_backend(const ModelSpec& spec, const BackendPolicy& policy,
                                          std::shared_ptr<HttpTransport> transport = nullptr,
                                          Sleeper sleeper = nullptr,
                                          std::shared_ptr<AuditLog> audit = nullptr);

// Lazily constructs one backend per distinct endpoint and hands out a
// resolver for the debate engine.
class BackendRegistry {
 public:
  explicit BackendRegistry(BackendPolicy policy, std::shared_ptr<AuditLog> audit = nullptr)
      : policy_(std::move(policy)), audit_(std::move(audit)) {}

  ChatBackend& resolve(const ModelSpec& spec);
  BackendResolver resolver();

 private:
  BackendPolicy policy_;
  std::shared_ptr<AuditLog> audit_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<ChatBackend>> backends_;
};

}  // namespace agora
