#include "agora/http_backend.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "agora/errors.hpp"
#include "agora/scripted_backend.hpp"

#include "httplib.h"

namespace agora {

using nlohmann::json;

namespace {

void split_base_url(const std::string& base_url, std::string& origin, std::string& path) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base URL '" + base_url + "' must include a scheme");
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    origin = base_url;
    path.clear();
  } else {
    origin = base_url.substr(0, path_start);
    path = base_url.substr(path_start);
  }
  while (!path.empty() && path.back() == '/') path.pop_back();
}

class HttplibTransport : public HttpTransport {
 public:
  HttpResponseData send(const HttpRequestData& request) override {
    httplib::Client client(request.origin);
    const auto timeout = std::chrono::milliseconds(
        static_cast<long>(request.timeout_seconds * 1000.0));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);
    auto result = client.Post(request.path, headers, request.body, "application/json");
    HttpResponseData out;
    if (!result) {
      out.transport_error = httplib::to_string(result.error());
      return out;
    }
    out.status = result->status;
    out.body = result->body;
    return out;
  }
};

std::string role_name(ChatRole role) {
  return role == ChatRole::User ? "user" : "assistant";
}

}  // namespace

std::vector<ChatMessage> normalize_messages(const std::vector<ChatMessage>& messages) {
  std::vector<ChatMessage> out;
  for (const auto& m : messages) {
    if (m.content.empty()) continue;
    if (!out.empty() && out.back().role == m.role) {
      out.back().content += "\n\n" + m.content;
    } else {
      out.push_back(m);
    }
  }
  return out;
}

std::shared_ptr<HttpTransport> make_httplib_transport() {
  return std::make_shared<HttplibTransport>();
}

void AuditLog::record(const std::string& line) {
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << line << '\n';
}

LiveBackend::LiveBackend(Dialect dialect, std::string base_url, const std::string& api_key_env,
                         BackendPolicy policy, std::shared_ptr<HttpTransport> transport,
                         Sleeper sleeper, std::shared_ptr<AuditLog> audit)
    : dialect_(dialect),
      policy_(policy),
      transport_(transport ? std::move(transport) : make_httplib_transport()),
      sleeper_(sleeper ? std::move(sleeper)
                       : [](double s) {
                           std::this_thread::sleep_for(std::chrono::duration<double>(s));
                         }),
      audit_(std::move(audit)),
      rng_(0x6cb2f3a1d04f5b31ULL) {
  split_base_url(base_url, origin_, base_path_);
  if (!api_key_env.empty()) {
    const char* key = std::getenv(api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ConfigError("credential environment variable '" + api_key_env +
                        "' is not set; configure it before starting a run");
    }
    api_key_ = key;
    has_key_ = true;
  }
}

HttpRequestData LiveBackend::build_http_request(const ModelSpec& spec,
                                                const ChatRequest& request) const {
  const auto messages = normalize_messages(request.messages);
  if (messages.empty()) {
    throw BackendError("chat request has no non-empty messages");
  }
  HttpRequestData http;
  http.origin = origin_;
  http.timeout_seconds = policy_.request_timeout_seconds;
  http.headers.emplace_back("Content-Type", "application/json");

  json body;
  if (dialect_ == Dialect::OpenAi) {
    http.path = base_path_ + "/chat/completions";
    if (has_key_) http.headers.emplace_back("Authorization", "Bearer " + api_key_);
    json msgs = json::array();
    msgs.push_back({{"role", "system"}, {"content", request.system_prompt}});
    for (const auto& m : messages) {
      msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    }
    body = {{"model", spec.model_id},
            {"messages", msgs},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens}};
  } else {
    http.path = base_path_ + "/messages";
    if (has_key_) http.headers.emplace_back("x-api-key", api_key_);
    http.headers.emplace_back("anthropic-version", "2023-06-01");
    json msgs = json::array();
    for (const auto& m : messages) {
      msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    }
    body = {{"model", spec.model_id},
            {"system", request.system_prompt},
            {"messages", msgs},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens}};
  }
  http.body = body.dump();
  return http;
}

double LiveBackend::backoff_delay(int attempt) {
  const double base = std::min(policy_.backoff_cap_seconds,
                               policy_.backoff_base_seconds * std::pow(2.0, attempt));
  std::lock_guard lock(rng_mu_);
  std::uniform_real_distribution<double> jitter(0.5, 1.0);
  return base * jitter(rng_);
}

void LiveBackend::acquire_slot() {
  std::unique_lock lock(slot_mu_);
  slot_cv_.wait(lock, [&] { return in_flight_ < policy_.max_concurrent; });
  in_flight_++;
}

void LiveBackend::release_slot() {
  {
    std::lock_guard lock(slot_mu_);
    in_flight_--;
  }
  slot_cv_.notify_one();
}

void LiveBackend::rate_limit_wait() {
  if (!policy_.requests_per_second.has_value()) return;
  const double rps = *policy_.requests_per_second;
  double wait = 0.0;
  {
    std::lock_guard lock(bucket_mu_);
    const auto now = std::chrono::steady_clock::now();
    if (!bucket_started_) {
      bucket_started_ = true;
      bucket_tokens_ = 1.0;
      bucket_last_ = now;
    } else {
      const double elapsed = std::chrono::duration<double>(now - bucket_last_).count();
      bucket_tokens_ = std::min(std::max(1.0, rps), bucket_tokens_ + elapsed * rps);
      bucket_last_ = now;
    }
    if (bucket_tokens_ >= 1.0) {
      bucket_tokens_ -= 1.0;
    } else {
      wait = (1.0 - bucket_tokens_) / rps;
      bucket_tokens_ = 0.0;
    }
  }
  if (wait > 0.0) sleeper_(wait);
}

Completion LiveBackend::complete(const ModelSpec& spec, const ChatRequest& request,
                                 const RequestTag& tag) {
  const HttpRequestData http = build_http_request(spec, request);
  std::vector<AttemptRecord> attempts;

  for (int attempt = 0; attempt <= policy_.max_retries; attempt++) {
    rate_limit_wait();
    acquire_slot();
    HttpResponseData resp = transport_->send(http);
    release_slot();

    if (audit_) {
      json line = {{"agent", tag.agent_id},    {"turn", tag.turn},
                   {"attempt", attempt},       {"model", spec.model_id},
                   {"status", resp.status},    {"transport_error", resp.transport_error},
                   {"request", http.body},     {"response", resp.body}};
      audit_->record(line.dump());
    }

    const bool retryable = resp.failed() || resp.status == 429 || resp.status >= 500;
    if (!retryable) {
      if (resp.status != 200) {
        throw BackendError("provider rejected request with HTTP " +
                           std::to_string(resp.status) + ": " + resp.body.substr(0, 400));
      }
      try {
        const json body = json::parse(resp.body);
        Completion out;
        if (dialect_ == Dialect::OpenAi) {
          out.text = body.at("choices").at(0).at("message").at("content").get<std::string>();
          if (body.contains("model")) out.model_version = body["model"].get<std::string>();
          if (body.contains("usage")) {
            TokenUsage u;
            u.prompt_tokens = body["usage"].value("prompt_tokens", 0L);
            u.completion_tokens = body["usage"].value("completion_tokens", 0L);
            out.usage = u;
          }
        } else {
          out.text = body.at("content").at(0).at("text").get<std::string>();
          if (body.contains("model")) out.model_version = body["model"].get<std::string>();
          if (body.contains("usage")) {
            TokenUsage u;
            u.prompt_tokens = body["usage"].value("input_tokens", 0L);
            u.completion_tokens = body["usage"].value("output_tokens", 0L);
            out.usage = u;
          }
        }
        return out;
      } catch (const json::exception& e) {
        throw BackendError(std::string("malformed provider response: ") + e.what());
      }
    }

    AttemptRecord record;
    record.attempt = attempt;
    record.http_status = resp.status;
    record.error = resp.failed() ? resp.transport_error
                                 : "HTTP " + std::to_string(resp.status);
    if (attempt < policy_.max_retries) {
      record.delay_seconds = backoff_delay(attempt);
      attempts.push_back(record);
      sleeper_(record.delay_seconds);
    } else {
      attempts.push_back(record);
    }
  }
  throw TransportError("retry budget exhausted after " +
                           std::to_string(policy_.max_retries + 1) + " attempts against " +
                           origin_,
                       std::move(attempts));
}

std::shared_ptr<ChatBackend> make_backend(const ModelSpec& spec, const BackendPolicy& policy,
                                          std::shared_ptr<HttpTransport> transport,
                                          Sleeper sleeper, std::shared_ptr<AuditLog> audit) {
  switch (spec.provider_kind) {
    case ProviderKind::Scripted:
      if (spec.script_ref.empty()) {
        throw ConfigError("scripted model '" + spec.model_id + "' has no script reference");
      }
      return std::make_shared<ScriptedBackend>(Script::load(spec.script_ref));
    case ProviderKind::OpenAiCompatible:
      return std::make_shared<LiveBackend>(LiveBackend::Dialect::OpenAi, spec.base_url,
                                           spec.api_key_env, policy, std::move(transport),
                                           std::move(sleeper), std::move(audit));
    case ProviderKind::AnthropicCompatible:
      return std::make_shared<LiveBackend>(LiveBackend::Dialect::Anthropic, spec.base_url,
                                           spec.api_key_env, policy, std::move(transport),
                                           std::move(sleeper), std::move(audit));
  }
  throw ConfigError("unknown provider kind");
}

ChatBackend& BackendRegistry::resolve(const ModelSpec& spec) {
  const std::string key = to_string(spec.provider_kind) + "|" + spec.base_url + "|" +
                          spec.api_key_env + "|" + spec.script_ref;
  std::lock_guard lock(mu_);
  auto it = backends_.find(key);
  if (it == backends_.end()) {
    it = backends_.emplace(key, make_backend(spec, policy_, nullptr, nullptr, audit_)).first;
  }
  return *it->second;
}

BackendResolver BackendRegistry::resolver() {
  return [this](const ModelSpec& spec) -> ChatBackend& { return resolve(spec); };
}

}  // namespace agora
