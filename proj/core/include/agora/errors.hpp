#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace agora {

// Base class for every error thrown by this library.
class AgoraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration, detected before any work starts.
class ConfigError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// One request attempt against a live provider.
struct AttemptRecord {
  int attempt = 0;
  int http_status = 0;  // 0 when the transport itself failed
  std::string error;
  double delay_seconds = 0.0;  // backoff slept after this attempt
};

// Retry budget exhausted against a live provider.
class TransportError : public AgoraError {
 public:
  TransportError(const std::string& what, std::vector<AttemptRecord> attempts)
      : AgoraError(what), attempts(std::move(attempts)) {}
  std::vector<AttemptRecord> attempts;
};

// Non-retryable provider rejection (4xx other than 429, malformed body).
class BackendError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// Scripted backend has no line for the requested key.
class ScriptError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// Moderator output could not be turned into a verdict.
class VerdictParseError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// A debate could not be completed; the transcript is discarded.
class DebateError : public AgoraError {
 public:
  DebateError(const std::string& what, std::string stage, int turn_index, int attempts = 1)
      : AgoraError(what), stage(std::move(stage)), turn_index(turn_index), attempts(attempts) {}
  std::string stage;
  int turn_index = 0;
  int attempts = 1;
};

// Metric undefined for the given input (e.g. empty transcript set).
class MetricsError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// Statistical procedure precondition violated.
class StatsError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

// Distribution kernel failed to converge; carries the residual.
class NumericsError : public AgoraError {
 public:
  NumericsError(const std::string& what, double residual)
      : AgoraError(what), residual(residual) {}
  double residual = 0.0;
};

// Transcript store corruption or misuse.
class StoreError : public AgoraError {
 public:
  using AgoraError::AgoraError;
};

}  // namespace agora
