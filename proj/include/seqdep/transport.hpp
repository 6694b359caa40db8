// Copyright 2026 The seqdep Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Chat-completion transports used by the LLM bridge. Tests only ever use the
// stub and replay implementations; the remote one talks to an HTTP endpoint.

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqdep {

struct CompletionParams {
  double temperature = 0.1;
  int max_tokens = 4096;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Transport {
 public:
  virtual ~Transport() = default;

  /// Returns the model's reply text; throws TransportError on failure.
  virtual std::string send(const std::string& prompt, const CompletionParams& params) = 0;
  virtual std::string name() const = 0;
};

/// Canned replies in order; the last one repeats. Thread-safe.
class StubTransport : public Transport {
 public:
  explicit StubTransport(std::string reply);
  explicit StubTransport(std::vector<std::string> replies);

  /// A transport whose every send fails with `cause`.
  static StubTransport failing(std::string cause);

  std::string send(const std::string& prompt, const CompletionParams& params) override;
  std::string name() const override { return "stub"; }

  std::size_t calls() const;
  std::vector<std::string> prompts() const;

 private:
  struct FailTag {};
  StubTransport(FailTag, std::string cause);

  std::vector<std::string> replies_;
  std::optional<std::string> failure_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
  std::vector<std::string> prompts_;
};

/// Lowercase hex SHA-256 of the prompt text; names replay fixture files.
std::string prompt_key(std::string_view prompt);

/// Serves `<dir>/<prompt_key(prompt)>.txt`. A missing fixture is a transport
/// error, so runs never silently fall back to a live model.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(std::filesystem::path dir);

  std::string send(const std::string& prompt, const CompletionParams& params) override;
  std::string name() const override { return "replay"; }

  std::filesystem::path fixture_path(std::string_view prompt) const;

 private:
  std::filesystem::path dir_;
};

struct RemoteConfig {
  std::string url;    // e.g. https://host/v1/chat/completions
  std::string token;  // bearer token, may be empty
  std::string model;  // omitted from the request when empty
  int timeout_seconds = 300;
  std::optional<std::filesystem::path> trace_dir;

  /// Reads SEQDEP_LLM_URL, SEQDEP_LLM_TOKEN and SEQDEP_LLM_MODEL; nullopt
  /// when no URL is set.
  static std::optional<RemoteConfig> from_env();
};

/// POSTs an OpenAI-style chat completion request. With a trace directory,
/// every request and response body is written there as numbered files.
class RemoteTransport : public Transport {
 public:
  explicit RemoteTransport(RemoteConfig config);

  std::string send(const std::string& prompt, const CompletionParams& params) override;
  std::string name() const override { return "remote"; }

 private:
  void trace(std::size_t seq, std::string_view what, std::string_view body) const;

  RemoteConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  mutable std::mutex mu_;
  std::size_t seq_ = 0;
};

}  // namespace seqdep
