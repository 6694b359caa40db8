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

#include "seqdep/transport.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace seqdep {

StubTransport::StubTransport(std::string reply) : replies_{std::move(reply)} {}

StubTransport::StubTransport(std::vector<std::string> replies) : replies_(std::move(replies)) {
  if (replies_.empty()) throw std::invalid_argument("stub transport needs at least one reply");
}

StubTransport::StubTransport(FailTag, std::string cause) : failure_(std::move(cause)) {}

StubTransport StubTransport::failing(std::string cause) { return StubTransport(FailTag{}, std::move(cause)); }

std::string StubTransport::send(const std::string& prompt, const CompletionParams&) {
  std::lock_guard lock(mu_);
  const std::size_t n = calls_++;
  prompts_.push_back(prompt);
  if (failure_) throw TransportError(*failure_);
  return replies_[std::min(n, replies_.size() - 1)];
}

std::size_t StubTransport::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::vector<std::string> StubTransport::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

std::string prompt_key(std::string_view prompt) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(prompt.data(), prompt.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

ReplayTransport::ReplayTransport(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::is_directory(dir_))
    throw std::invalid_argument("replay directory " + dir_.string() + " does not exist");
}

std::filesystem::path ReplayTransport::fixture_path(std::string_view prompt) const {
  return dir_ / (prompt_key(prompt) + ".txt");
}

std::string ReplayTransport::send(const std::string& prompt, const CompletionParams&) {
  const auto path = fixture_path(prompt);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TransportError("no replay fixture " + path.filename().string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<RemoteConfig> RemoteConfig::from_env() {
  const char* url = std::getenv("SEQDEP_LLM_URL");
  if (!url || !*url) return std::nullopt;
  RemoteConfig c;
  c.url = url;
  if (const char* tok = std::getenv("SEQDEP_LLM_TOKEN")) c.token = tok;
  if (const char* model = std::getenv("SEQDEP_LLM_MODEL"); model && *model) c.model = model;
  return c;
}

RemoteTransport::RemoteTransport(RemoteConfig config) : config_(std::move(config)) {
  const auto scheme = config_.url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("remote URL needs a scheme: " + config_.url);
  const auto slash = config_.url.find('/', scheme + 3);
  origin_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
  if (config_.trace_dir) std::filesystem::create_directories(*config_.trace_dir);
}

void RemoteTransport::trace(std::size_t seq, std::string_view what, std::string_view body) const {
  if (!config_.trace_dir) return;
  char name[32];
  std::snprintf(name, sizeof name, "%04zu-", seq);
  std::ofstream out(*config_.trace_dir / (std::string(name) + std::string(what) + ".json"), std::ios::binary);
  out << body;
}

std::string RemoteTransport::send(const std::string& prompt, const CompletionParams& params) {
  std::size_t seq;
  {
    std::lock_guard lock(mu_);
    seq = ++seq_;
  }
  nlohmann::json request;
  if (!config_.model.empty()) request["model"] = config_.model;
  request["messages"] = {{{"role", "user"}, {"content", prompt}}};
  request["temperature"] = params.temperature;
  request["max_tokens"] = params.max_tokens;
  const std::string body = request.dump();
  trace(seq, "request", body);

  httplib::Client client(origin_);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  if (!config_.token.empty()) client.set_bearer_token_auth(config_.token);

  auto res = client.Post(path_, body, "application/json");
  if (!res) throw TransportError("request to " + origin_ + " failed: " + httplib::to_string(res.error()));
  trace(seq, "response", res->body);
  if (res->status != 200)
    throw TransportError("endpoint returned HTTP " + std::to_string(res->status));

  const auto reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) throw TransportError("endpoint returned a non-JSON body");
  const nlohmann::json* content = nullptr;
  if (reply.is_object() && reply.contains("choices") && reply["choices"].is_array() &&
      !reply["choices"].empty()) {
    const auto& choice = reply["choices"][0];
    if (choice.is_object() && choice.contains("message") && choice["message"].is_object() &&
        choice["message"].contains("content"))
      content = &choice["message"]["content"];
  }
  if (!content || !content->is_string())
    throw TransportError("endpoint reply has no choices[0].message.content");
  return content->get<std::string>();
}

}  // namespace seqdep
