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

// Local JSON service over a workspace directory of .esd files. Handlers are
// plain member functions returning (status, body) so they can be exercised
// without sockets; install() binds them to an httplib server.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/dependency.hpp"
#include "seqdep/diagnostic.hpp"
#include "seqdep/model.hpp"
#include "seqdep/transport.hpp"

namespace httplib {
class Server;
}

namespace seqdep {

/// One parsed file with an analysis per use case. Immutable once built;
/// the analyses point into `document`, so snapshots are only held by pointer.
struct Snapshot {
  std::filesystem::path path;
  std::filesystem::file_time_type mtime;
  std::uintmax_t size = 0;
  std::optional<Document> document;
  std::vector<Diagnostic> diagnostics;  // parse errors
  std::vector<std::unique_ptr<UseCaseAnalysis>> analyses;

  Snapshot() = default;
  Snapshot(const Snapshot&) = delete;
  Snapshot& operator=(const Snapshot&) = delete;
};

struct UseCaseHandle {
  std::shared_ptr<const Snapshot> snapshot;  // keeps the analysis alive
  const UseCaseAnalysis* analysis = nullptr;
};

/// Documents under a directory (recursive), re-parsed when a file's
/// modification time or size changes.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  /// Use case names across all parseable files, sorted; duplicates keep the
  /// first file in path order.
  std::vector<std::string> usecase_names();

  /// Throws LookupError when no file defines the use case.
  UseCaseHandle find(std::string_view name);

  const std::filesystem::path& root() const { return root_; }

 private:
  std::vector<std::shared_ptr<const Snapshot>> refresh();

  std::filesystem::path root_;
  std::shared_mutex mu_;
  std::map<std::filesystem::path, std::shared_ptr<const Snapshot>> cache_;
};

struct ServiceConfig {
  std::filesystem::path workspace = ".";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::shared_ptr<Transport> transport;  // null disables engine "llm"
  CompletionParams params;
  std::size_t max_in_flight = 4;
};

struct HttpReply {
  int status = 200;
  std::string body;  // JSON with "schema_version"
};

class Service {
 public:
  explicit Service(ServiceConfig config);

  HttpReply list_usecases();
  HttpReply get_usecase(std::string_view name);
  HttpReply get_edg(std::string_view name);
  HttpReply get_prune(std::string_view name, std::optional<std::string> target);
  HttpReply post_infer(std::string_view body);
  HttpReply post_parse(std::string_view body);
  HttpReply post_eval(std::string_view body);

  void install(httplib::Server& server);

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
  Workspace workspace_;
};

/// Binds and serves until the process is stopped. Returns 1 when the address
/// cannot be bound.
int serve(const ServiceConfig& config);

}  // namespace seqdep
