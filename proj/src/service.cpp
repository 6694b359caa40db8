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

#include "seqdep/service.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>
#include <system_error>

#include <httplib.h>

#include "seqdep/esd.hpp"
#include "seqdep/evaluation.hpp"
#include "seqdep/json_io.hpp"
#include "seqdep/llm_bridge.hpp"

namespace seqdep {

namespace fs = std::filesystem;

namespace {

struct RequestError {
  int status;
  Diagnostic diagnostic;
};

[[noreturn]] void reject(int status, DiagCode code, std::string message) {
  throw RequestError{status, make_diagnostic(code, std::move(message))};
}

HttpReply ok(Json payload) { return {200, envelope(std::move(payload)).dump()}; }

HttpReply failure(int status, const Diagnostic& d) {
  return {status, envelope(Json{{"diagnostics", Json::array({to_json(d)})}}).dump()};
}

template <typename F>
HttpReply guarded(F&& handler) {
  try {
    return handler();
  } catch (const RequestError& e) {
    return failure(e.status, e.diagnostic);
  } catch (const LookupError& e) {
    return failure(400, make_diagnostic(DiagCode::Lookup, e.what()));
  } catch (const std::invalid_argument& e) {
    return failure(400, make_diagnostic(DiagCode::Usage, e.what()));
  } catch (const Json::exception& e) {
    return failure(400, make_diagnostic(DiagCode::Usage, std::string("malformed request: ") + e.what()));
  } catch (const std::exception& e) {
    return failure(500, make_diagnostic(DiagCode::Usage, std::string("internal error: ") + e.what()));
  }
}

Json parse_body(std::string_view body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) reject(400, DiagCode::Usage, "request body is not valid JSON");
  if (!j.is_object()) reject(400, DiagCode::Usage, "request body must be a JSON object");
  return j;
}

std::string required_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    reject(400, DiagCode::Usage, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) reject(400, DiagCode::Usage, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::shared_ptr<const Snapshot> load_snapshot(const fs::path& path, fs::file_time_type mtime,
                                              std::uintmax_t size) {
  auto snap = std::make_shared<Snapshot>();
  snap->path = path;
  snap->mtime = mtime;
  snap->size = size;
  try {
    ParseResult r = parse_document(read_text_file(path.string()), path.string());
    snap->diagnostics = r.diagnostics();
    snap->document = std::move(r.document);
  } catch (const std::exception& e) {
    snap->diagnostics.push_back(make_diagnostic(DiagCode::Parse, e.what()));
  }
  if (snap->document)
    for (const auto& uc : snap->document->usecases)
      snap->analyses.push_back(std::make_unique<UseCaseAnalysis>(uc, *snap->document));
  return snap;
}

}  // namespace

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
  if (!fs::is_directory(root_))
    throw std::invalid_argument("workspace " + root_.string() + " is not a directory");
}

std::vector<std::shared_ptr<const Snapshot>> Workspace::refresh() {
  struct Stat {
    fs::path path;
    fs::file_time_type mtime;
    std::uintmax_t size;
  };
  std::vector<Stat> files;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(root_, fs::directory_options::skip_permission_denied, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (!it->is_regular_file(ec) || it->path().extension() != ".esd") continue;
    std::error_code e1, e2;
    const auto mtime = it->last_write_time(e1);
    const auto size = it->file_size(e2);
    if (!e1 && !e2) files.push_back({it->path(), mtime, size});
  }
  std::sort(files.begin(), files.end(), [](const Stat& a, const Stat& b) { return a.path < b.path; });

  std::vector<std::shared_ptr<const Snapshot>> out(files.size());
  std::vector<std::size_t> stale;
  {
    std::shared_lock lock(mu_);
    for (std::size_t i = 0; i < files.size(); ++i) {
      auto it = cache_.find(files[i].path);
      if (it != cache_.end() && it->second->mtime == files[i].mtime && it->second->size == files[i].size)
        out[i] = it->second;
      else
        stale.push_back(i);
    }
    if (stale.empty() && cache_.size() == files.size()) return out;
  }
  for (std::size_t i : stale) out[i] = load_snapshot(files[i].path, files[i].mtime, files[i].size);

  std::unique_lock lock(mu_);
  cache_.clear();
  for (const auto& snap : out) cache_[snap->path] = snap;
  return out;
}

std::vector<std::string> Workspace::usecase_names() {
  std::vector<std::string> names;
  for (const auto& snap : refresh())
    for (const auto& a : snap->analyses) names.push_back(a->usecase().name);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

UseCaseHandle Workspace::find(std::string_view name) {
  for (const auto& snap : refresh())
    for (const auto& a : snap->analyses)
      if (a->usecase().name == name) return {snap, a.get()};
  throw LookupError("unknown use case '" + std::string(name) + "'");
}

Service::Service(ServiceConfig config) : config_(std::move(config)), workspace_(config_.workspace) {}

namespace {

UseCaseHandle find_or_404(Workspace& ws, std::string_view name) {
  try {
    return ws.find(name);
  } catch (const LookupError& e) {
    throw RequestError{404, make_diagnostic(DiagCode::Lookup, e.what())};
  }
}

}  // namespace

HttpReply Service::list_usecases() {
  return guarded([&] { return ok(Json(workspace_.usecase_names())); });
}

HttpReply Service::get_usecase(std::string_view name) {
  return guarded([&] {
    const auto h = find_or_404(workspace_, name);
    Json j = usecase_to_json(h.analysis->usecase(), h.analysis->document());
    j["file"] = fs::relative(h.snapshot->path, workspace_.root()).generic_string();
    j["diagnostics"] = to_json(check_design_rules(h.analysis->document()));
    return ok(std::move(j));
  });
}

HttpReply Service::get_edg(std::string_view name) {
  return guarded([&] { return ok(to_json(find_or_404(workspace_, name).analysis->edg())); });
}

HttpReply Service::get_prune(std::string_view name, std::optional<std::string> target) {
  return guarded([&] {
    const auto h = find_or_404(workspace_, name);
    if (!target) reject(400, DiagCode::Usage, "missing query parameter 'target'");
    return ok(to_json(h.analysis->predecessors(*target)));
  });
}

HttpReply Service::post_infer(std::string_view body) {
  return guarded([&] {
    const Json req = parse_body(body);
    const std::string name = required_string(req, "usecase");
    const auto target = optional_string(req, "target");
    const std::string engine = optional_string(req, "engine").value_or("rule");
    if (engine != "rule" && engine != "llm")
      reject(400, DiagCode::Usage, "engine must be \"rule\" or \"llm\"");
    if (engine == "llm" && !config_.transport)
      reject(400, DiagCode::Usage, "the llm engine is disabled: no transport configured");

    const auto h = find_or_404(workspace_, name);
    const UseCaseAnalysis& a = *h.analysis;
    if (target) {
      const PredecessorSet& ctx = a.predecessors(*target);
      std::vector<DependencyEdge> edges;
      std::vector<Diagnostic> diags;
      if (engine == "rule") {
        auto r = infer_rule_based(a, *target, ctx);
        edges = std::move(r.edges);
        diags = std::move(r.diagnostics);
      } else {
        auto r = infer_with_llm(a, *target, *config_.transport, config_.params);
        edges = std::move(r.edges);
        diags = std::move(r.diagnostics);
      }
      sort_edges(edges, a.edg());
      return ok({{"usecase", name},
                 {"target", *target},
                 {"engine", engine},
                 {"context", ctx.members},
                 {"ratio", ctx.reduction_ratio},
                 {"edges", to_json(edges)},
                 {"diagnostics", to_json(diags)}});
    }
    DataDependencyGraph g;
    if (engine == "rule") {
      g = infer_all(a);
    } else {
      g = infer_all_with_llm(a, *config_.transport, config_.params, config_.max_in_flight);
      for (auto& d : validate_ddg(g, a))
        if (d.code == DiagCode::MissingSource) g.diagnostics.push_back(std::move(d));
    }
    Json j = to_json(g, a.edg());
    j["engine"] = engine;
    return ok(std::move(j));
  });
}

HttpReply Service::post_parse(std::string_view body) {
  return guarded([&] {
    const Json req = parse_body(body);
    const std::string text = required_string(req, "text");
    ParseResult r = parse_document(text, "<request>");
    Json usecases = Json::array();
    std::vector<Diagnostic> diags = r.diagnostics();
    if (r.document) {
      for (const auto& uc : r.document->usecases) usecases.push_back(usecase_to_json(uc, *r.document));
      for (auto& d : check_design_rules(*r.document)) diags.push_back(std::move(d));
    }
    return ok({{"ok", r.ok() && !has_errors(diags)}, {"diagnostics", to_json(diags)}, {"usecases", usecases}});
  });
}

HttpReply Service::post_eval(std::string_view body) {
  return guarded([&] {
    const Json req = parse_body(body);
    ScoringCase c;
    c.usecase = required_string(req, "usecase");
    for (const char* key : {"predicted", "gold"})
      if (!req.contains(key)) reject(400, DiagCode::Usage, std::string("missing \"") + key + "\"");
    c.predicted = edges_from_json(req.at("predicted"));
    c.gold = edges_from_json(req.at("gold"));
    return ok(to_json(evaluate({c})));
  });
}

void Service::install(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };
  server.Get("/api/usecases", [=, this](const httplib::Request&, httplib::Response& res) {
    send(res, list_usecases());
  });
  server.Get(R"(/api/usecase/([^/]+))", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, get_usecase(req.matches[1].str()));
  });
  server.Get(R"(/api/usecase/([^/]+)/edg)", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, get_edg(req.matches[1].str()));
  });
  server.Get(R"(/api/usecase/([^/]+)/prune)", [=, this](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> target;
    if (req.has_param("target")) target = req.get_param_value("target");
    send(res, get_prune(req.matches[1].str(), target));
  });
  server.Post("/api/infer", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, post_infer(req.body));
  });
  server.Post("/api/parse", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, post_parse(req.body));
  });
  server.Post("/api/eval", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, post_eval(req.body));
  });
  server.set_error_handler([=](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    send(res, failure(res.status, make_diagnostic(DiagCode::Lookup, "no route for " + req.method + " " + req.path)));
  });
}

int serve(const ServiceConfig& config) {
  Service service(config);
  httplib::Server server;
  service.install(server);
  if (!server.bind_to_port(config.host, config.port)) {
    std::cerr << "seqdep: cannot listen on " << config.host << ":" << config.port << "\n";
    return 1;
  }
  std::cerr << "seqdep: serving " << config.workspace.string() << " on http://" << config.host << ":"
            << config.port << "\n";
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace seqdep
