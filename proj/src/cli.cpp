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

#include "seqdep/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "seqdep/corpus.hpp"
#include "seqdep/esd.hpp"
#include "seqdep/export.hpp"
#include "seqdep/json_io.hpp"
#include "seqdep/llm_bridge.hpp"
#include "seqdep/service.hpp"

namespace seqdep {

namespace fs = std::filesystem;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int code;
  Diagnostic diagnostic;
};

[[noreturn]] void usage_error(std::string message) {
  throw CliError{kExitUsage, make_diagnostic(DiagCode::Usage, std::move(message))};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = true;

  void emit(const Json& payload) const { out << envelope(payload).dump(2) << "\n"; }
  void diagnostics(const std::vector<Diagnostic>& ds) const {
    for (const auto& d : ds) out << format_diagnostic(d) << "\n";
  }
};

std::string read_input(const std::string& path) {
  if (!fs::is_regular_file(path)) usage_error("cannot read " + path);
  return read_text_file(path);
}

Json read_json_input(const std::string& path) {
  if (!fs::is_regular_file(path)) usage_error("cannot read " + path);
  try {
    return read_json_file(path);
  } catch (const std::runtime_error& e) {
    usage_error(e.what());
  }
}

Document load_document(const Context& ctx, const std::string& path) {
  ParseResult r = parse_document(read_input(path), path);
  if (!r.ok()) {
    for (const auto& d : r.diagnostics()) ctx.err << format_diagnostic(d) << "\n";
    throw CliError{kExitDomain, make_diagnostic(DiagCode::Parse, path + " does not parse")};
  }
  return std::move(*r.document);
}

const UseCase& select_usecase(const Document& doc, const std::string& name) {
  if (!name.empty()) {
    if (const UseCase* uc = doc.find_usecase(name)) return *uc;
    throw CliError{kExitUsage, make_diagnostic(DiagCode::Lookup, "no use case named '" + name + "'")};
  }
  if (doc.usecases.empty())
    throw CliError{kExitDomain, make_diagnostic(DiagCode::DesignRule, "document defines no use case")};
  return doc.usecases.front();
}

struct LlmOptions {
  std::string replay;
  std::string trace;
  double temperature = 0.1;
  std::size_t max_in_flight = 4;
};

std::shared_ptr<Transport> make_transport(const LlmOptions& o) {
  if (!o.replay.empty()) {
    if (!fs::is_directory(o.replay)) usage_error("replay directory " + o.replay + " does not exist");
    return std::make_shared<ReplayTransport>(o.replay);
  }
  if (auto cfg = RemoteConfig::from_env()) {
    if (!o.trace.empty()) cfg->trace_dir = o.trace;
    return std::make_shared<RemoteTransport>(*cfg);
  }
  return nullptr;
}

std::string edge_line(const DependencyEdge& e) {
  return "(" + e.source + ", " + e.data + ", " + e.target + ") " + std::string(category_name(e.category));
}

std::vector<DependencyEdge> edges_file(const std::string& path) {
  try {
    return edges_from_json(read_json_input(path));
  } catch (const std::invalid_argument& e) {
    usage_error(path + ": " + e.what());
  }
}

std::string usecase_label(const std::string& path, const std::string& fallback) {
  const Json j = read_json_input(path);
  if (j.is_object() && j.contains("usecase") && j.at("usecase").is_string()) return j.at("usecase");
  return fallback;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enhanced sequence diagram analysis: execution graphs, context pruning, data dependencies"};
  app.name("seqdep");
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string file, usecase, target, export_format = "dot", engine = "rule", ddg_path, pred, gold,
                                     corpus_dir, pred_dir, out_dir, workspace = ".", addr = "127.0.0.1:8080";
  bool all = false;
  LlmOptions llm;
  std::uint64_t seed = 0;
  CorpusParams corpus;

  auto add_file = [&](CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("file", file, "ESD file");
    if (required) o->required();
    cmd->add_option("--usecase", usecase, "Use case name (default: first in file)");
  };
  auto add_llm = [&](CLI::App* cmd) {
    cmd->add_option("--replay", llm.replay, "Directory of replay fixtures for the llm engine");
    cmd->add_option("--trace", llm.trace, "Directory for remote request/response logs");
    cmd->add_option("--temperature", llm.temperature, "Sampling temperature")
        ->check(CLI::Range(0.0, 2.0))
        ->capture_default_str();
    cmd->add_option("--max-in-flight", llm.max_in_flight, "Concurrent model requests")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "Parse a file and report diagnostics");
  parse->add_option("file", file, "ESD file")->required();

  auto* edg = app.add_subcommand("edg", "Export the execution dependency graph");
  add_file(edg);
  edg->add_option("--export", export_format, "dot or json")->check(CLI::IsMember({"dot", "json"}))->capture_default_str();

  auto* prune = app.add_subcommand("prune", "Reachable predecessors of a node");
  add_file(prune);
  prune->add_option("--target", target, "Target node id")->required();

  auto* infer = app.add_subcommand("infer", "Infer data dependency edges");
  add_file(infer);
  auto* target_opt = infer->add_option("--target", target, "Infer edges into one node");
  infer->add_flag("--all", all, "Infer the whole graph (default)")->excludes(target_opt);
  infer->add_option("--engine", engine, "rule or llm")->check(CLI::IsMember({"rule", "llm"}))->capture_default_str();
  add_llm(infer);

  auto* validate = app.add_subcommand("validate", "Check a dependency graph against the diagram");
  add_file(validate);
  validate->add_option("--ddg", ddg_path, "DDG JSON to check (default: the rule engine's graph)");

  auto* eval = app.add_subcommand("eval", "Score predicted edges against gold edges");
  add_file(eval, false);
  eval->add_option("--pred", pred, "Predicted edges JSON");
  eval->add_option("--gold", gold, "Gold edges JSON");
  eval->add_option("--corpus", corpus_dir, "Score every <name>.gold.json in a corpus directory");
  eval->add_option("--pred-dir", pred_dir, "Directory of <name>.pred.json (default: the corpus directory)");

  auto* prompt = app.add_subcommand("prompt", "Render the inference prompt for one node");
  add_file(prompt);
  prompt->add_option("--target", target, "Target node id")->required();

  auto* gen = app.add_subcommand("gen-corpus", "Generate an annotated synthetic corpus");
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out_dir, "Write <name>.esd, .gold.json and .pred.json here");
  gen->add_option("--n-usecases", corpus.n_usecases)->capture_default_str();
  gen->add_option("--max-nodes", corpus.max_nodes)->capture_default_str();
  gen->add_option("--max-depth", corpus.max_depth)->capture_default_str();
  gen->add_option("--p-alt", corpus.p_alt)->capture_default_str();
  gen->add_option("--p-table", corpus.p_table)->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API over a workspace directory");
  serve_cmd->add_option("--workspace", workspace, "Directory of .esd files")->capture_default_str();
  serve_cmd->add_option("--addr", addr, "host:port")->capture_default_str();
  add_llm(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  Context ctx{out, err, format == "json"};
  try {
    if (parse->parsed()) {
      ParseResult r = parse_document(read_input(file), file);
      std::vector<Diagnostic> diags = r.diagnostics();
      if (r.document)
        for (auto& d : check_design_rules(*r.document)) diags.push_back(std::move(d));
      if (ctx.json) {
        Json usecases = Json::array();
        if (r.document)
          for (const auto& uc : r.document->usecases) usecases.push_back(uc.name);
        ctx.emit({{"file", file}, {"usecases", usecases}, {"diagnostics", to_json(diags)}});
      } else {
        ctx.diagnostics(diags);
        if (diags.empty()) out << file << ": ok\n";
      }
      return has_errors(diags) ? kExitDomain : 0;
    }

    if (gen->parsed()) {
      check_corpus_params(corpus);
      const auto entries = gen_corpus(seed, corpus);
      std::vector<CorpusStatistics> stats;
      Json files = Json::array();
      if (!out_dir.empty()) fs::create_directories(out_dir);
      for (const auto& e : entries) {
        const UseCase& uc = e.document.usecases.front();
        stats.push_back(corpus_statistics(uc, e.gold));
        files.push_back(uc.name);
        if (out_dir.empty()) continue;
        std::ofstream(fs::path(out_dir) / (uc.name + ".esd"), std::ios::binary) << serialize_document(e.document);
        std::ofstream(fs::path(out_dir) / (uc.name + ".gold.json"), std::ios::binary)
            << envelope(to_json(e.gold)).dump(2) << "\n";
        std::ofstream(fs::path(out_dir) / (uc.name + ".pred.json"), std::ios::binary)
            << envelope(Json{{"usecase", uc.name}, {"edges", to_json(e.perturbed)}}).dump(2) << "\n";
      }
      const std::string table = format_statistics_table(stats);
      if (!out_dir.empty()) std::ofstream(fs::path(out_dir) / "statistics.txt", std::ios::binary) << table;
      if (ctx.json) {
        Json rows = Json::array();
        for (const auto& s : stats)
          rows.push_back({{"usecase", s.usecase}, {"api", s.api_edges}, {"condition", s.condition_edges},
                          {"action", s.action_edges}, {"functions", s.functions},
                          {"controls", s.controls}, {"outputs", s.outputs}});
        ctx.emit({{"seed", seed}, {"usecases", files}, {"statistics", rows}});
      } else {
        out << table;
      }
      return 0;
    }

    if (eval->parsed()) {
      std::vector<ScoringCase> cases;
      if (!corpus_dir.empty()) {
        if (!pred.empty() || !gold.empty()) usage_error("--corpus excludes --pred/--gold");
        if (!fs::is_directory(corpus_dir)) usage_error("cannot read " + corpus_dir);
        const fs::path preds = pred_dir.empty() ? fs::path(corpus_dir) : fs::path(pred_dir);
        std::vector<fs::path> golds;
        for (const auto& entry : fs::directory_iterator(corpus_dir)) {
          const std::string name = entry.path().filename().string();
          if (name.size() > 10 && name.ends_with(".gold.json")) golds.push_back(entry.path());
        }
        std::sort(golds.begin(), golds.end());
        if (golds.empty()) usage_error("no *.gold.json files in " + corpus_dir);
        for (const auto& g : golds) {
          const std::string stem = g.filename().string().substr(0, g.filename().string().size() - 10);
          cases.push_back({usecase_label(g.string(), stem),
                           edges_file((preds / (stem + ".pred.json")).string()), edges_file(g.string())});
        }
      } else {
        if (pred.empty() || gold.empty()) usage_error("eval needs --pred and --gold, or --corpus");
        std::string label = "usecase";
        if (!file.empty()) label = select_usecase(load_document(ctx, file), usecase).name;
        label = usecase_label(gold, label);
        cases.push_back({label, edges_file(pred), edges_file(gold)});
      }
      const EvaluationReport report = evaluate(cases);
      if (ctx.json)
        ctx.emit(to_json(report));
      else
        out << format_report_table(report);
      return 0;
    }

    if (serve_cmd->parsed()) {
      const auto colon = addr.rfind(':');
      int port = 0;
      try {
        if (colon == std::string::npos) throw std::invalid_argument(addr);
        port = std::stoi(addr.substr(colon + 1));
      } catch (const std::exception&) {
        usage_error("--addr must be host:port, got '" + addr + "'");
      }
      if (!fs::is_directory(workspace)) usage_error("workspace " + workspace + " is not a directory");
      ServiceConfig cfg;
      cfg.workspace = workspace;
      cfg.host = addr.substr(0, colon);
      cfg.port = port;
      cfg.transport = make_transport(llm);
      cfg.params.temperature = llm.temperature;
      cfg.max_in_flight = llm.max_in_flight;
      return serve(cfg);
    }

    // The remaining subcommands work on one use case of one file.
    const Document doc = load_document(ctx, file);
    const UseCase& uc = select_usecase(doc, usecase);
    const UseCaseAnalysis analysis(uc, doc);

    if (edg->parsed()) {
      out << export_graph(analysis.edg(), graph_format_from_name(export_format));
      if (export_format == "json") out << "\n";
      return 0;
    }

    if (prune->parsed()) {
      const PredecessorSet& p = analysis.predecessors(target);
      if (ctx.json) {
        out << Json{{"members", p.members}, {"ratio", p.reduction_ratio}}.dump() << "\n";
      } else {
        std::string members;
        for (const auto& m : p.members) members += (members.empty() ? "" : ", ") + m;
        out << "P(" << target << ") = {" << members << "}\nratio " << p.reduction_ratio << "\n";
      }
      return 0;
    }

    if (prompt->parsed()) {
      try {
        const PromptDocument p = build_prompt(analysis, target);
        if (ctx.json) {
          Json sections = Json::array();
          for (const auto& s : p.sections) sections.push_back({{"heading", s.heading}, {"body", s.body}});
          ctx.emit({{"target", target}, {"key", prompt_key(p.rendered)}, {"sections", sections},
                    {"rendered", p.rendered}});
        } else {
          out << p.rendered;
        }
        return 0;
      } catch (const BridgeError& e) {
        throw CliError{kExitDomain, e.diagnostic};
      }
    }

    if (infer->parsed()) {
      std::shared_ptr<Transport> transport;
      CompletionParams params;
      params.temperature = llm.temperature;
      if (engine == "llm") {
        transport = make_transport(llm);
        if (!transport) usage_error("the llm engine needs --replay DIR or SEQDEP_LLM_URL");
      }
      std::vector<DependencyEdge> edges;
      std::vector<Diagnostic> diags;
      Json payload;
      if (!target.empty()) {
        const PredecessorSet& context = analysis.predecessors(target);
        if (transport) {
          auto r = infer_with_llm(analysis, target, *transport, params);
          edges = std::move(r.edges);
          diags = std::move(r.diagnostics);
        } else {
          auto r = infer_rule_based(analysis, target, context);
          edges = std::move(r.edges);
          diags = std::move(r.diagnostics);
        }
        sort_edges(edges, analysis.edg());
        payload = {{"usecase", uc.name}, {"target", target}, {"engine", engine},
                   {"context", context.members}, {"edges", to_json(edges)}, {"diagnostics", to_json(diags)}};
      } else {
        DataDependencyGraph g;
        if (transport) {
          g = infer_all_with_llm(analysis, *transport, params, llm.max_in_flight);
          for (auto& d : validate_ddg(g, analysis))
            if (d.code == DiagCode::MissingSource) g.diagnostics.push_back(std::move(d));
        } else {
          g = infer_all(analysis);
        }
        edges = g.edges;
        diags = g.diagnostics;
        payload = to_json(g, analysis.edg());
        payload["engine"] = engine;
      }
      if (ctx.json) {
        ctx.emit(payload);
      } else {
        for (const auto& e : edges) out << edge_line(e) << "\n";
        ctx.diagnostics(diags);
      }
      return has_errors(diags) ? kExitDomain : 0;
    }

    if (validate->parsed()) {
      std::vector<Diagnostic> diags = check_design_rules(doc);
      if (!ddg_path.empty()) {
        const Json j = read_json_input(ddg_path);
        DataDependencyGraph g;
        try {
          g = ddg_from_json(j);
        } catch (const std::exception& e) {
          usage_error(ddg_path + ": " + e.what());
        }
        for (auto& d : validate_ddg(g, analysis)) diags.push_back(std::move(d));
      } else {
        const auto g = infer_all(analysis);
        for (const auto& d : g.diagnostics) diags.push_back(d);
      }
      if (ctx.json)
        ctx.emit({{"usecase", uc.name}, {"diagnostics", to_json(diags)}});
      else
        ctx.diagnostics(diags);
      return has_errors(diags) ? kExitDomain : 0;
    }
  } catch (const CliError& e) {
    err << format_diagnostic(e.diagnostic) << "\n";
    return e.code;
  } catch (const LookupError& e) {
    err << format_diagnostic(make_diagnostic(DiagCode::Lookup, e.what())) << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << format_diagnostic(make_diagnostic(DiagCode::Usage, e.what())) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "seqdep: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace seqdep
