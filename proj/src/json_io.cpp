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

#include "seqdep/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace seqdep {

namespace {

Json optional_text(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

std::optional<std::string> text_or_null(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

Severity severity_from_name(const std::string& s) {
  if (s == "info") return Severity::Info;
  if (s == "warning") return Severity::Warning;
  if (s == "error") return Severity::Error;
  throw std::invalid_argument("unknown severity '" + s + "'");
}

Json fields_json(const std::vector<Field>& fields) {
  Json out = Json::array();
  for (const auto& f : fields) out.push_back(to_json(f));
  return out;
}

Json scope_json(const UseCase& uc, const std::vector<std::size_t>& scope);

Json element_json(const UseCase& uc, const Element& e) {
  Json j;
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        j["id"] = el.id;
        if constexpr (std::is_same_v<T, Message>) {
          j["type"] = "message";
          j["from"] = el.from;
          j["to"] = el.to;
          j["api"] = el.apis.size() == 1 ? Json(el.apis[0]) : Json(el.apis);
          j["tables"] = el.tables;
        } else if constexpr (std::is_same_v<T, Fragment>) {
          j["type"] = "fragment";
          j["kind"] = fragment_kind_name(el.kind);
          j["tables"] = el.tables;
          Json branches = Json::array();
          for (const auto& b : el.branches)
            branches.push_back({{"label", b.label}, {"elements", scope_json(uc, b.elements)}});
          j["branches"] = std::move(branches);
        } else {
          j["type"] = "return";
          j["fields"] = fields_json(el.fields);
        }
      },
      e);
  if (auto it = uc.spans.find(element_id(e)); it != uc.spans.end())
    j["span"] = {it->second.start, it->second.end};
  return j;
}

Json scope_json(const UseCase& uc, const std::vector<std::size_t>& scope) {
  Json out = Json::array();
  for (std::size_t idx : scope) out.push_back(element_json(uc, uc.elements[idx]));
  return out;
}

std::string id_or_throw(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw std::invalid_argument(std::string("edge field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

Json envelope(Json payload) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (payload.is_object()) {
    for (auto& [k, v] : payload.items()) out[k] = std::move(v);
  } else {
    out["data"] = std::move(payload);
  }
  return out;
}

Json to_json(const Diagnostic& d) {
  return {{"severity", severity_name(d.severity)},
          {"code", code_name(d.code)},
          {"node", optional_text(d.node)},
          {"entity", optional_text(d.entity)},
          {"message", d.message}};
}

Json to_json(const std::vector<Diagnostic>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) out.push_back(to_json(d));
  return out;
}

Diagnostic diagnostic_from_json(const Json& j) {
  Diagnostic d;
  const std::string code = j.at("code").get<std::string>();
  const auto c = code_from_name(code);
  if (!c) throw std::invalid_argument("unknown diagnostic code '" + code + "'");
  d.code = *c;
  d.severity = severity_from_name(j.at("severity").get<std::string>());
  d.node = text_or_null(j, "node");
  d.entity = text_or_null(j, "entity");
  d.message = j.value("message", "");
  return d;
}

Json to_json(const DependencyEdge& e) {
  return {{"source", e.source}, {"data", e.data}, {"target", e.target}, {"category", category_name(e.category)}};
}

Json to_json(const std::vector<DependencyEdge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(to_json(e));
  return out;
}

std::vector<DependencyEdge> edges_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("edges")) throw std::invalid_argument("expected an \"edges\" array");
    list = &j.at("edges");
  }
  if (!list->is_array()) throw std::invalid_argument("expected an array of edges");
  std::vector<DependencyEdge> out;
  for (const auto& e : *list) {
    DependencyEdge edge;
    edge.source = normalize_name(id_or_throw(e, "source"));
    edge.data = normalize_name(id_or_throw(e, "data"));
    edge.target = normalize_name(id_or_throw(e, "target"));
    const std::string cat = id_or_throw(e, "category");
    const auto c = category_from_name(cat);
    if (!c) throw std::invalid_argument("unknown category '" + cat + "'");
    edge.category = *c;
    out.push_back(std::move(edge));
  }
  return out;
}

Json to_json(const DataType& t) { return t.str(); }

Json to_json(const Field& f) {
  Json j{{"name", f.name}, {"type", f.type.str()}};
  if (!f.description.empty()) j["description"] = f.description;
  return j;
}

Json usecase_to_json(const UseCase& uc, const Document& doc) {
  Json j;
  j["name"] = uc.name;
  j["input"] = fields_json(uc.input_fields);
  j["participants"] = uc.participants;
  j["body"] = scope_json(uc, uc.body);

  std::vector<std::string> apis, tables;
  for (const auto& e : uc.elements) {
    if (const auto* m = std::get_if<Message>(&e))
      for (const auto& a : m->apis)
        if (std::find(apis.begin(), apis.end(), a) == apis.end()) apis.push_back(a);
    for (const auto& t : element_tables(e))
      if (std::find(tables.begin(), tables.end(), t) == tables.end()) tables.push_back(t);
  }
  Json api_json = Json::array();
  for (const auto& name : apis) {
    if (const ApiSpec* a = doc.find_api(name))
      api_json.push_back({{"name", a->name},
                          {"description", a->description},
                          {"request", fields_json(a->request)},
                          {"response", fields_json(a->response)}});
  }
  Json table_json = Json::array();
  for (const auto& id : tables) {
    const DecisionTable* t = doc.find_table(id);
    if (!t) continue;
    Json rules = Json::array();
    for (const auto& r : t->rules)
      rules.push_back({{"condition", optional_text(r.condition)},
                       {"condition_reads", r.condition_reads},
                       {"action", r.action},
                       {"action_reads", r.action_reads},
                       {"action_writes", fields_json(r.action_writes)}});
    table_json.push_back({{"id", t->id}, {"rules", std::move(rules)}});
  }
  j["apis"] = std::move(api_json);
  j["tables"] = std::move(table_json);
  return j;
}

Json to_json(const ExecutionDependencyGraph& g) {
  Json nodes = Json::array();
  for (NodeIndex n = 0; n < g.size(); ++n) {
    const EdgNode& node = g.nodes[n];
    Json j{{"id", node.id}, {"kind", node_kind_name(node.kind)}, {"doc_order", n}};
    j["parent"] = node.parent ? Json(g.id(*node.parent)) : Json(nullptr);
    if (node.fragment) j["fragment_kind"] = fragment_kind_name(*node.fragment);
    if (auto b = g.branch_of(node.id)) j["branch"] = {{"fragment", b->first}, {"label", b->second}};
    nodes.push_back(std::move(j));
  }
  auto pairs = [&](const auto& edges) {
    Json out = Json::array();
    for (auto [a, b] : edges) out.push_back({g.id(a), g.id(b)});
    return out;
  };
  return {{"usecase", g.usecase}, {"nodes", std::move(nodes)}, {"e_h", pairs(g.e_h)}, {"e_s", pairs(g.e_s)}};
}

Json to_json(const DataDependencyGraph& ddg, const ExecutionDependencyGraph& edg) {
  return {{"usecase", ddg.usecase},
          {"nodes", document_order(edg)},
          {"edges", to_json(ddg.edges)},
          {"diagnostics", to_json(ddg.diagnostics)}};
}

DataDependencyGraph ddg_from_json(const Json& j) {
  DataDependencyGraph g;
  g.usecase = j.at("usecase").get<std::string>();
  g.edges = edges_from_json(j.at("edges"));
  if (j.contains("diagnostics"))
    for (const auto& d : j.at("diagnostics")) g.diagnostics.push_back(diagnostic_from_json(d));
  return g;
}

Json to_json(const PredecessorSet& p) {
  return {{"target", p.target}, {"members", p.members}, {"ratio", p.reduction_ratio}};
}

Json to_json(const Metrics& m) {
  if (!m.applicable)
    return {{"applicable", false}, {"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}};
  return {{"applicable", true}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
          {"tp", m.tp},         {"fp", m.fp},               {"fn", m.fn}};
}

Json to_json(const EvaluationReport& r) {
  auto scores = [](const CategoryScores& s) {
    Json j;
    for (std::size_t c = 0; c < kScoreCategories; ++c)
      j[std::string(score_category_name(static_cast<ScoreCategory>(c)))] = to_json(s[c]);
    return j;
  };
  Json per = Json::object();
  for (const auto& u : r.per_usecase) per[u.usecase] = scores(u.scores);
  return {{"per_usecase", std::move(per)}, {"macro", scores(r.macro)}};
}

Json to_json(const GoldAnnotation& g) { return {{"usecase", g.usecase}, {"edges", to_json(g.edges)}}; }

GoldAnnotation gold_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("usecase") || !j.at("usecase").is_string())
    throw std::invalid_argument("gold annotation needs a \"usecase\" string");
  return {j.at("usecase").get<std::string>(), edges_from_json(j)};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace seqdep
