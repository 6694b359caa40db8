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

#include "seqdep/dependency.hpp"

#include <algorithm>
#include <tuple>
#include <stdexcept>

namespace seqdep {

namespace {

void push_unique(std::vector<EntityOccurrence>& out, EntityOccurrence occ) {
  auto same = [&](const EntityOccurrence& o) { return o.entity == occ.entity && o.slot == occ.slot; };
  if (std::none_of(out.begin(), out.end(), same)) out.push_back(std::move(occ));
}

void add_fields(std::vector<EntityOccurrence>& out, const std::vector<Field>& fields, Slot slot,
                std::string_view node) {
  for (const auto& f : fields) push_unique(out, {f.name, f.type, slot, std::string(node)});
}

void add_names(std::vector<EntityOccurrence>& out, const std::vector<std::string>& names, Slot slot,
               std::string_view node) {
  for (const auto& n : names) push_unique(out, {n, std::nullopt, slot, std::string(node)});
}

std::vector<const DecisionTable*> bound_tables(const Element& e, const Document& doc) {
  std::vector<const DecisionTable*> out;
  for (const auto& id : element_tables(e))
    if (const DecisionTable* t = doc.find_table(id)) out.push_back(t);
  return out;
}

std::vector<const ApiSpec*> called_apis(const Element& e, const Document& doc) {
  std::vector<const ApiSpec*> out;
  if (const auto* m = std::get_if<Message>(&e))
    for (const auto& a : m->apis)
      if (const ApiSpec* api = doc.find_api(a)) out.push_back(api);
  return out;
}

const Element& element_or_throw(std::string_view node, const UseCase& uc) {
  const Element* e = uc.find(node);
  if (!e) throw LookupError("unknown node '" + std::string(node) + "' in use case " + uc.name);
  return *e;
}

std::string conversion_hint(const DataType& from, const DataType& to) {
  switch (relate_types(from, to)) {
    case TypeRelation::Widening:
      return "widen " + from.str() + " to " + to.str() + " before use";
    case TypeRelation::Narrowing:
      return "narrowing " + from.str() + " to " + to.str() +
             " may lose data; add an explicit checked conversion";
    default:
      return "kind mismatch; convert " + from.str() + " to " + to.str() + " explicitly";
  }
}

}  // namespace

std::string_view slot_name(Slot s) {
  switch (s) {
    case Slot::ApiRequest: return "api_request";
    case Slot::ApiResponse: return "api_response";
    case Slot::TableConditionRead: return "table_condition_read";
    case Slot::TableActionRead: return "table_action_read";
    case Slot::TableActionWrite: return "table_action_write";
    case Slot::InputField: return "input_field";
    case Slot::ReturnField: return "return_field";
  }
  return "api_request";
}

bool is_producer_slot(Slot s) {
  return s == Slot::ApiResponse || s == Slot::TableActionWrite || s == Slot::InputField;
}

std::vector<EntityOccurrence> data_produced(std::string_view node, const UseCase& usecase,
                                            const Document& document) {
  std::vector<EntityOccurrence> out;
  if (node == kInputId) {
    add_fields(out, usecase.input_fields, Slot::InputField, node);
    return out;
  }
  const Element& e = element_or_throw(node, usecase);
  if (std::holds_alternative<ReturnMessage>(e)) return out;
  for (const ApiSpec* api : called_apis(e, document))
    add_fields(out, api->response, Slot::ApiResponse, node);
  for (const DecisionTable* t : bound_tables(e, document))
    for (const auto& r : t->rules) add_fields(out, r.action_writes, Slot::TableActionWrite, node);
  return out;
}

std::vector<EntityOccurrence> data_consumed(std::string_view node, const UseCase& usecase,
                                            const Document& document) {
  std::vector<EntityOccurrence> out;
  if (node == kInputId) return out;
  const Element& e = element_or_throw(node, usecase);
  if (const auto* r = std::get_if<ReturnMessage>(&e)) {
    add_fields(out, r->fields, Slot::ReturnField, node);
    return out;
  }
  for (const ApiSpec* api : called_apis(e, document))
    add_fields(out, api->request, Slot::ApiRequest, node);
  for (const DecisionTable* t : bound_tables(e, document)) {
    for (const auto& r : t->rules) {
      add_names(out, r.condition_reads, Slot::TableConditionRead, node);
      add_names(out, r.action_reads, Slot::TableActionRead, node);
    }
  }
  return out;
}

std::vector<std::string> entity_names(const std::vector<EntityOccurrence>& occurrences) {
  std::vector<std::string> out;
  for (const auto& o : occurrences)
    if (std::find(out.begin(), out.end(), o.entity) == out.end()) out.push_back(o.entity);
  return out;
}

CategoryResult classify_edge_category(std::string_view source, std::string_view data,
                                      std::string_view target, const UseCase& usecase,
                                      const Document& document) {
  CategoryResult result;
  bool api = false, condition = false, action = false;
  for (const auto& occ : data_consumed(target, usecase, document)) {
    if (occ.entity != data) continue;
    switch (occ.slot) {
      case Slot::ApiRequest:
      case Slot::ReturnField: api = true; break;
      case Slot::TableConditionRead: condition = true; break;
      case Slot::TableActionRead: action = true; break;
      default: break;
    }
  }
  const std::string edge_text =
      "(" + std::string(source) + ", " + std::string(data) + ", " + std::string(target) + ")";
  if (!api && !condition && !action) {
    result.diagnostics.push_back(make_diagnostic(
        DiagCode::EdgeConstraint,
        "edge " + edge_text + ": " + std::string(target) + " does not consume " + std::string(data),
        std::string(target), std::string(data)));
    return result;
  }
  result.category = api ? EdgeCategory::Api
                        : (condition ? EdgeCategory::Condition : EdgeCategory::Action);
  if (int(api) + int(condition) + int(action) > 1)
    result.diagnostics.push_back(make_diagnostic(
        DiagCode::AmbiguousSlot,
        std::string(data) + " is consumed in several slots of " + std::string(target) +
            "; classified as " + std::string(category_name(*result.category)),
        std::string(target), std::string(data)));
  return result;
}

std::optional<Diagnostic> check_type_compatibility(const EntityOccurrence& producer,
                                                   const EntityOccurrence& consumer) {
  if (!producer.dtype || !consumer.dtype) return std::nullopt;
  if (*producer.dtype == *consumer.dtype) return std::nullopt;
  std::string msg = producer.entity + ": " + producer.node + " supplies " +
                    producer.dtype->str() + " but " + consumer.node + " expects " +
                    consumer.dtype->str() + "; " + conversion_hint(*producer.dtype, *consumer.dtype);
  return make_diagnostic(DiagCode::TypeCompat, std::move(msg), consumer.node, consumer.entity);
}

std::vector<Diagnostic> edge_type_diagnostics(const DependencyEdge& edge, const UseCase& usecase,
                                              const Document& document) {
  std::vector<Diagnostic> out;
  for (const auto& p : data_produced(edge.source, usecase, document)) {
    if (p.entity != edge.data) continue;
    for (const auto& c : data_consumed(edge.target, usecase, document))
      if (c.entity == edge.data)
        if (auto w = check_type_compatibility(p, c)) out.push_back(std::move(*w));
    break;
  }
  return out;
}

UseCaseAnalysis::UseCaseAnalysis(const UseCase& usecase, const Document& document)
    : usecase_(&usecase),
      document_(&document),
      edg_(build_edg(usecase)),
      exits_(edg_),
      preds_(all_predecessor_sets(edg_)) {}

const PredecessorSet& UseCaseAnalysis::predecessors(std::string_view target) const {
  const NodeIndex t = edg_.index_of(target);
  if (t == ExecutionDependencyGraph::root())
    throw std::invalid_argument("the input node has no predecessors");
  return preds_[t - 1];
}

bool UseCaseAnalysis::reachable(std::string_view source, std::string_view target) const {
  if (target == kInputId) return false;
  return predecessors(target).contains(source);
}

void sort_edges(std::vector<DependencyEdge>& edges, const ExecutionDependencyGraph& edg) {
  auto order = [&](const std::string& id) {
    return edg.contains(id) ? edg.index_of(id) : edg.size();
  };
  std::sort(edges.begin(), edges.end(), [&](const DependencyEdge& a, const DependencyEdge& b) {
    auto ka = std::tuple(order(a.target), a.data, order(a.source), a.source, a.category);
    auto kb = std::tuple(order(b.target), b.data, order(b.source), b.source, b.category);
    return ka < kb;
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

InferenceResult infer_rule_based(const UseCaseAnalysis& analysis, std::string_view target,
                                 const PredecessorSet& context) {
  if (context.target != target)
    throw std::invalid_argument("context was computed for " + context.target + ", not " +
                                std::string(target));
  const UseCase& uc = analysis.usecase();
  const Document& doc = analysis.document();
  InferenceResult result;

  const auto consumed = data_consumed(target, uc, doc);
  for (const auto& name : entity_names(consumed)) {
    std::vector<std::string> candidates;
    for (const auto& s : context.members) {
      const auto produced = data_produced(s, uc, doc);
      if (std::any_of(produced.begin(), produced.end(),
                      [&](const EntityOccurrence& o) { return o.entity == name; }))
        candidates.push_back(s);
    }
    if (candidates.empty()) {
      result.diagnostics.push_back(make_diagnostic(
          DiagCode::MissingSource,
          "no predecessor of " + std::string(target) + " produces " + name +
              "; review the operations that should supply it",
          std::string(target), name));
      continue;
    }
    std::vector<std::string> survivors;
    for (const auto& s1 : candidates) {
      const bool shadowed = std::any_of(candidates.begin(), candidates.end(), [&](const auto& s2) {
        return s2 != s1 && analysis.reachable(s1, s2);
      });
      if (!shadowed) survivors.push_back(s1);
    }

    const CategoryResult cat = classify_edge_category(survivors.front(), name, target, uc, doc);
    for (const auto& d : cat.diagnostics) result.diagnostics.push_back(d);
    for (const auto& s : survivors) {
      DependencyEdge edge{s, name, std::string(target), *cat.category};
      for (auto& w : edge_type_diagnostics(edge, uc, doc)) result.diagnostics.push_back(std::move(w));
      result.edges.push_back(std::move(edge));
    }
  }
  return result;
}

InferenceResult infer_rule_based(const UseCaseAnalysis& analysis, std::string_view target) {
  return infer_rule_based(analysis, target, analysis.predecessors(target));
}

namespace {

DataDependencyGraph merge(const UseCaseAnalysis& analysis, std::vector<InferenceResult>& parts) {
  DataDependencyGraph g;
  g.usecase = analysis.usecase().name;
  for (auto& p : parts) {
    g.edges.insert(g.edges.end(), p.edges.begin(), p.edges.end());
    g.diagnostics.insert(g.diagnostics.end(), p.diagnostics.begin(), p.diagnostics.end());
  }
  sort_edges(g.edges, analysis.edg());
  return g;
}

}  // namespace

DataDependencyGraph infer_all(const UseCaseAnalysis& analysis) {
  const auto& edg = analysis.edg();
  const auto n = static_cast<long>(edg.size());
  std::vector<InferenceResult> parts(edg.size());
#pragma omp parallel for schedule(dynamic)
  for (long t = 1; t < n; ++t) {
    const std::string& id = edg.id(static_cast<NodeIndex>(t));
    parts[static_cast<std::size_t>(t)] = infer_rule_based(analysis, id);
  }
  return merge(analysis, parts);
}

DataDependencyGraph infer_all(const UseCase& usecase, const Document& document) {
  return infer_all(UseCaseAnalysis(usecase, document));
}

DataDependencyGraph infer_all_serial(const UseCaseAnalysis& analysis) {
  const auto& edg = analysis.edg();
  std::vector<InferenceResult> parts(edg.size());
  for (NodeIndex t = 1; t < edg.size(); ++t) parts[t] = infer_rule_based(analysis, edg.id(t));
  return merge(analysis, parts);
}

std::optional<std::string> edge_violation(const UseCaseAnalysis& analysis,
                                          const DependencyEdge& edge) {
  const auto& edg = analysis.edg();
  for (const auto* id : {&edge.source, &edge.target})
    if (!edg.contains(*id)) return "unknown node " + *id;
  const NodeKind sk = edg.nodes[edg.index_of(edge.source)].kind;
  const NodeKind tk = edg.nodes[edg.index_of(edge.target)].kind;
  if (auto why = edge_kind_violation(edge.source, sk, edge.target, tk)) return why;
  if (!analysis.reachable(edge.source, edge.target))
    return edge.source + " is not in P(" + edge.target + ")";
  const auto consumed = data_consumed(edge.target, analysis.usecase(), analysis.document());
  if (std::none_of(consumed.begin(), consumed.end(),
                   [&](const EntityOccurrence& o) { return o.entity == edge.data; }))
    return edge.target + " does not consume " + edge.data;
  return std::nullopt;
}

std::vector<Diagnostic> validate_ddg(const DataDependencyGraph& ddg,
                                     const UseCaseAnalysis& analysis) {
  if (ddg.usecase != analysis.usecase().name)
    throw std::invalid_argument("graph is for use case " + ddg.usecase + ", not " +
                                analysis.usecase().name);
  std::vector<Diagnostic> out;
  for (const auto& e : ddg.edges) {
    if (auto why = edge_violation(analysis, e))
      out.push_back(make_diagnostic(DiagCode::EdgeConstraint,
                                    "edge (" + e.source + ", " + e.data + ", " + e.target +
                                        "): " + *why,
                                    e.target, e.data));
  }
  const auto& edg = analysis.edg();
  for (NodeIndex t = 1; t < edg.size(); ++t) {
    const std::string& id = edg.id(t);
    for (const auto& name :
         entity_names(data_consumed(id, analysis.usecase(), analysis.document()))) {
      const bool covered = std::any_of(ddg.edges.begin(), ddg.edges.end(), [&](const auto& e) {
        return e.target == id && e.data == name;
      });
      if (!covered)
        out.push_back(make_diagnostic(DiagCode::MissingSource,
                                      "no incoming edge supplies " + name + " to " + id, id, name));
    }
  }
  return out;
}

}  // namespace seqdep
