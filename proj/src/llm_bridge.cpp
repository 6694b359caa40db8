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

#include "seqdep/llm_bridge.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace seqdep {

namespace {

constexpr std::size_t kRawLimit = 4000;

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string fields_text(const std::vector<Field>& fields) {
  if (fields.empty()) return "(none)";
  std::vector<std::string> parts;
  for (const auto& f : fields) parts.push_back(f.name + ": " + f.type.str());
  return join(parts);
}

std::string slot_text(Slot s) {
  switch (s) {
    case Slot::ApiRequest: return "api request";
    case Slot::TableConditionRead: return "table condition";
    case Slot::TableActionRead: return "table action";
    case Slot::ReturnField: return "returned field";
    default: return std::string(slot_name(s));
  }
}

void write_tables(std::ostringstream& os, const Element& e, const Document& doc) {
  const auto& ids = element_tables(e);
  if (ids.empty()) {
    os << "- Decision Tables: none\n";
    return;
  }
  os << "- Decision Tables:\n";
  for (const auto& id : ids) {
    os << "  - " << id << "\n";
    const DecisionTable* t = doc.find_table(id);
    if (!t) continue;
    for (const auto& r : t->rules) {
      os << "    - ";
      if (r.condition)
        os << "when \"" << *r.condition << "\" reads [" << join(r.condition_reads) << "]";
      else
        os << "otherwise";
      os << " then \"" << r.action << "\"";
      if (!r.action_reads.empty()) os << " reads [" << join(r.action_reads) << "]";
      if (!r.action_writes.empty()) os << " writes [" << fields_text(r.action_writes) << "]";
      os << "\n";
    }
  }
}

void write_api(std::ostringstream& os, const Message& m, const Document& doc) {
  for (const auto& name : m.apis) {
    const ApiSpec* api = doc.find_api(name);
    if (!api) {
      os << "- API: " << name << " (unresolved)\n";
      continue;
    }
    os << "- API: " << api->name;
    if (!api->description.empty()) os << " (" << api->description << ")";
    os << "\n  - Request: " << fields_text(api->request)
       << "\n  - Response: " << fields_text(api->response) << "\n";
  }
}

void write_node_block(std::ostringstream& os, const UseCaseAnalysis& analysis, const std::string& id,
                      bool is_target, const PredecessorSet& context) {
  const UseCase& uc = analysis.usecase();
  const Document& doc = analysis.document();
  const auto& edg = analysis.edg();
  const NodeKind kind = edg.nodes[edg.index_of(id)].kind;

  os << "### Node " << id << "\n- Type: " << node_kind_name(kind) << "\n";
  if (auto where = edg.branch_of(id); where && (context.contains(where->first))) {
    os << "- Enclosed by: " << where->first;
    if (!where->second.empty()) os << ", branch \"" << where->second << "\"";
    os << "\n";
  }
  if (kind == NodeKind::Input) {
    os << "- Fields: " << fields_text(uc.input_fields) << "\n";
  } else {
    const Element& e = *uc.find(id);
    if (const auto* m = std::get_if<Message>(&e)) {
      os << "- Call: " << m->from << " -> " << m->to << "\n";
      write_api(os, *m, doc);
      write_tables(os, e, doc);
    } else if (const auto* f = std::get_if<Fragment>(&e)) {
      os << "- Fragment: " << fragment_kind_name(f->kind);
      std::vector<std::string> labels;
      for (const auto& b : f->branches)
        if (!b.label.empty()) labels.push_back("\"" + b.label + "\"");
      if (!labels.empty()) os << " with branches " << join(labels);
      os << "\n";
      write_tables(os, e, doc);
    } else if (const auto* r = std::get_if<ReturnMessage>(&e)) {
      os << "- Returns: " << fields_text(r->fields) << "\n";
    }
  }

  if (is_target) {
    std::vector<std::string> parts;
    for (const auto& o : data_consumed(id, uc, doc)) parts.push_back(o.entity + " [" + slot_text(o.slot) + "]");
    os << "- Consumes: " << join(parts) << "\n";
  } else {
    const auto produced = entity_names(data_produced(id, uc, doc));
    os << "- Produces: " << (produced.empty() ? std::string("(nothing)") : join(produced)) << "\n";
  }
}

std::string problem_section() {
  return R"(Given a UML sequence diagram, construct its data dependency graph
G_DD = (V, E_DD, D) where:

- Nodes: V = I ∪ F ∪ C ∪ O. I = {@input} carries the use-case input fields;
  F holds function nodes (messages, each calling one API); C holds control
  nodes (combined fragments, optionally bound to decision tables); O holds
  output nodes (return messages).
- Edges: E_DD ⊆ (I ∪ F ∪ C) × D × (F ∪ C ∪ O). An edge (s, d, t) states that
  node t consumes data entity d, and that the value of d used by t is the one
  produced by node s. No edge enters @input or leaves an output node.
- Data consumption categories: a node t consumes d as
  api: d is a request field of the API called by t, or a field returned by
       the output node t;
  condition: d is read by a rule condition of a decision table bound to t;
  action: d is read by a rule action of a decision table bound to t.
- Data production categories: @input produces its input fields; a function
  node produces the response fields of its API and the fields written by
  actions of its decision tables; a control node produces the fields written
  by actions of its decision tables; output nodes produce nothing.
)";
}

std::string constraints_section(std::string_view target) {
  std::ostringstream os;
  os << "1. Completeness: for every data entity consumed by " << target
     << ", emit at least one\n"
        "   edge whose source produces that entity, whenever a reachable node\n"
        "   produces it.\n"
        "2. Dependency path validity: every source must be one of the reachable nodes\n"
        "   listed above, and every target must be "
     << target
     << ". Do not reference any other node.\n"
        "3. Consistency with reachability: (s, d, t) is valid only when reachable(s, t)\n"
        "   holds, that is s executes before t on at least one execution path. When\n"
        "   several reachable nodes produce d, keep the ones whose value can still be\n"
        "   current when t runs.\n"
        "4. Use node ids and entity names exactly as they appear above.\n";
  return os.str();
}

std::string output_section(std::string_view target) {
  std::ostringstream os;
  os << "Provide dependency edges as a single JSON object matching this schema:\n\n"
        "```json\n"
        "{\n"
        "  \"type\": \"object\",\n"
        "  \"required\": [\"edges\"],\n"
        "  \"properties\": {\n"
        "    \"edges\": {\n"
        "      \"type\": \"array\",\n"
        "      \"items\": {\n"
        "        \"type\": \"object\",\n"
        "        \"required\": [\"source\", \"data\", \"target\", \"category\"],\n"
        "        \"properties\": {\n"
        "          \"source\": {\"type\": \"string\"},\n"
        "          \"data\": {\"type\": \"string\"},\n"
        "          \"target\": {\"type\": \"string\"},\n"
        "          \"category\": {\"enum\": [\"api\", \"condition\", \"action\"]}\n"
        "        }\n"
        "      }\n"
        "    }\n"
        "  }\n"
        "}\n"
        "```\n\n"
        "Example: {\"edges\": [{\"source\": \"@input\", \"data\": \"<entity>\", \"target\": \""
     << target << "\", \"category\": \"api\"}]}\n";
  return os.str();
}

// Offset one past the bracket closing the one at `open`, honouring strings.
std::optional<std::size_t> balanced_end(std::string_view text, std::size_t open) {
  std::vector<char> stack;
  bool in_string = false, escaped = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      stack.push_back(c == '{' ? '}' : ']');
    } else if (c == '}' || c == ']') {
      if (stack.empty() || stack.back() != c) return std::nullopt;
      stack.pop_back();
      if (stack.empty()) return i + 1;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<RawEdge>> conforming_edges(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    auto it = j.find("edges");
    if (it == j.end()) return std::nullopt;
    list = &*it;
  }
  if (!list->is_array()) return std::nullopt;
  std::vector<RawEdge> out;
  for (const auto& e : *list) {
    if (!e.is_object()) return std::nullopt;
    RawEdge edge;
    for (auto [key, dest] : {std::pair{"source", &edge.source}, std::pair{"data", &edge.data},
                             std::pair{"target", &edge.target}}) {
      auto it = e.find(key);
      if (it == e.end() || !it->is_string()) return std::nullopt;
      *dest = it->get<std::string>();
    }
    if (auto it = e.find("category"); it != e.end()) {
      if (!it->is_string()) return std::nullopt;
      edge.category = it->get<std::string>();
    }
    out.push_back(std::move(edge));
  }
  return out;
}

std::string resolve_id(const ExecutionDependencyGraph& edg, const std::string& raw) {
  return edg.contains(raw) ? raw : normalize_name(raw);
}

std::string clip(std::string_view raw) {
  if (raw.size() <= kRawLimit) return std::string(raw);
  return std::string(raw.substr(0, kRawLimit)) + "...[" + std::to_string(raw.size() - kRawLimit) +
         " more bytes]";
}

}  // namespace

PromptDocument build_prompt(const UseCaseAnalysis& analysis, std::string_view target,
                            const PredecessorSet& context) {
  if (context.target != target)
    throw std::invalid_argument("context was computed for " + context.target + ", not " +
                                std::string(target));
  const UseCase& uc = analysis.usecase();
  const auto& edg = analysis.edg();
  edg.index_of(target);  // LookupError for unknown ids
  if (data_consumed(target, uc, analysis.document()).empty())
    throw BridgeError(make_diagnostic(DiagCode::NoConsumption,
                                      std::string(target) + " consumes no data; nothing to infer",
                                      std::string(target)));

  std::ostringstream ctx;
  ctx << "## Sequence Diagram Context\n\n"
      << "- Use case: " << uc.name << "\n"
      << "- Participants: " << (uc.participants.empty() ? "(none)" : join(uc.participants)) << "\n"
      << "- Input fields: " << fields_text(uc.input_fields) << "\n"
      << "- Target node: " << target << "\n"
      << "- " << context.members.size() << " of the " << edg.size() - 1
      << " other nodes can execute before the target.\n\n"
      << "## Reachable Nodes P(" << target << ")\n\n";
  for (const auto& id : document_order(edg)) {
    if (!context.contains(id)) continue;
    write_node_block(ctx, analysis, id, false, context);
    ctx << "\n";
  }
  ctx << "## Target Node " << target << "\n\n";
  write_node_block(ctx, analysis, std::string(target), true, context);

  PromptDocument doc;
  doc.sections = {
      {std::string(kPromptHeadings[0]), problem_section()},
      {std::string(kPromptHeadings[1]), ctx.str()},
      {std::string(kPromptHeadings[2]), constraints_section(target)},
      {std::string(kPromptHeadings[3]), output_section(target)},
  };
  for (std::size_t i = 0; i < doc.sections.size(); ++i) {
    if (i) doc.rendered += "\n";
    doc.rendered += "# " + doc.sections[i].heading + "\n\n" + doc.sections[i].body;
  }
  return doc;
}

PromptDocument build_prompt(const UseCaseAnalysis& analysis, std::string_view target) {
  if (target == kInputId)
    throw BridgeError(make_diagnostic(DiagCode::NoConsumption,
                                      "the input node consumes no data; nothing to infer",
                                      std::string(kInputId)));
  return build_prompt(analysis, target, analysis.predecessors(target));
}

std::optional<LlmEdgeResponse> extract_response(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{' && text[i] != '[') continue;
    const auto end = balanced_end(text, i);
    if (!end) continue;
    const auto j = nlohmann::json::parse(text.substr(i, *end - i), nullptr, false);
    if (j.is_discarded()) continue;
    if (auto edges = conforming_edges(j)) return LlmEdgeResponse{std::move(*edges), std::string(text)};
    // A conforming payload may sit inside a non-conforming wrapper, so keep
    // scanning from the next character rather than past this value.
  }
  return std::nullopt;
}

BridgeResult parse_response(const UseCaseAnalysis& analysis, std::string_view text,
                            std::string_view target, const PredecessorSet& context) {
  BridgeResult result;
  const auto response = extract_response(text);
  if (!response) {
    result.diagnostics.push_back(make_diagnostic(
        DiagCode::ResponseFormat, "no JSON edge list in model response; raw text: " + clip(text),
        std::string(target)));
    return result;
  }

  const auto& edg = analysis.edg();
  const UseCase& uc = analysis.usecase();
  const Document& doc = analysis.document();
  for (const auto& raw : response->edges) {
    DependencyEdge edge{resolve_id(edg, raw.source), normalize_name(raw.data),
                        resolve_id(edg, raw.target), EdgeCategory::Api};
    std::optional<std::string> why;
    if (edge.target != target)
      why = "targets " + edge.target + ", not the requested " + std::string(target);
    else if (!context.contains(edge.source))
      why = edge.source + " is not in P(" + edge.target + ")";
    else
      why = edge_violation(analysis, edge);
    if (why) {
      result.diagnostics.push_back(make_diagnostic(
          DiagCode::EdgeConstraint,
          "dropped edge (" + edge.source + ", " + edge.data + ", " + edge.target + "): " + *why,
          edge.target, edge.data));
      continue;
    }
    const CategoryResult cat = classify_edge_category(edge.source, edge.data, edge.target, uc, doc);
    edge.category = *cat.category;
    const bool seen = std::any_of(result.edges.begin(), result.edges.end(), [&](const auto& e) {
      return e.source == edge.source && e.data == edge.data;
    });
    if (seen) continue;
    for (const auto& d : cat.diagnostics)
      if (std::find(result.diagnostics.begin(), result.diagnostics.end(), d) == result.diagnostics.end())
        result.diagnostics.push_back(d);
    for (auto& w : edge_type_diagnostics(edge, uc, doc)) result.diagnostics.push_back(std::move(w));
    result.edges.push_back(std::move(edge));
  }
  return result;
}

BridgeResult infer_with_llm(const UseCaseAnalysis& analysis, std::string_view target,
                            Transport& transport, const CompletionParams& params) {
  BridgeResult result;
  PromptDocument prompt;
  try {
    prompt = build_prompt(analysis, target);
  } catch (const BridgeError& e) {
    result.diagnostics.push_back(e.diagnostic);
    return result;
  }
  const PredecessorSet& context = analysis.predecessors(target);

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = transport.send(prompt.rendered, params);
    } catch (const std::exception& e) {
      result.diagnostics = {make_diagnostic(DiagCode::Transport,
                                            transport.name() + " transport failed: " + e.what(),
                                            std::string(target))};
      return result;
    }
    result = parse_response(analysis, reply, target, context);
    if (count_code(result.diagnostics, DiagCode::ResponseFormat) == 0) return result;
  }
  return result;
}

DataDependencyGraph infer_all_with_llm(const UseCaseAnalysis& analysis, Transport& transport,
                                       const CompletionParams& params, std::size_t max_in_flight) {
  if (max_in_flight == 0) throw std::invalid_argument("max_in_flight must be positive");
  const auto& edg = analysis.edg();
  std::vector<std::string> targets;
  for (NodeIndex n = 1; n < edg.size(); ++n)
    if (!data_consumed(edg.id(n), analysis.usecase(), analysis.document()).empty())
      targets.push_back(edg.id(n));

  std::vector<BridgeResult> parts(targets.size());
  const long count = static_cast<long>(targets.size());
#pragma omp parallel for num_threads(static_cast<int>(max_in_flight)) schedule(dynamic, 1)
  for (long i = 0; i < count; ++i)
    parts[i] = infer_with_llm(analysis, targets[i], transport, params);

  DataDependencyGraph g;
  g.usecase = analysis.usecase().name;
  for (auto& p : parts) {
    g.edges.insert(g.edges.end(), p.edges.begin(), p.edges.end());
    g.diagnostics.insert(g.diagnostics.end(), p.diagnostics.begin(), p.diagnostics.end());
  }
  sort_edges(g.edges, edg);
  return g;
}

}  // namespace seqdep
