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

#include "seqdep/export.hpp"

#include <stdexcept>

#include "seqdep/json_io.hpp"

namespace seqdep {

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* shape_of(NodeKind k) {
  switch (k) {
    case NodeKind::Input: return "ellipse";
    case NodeKind::Function: return "box";
    case NodeKind::Control: return "hexagon";
    case NodeKind::Output: return "note";
  }
  return "box";
}

std::string dot_nodes(const ExecutionDependencyGraph& g) {
  std::string out;
  for (const auto& n : g.nodes) {
    std::string label = n.id;
    if (n.fragment) label += " [" + std::string(fragment_kind_name(*n.fragment)) + "]";
    out += "  " + dot_id(n.id) + " [shape=" + shape_of(n.kind) + ", label=" + dot_id(label) + "];\n";
  }
  return out;
}

}  // namespace

GraphFormat graph_format_from_name(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  throw std::invalid_argument("unknown graph format '" + std::string(name) + "' (expected dot or json)");
}

std::string export_graph(const ExecutionDependencyGraph& g, GraphFormat format) {
  if (format == GraphFormat::Json) return envelope(to_json(g)).dump(2) + "\n";
  std::string out = "digraph " + dot_id(g.usecase) + " {\n  rankdir=TB;\n";
  out += dot_nodes(g);
  for (auto [a, b] : g.e_h) out += "  " + dot_id(g.id(a)) + " -> " + dot_id(g.id(b)) + " [style=dashed];\n";
  for (auto [a, b] : g.e_s) out += "  " + dot_id(g.id(a)) + " -> " + dot_id(g.id(b)) + " [style=solid];\n";
  return out + "}\n";
}

std::string export_graph(const DataDependencyGraph& ddg, const ExecutionDependencyGraph& edg,
                         GraphFormat format) {
  if (format == GraphFormat::Json) return envelope(to_json(ddg, edg)).dump(2) + "\n";
  std::string out = "digraph " + dot_id(ddg.usecase) + " {\n  rankdir=LR;\n";
  out += dot_nodes(edg);
  for (const auto& e : ddg.edges) {
    const std::string label = e.data + " (" + std::string(category_name(e.category)) + ")";
    out += "  " + dot_id(e.source) + " -> " + dot_id(e.target) + " [style=solid, label=" + dot_id(label) + "];\n";
  }
  return out + "}\n";
}

}  // namespace seqdep
