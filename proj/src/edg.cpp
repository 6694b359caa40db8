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

#include "seqdep/edg.hpp"

#include "seqdep/diagnostic.hpp"

namespace seqdep {

namespace {

// Phase 1: number nodes in pre-order and record containment.
void add_scope(const UseCase& uc, const std::vector<std::size_t>& elements, NodeIndex parent,
               std::optional<std::pair<NodeIndex, std::size_t>> branch,
               ExecutionDependencyGraph& g, EdgScope& scope) {
  for (std::size_t idx : elements) {
    const Element& e = uc.elements[idx];
    const NodeIndex n = g.nodes.size();
    EdgNode node;
    node.id = element_id(e);
    node.parent = parent;
    node.branch = branch;
    if (std::holds_alternative<Message>(e)) {
      node.kind = NodeKind::Function;
    } else if (std::holds_alternative<ReturnMessage>(e)) {
      node.kind = NodeKind::Output;
    } else {
      node.kind = NodeKind::Control;
      node.fragment = std::get<Fragment>(e).kind;
    }
    g.nodes.push_back(std::move(node));
    g.scopes.emplace_back();
    g.e_h.emplace_back(parent, n);
    scope.children.push_back(n);

    if (const auto* f = std::get_if<Fragment>(&e)) {
      std::vector<EdgScope> inner(f->branches.size());
      for (std::size_t b = 0; b < f->branches.size(); ++b) {
        inner[b].label = f->branches[b].label;
        add_scope(uc, f->branches[b].elements, n, std::pair{n, b}, g, inner[b]);
      }
      g.scopes[n] = std::move(inner);
    }
  }
}

// Phase 2: consecutive siblings of each scope, recursing top-down into every
// child fragment. Branches are separate scopes, so no edge crosses them.
void link_scope(ExecutionDependencyGraph& g, const EdgScope& scope) {
  for (std::size_t i = 1; i < scope.children.size(); ++i)
    g.e_s.emplace_back(scope.children[i - 1], scope.children[i]);
  for (NodeIndex child : scope.children)
    for (const EdgScope& inner : g.scopes[child]) link_scope(g, inner);
}

}  // namespace

NodeIndex ExecutionDependencyGraph::index_of(std::string_view id) const {
  if (auto it = by_id_.find(id); it != by_id_.end()) return it->second;
  throw LookupError("unknown node '" + std::string(id) + "' in use case " + usecase);
}

bool ExecutionDependencyGraph::contains(std::string_view id) const {
  return by_id_.contains(id);
}

std::optional<std::pair<std::string, std::string>> ExecutionDependencyGraph::branch_of(
    std::string_view id) const {
  const auto& b = nodes.at(index_of(id)).branch;
  if (!b) return std::nullopt;
  return std::pair{nodes[b->first].id, scopes[b->first][b->second].label};
}

void ExecutionDependencyGraph::index_edges() {
  seq_pred_.assign(nodes.size(), {});
  h_children_.assign(nodes.size(), {});
  by_id_.clear();
  for (NodeIndex i = 0; i < nodes.size(); ++i) by_id_.emplace(nodes[i].id, i);
  for (auto [p, c] : e_h) h_children_[p].push_back(c);
  for (auto [a, b] : e_s) seq_pred_[b].push_back(a);
}

ExecutionDependencyGraph build_edg(const UseCase& usecase) {
  ExecutionDependencyGraph g;
  g.usecase = usecase.name;
  g.nodes.push_back(EdgNode{std::string(kInputId), NodeKind::Input, std::nullopt, std::nullopt,
                            std::nullopt});
  g.scopes.emplace_back(1);
  EdgScope top;
  add_scope(usecase, usecase.body, ExecutionDependencyGraph::root(), std::nullopt, g, top);
  g.scopes[0][0] = std::move(top);
  link_scope(g, g.scopes[0][0]);
  g.index_edges();
  return g;
}

std::vector<std::string> document_order(const ExecutionDependencyGraph& edg) {
  std::vector<std::string> out;
  out.reserve(edg.nodes.size());
  for (const auto& n : edg.nodes) out.push_back(n.id);
  return out;
}

}  // namespace seqdep
