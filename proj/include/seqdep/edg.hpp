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

// Execution dependency graph: the node set of a use case with hierarchical
// containment edges (fragment -> contained element, @input -> top level) and
// sequential edges between consecutive siblings of one scope.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqdep/model.hpp"

namespace seqdep {

using NodeIndex = std::size_t;

struct EdgNode {
  std::string id;
  NodeKind kind = NodeKind::Input;
  std::optional<FragmentKind> fragment;  // set for Control nodes
  std::optional<NodeIndex> parent;       // e_h parent; empty only for the root
  std::optional<std::pair<NodeIndex, std::size_t>> branch;  // (fragment, branch index)
};

struct EdgScope {
  std::string label;
  std::vector<NodeIndex> children;  // in execution order
};

/// Nodes are stored in document (pre-order) order, so a node's index is its
/// doc_order and the root @input is index 0.
class ExecutionDependencyGraph {
 public:
  std::string usecase;
  std::vector<EdgNode> nodes;
  /// Child scopes per node: one per branch for fragments, a single scope for
  /// the root, none for messages and returns.
  std::vector<std::vector<EdgScope>> scopes;
  std::vector<std::pair<NodeIndex, NodeIndex>> e_h;
  std::vector<std::pair<NodeIndex, NodeIndex>> e_s;

  static constexpr NodeIndex root() { return 0; }
  std::size_t size() const { return nodes.size(); }
  const std::string& id(NodeIndex n) const { return nodes.at(n).id; }
  NodeIndex index_of(std::string_view id) const;  // throws LookupError
  bool contains(std::string_view id) const;
  std::size_t doc_order(std::string_view id) const { return index_of(id); }

  /// (fragment id, branch label) for nodes nested in a fragment.
  std::optional<std::pair<std::string, std::string>> branch_of(std::string_view id) const;

  const std::vector<NodeIndex>& sequential_preds(NodeIndex n) const { return seq_pred_.at(n); }
  const std::vector<NodeIndex>& children(NodeIndex n) const { return h_children_.at(n); }

  /// Recomputes adjacency lists from e_h/e_s; build_edg calls it.
  void index_edges();

 private:
  std::vector<std::vector<NodeIndex>> seq_pred_;
  std::vector<std::vector<NodeIndex>> h_children_;
  std::map<std::string, NodeIndex, std::less<>> by_id_;
};

ExecutionDependencyGraph build_edg(const UseCase& usecase);

/// Node ids in document order, @input first.
std::vector<std::string> document_order(const ExecutionDependencyGraph& edg);

}  // namespace seqdep
