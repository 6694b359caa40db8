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

#include "seqdep/pruner.hpp"

#include <algorithm>
#include <stdexcept>

#include "seqdep/diagnostic.hpp"

namespace seqdep {

ExitAnalysis::ExitAnalysis(const ExecutionDependencyGraph& edg)
    : edg_(edg), node_(edg.size(), 0), scope_(edg.size()) {
  // Children always follow their parent in document order, so a reverse sweep
  // sees every child before its fragment.
  for (NodeIndex n = edg.size(); n-- > 0;) node_[n] = compute(n);
}

ExitSet ExitAnalysis::compute_scope(const std::vector<NodeIndex>& children) {
  ExitSet out = 0;
  for (NodeIndex c : children) {
    const ExitSet e = node_[c];
    out |= e & (kExitReturn | kExitBreak);
    if (!(e & kExitNormal)) return out;
  }
  return out | kExitNormal;
}

ExitSet ExitAnalysis::compute(NodeIndex n) {
  const EdgNode& node = edg_.nodes[n];
  auto& scopes = scope_[n];
  for (const auto& s : edg_.scopes[n]) scopes.push_back(compute_scope(s.children));
  switch (node.kind) {
    case NodeKind::Function: return kExitNormal;
    case NodeKind::Output: return kExitReturn;
    case NodeKind::Input: return scopes.empty() ? ExitSet{kExitNormal} : scopes.front();
    case NodeKind::Control: break;
  }
  const ExitSet body = scopes.empty() ? ExitSet{kExitNormal} : scopes.front();
  switch (*node.fragment) {
    case FragmentKind::Alt: {
      ExitSet out = 0;
      for (ExitSet s : scopes) out |= s;
      return out;
    }
    case FragmentKind::Opt:
      return kExitNormal | body;
    case FragmentKind::Loop:
      return (body & ~kExitBreak) | ((body & kExitBreak) ? kExitNormal : 0);
    case FragmentKind::Break:
      return kExitNormal | (body & (kExitReturn | kExitBreak)) |
             ((body & kExitNormal) ? kExitBreak : 0);
  }
  return kExitNormal;
}

bool is_return_branch(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits,
                      NodeIndex fragment, std::size_t branch) {
  const EdgNode& node = edg.nodes.at(fragment);
  if (node.kind != NodeKind::Control) throw std::invalid_argument(node.id + " is not a fragment");
  const ExitSet body = exits.scope(fragment, branch);
  switch (*node.fragment) {
    case FragmentKind::Break: return true;
    case FragmentKind::Loop: return !(body & (kExitNormal | kExitBreak));
    default: return !(body & kExitNormal);
  }
}

bool is_return_branch(const ExecutionDependencyGraph& edg, NodeIndex fragment, std::size_t branch) {
  return is_return_branch(edg, ExitAnalysis(edg), fragment, branch);
}

bool PredecessorSet::contains(std::string_view id) const {
  return std::find(members.begin(), members.end(), id) != members.end();
}

bool is_executable(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits, NodeIndex n) {
  for (NodeIndex cur = n; edg.nodes[cur].parent; cur = *edg.nodes[cur].parent) {
    const NodeIndex parent = *edg.nodes[cur].parent;
    const std::size_t b = edg.nodes[cur].branch ? edg.nodes[cur].branch->second : 0;
    for (NodeIndex sib : edg.scopes[parent][b].children) {
      if (sib == cur) break;
      if (!(exits.node(sib) & kExitNormal)) return false;
    }
  }
  return true;
}

namespace {

class PredecessorSearch {
 public:
  PredecessorSearch(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits)
      : edg_(edg), exits_(exits), visited_(edg.size(), 0), reached_(edg.size(), 0) {}

  std::vector<char> run(NodeIndex target) {
    backward_traversal(target);
    filter_return_branches(target);
    reached_[target] = 0;
    reached_[ExecutionDependencyGraph::root()] = 1;
    return std::move(reached_);
  }

 private:
  void add(NodeIndex n) { visited_[n] = reached_[n] = 1; }

  void backward_traversal(NodeIndex n) {
    if (visited_[n]) return;
    add(n);
    if (const auto& p = edg_.nodes[n].parent) backward_traversal(*p);
    for (NodeIndex s : edg_.sequential_preds(n)) {
      backward_traversal(s);
      explore_subtree(s);
    }
  }

  // Nodes inside `n` that execute on runs where n falls through to its next
  // sibling.
  void explore_subtree(NodeIndex n) {
    const EdgNode& node = edg_.nodes[n];
    if (node.kind != NodeKind::Control) return;
    for (std::size_t b = 0; b < edg_.scopes[n].size(); ++b) {
      if (is_return_branch(edg_, exits_, n, b)) continue;
      const auto& children = edg_.scopes[n][b].children;
      if (exits_.scope(n, b) & kExitNormal) add_completing(children);
      if (*node.fragment == FragmentKind::Loop) add_breaking(children);
    }
  }

  // Every element of a sequence that completes normally.
  void add_completing(const std::vector<NodeIndex>& children) {
    for (NodeIndex c : children) {
      add(c);
      explore_subtree(c);
    }
  }

  // Elements of a sequence on runs that leave it by break.
  void add_breaking(const std::vector<NodeIndex>& children) {
    for (std::size_t j = 0; j < children.size(); ++j) {
      const NodeIndex c = children[j];
      if (exits_.node(c) & kExitBreak) {
        for (std::size_t k = 0; k < j; ++k) {
          add(children[k]);
          explore_subtree(children[k]);
        }
        add(c);
        explore_breaking(c);
      }
      if (!(exits_.node(c) & kExitNormal)) return;
    }
  }

  // Nodes inside `n` on runs where n itself exits by break.
  void explore_breaking(NodeIndex n) {
    const EdgNode& node = edg_.nodes[n];
    if (node.kind != NodeKind::Control || *node.fragment == FragmentKind::Loop) return;
    for (std::size_t b = 0; b < edg_.scopes[n].size(); ++b) {
      const auto& children = edg_.scopes[n][b].children;
      if (*node.fragment == FragmentKind::Break && (exits_.scope(n, b) & kExitNormal))
        add_completing(children);
      add_breaking(children);
    }
  }

  // A target that no path reaches keeps only the input node.
  void filter_return_branches(NodeIndex target) {
    if (is_executable(edg_, exits_, target)) return;
    std::fill(reached_.begin(), reached_.end(), 0);
  }

  const ExecutionDependencyGraph& edg_;
  const ExitAnalysis& exits_;
  std::vector<char> visited_;
  std::vector<char> reached_;
};

PredecessorSet to_set(const ExecutionDependencyGraph& edg, NodeIndex target,
                      const std::vector<char>& reached) {
  PredecessorSet out;
  out.target = edg.id(target);
  for (NodeIndex n = 0; n < edg.size(); ++n)
    if (reached[n]) out.members.push_back(edg.id(n));
  out.reduction_ratio =
      static_cast<double>(out.members.size()) / static_cast<double>(edg.size() - 1);
  return out;
}

}  // namespace

PredecessorSet reachable_predecessors(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits,
                                      NodeIndex target) {
  if (target == ExecutionDependencyGraph::root())
    throw std::invalid_argument("the input node has no predecessors");
  return to_set(edg, target, PredecessorSearch(edg, exits).run(target));
}

PredecessorSet reachable_predecessors(const ExecutionDependencyGraph& edg,
                                      std::string_view target) {
  const NodeIndex t = edg.index_of(target);
  return reachable_predecessors(edg, ExitAnalysis(edg), t);
}

std::vector<PredecessorSet> all_predecessor_sets(const ExecutionDependencyGraph& edg) {
  const ExitAnalysis exits(edg);
  const auto n = static_cast<long>(edg.size());
  std::vector<PredecessorSet> out(edg.size() > 0 ? edg.size() - 1 : 0);
#pragma omp parallel for schedule(dynamic)
  for (long t = 1; t < n; ++t)
    out[static_cast<std::size_t>(t - 1)] =
        reachable_predecessors(edg, exits, static_cast<NodeIndex>(t));
  return out;
}

std::vector<PredecessorSet> all_predecessor_sets_serial(const ExecutionDependencyGraph& edg) {
  const ExitAnalysis exits(edg);
  std::vector<PredecessorSet> out;
  for (NodeIndex t = 1; t < edg.size(); ++t) out.push_back(reachable_predecessors(edg, exits, t));
  return out;
}

double context_reduction_ratio(const ExecutionDependencyGraph& edg, std::string_view target) {
  return reachable_predecessors(edg, target).reduction_ratio;
}

bool reachable(const ExecutionDependencyGraph& edg, std::string_view source,
               std::string_view target) {
  if (target == kInputId) return false;
  return reachable_predecessors(edg, target).contains(source);
}

}  // namespace seqdep
