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

// Reachable predecessor identification over an execution dependency graph.
//
// P(t) is the set of nodes that execute before t on at least one execution
// path. The search walks backwards from t along containment parents and
// sequential predecessors; every sequential predecessor also contributes the
// part of its subtree that can run to completion without leaving the
// enclosing scope. Branches that always end the use case (return branches)
// contribute nothing.
//
// Execution semantics: siblings run in order, alt takes exactly one branch,
// opt runs or skips its body, loop runs its body once, break runs or skips its
// body and, when run, leaves the innermost enclosing loop (or the use case
// when there is none). A return ends the use case.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/edg.hpp"

namespace seqdep {

/// Ways a node or sequence can finish: fall through to the next sibling,
/// end the use case with a return, or leave via break.
enum ExitBits : std::uint8_t { kExitNormal = 1, kExitReturn = 2, kExitBreak = 4 };
using ExitSet = std::uint8_t;

class ExitAnalysis {
 public:
  explicit ExitAnalysis(const ExecutionDependencyGraph& edg);

  ExitSet node(NodeIndex n) const { return node_.at(n); }
  ExitSet scope(NodeIndex owner, std::size_t branch) const { return scope_.at(owner).at(branch); }

 private:
  ExitSet compute(NodeIndex n);
  ExitSet compute_scope(const std::vector<NodeIndex>& children);

  const ExecutionDependencyGraph& edg_;
  std::vector<ExitSet> node_;
  std::vector<std::vector<ExitSet>> scope_;
};

/// True when execution entering this branch never continues after the
/// fragment: every run ends in a return, or escapes past it by break. The body
/// of a break fragment is always a return branch with respect to its own
/// scope; a loop body that only leaves via break is not.
bool is_return_branch(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits,
                      NodeIndex fragment, std::size_t branch);
bool is_return_branch(const ExecutionDependencyGraph& edg, NodeIndex fragment, std::size_t branch);

struct PredecessorSet {
  std::string target;
  std::vector<std::string> members;  // document order
  double reduction_ratio = 0.0;      // |members| / (|V| - 1)

  bool contains(std::string_view id) const;
};

/// Throws LookupError for unknown targets and std::invalid_argument for @input.
PredecessorSet reachable_predecessors(const ExecutionDependencyGraph& edg, std::string_view target);
PredecessorSet reachable_predecessors(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits,
                                      NodeIndex target);

/// P(t) for every node except @input, in document order. Targets are
/// independent and processed with OpenMP.
std::vector<PredecessorSet> all_predecessor_sets(const ExecutionDependencyGraph& edg);

/// Single-threaded reference for all_predecessor_sets.
std::vector<PredecessorSet> all_predecessor_sets_serial(const ExecutionDependencyGraph& edg);

double context_reduction_ratio(const ExecutionDependencyGraph& edg, std::string_view target);

/// True when `source` can execute before `target`, i.e. source is in P(target).
bool reachable(const ExecutionDependencyGraph& edg, std::string_view source, std::string_view target);

/// True when some execution path reaches the node at all.
bool is_executable(const ExecutionDependencyGraph& edg, const ExitAnalysis& exits, NodeIndex n);

}  // namespace seqdep
