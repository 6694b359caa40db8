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

// Data production/consumption per node, the deterministic rule-based
// dependency inference, and validation of dependency graphs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/diagnostic.hpp"
#include "seqdep/edg.hpp"
#include "seqdep/model.hpp"
#include "seqdep/pruner.hpp"

namespace seqdep {

enum class Slot {
  ApiRequest,
  ApiResponse,
  TableConditionRead,
  TableActionRead,
  TableActionWrite,
  InputField,
  ReturnField,
};

std::string_view slot_name(Slot s);
bool is_producer_slot(Slot s);

struct EntityOccurrence {
  std::string entity;
  std::optional<DataType> dtype;  // table reads carry no declared type
  Slot slot = Slot::ApiRequest;
  std::string node;

  bool operator==(const EntityOccurrence&) const = default;
};

/// Input -> input fields; Function -> API response plus table writes;
/// Control -> table writes; Output -> nothing.
std::vector<EntityOccurrence> data_produced(std::string_view node, const UseCase& usecase,
                                            const Document& document);

/// Function -> API request plus table reads; Control -> table reads;
/// Output -> return fields; Input -> nothing.
std::vector<EntityOccurrence> data_consumed(std::string_view node, const UseCase& usecase,
                                            const Document& document);

/// Distinct entity names in first-occurrence order.
std::vector<std::string> entity_names(const std::vector<EntityOccurrence>& occurrences);

struct CategoryResult {
  std::optional<EdgeCategory> category;  // empty when target does not consume data
  std::vector<Diagnostic> diagnostics;   // W_AMBIGUOUS_SLOT or E_EDGE_CONSTRAINT
};

/// api > condition > action when a name fills several slots of the target.
CategoryResult classify_edge_category(std::string_view source, std::string_view data,
                                      std::string_view target, const UseCase& usecase,
                                      const Document& document);

/// Warning when produced and consumed declared types differ.
std::optional<Diagnostic> check_type_compatibility(const EntityOccurrence& producer,
                                                   const EntityOccurrence& consumer);

/// Type warnings for one edge: the source's first occurrence of the entity
/// against every slot in which the target consumes it.
std::vector<Diagnostic> edge_type_diagnostics(const DependencyEdge& edge, const UseCase& usecase,
                                              const Document& document);

/// Immutable per-use-case analysis shared by inference, validation, prompting
/// and the service: the EDG plus P(t) for every node.
class UseCaseAnalysis {
 public:
  UseCaseAnalysis(const UseCase& usecase, const Document& document);
  UseCaseAnalysis(const UseCaseAnalysis&) = delete;
  UseCaseAnalysis& operator=(const UseCaseAnalysis&) = delete;

  const UseCase& usecase() const { return *usecase_; }
  const Document& document() const { return *document_; }
  const ExecutionDependencyGraph& edg() const { return edg_; }
  const ExitAnalysis& exits() const { return exits_; }

  /// P(t); throws LookupError for unknown ids and std::invalid_argument for @input.
  const PredecessorSet& predecessors(std::string_view target) const;
  bool reachable(std::string_view source, std::string_view target) const;

 private:
  const UseCase* usecase_;
  const Document* document_;
  ExecutionDependencyGraph edg_;
  ExitAnalysis exits_;
  std::vector<PredecessorSet> preds_;  // index = node index - 1
};

struct InferenceResult {
  std::vector<DependencyEdge> edges;
  std::vector<Diagnostic> diagnostics;
};

struct DataDependencyGraph {
  std::string usecase;
  std::vector<DependencyEdge> edges;
  std::vector<Diagnostic> diagnostics;
};

/// Rule-based inference for one target. For each consumed entity, producers in
/// the context are candidates; a candidate that can run before another
/// candidate is shadowed by it. No candidate yields E_MISSING_SOURCE.
/// Throws std::invalid_argument when `context` was computed for another node.
InferenceResult infer_rule_based(const UseCaseAnalysis& analysis, std::string_view target,
                                 const PredecessorSet& context);
InferenceResult infer_rule_based(const UseCaseAnalysis& analysis, std::string_view target);

/// Inference over every consuming node; targets run in parallel and results
/// merge in document order.
DataDependencyGraph infer_all(const UseCaseAnalysis& analysis);
DataDependencyGraph infer_all(const UseCase& usecase, const Document& document);

/// Single-threaded reference for infer_all.
DataDependencyGraph infer_all_serial(const UseCaseAnalysis& analysis);

/// Why an edge is inadmissible (unknown node, kind constraint, source not in
/// P(target), data not consumed by target), or nullopt.
std::optional<std::string> edge_violation(const UseCaseAnalysis& analysis,
                                          const DependencyEdge& edge);

/// E_EDGE_CONSTRAINT per inadmissible edge, then E_MISSING_SOURCE per consumed
/// entity without an incoming edge. Throws std::invalid_argument when the
/// graph belongs to another use case.
std::vector<Diagnostic> validate_ddg(const DataDependencyGraph& ddg,
                                     const UseCaseAnalysis& analysis);

/// Orders edges by target document order, then data name, then source order.
void sort_edges(std::vector<DependencyEdge>& edges, const ExecutionDependencyGraph& edg);

}  // namespace seqdep
