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

// JSON wire schema shared by the CLI and the HTTP service. Every top-level
// payload carries "schema_version".

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqdep/dependency.hpp"
#include "seqdep/diagnostic.hpp"
#include "seqdep/edg.hpp"
#include "seqdep/evaluation.hpp"
#include "seqdep/model.hpp"
#include "seqdep/pruner.hpp"

namespace seqdep {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"schema_version": 1, ...payload}; non-object payloads go under "data".
Json envelope(Json payload);

Json to_json(const Diagnostic& d);
Json to_json(const std::vector<Diagnostic>& ds);
Diagnostic diagnostic_from_json(const Json& j);

Json to_json(const DependencyEdge& e);
Json to_json(const std::vector<DependencyEdge>& edges);

/// Accepts {"edges": [...]} or a bare array. Names are normalized; an unknown
/// category label throws std::invalid_argument, as does any schema mismatch.
std::vector<DependencyEdge> edges_from_json(const Json& j);

Json to_json(const DataType& t);
Json to_json(const Field& f);

/// Parsed model of one use case with the APIs and tables it references.
Json usecase_to_json(const UseCase& uc, const Document& doc);

Json to_json(const ExecutionDependencyGraph& g);

/// DDG with the node list taken from the EDG, so empty graphs stay useful.
Json to_json(const DataDependencyGraph& ddg, const ExecutionDependencyGraph& edg);
DataDependencyGraph ddg_from_json(const Json& j);

/// {"target", "members", "ratio"}.
Json to_json(const PredecessorSet& p);

Json to_json(const Metrics& m);
Json to_json(const EvaluationReport& r);

Json to_json(const GoldAnnotation& g);
GoldAnnotation gold_from_json(const Json& j);

/// Reads a JSON file; throws std::runtime_error when unreadable or malformed.
Json read_json_file(const std::string& path);

}  // namespace seqdep
