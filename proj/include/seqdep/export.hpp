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

// Graphviz and JSON renderings of EDGs and dependency graphs. Sequential and
// dependency edges are solid; containment edges are dashed.

#include <string>
#include <string_view>

#include "seqdep/dependency.hpp"
#include "seqdep/edg.hpp"

namespace seqdep {

enum class GraphFormat { Dot, Json };

/// "dot" or "json"; anything else throws std::invalid_argument.
GraphFormat graph_format_from_name(std::string_view name);

std::string export_graph(const ExecutionDependencyGraph& edg, GraphFormat format);

/// Nodes come from `edg`, so an empty dependency graph still lists them.
std::string export_graph(const DataDependencyGraph& ddg, const ExecutionDependencyGraph& edg,
                         GraphFormat format);

}  // namespace seqdep
