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

// Seeded synthetic diagrams: random use-case shapes for property tests and an
// annotated corpus whose gold edges are the rule engine's own output.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "seqdep/evaluation.hpp"
#include "seqdep/model.hpp"

namespace seqdep {

struct ShapeParams {
  std::size_t max_nodes = 25;  // elements, excluding @input
  std::size_t max_depth = 4;   // fragment nesting
  double p_fragment = 0.35;    // an element slot becomes a fragment
  double p_alt = 0.4;          // a fragment is an alt (rest split over opt/loop/break)
  double p_return = 0.08;      // a return appears mid-sequence
  double p_empty_branch = 0.05;
  double p_table = 0.0;        // a message or fragment binds a table
  std::size_t n_usecases = 1;
  bool odd_strings = false;    // descriptions with quotes, backslashes, tabs
};

/// Random structural use case together with an API and table catalogue that
/// resolves every reference. The last top-level element is always a return.
Document random_document(std::mt19937_64& rng, const ShapeParams& params);

/// Perturbation applied to gold edges to produce a scored prediction.
struct PerturbParams {
  double p_drop = 0.15;      // each gold edge is omitted
  double p_retarget = 0.05;  // each kept gold edge points at another node
  double p_add = 0.10;       // per gold edge, one spurious edge is appended
};

struct CorpusParams {
  std::size_t n_usecases = 11;
  std::size_t max_nodes = 30;  // <= 40
  std::size_t max_depth = 3;   // <= 5
  double p_alt = 0.5;
  double p_table = 0.4;
  PerturbParams perturb;
};

/// Throws std::invalid_argument when parameters are outside their bounds.
void check_corpus_params(const CorpusParams& params);

struct CorpusEntry {
  Document document;  // exactly one use case
  GoldAnnotation gold;
  std::vector<DependencyEdge> perturbed;
};

/// Pure function of (seed, params).
std::vector<CorpusEntry> gen_corpus(std::uint64_t seed, const CorpusParams& params = {});

/// Perturbs `gold` with a dedicated generator; candidates for retargeting and
/// spurious edges are drawn from `nodes` and the entities in `entities`.
std::vector<DependencyEdge> perturb_edges(const std::vector<DependencyEdge>& gold,
                                          const std::vector<std::string>& nodes,
                                          const std::vector<std::string>& entities,
                                          const PerturbParams& params, std::uint64_t seed);

/// Per-use-case counts in the layout of the dataset statistics table.
struct CorpusStatistics {
  std::string usecase;
  std::size_t api_edges = 0;
  std::size_t condition_edges = 0;
  std::size_t action_edges = 0;
  std::size_t functions = 0;
  std::size_t controls = 0;
  std::size_t outputs = 0;
};

CorpusStatistics corpus_statistics(const UseCase& usecase, const GoldAnnotation& gold);
std::string format_statistics_table(const std::vector<CorpusStatistics>& rows);

}  // namespace seqdep
