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

// Edge matching and precision/recall/F1 scoring, stratified by category and
// macro-averaged over use cases.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/model.hpp"

namespace seqdep {

struct GoldAnnotation {
  std::string usecase;
  std::vector<DependencyEdge> edges;

  bool operator==(const GoldAnnotation&) const = default;
};

struct MatchResult {
  std::vector<DependencyEdge> tp;
  std::vector<DependencyEdge> fp;
  std::vector<DependencyEdge> fn;
};

/// Exact (source, data, target, category) matching after name normalization.
/// Inputs are treated as sets; outputs are sorted.
MatchResult match_edges(const std::vector<DependencyEdge>& predicted,
                        const std::vector<DependencyEdge>& gold);

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  bool applicable = false;  // false when the category is empty on both sides
};

Metrics compute_metrics(std::size_t tp, std::size_t fp, std::size_t fn);

/// Overall first, then the three edge categories.
enum class ScoreCategory { Overall = 0, Api = 1, Condition = 2, Action = 3 };
inline constexpr std::size_t kScoreCategories = 4;
std::string_view score_category_name(ScoreCategory c);

using CategoryScores = std::array<Metrics, kScoreCategories>;

struct UseCaseReport {
  std::string usecase;
  CategoryScores scores;
};

struct EvaluationReport {
  std::vector<UseCaseReport> per_usecase;  // alphabetical by use case
  CategoryScores macro;
};

/// Scores one use case. A category is stratified by each edge's own label.
CategoryScores score_usecase(const std::vector<DependencyEdge>& predicted,
                             const std::vector<DependencyEdge>& gold);

/// Per-metric arithmetic mean over rows where the category is applicable.
/// Counts are summed. Throws std::invalid_argument on an empty row list.
CategoryScores aggregate_macro(const std::vector<CategoryScores>& rows);
Metrics aggregate_macro(const std::vector<Metrics>& rows);

struct ScoringCase {
  std::string usecase;
  std::vector<DependencyEdge> predicted;
  std::vector<DependencyEdge> gold;
};

/// Scores cases in parallel; the report is ordered by use case name.
EvaluationReport evaluate(const std::vector<ScoringCase>& cases);
EvaluationReport evaluate_serial(const std::vector<ScoringCase>& cases);

/// Half-up rounding to two decimals, for display only.
double round2(double x);

/// Fixed-width table: one row per use case plus an Average row; columns are
/// Precision/Recall/F1 for Overall, API, Condition, Action, as percentages.
std::string format_report_table(const EvaluationReport& report);

}  // namespace seqdep
