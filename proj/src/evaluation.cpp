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

#include "seqdep/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace seqdep {

namespace {

std::set<DependencyEdge> normalized_set(const std::vector<DependencyEdge>& edges) {
  std::set<DependencyEdge> out;
  for (const auto& e : edges)
    out.insert({normalize_name(e.source), normalize_name(e.data), normalize_name(e.target),
                e.category});
  return out;
}

std::vector<DependencyEdge> only(const std::vector<DependencyEdge>& edges, EdgeCategory c) {
  std::vector<DependencyEdge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [&](const DependencyEdge& e) { return e.category == c; });
  return out;
}

}  // namespace

MatchResult match_edges(const std::vector<DependencyEdge>& predicted,
                        const std::vector<DependencyEdge>& gold) {
  const auto p = normalized_set(predicted);
  const auto g = normalized_set(gold);
  MatchResult r;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(r.tp));
  std::set_difference(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(r.fp));
  std::set_difference(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(r.fn));
  return r;
}

Metrics compute_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.applicable = tp + fp + fn > 0;
  const auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  const double s = m.precision + m.recall;
  m.f1 = s > 0.0 ? 2.0 * m.precision * m.recall / s : 0.0;
  return m;
}

std::string_view score_category_name(ScoreCategory c) {
  switch (c) {
    case ScoreCategory::Overall: return "overall";
    case ScoreCategory::Api: return "api";
    case ScoreCategory::Condition: return "condition";
    case ScoreCategory::Action: return "action";
  }
  return "overall";
}

CategoryScores score_usecase(const std::vector<DependencyEdge>& predicted,
                             const std::vector<DependencyEdge>& gold) {
  CategoryScores out;
  auto score = [](const MatchResult& m) { return compute_metrics(m.tp.size(), m.fp.size(), m.fn.size()); };
  out[0] = score(match_edges(predicted, gold));
  const EdgeCategory cats[] = {EdgeCategory::Api, EdgeCategory::Condition, EdgeCategory::Action};
  for (std::size_t i = 0; i < 3; ++i)
    out[i + 1] = score(match_edges(only(predicted, cats[i]), only(gold, cats[i])));
  return out;
}

Metrics aggregate_macro(const std::vector<Metrics>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate_macro needs at least one row");
  Metrics out;
  std::size_t n = 0;
  for (const auto& r : rows) {
    out.tp += r.tp;
    out.fp += r.fp;
    out.fn += r.fn;
    if (!r.applicable) continue;
    out.precision += r.precision;
    out.recall += r.recall;
    out.f1 += r.f1;
    ++n;
  }
  out.applicable = n > 0;
  if (n > 0) {
    out.precision /= static_cast<double>(n);
    out.recall /= static_cast<double>(n);
    out.f1 /= static_cast<double>(n);
  }
  return out;
}

CategoryScores aggregate_macro(const std::vector<CategoryScores>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate_macro needs at least one row");
  CategoryScores out;
  for (std::size_t c = 0; c < kScoreCategories; ++c) {
    std::vector<Metrics> column;
    column.reserve(rows.size());
    for (const auto& r : rows) column.push_back(r[c]);
    out[c] = aggregate_macro(column);
  }
  return out;
}

namespace {

EvaluationReport finish(std::vector<UseCaseReport> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.usecase < b.usecase; });
  EvaluationReport report;
  std::vector<CategoryScores> scores;
  for (const auto& r : rows) scores.push_back(r.scores);
  if (!scores.empty()) report.macro = aggregate_macro(scores);
  report.per_usecase = std::move(rows);
  return report;
}

}  // namespace

EvaluationReport evaluate(const std::vector<ScoringCase>& cases) {
  std::vector<UseCaseReport> rows(cases.size());
  const auto n = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& c = cases[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] = {c.usecase, score_usecase(c.predicted, c.gold)};
  }
  return finish(std::move(rows));
}

EvaluationReport evaluate_serial(const std::vector<ScoringCase>& cases) {
  std::vector<UseCaseReport> rows;
  for (const auto& c : cases) rows.push_back({c.usecase, score_usecase(c.predicted, c.gold)});
  return finish(std::move(rows));
}

double round2(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }

std::string format_report_table(const EvaluationReport& report) {
  std::size_t name_width = 9;  // "Use case"/"Average"
  for (const auto& r : report.per_usecase) name_width = std::max(name_width, r.usecase.size() + 1);

  std::string out;
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  auto cell = [](const Metrics& m, double v) {
    if (!m.applicable) return std::string("      -");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%7.2f", round2(v * 100.0));
    return std::string(buf);
  };
  auto row = [&](const std::string& name, const CategoryScores& s) {
    std::string line = pad(name, name_width);
    for (const auto& m : s) {
      line += " |";
      line += cell(m, m.precision) + " " + cell(m, m.recall) + " " + cell(m, m.f1);
    }
    return line + "\n";
  };

  std::string head = pad("Use case", name_width);
  std::string sub = pad("", name_width);
  for (const char* title : {"Overall", "API", "Condition", "Action"}) {
    head += " |" + pad(std::string(" ") + title, 23);
    sub += " |   Prec.  Recall      F1";
  }
  out += head + "\n" + sub + "\n";
  const std::size_t width = sub.size();
  out += std::string(width, '-') + "\n";
  for (const auto& r : report.per_usecase) out += row(r.usecase, r.scores);
  out += std::string(width, '-') + "\n";
  if (!report.per_usecase.empty()) out += row("Average", report.macro);
  return out;
}

}  // namespace seqdep
