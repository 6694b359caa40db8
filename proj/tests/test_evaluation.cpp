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

#include <random>

#include "seqdep/corpus.hpp"
#include "seqdep/evaluation.hpp"
#include "support.hpp"

using namespace seqdep;

namespace {

using Edge = DependencyEdge;

std::vector<Edge> edges(int n, const char* tag = "d") {
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i) out.push_back({"@input", tag + std::to_string(i), "m1", EdgeCategory::Api});
  return out;
}

Metrics row(double p, double r, double f) {
  Metrics m;
  m.precision = p;
  m.recall = r;
  m.f1 = f;
  m.applicable = true;
  return m;
}

Metrics na() { return Metrics{}; }

}  // namespace

TEST(Match, IdentityAndSetArithmetic) {
  const auto gold = edges(4);
  const auto same = match_edges(gold, gold);
  EXPECT_EQ(same.tp.size(), 4u);
  EXPECT_TRUE(same.fp.empty() && same.fn.empty());

  auto pred = std::vector<Edge>(gold.begin(), gold.begin() + 3);
  pred.push_back({"m1", "x", "m2", EdgeCategory::Api});
  pred.push_back({"m1", "y", "m2", EdgeCategory::Api});
  const auto m = match_edges(pred, gold);
  EXPECT_EQ(m.tp.size(), 3u);
  EXPECT_EQ(m.fp.size(), 2u);
  EXPECT_EQ(m.fn.size(), 1u);
}

TEST(Match, CategoryMismatchCountsBothWays) {
  const std::vector<Edge> gold = {{"m1", "s", "f1", EdgeCategory::Condition}};
  const std::vector<Edge> pred = {{"m1", "s", "f1", EdgeCategory::Action}};
  const auto m = match_edges(pred, gold);
  EXPECT_EQ(m.tp.size(), 0u);
  EXPECT_EQ(m.fp.size(), 1u);
  EXPECT_EQ(m.fn.size(), 1u);
}

TEST(Match, NamesAreNormalized) {
  const std::vector<Edge> gold = {{"@input", "user_id", "m1", EdgeCategory::Api}};
  const std::vector<Edge> pred = {{"@input", "UserId", "m1", EdgeCategory::Api}};
  EXPECT_EQ(match_edges(pred, gold).tp.size(), 1u);
}

TEST(Metrics, Formula) {
  const auto m = compute_metrics(3, 2, 1);
  EXPECT_DOUBLE_EQ(m.precision, 0.6);
  EXPECT_DOUBLE_EQ(m.recall, 0.75);
  EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-12);
  const auto z = compute_metrics(0, 0, 0);
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_EQ(z.f1, 0.0);
  EXPECT_FALSE(z.applicable);
  const auto p = compute_metrics(4, 0, 0);
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.recall, 1.0);
  EXPECT_EQ(p.f1, 1.0);
  EXPECT_TRUE(compute_metrics(0, 1, 0).applicable);
}

TEST(Metrics, BoundsAndSymmetry) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Edge> a, b;
    for (int k = 0; k < 12; ++k) {
      const Edge e{"s" + std::to_string(rng() % 3), "d" + std::to_string(rng() % 3), "t", EdgeCategory::Api};
      (rng() % 2 ? a : b).push_back(e);
      if (rng() % 3 == 0) a.push_back(e), b.push_back(e);
    }
    const auto ab = score_usecase(a, b)[0];
    const auto ba = score_usecase(b, a)[0];
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    if (ab.precision > 0 && ab.recall > 0) {
      EXPECT_LE(ab.f1, std::max(ab.precision, ab.recall) + 1e-12);
      EXPECT_GE(ab.f1, std::min(ab.precision, ab.recall) - 1e-12);
    }
  }
}

TEST(Macro, SmallCases) {
  const Metrics one = row(0.8, 0.6, 0.7);
  const Metrics single = aggregate_macro(std::vector<Metrics>{one});
  EXPECT_EQ(single.precision, 0.8);
  EXPECT_EQ(single.recall, 0.6);
  EXPECT_EQ(single.f1, 0.7);
  const Metrics two = aggregate_macro(std::vector<Metrics>{row(1, 1, 1), row(0, 0, 0)});
  EXPECT_EQ(two.precision, 0.5);
  EXPECT_EQ(two.recall, 0.5);
  EXPECT_EQ(two.f1, 0.5);
  const Metrics skip = aggregate_macro(std::vector<Metrics>{row(1, 1, 1), na()});
  EXPECT_EQ(skip.precision, 1.0);
  EXPECT_THROW(aggregate_macro(std::vector<Metrics>{}), std::invalid_argument);
}

// Published per-use-case scores of the stronger model, in percent.
TEST(Macro, PublishedTableReproduces) {
  const std::vector<CategoryScores> rows = {
      {row(100, 100, 100), row(100, 100, 100), na(), na()},
      {row(100, 100, 100), row(100, 100, 100), na(), na()},
      {row(100, 100, 100), row(100, 100, 100), na(), na()},
      {row(100, 100, 100), row(100, 100, 100), na(), na()},
      {row(93.31, 78.57, 85.23), row(88.45, 66.67, 75.80), row(100, 100, 100), na()},
      {row(96.08, 87.50, 91.37), row(94.18, 81.82, 87.07), row(100, 100, 100), na()},
      {row(97.50, 86.96, 91.85), row(97.50, 86.93, 91.85), na(), na()},
      {row(88.60, 82.86, 85.62), row(88.69, 81.74, 85.04), row(100, 100, 100), row(40, 40, 40)},
      {row(84.56, 80.00, 82.18), row(96.46, 91.11, 93.65), row(46.67, 48.00, 47.27), row(83.33, 66.67, 73.33)},
      {row(88.61, 80.69, 84.42), row(87.68, 79.26, 83.20), row(100, 100, 100), na()},
      {row(96.95, 93.06, 94.97), row(98.79, 97.58, 98.17), row(95.07, 88.72, 91.78), row(100, 100, 100)},
  };
  const CategoryScores avg = aggregate_macro(rows);
  const double expected[4][3] = {
      {95.06, 89.97, 92.33}, {95.61, 89.56, 92.25}, {90.29, 89.45, 89.84}, {74.44, 68.89, 71.11}};
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_NEAR(avg[c].precision, expected[c][0], 0.01) << score_category_name(ScoreCategory(c));
    EXPECT_NEAR(avg[c].recall, expected[c][1], 0.01) << score_category_name(ScoreCategory(c));
    EXPECT_NEAR(avg[c].f1, expected[c][2], 0.01) << score_category_name(ScoreCategory(c));
  }
  EXPECT_EQ(round2(avg[0].precision), 95.06);
  EXPECT_EQ(round2(avg[0].recall), 89.97);
  EXPECT_EQ(round2(avg[0].f1), 92.33);
}

TEST(Report, StratifiedScoresAndTable) {
  const std::vector<Edge> gold = {{"@input", "a", "m1", EdgeCategory::Api},
                                  {"m1", "b", "f1", EdgeCategory::Condition}};
  const std::vector<Edge> pred = {{"@input", "a", "m1", EdgeCategory::Api}};
  const auto report = evaluate({{"Zeta", pred, gold}, {"Alpha", gold, gold}});
  ASSERT_EQ(report.per_usecase.size(), 2u);
  EXPECT_EQ(report.per_usecase[0].usecase, "Alpha");
  const auto& z = report.per_usecase[1].scores;
  EXPECT_EQ(z[1].precision, 1.0);
  EXPECT_EQ(z[2].recall, 0.0);
  EXPECT_TRUE(z[2].applicable);
  EXPECT_FALSE(z[3].applicable);
  EXPECT_DOUBLE_EQ(report.macro[0].recall, 0.75);

  const std::string table = format_report_table(report);
  EXPECT_NE(table.find("Average"), std::string::npos);
  EXPECT_NE(table.find("Condition"), std::string::npos);
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(table.find("      -"), std::string::npos);
}

TEST(Report, ParallelMatchesSerial) {
  const auto corpus = gen_corpus(8);
  std::vector<ScoringCase> cases;
  for (const auto& e : corpus) cases.push_back({e.gold.usecase, e.perturbed, e.gold.edges});
  const auto par = evaluate(cases);
  const auto ser = evaluate_serial(cases);
  ASSERT_EQ(par.per_usecase.size(), ser.per_usecase.size());
  for (std::size_t i = 0; i < par.per_usecase.size(); ++i) {
    EXPECT_EQ(par.per_usecase[i].usecase, ser.per_usecase[i].usecase);
    for (std::size_t c = 0; c < kScoreCategories; ++c)
      EXPECT_EQ(par.per_usecase[i].scores[c].f1, ser.per_usecase[i].scores[c].f1);
  }
  EXPECT_EQ(format_report_table(par), format_report_table(ser));
}

TEST(Perturbation, DropRateSetsExpectedRecall) {
  const auto gold = edges(4);
  PerturbParams p;
  p.p_drop = 0.25;
  p.p_retarget = 0.0;
  p.p_add = 0.0;
  double sum = 0.0;
  const int trials = 4000;
  for (int s = 0; s < trials; ++s)
    sum += score_usecase(perturb_edges(gold, {"@input", "m1", "m2"}, {"d0"}, p, s), gold)[0].recall;
  EXPECT_NEAR(sum / trials, 0.75, 0.02);
}
