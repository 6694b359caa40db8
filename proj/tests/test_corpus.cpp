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

#include <set>

#include "seqdep/corpus.hpp"
#include "seqdep/dependency.hpp"
#include "seqdep/esd.hpp"
#include "seqdep/oracle.hpp"
#include "support.hpp"

using namespace seqdep;

TEST(Corpus, SeedDeterministic) {
  const auto a = gen_corpus(42);
  const auto b = gen_corpus(42);
  ASSERT_EQ(a.size(), 11u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(serialize_document(a[i].document), serialize_document(b[i].document));
    EXPECT_EQ(a[i].gold, b[i].gold);
    EXPECT_EQ(a[i].perturbed, b[i].perturbed);
  }
  EXPECT_NE(serialize_document(gen_corpus(43)[0].document), serialize_document(a[0].document));
}

TEST(Corpus, ParamsAreChecked) {
  CorpusParams p;
  p.max_nodes = 41;
  EXPECT_THROW(gen_corpus(1, p), std::invalid_argument);
  p = {};
  p.max_depth = 6;
  EXPECT_THROW(gen_corpus(1, p), std::invalid_argument);
  p = {};
  p.p_alt = 1.5;
  EXPECT_THROW(gen_corpus(1, p), std::invalid_argument);
  p = {};
  p.n_usecases = 0;
  EXPECT_THROW(gen_corpus(1, p), std::invalid_argument);
}

TEST(Corpus, WellFormedAndSelfConsistent) {
  CorpusParams params;
  params.max_nodes = 40;
  params.max_depth = 5;
  std::set<std::string> names;
  for (const auto& e : gen_corpus(7, params)) {
    const UseCase& uc = e.document.usecases.at(0);
    EXPECT_TRUE(names.insert(uc.name).second);
    EXPECT_LE(uc.elements.size(), 40u);
    EXPECT_FALSE(has_errors(check_design_rules(e.document))) << uc.name;
    const ParseResult r = parse_document(serialize_document(e.document));
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(*r.document, e.document);

    const auto s = score_usecase(infer_all(uc, e.document).edges, e.gold.edges)[0];
    EXPECT_EQ(s.precision, 1.0);
    EXPECT_EQ(s.recall, 1.0);
  }
}

TEST(Corpus, GoldSourcesAreReachable) {
  std::size_t checked = 0;
  for (const auto& e : gen_corpus(42)) {
    const UseCase& uc = e.document.usecases[0];
    const auto oracle = oracle_all_predecessors(uc);
    for (const auto& g : e.gold.edges) {
      EXPECT_TRUE(oracle.at(g.target).contains(g.source)) << uc.name << ": " << g.source << "->" << g.target;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Corpus, StatisticsTable) {
  const auto corpus = gen_corpus(42);
  std::vector<CorpusStatistics> rows;
  for (const auto& e : corpus) rows.push_back(corpus_statistics(e.document.usecases[0], e.gold));
  std::size_t total = 0;
  for (const auto& r : rows) {
    EXPECT_GE(r.outputs, 1u);
    total += r.api_edges + r.condition_edges + r.action_edges;
  }
  std::size_t gold = 0;
  for (const auto& e : corpus) gold += e.gold.edges.size();
  EXPECT_EQ(total, gold);
  const std::string table = format_statistics_table(rows);
  EXPECT_NE(table.find("Overall"), std::string::npos);
  EXPECT_NE(table.find("|F|"), std::string::npos);
}
