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

// Serial reference vs OpenMP kernels on synthetic diagrams.

#include <random>

#include <benchmark/benchmark.h>

#include "seqdep/corpus.hpp"
#include "seqdep/dependency.hpp"
#include "seqdep/evaluation.hpp"
#include "seqdep/oracle.hpp"
#include "seqdep/pruner.hpp"

using namespace seqdep;

namespace {

// First draw with at least half the requested element count, so the size
// argument is meaningful despite the generator's variance.
Document diagram(std::size_t nodes) {
  std::mt19937_64 rng(nodes);
  ShapeParams shape;
  shape.max_nodes = nodes;
  shape.max_depth = 5;
  shape.p_table = 0.4;
  for (;;) {
    Document doc = random_document(rng, shape);
    if (doc.usecases[0].elements.size() * 2 >= nodes) return doc;
  }
}

std::vector<ScoringCase> scoring_cases(std::size_t n) {
  CorpusParams params;
  params.n_usecases = n;
  std::vector<ScoringCase> out;
  for (auto& e : gen_corpus(7, params)) out.push_back({e.gold.usecase, e.perturbed, e.gold.edges});
  return out;
}

void BM_PredecessorSetsSerial(benchmark::State& state) {
  const Document doc = diagram(static_cast<std::size_t>(state.range(0)));
  const auto edg = build_edg(doc.usecases[0]);
  for (auto _ : state) benchmark::DoNotOptimize(all_predecessor_sets_serial(edg));
  state.counters["nodes"] = static_cast<double>(edg.size());
}

void BM_PredecessorSetsParallel(benchmark::State& state) {
  const Document doc = diagram(static_cast<std::size_t>(state.range(0)));
  const auto edg = build_edg(doc.usecases[0]);
  for (auto _ : state) benchmark::DoNotOptimize(all_predecessor_sets(edg));
  state.counters["nodes"] = static_cast<double>(edg.size());
}

void BM_OraclePaths(benchmark::State& state) {
  const Document doc = diagram(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_all_predecessors(doc.usecases[0]));
}

void BM_InferAllSerial(benchmark::State& state) {
  const Document doc = diagram(static_cast<std::size_t>(state.range(0)));
  const UseCaseAnalysis a(doc.usecases[0], doc);
  for (auto _ : state) benchmark::DoNotOptimize(infer_all_serial(a));
}

void BM_InferAllParallel(benchmark::State& state) {
  const Document doc = diagram(static_cast<std::size_t>(state.range(0)));
  const UseCaseAnalysis a(doc.usecases[0], doc);
  for (auto _ : state) benchmark::DoNotOptimize(infer_all(a));
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto cases = scoring_cases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(cases));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto cases = scoring_cases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(cases));
}

}  // namespace

BENCHMARK(BM_PredecessorSetsSerial)->Arg(25)->Arg(100)->Arg(400);
BENCHMARK(BM_PredecessorSetsParallel)->Arg(25)->Arg(100)->Arg(400);
BENCHMARK(BM_OraclePaths)->Arg(25);
BENCHMARK(BM_InferAllSerial)->Arg(25)->Arg(100)->Arg(400);
BENCHMARK(BM_InferAllParallel)->Arg(25)->Arg(100)->Arg(400);
BENCHMARK(BM_EvaluateSerial)->Arg(11)->Arg(200);
BENCHMARK(BM_EvaluateParallel)->Arg(11)->Arg(200);

BENCHMARK_MAIN();
