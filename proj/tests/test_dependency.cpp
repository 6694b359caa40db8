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

#include <map>
#include <random>
#include <set>

#include "seqdep/corpus.hpp"
#include "seqdep/dependency.hpp"
#include "support.hpp"

using namespace seqdep;

namespace {

using Edge = DependencyEdge;
constexpr auto kApi = EdgeCategory::Api;
constexpr auto kCond = EdgeCategory::Condition;

std::set<std::string> names(const std::vector<EntityOccurrence>& occ) {
  const auto v = entity_names(occ);
  return {v.begin(), v.end()};
}

// Demo variant where m1's API returns user_id as uint32.
Document narrowed_demo() {
  Document doc = fixture::demo();
  for (auto& api : doc.apis)
    if (api.name == "QueryAccount")
      api.response.push_back({"user_id", DataType::of(BaseType::UInt32), ""});
  return doc;
}

}  // namespace

TEST(ProduceConsume, DemoSets) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases[0];
  EXPECT_EQ(names(data_produced("m1", uc, doc)), (std::set<std::string>{"account_status", "balance"}));
  EXPECT_EQ(names(data_produced("@input", uc, doc)), (std::set<std::string>{"user_id", "amount"}));
  EXPECT_TRUE(data_produced("r_ok", uc, doc).empty());
  EXPECT_TRUE(data_produced("f1", uc, doc).empty());

  const auto m2 = data_consumed("m2", uc, doc);
  ASSERT_EQ(m2.size(), 2u);
  for (const auto& o : m2) EXPECT_EQ(o.slot, Slot::ApiRequest);
  const auto f1 = data_consumed("f1", uc, doc);
  ASSERT_EQ(f1.size(), 1u);
  EXPECT_EQ(f1[0].entity, "account_status");
  EXPECT_EQ(f1[0].slot, Slot::TableConditionRead);
  EXPECT_FALSE(f1[0].dtype);
  EXPECT_TRUE(data_consumed("@input", uc, doc).empty());
  EXPECT_EQ(data_produced("m1", uc, doc)[0].dtype, DataType::of(BaseType::String));
  EXPECT_THROW(data_consumed("nope", uc, doc), LookupError);
}

TEST(ProduceConsume, SlotRoles) {
  for (Slot s : {Slot::ApiResponse, Slot::TableActionWrite, Slot::InputField}) EXPECT_TRUE(is_producer_slot(s));
  for (Slot s : {Slot::ApiRequest, Slot::TableConditionRead, Slot::TableActionRead, Slot::ReturnField})
    EXPECT_FALSE(is_producer_slot(s));
}

TEST(RuleEngine, DemoTargets) {
  const Document doc = fixture::demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  EXPECT_EQ(infer_rule_based(a, "m2").edges,
            (std::vector<Edge>{{"@input", "user_id", "m2", kApi}, {"@input", "amount", "m2", kApi}}));
  EXPECT_EQ(infer_rule_based(a, "f1").edges, (std::vector<Edge>{{"m1", "account_status", "f1", kCond}}));
  EXPECT_EQ(infer_rule_based(a, "r_ok").edges, (std::vector<Edge>{{"m2", "new_balance", "r_ok", kApi}}));
  EXPECT_TRUE(infer_rule_based(a, "m2").diagnostics.empty());

  const auto err = infer_rule_based(a, "r_err");
  EXPECT_TRUE(err.edges.empty());
  ASSERT_EQ(err.diagnostics.size(), 1u);
  EXPECT_EQ(err.diagnostics[0].code, DiagCode::MissingSource);
  EXPECT_EQ(err.diagnostics[0].entity, "result_code");
  EXPECT_EQ(err.diagnostics[0].node, "r_err");
}

TEST(RuleEngine, ContextMustMatchTarget) {
  const Document doc = fixture::demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  EXPECT_THROW(infer_rule_based(a, "m2", a.predecessors("r_ok")), std::invalid_argument);
}

TEST(RuleEngine, InferAllDemo) {
  const Document doc = fixture::demo();
  const DataDependencyGraph g = infer_all(doc.usecases[0], doc);
  EXPECT_EQ(g.usecase, "Demo");
  EXPECT_EQ(g.edges, (std::vector<Edge>{{"@input", "user_id", "m1", kApi},
                                        {"m1", "account_status", "f1", kCond},
                                        {"@input", "amount", "m2", kApi},
                                        {"@input", "user_id", "m2", kApi},
                                        {"m2", "new_balance", "r_ok", kApi}}));
  ASSERT_EQ(g.diagnostics.size(), 1u);
  EXPECT_EQ(g.diagnostics[0].code, DiagCode::MissingSource);
  EXPECT_EQ(g.diagnostics[0].node, "r_err");

  const DataDependencyGraph again = infer_all(doc.usecases[0], doc);
  EXPECT_EQ(again.edges, g.edges);
  EXPECT_EQ(again.diagnostics, g.diagnostics);
}

TEST(RuleEngine, LatestWriterShadowsInput) {
  // m1 also returns user_id, so m2 should take it from m1 rather than @input.
  const Document doc = narrowed_demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  const auto r = infer_rule_based(a, "m2");
  EXPECT_EQ(r.edges, (std::vector<Edge>{{"m1", "user_id", "m2", kApi}, {"@input", "amount", "m2", kApi}}));
}

TEST(RuleEngine, LaterWriterInSameBranchWins) {
  Document doc = fixture::demo();
  UseCase& uc = doc.usecases[0];
  const std::size_t f1 = uc.node_index.at("f1");
  uc.add(UseCase::branch_of(f1, 1), Message{"m3", "a", "c", {"Debit"}, {}});
  const UseCaseAnalysis a(uc, doc);
  EXPECT_EQ(infer_rule_based(a, "r_ok").edges,
            (std::vector<Edge>{{"m3", "new_balance", "r_ok", kApi}}));
}

TEST(RuleEngine, ExclusiveBranchesBothSurvive) {
  Document doc = fixture::demo();
  UseCase uc;
  uc.name = "Split";
  uc.input_fields = {{"user_id", DataType::of(BaseType::UInt64), ""}, {"amount", DataType::of(BaseType::Int64), ""}};
  uc.participants = {"a", "b"};
  const auto alt = uc.add(UseCase::top(), Fragment{"f", FragmentKind::Alt, {}, {{"x", {}}, {"y", {}}}});
  uc.add(UseCase::branch_of(alt, 0), Message{"mx", "a", "b", {"Debit"}, {}});
  uc.add(UseCase::branch_of(alt, 1), Message{"my", "a", "b", {"Debit"}, {}});
  uc.add(UseCase::top(), ReturnMessage{"r", {{"new_balance", DataType::of(BaseType::Int64), ""}}});
  const UseCaseAnalysis a(uc, doc);
  EXPECT_EQ(infer_rule_based(a, "r").edges,
            (std::vector<Edge>{{"mx", "new_balance", "r", kApi}, {"my", "new_balance", "r", kApi}}));
}

TEST(TypeCompat, Examples) {
  const EntityOccurrence u32{"user_id", DataType::of(BaseType::UInt32), Slot::ApiResponse, "m0"};
  const EntityOccurrence u64{"user_id", DataType::of(BaseType::UInt64), Slot::ApiRequest, "m1"};
  const auto w = check_type_compatibility(u32, u64);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->code, DiagCode::TypeCompat);
  EXPECT_EQ(w->severity, Severity::Warning);
  EXPECT_NE(w->message.find("uint32"), std::string::npos);
  EXPECT_NE(w->message.find("uint64"), std::string::npos);
  EXPECT_NE(w->message.find("widen"), std::string::npos);

  const EntityOccurrence b1{"balance", DataType::of(BaseType::Int64), Slot::ApiResponse, "m0"};
  EXPECT_FALSE(check_type_compatibility(b1, {"balance", DataType::of(BaseType::Int64), Slot::ApiRequest, "m1"}));

  const auto kind = check_type_compatibility({"flag", DataType::of(BaseType::Bool), Slot::ApiResponse, "m0"},
                                             {"flag", DataType::of(BaseType::String), Slot::ApiRequest, "m1"});
  ASSERT_TRUE(kind);
  EXPECT_NE(kind->message.find("kind mismatch"), std::string::npos);
}

TEST(TypeCompat, Uint32ProducerUint64ConsumerWarnsOnce) {
  const Document doc = narrowed_demo();
  const auto g = infer_all(doc.usecases[0], doc);
  EXPECT_EQ(count_code(g.diagnostics, DiagCode::TypeCompat), 1u);
  const auto& w = *std::find_if(g.diagnostics.begin(), g.diagnostics.end(),
                                [](const Diagnostic& d) { return d.code == DiagCode::TypeCompat; });
  EXPECT_EQ(w.node, "m2");
  EXPECT_EQ(w.entity, "user_id");
}

TEST(Validate, RuleOutputOnDemo) {
  const Document doc = fixture::demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  const auto d = validate_ddg(infer_all(a), a);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, DiagCode::MissingSource);
  EXPECT_EQ(d[0].node, "r_err");
  EXPECT_EQ(d[0].entity, "result_code");
}

TEST(Validate, InjectedViolations) {
  const Document doc = fixture::demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  DataDependencyGraph g = infer_all(a);
  const std::vector<Edge> bad = {
      {"r_ok", "x", "m1", kApi},             // Output source
      {"m2", "new_balance", "m1", kApi},     // not reachable
      {"m1", "balance", "@input", kApi},     // Input target
      {"m1", "account_status", "m1", kApi},  // self edge
      {"r_err", "user_id", "m2", kApi},      // outside P(m2)
      {"m1", "balance", "m2", kApi},         // m2 does not consume balance
      {"ghost", "user_id", "m2", kApi},      // unknown node
  };
  g.edges.insert(g.edges.end(), bad.begin(), bad.end());
  const auto d = validate_ddg(g, a);
  EXPECT_EQ(count_code(d, DiagCode::EdgeConstraint), bad.size());
  EXPECT_EQ(count_code(d, DiagCode::MissingSource), 1u);
}

TEST(Validate, MismatchedUseCase) {
  const Document doc = fixture::demo();
  const UseCaseAnalysis a(doc.usecases[0], doc);
  DataDependencyGraph g;
  g.usecase = "Other";
  EXPECT_THROW(validate_ddg(g, a), std::invalid_argument);
}

class EngineProperties : public ::testing::TestWithParam<int> {};

TEST_P(EngineProperties, AdmissibleSoundAndAccounted) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  ShapeParams p;
  p.p_table = 0.5;
  for (int i = 0; i < 60; ++i) {
    const Document doc = random_document(rng, p);
    const UseCase& uc = doc.usecases[0];
    const UseCaseAnalysis a(uc, doc);
    const auto g = infer_all(a);

    EXPECT_EQ(count_code(validate_ddg(g, a), DiagCode::EdgeConstraint), 0u);
    for (const auto& e : g.edges) {
      EXPECT_TRUE(names(data_produced(e.source, uc, doc)).contains(e.data));
      EXPECT_TRUE(names(data_consumed(e.target, uc, doc)).contains(e.data));
    }

    // Each consumed name of t is either covered by edges or missing, never both.
    std::map<std::string, std::set<std::string>> covered;
    for (const auto& e : g.edges) covered[e.target].insert(e.data);
    std::map<std::string, std::size_t> missing;
    for (const auto& d : g.diagnostics)
      if (d.code == DiagCode::MissingSource) {
        ++missing[*d.node];
        EXPECT_FALSE(covered[*d.node].contains(*d.entity));
      }
    for (const auto& el : uc.elements) {
      const std::string& id = element_id(el);
      EXPECT_EQ(names(data_consumed(id, uc, doc)).size(), covered[id].size() + missing[id]) << id;
    }

    const auto ser = infer_all_serial(a);
    EXPECT_EQ(ser.edges, g.edges);
    EXPECT_EQ(ser.diagnostics, g.diagnostics);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, EngineProperties, ::testing::Values(11, 12, 13));
