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

#include "seqdep/dependency.hpp"
#include "seqdep/model.hpp"
#include "support.hpp"

using namespace seqdep;

TEST(NodeKind, DemoPartition) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases.at(0);
  EXPECT_EQ(node_kind("@input", uc), NodeKind::Input);
  EXPECT_EQ(node_kind("m1", uc), NodeKind::Function);
  EXPECT_EQ(node_kind("m2", uc), NodeKind::Function);
  EXPECT_EQ(node_kind("f1", uc), NodeKind::Control);
  EXPECT_EQ(node_kind("r_ok", uc), NodeKind::Output);
  EXPECT_EQ(node_kind("r_err", uc), NodeKind::Output);
  EXPECT_THROW(node_kind("nope", uc), LookupError);
}

TEST(NodeKind, ExactlyOneInputPerUseCase) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases.at(0);
  std::size_t inputs = node_kind(kInputId, uc) == NodeKind::Input ? 1 : 0;
  for (const auto& [id, _] : uc.node_index) inputs += node_kind(id, uc) == NodeKind::Input;
  EXPECT_EQ(inputs, 1u);
}

TEST(EdgeCategory, DemoClassification) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases.at(0);
  EXPECT_EQ(classify_edge_category("@input", "user_id", "m1", uc, doc).category, EdgeCategory::Api);
  EXPECT_EQ(classify_edge_category("m1", "account_status", "f1", uc, doc).category,
            EdgeCategory::Condition);
  EXPECT_EQ(classify_edge_category("m2", "new_balance", "r_ok", uc, doc).category, EdgeCategory::Api);

  const auto bad = classify_edge_category("m1", "balance", "f1", uc, doc);
  EXPECT_FALSE(bad.category);
  ASSERT_EQ(bad.diagnostics.size(), 1u);
  EXPECT_EQ(bad.diagnostics[0].code, DiagCode::EdgeConstraint);
}

TEST(EdgeCategory, AmbiguousSlotPrefersApi) {
  Document doc = fixture::demo();
  doc.tables[0].rules[0].condition_reads.push_back("user_id");
  doc.tables[0].rules[0].action_reads.push_back("user_id");
  doc.usecases[0].elements[doc.usecases[0].node_index.at("m1")] =
      Message{"m1", "a", "b", {"QueryAccount"}, {"t1"}};
  const auto r = classify_edge_category("@input", "user_id", "m1", doc.usecases[0], doc);
  EXPECT_EQ(r.category, EdgeCategory::Api);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, DiagCode::AmbiguousSlot);
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Warning);
}

TEST(DependencyEdge, KindConstraints) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases.at(0);
  EXPECT_THROW(make_checked_edge(uc, "r_ok", "x", "m1", EdgeCategory::Api), std::invalid_argument);
  EXPECT_THROW(make_checked_edge(uc, "m1", "x", "@input", EdgeCategory::Api), std::invalid_argument);
  EXPECT_THROW(make_checked_edge(uc, "m1", "x", "m1", EdgeCategory::Api), std::invalid_argument);
  EXPECT_NO_THROW(make_checked_edge(uc, "f1", "x", "r_ok", EdgeCategory::Api));
}

TEST(Names, NormalizeToSnakeCase) {
  EXPECT_EQ(normalize_name("UserId"), "user_id");
  EXPECT_EQ(normalize_name("accountStatus"), "account_status");
  EXPECT_EQ(normalize_name("Account-Status"), "account_status");
  EXPECT_EQ(normalize_name("new_balance"), "new_balance");
  EXPECT_EQ(normalize_name("@input"), "@input");
}

TEST(DataTypes, WidthLattice) {
  const auto u32 = DataType::of(BaseType::UInt32);
  const auto u64 = DataType::of(BaseType::UInt64);
  const auto i32 = DataType::of(BaseType::Int32);
  const auto i64 = DataType::of(BaseType::Int64);
  EXPECT_EQ(relate_types(u32, u64), TypeRelation::Widening);
  EXPECT_EQ(relate_types(u64, u32), TypeRelation::Narrowing);
  EXPECT_EQ(relate_types(i32, i64), TypeRelation::Widening);
  EXPECT_EQ(relate_types(u64, u64), TypeRelation::Equal);
  EXPECT_EQ(relate_types(u32, i64), TypeRelation::Incompatible);
  EXPECT_EQ(relate_types(DataType::of(BaseType::Bool), DataType::of(BaseType::String)),
            TypeRelation::Incompatible);
  EXPECT_EQ(DataType::from_name("order_item", true).str(), "order_item[]");
}

TEST(Diagnostics, CodeRegistryRoundTrips) {
  for (auto c : {DiagCode::MissingSource, DiagCode::TypeCompat, DiagCode::EdgeConstraint,
                 DiagCode::Parse, DiagCode::DesignRule, DiagCode::DesignWarning,
                 DiagCode::AmbiguousSlot, DiagCode::OracleBudget, DiagCode::NoConsumption,
                 DiagCode::ResponseFormat, DiagCode::Transport, DiagCode::Lookup, DiagCode::Usage}) {
    EXPECT_EQ(code_from_name(code_name(c)), c);
  }
  EXPECT_EQ(default_severity(DiagCode::TypeCompat), Severity::Warning);
  EXPECT_EQ(default_severity(DiagCode::MissingSource), Severity::Error);
  EXPECT_FALSE(code_from_name("E_BOGUS"));
}
