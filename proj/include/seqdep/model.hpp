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

// Domain model for enhanced sequence diagrams: use cases with nested
// interaction fragments, API specifications and decision tables.
//
// A use case stores its elements in a flat arena; branches and the top-level
// body refer to elements by index. This keeps UseCase a plain value type that
// copies without pointer fix-ups.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace seqdep {

inline constexpr std::string_view kInputId = "@input";

enum class BaseType { UInt32, UInt64, Int32, Int64, String, Bool, Decimal, Record };

struct DataType {
  BaseType base = BaseType::String;
  std::string record;  // set only for BaseType::Record
  bool list = false;

  static DataType of(BaseType b, bool list = false) { return DataType{b, {}, list}; }
  static DataType named(std::string record, bool list = false) {
    return DataType{BaseType::Record, std::move(record), list};
  }
  /// Parses a type name as written in ESD (`uint64`, `account_info`).
  static DataType from_name(std::string_view name, bool list);

  std::string str() const;
  bool operator==(const DataType&) const = default;
};

enum class TypeRelation { Equal, Widening, Narrowing, Incompatible };

/// Relation of a produced type to a consumed type. Numeric widths form the
/// lattice uint32 < uint64 and int32 < int64; everything else is either equal
/// or incompatible.
TypeRelation relate_types(const DataType& produced, const DataType& consumed);

struct Field {
  std::string name;
  DataType type;
  std::string description;

  bool operator==(const Field&) const = default;
};

struct ApiSpec {
  std::string name;
  std::string description;
  std::vector<Field> request;
  std::vector<Field> response;

  bool operator==(const ApiSpec&) const = default;
};

struct Rule {
  std::optional<std::string> condition;
  std::vector<std::string> condition_reads;
  std::string action;
  std::vector<std::string> action_reads;
  std::vector<Field> action_writes;

  bool operator==(const Rule&) const = default;
};

struct DecisionTable {
  std::string id;
  std::vector<Rule> rules;

  bool operator==(const DecisionTable&) const = default;
};

enum class FragmentKind { Opt, Alt, Loop, Break };

std::string_view fragment_kind_name(FragmentKind k);
std::optional<FragmentKind> fragment_kind_from_name(std::string_view name);

struct Branch {
  std::string label;
  std::vector<std::size_t> elements;  // indices into UseCase::elements
};

struct Message {
  std::string id;
  std::string from;
  std::string to;
  std::vector<std::string> apis;  // exactly one in a well-formed diagram
  std::vector<std::string> tables;
};

struct Fragment {
  std::string id;
  FragmentKind kind = FragmentKind::Opt;
  std::vector<std::string> tables;
  std::vector<Branch> branches;
};

struct ReturnMessage {
  std::string id;
  std::vector<Field> fields;
};

using Element = std::variant<Message, Fragment, ReturnMessage>;

const std::string& element_id(const Element& e);
const std::vector<std::string>& element_tables(const Element& e);

struct LineSpan {
  int start = 0;
  int end = 0;
  bool operator==(const LineSpan&) const = default;
};

/// Identifies a sequence of sibling elements: the top-level body when
/// `fragment` is empty, otherwise one branch of a fragment.
struct Scope {
  std::optional<std::size_t> fragment;
  std::size_t branch = 0;
};

enum class NodeKind { Input, Function, Control, Output };

std::string_view node_kind_name(NodeKind k);

struct UseCase {
  std::string name;
  std::vector<Field> input_fields;
  std::vector<std::string> participants;
  std::vector<std::size_t> body;
  std::vector<Element> elements;
  std::map<std::string, std::size_t, std::less<>> node_index;
  std::map<std::string, LineSpan, std::less<>> spans;  // not part of equality

  static Scope top() { return Scope{}; }
  static Scope branch_of(std::size_t fragment, std::size_t branch) {
    return Scope{fragment, branch};
  }

  /// Appends an element to the given scope and indexes it. For fragments the
  /// branch element lists must be empty; populate them with further adds.
  std::size_t add(Scope scope, Element element);

  const std::vector<std::size_t>& scope_elements(Scope scope) const;
  const Element* find(std::string_view id) const;
  const Element& at(std::size_t index) const { return elements.at(index); }
};

/// Structural equality: ignores arena layout and source spans.
bool operator==(const UseCase& a, const UseCase& b);

struct Document {
  std::vector<UseCase> usecases;
  std::vector<ApiSpec> apis;
  std::vector<DecisionTable> tables;
  std::string source_path;  // not part of equality

  const ApiSpec* find_api(std::string_view name) const;
  const DecisionTable* find_table(std::string_view id) const;
  const UseCase* find_usecase(std::string_view name) const;
};

bool operator==(const Document& a, const Document& b);

/// Kind of a node id within a use case; throws LookupError for unknown ids.
NodeKind node_kind(std::string_view node_id, const UseCase& usecase);

enum class EdgeCategory { Api, Condition, Action };

std::string_view category_name(EdgeCategory c);
std::optional<EdgeCategory> category_from_name(std::string_view name);

struct DependencyEdge {
  std::string source;
  std::string data;
  std::string target;
  EdgeCategory category = EdgeCategory::Api;

  auto operator<=>(const DependencyEdge&) const = default;
};

/// Reason the (source kind, target kind) pair violates the producer/consumer
/// constraint, or nullopt when admissible.
std::optional<std::string> edge_kind_violation(std::string_view source, NodeKind source_kind,
                                               std::string_view target, NodeKind target_kind);

/// Builds an edge after checking kind constraints; throws std::invalid_argument.
DependencyEdge make_checked_edge(const UseCase& usecase, std::string source, std::string data,
                                 std::string target, EdgeCategory category);

/// Lower snake-case: `UserId` -> `user_id`, `Account-Status` -> `account_status`.
/// `@input` is returned unchanged.
std::string normalize_name(std::string_view raw);

}  // namespace seqdep
