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

#include "seqdep/model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "seqdep/diagnostic.hpp"

namespace seqdep {

namespace {

struct BaseName {
  BaseType base;
  std::string_view name;
};

constexpr BaseName kBaseNames[] = {
    {BaseType::UInt32, "uint32"}, {BaseType::UInt64, "uint64"}, {BaseType::Int32, "int32"},
    {BaseType::Int64, "int64"},   {BaseType::String, "string"}, {BaseType::Bool, "bool"},
    {BaseType::Decimal, "decimal"},
};

// Position in a width chain, as (chain id, rank).
std::optional<std::pair<int, int>> width_rank(BaseType b) {
  switch (b) {
    case BaseType::UInt32: return std::pair{0, 0};
    case BaseType::UInt64: return std::pair{0, 1};
    case BaseType::Int32: return std::pair{1, 0};
    case BaseType::Int64: return std::pair{1, 1};
    default: return std::nullopt;
  }
}

bool same_scope_tree(const UseCase& a, const std::vector<std::size_t>& sa, const UseCase& b,
                     const std::vector<std::size_t>& sb) {
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const Element& ea = a.elements[sa[i]];
    const Element& eb = b.elements[sb[i]];
    if (ea.index() != eb.index()) return false;
    if (const auto* ma = std::get_if<Message>(&ea)) {
      const auto& mb = std::get<Message>(eb);
      if (ma->id != mb.id || ma->from != mb.from || ma->to != mb.to || ma->apis != mb.apis ||
          ma->tables != mb.tables)
        return false;
    } else if (const auto* ra = std::get_if<ReturnMessage>(&ea)) {
      const auto& rb = std::get<ReturnMessage>(eb);
      if (ra->id != rb.id || ra->fields != rb.fields) return false;
    } else {
      const auto& fa = std::get<Fragment>(ea);
      const auto& fb = std::get<Fragment>(eb);
      if (fa.id != fb.id || fa.kind != fb.kind || fa.tables != fb.tables ||
          fa.branches.size() != fb.branches.size())
        return false;
      for (std::size_t k = 0; k < fa.branches.size(); ++k) {
        if (fa.branches[k].label != fb.branches[k].label) return false;
        if (!same_scope_tree(a, fa.branches[k].elements, b, fb.branches[k].elements))
          return false;
      }
    }
  }
  return true;
}

}  // namespace

DataType DataType::from_name(std::string_view name, bool list) {
  for (const auto& [base, n] : kBaseNames)
    if (n == name) return DataType::of(base, list);
  return DataType::named(std::string(name), list);
}

std::string DataType::str() const {
  std::string out;
  if (base == BaseType::Record) {
    out = record;
  } else {
    for (const auto& [b, n] : kBaseNames)
      if (b == base) out = n;
  }
  if (list) out += "[]";
  return out;
}

TypeRelation relate_types(const DataType& produced, const DataType& consumed) {
  if (produced == consumed) return TypeRelation::Equal;
  if (produced.list != consumed.list) return TypeRelation::Incompatible;
  auto rp = width_rank(produced.base);
  auto rc = width_rank(consumed.base);
  if (rp && rc && rp->first == rc->first)
    return rp->second < rc->second ? TypeRelation::Widening : TypeRelation::Narrowing;
  return TypeRelation::Incompatible;
}

std::string_view fragment_kind_name(FragmentKind k) {
  switch (k) {
    case FragmentKind::Opt: return "opt";
    case FragmentKind::Alt: return "alt";
    case FragmentKind::Loop: return "loop";
    case FragmentKind::Break: return "break";
  }
  return "opt";
}

std::optional<FragmentKind> fragment_kind_from_name(std::string_view name) {
  for (auto k : {FragmentKind::Opt, FragmentKind::Alt, FragmentKind::Loop, FragmentKind::Break})
    if (fragment_kind_name(k) == name) return k;
  return std::nullopt;
}

const std::string& element_id(const Element& e) {
  return std::visit([](const auto& v) -> const std::string& { return v.id; }, e);
}

const std::vector<std::string>& element_tables(const Element& e) {
  static const std::vector<std::string> kNone;
  if (const auto* m = std::get_if<Message>(&e)) return m->tables;
  if (const auto* f = std::get_if<Fragment>(&e)) return f->tables;
  return kNone;
}

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Input: return "Input";
    case NodeKind::Function: return "Function";
    case NodeKind::Control: return "Control";
    case NodeKind::Output: return "Output";
  }
  return "Input";
}

std::size_t UseCase::add(Scope scope, Element element) {
  const std::string id = element_id(element);
  if (id == kInputId || node_index.contains(id))
    throw std::invalid_argument("duplicate or reserved node id: " + id);
  if (scope.fragment) {
    auto* parent = std::get_if<Fragment>(&elements.at(*scope.fragment));
    if (!parent || scope.branch >= parent->branches.size())
      throw std::invalid_argument("scope does not name a fragment branch");
  }
  const std::size_t index = elements.size();
  elements.push_back(std::move(element));
  node_index.emplace(id, index);
  if (scope.fragment)
    std::get<Fragment>(elements[*scope.fragment]).branches[scope.branch].elements.push_back(index);
  else
    body.push_back(index);
  return index;
}

const std::vector<std::size_t>& UseCase::scope_elements(Scope scope) const {
  if (!scope.fragment) return body;
  return std::get<Fragment>(elements.at(*scope.fragment)).branches.at(scope.branch).elements;
}

const Element* UseCase::find(std::string_view id) const {
  auto it = node_index.find(id);
  return it == node_index.end() ? nullptr : &elements[it->second];
}

bool operator==(const UseCase& a, const UseCase& b) {
  return a.name == b.name && a.input_fields == b.input_fields &&
         a.participants == b.participants && same_scope_tree(a, a.body, b, b.body);
}

const ApiSpec* Document::find_api(std::string_view name) const {
  auto it = std::find_if(apis.begin(), apis.end(), [&](const ApiSpec& a) { return a.name == name; });
  return it == apis.end() ? nullptr : &*it;
}

const DecisionTable* Document::find_table(std::string_view id) const {
  auto it = std::find_if(tables.begin(), tables.end(),
                         [&](const DecisionTable& t) { return t.id == id; });
  return it == tables.end() ? nullptr : &*it;
}

const UseCase* Document::find_usecase(std::string_view name) const {
  auto it = std::find_if(usecases.begin(), usecases.end(),
                         [&](const UseCase& u) { return u.name == name; });
  return it == usecases.end() ? nullptr : &*it;
}

bool operator==(const Document& a, const Document& b) {
  return a.usecases == b.usecases && a.apis == b.apis && a.tables == b.tables;
}

NodeKind node_kind(std::string_view node_id, const UseCase& usecase) {
  if (node_id == kInputId) return NodeKind::Input;
  const Element* e = usecase.find(node_id);
  if (!e) throw LookupError("unknown node '" + std::string(node_id) + "' in use case " + usecase.name);
  if (std::holds_alternative<Message>(*e)) return NodeKind::Function;
  if (std::holds_alternative<Fragment>(*e)) return NodeKind::Control;
  return NodeKind::Output;
}

std::string_view category_name(EdgeCategory c) {
  switch (c) {
    case EdgeCategory::Api: return "api";
    case EdgeCategory::Condition: return "condition";
    case EdgeCategory::Action: return "action";
  }
  return "api";
}

std::optional<EdgeCategory> category_from_name(std::string_view name) {
  for (auto c : {EdgeCategory::Api, EdgeCategory::Condition, EdgeCategory::Action})
    if (category_name(c) == name) return c;
  return std::nullopt;
}

std::optional<std::string> edge_kind_violation(std::string_view source, NodeKind source_kind,
                                               std::string_view target, NodeKind target_kind) {
  if (source == target) return "source and target are the same node " + std::string(source);
  if (source_kind == NodeKind::Output)
    return "source " + std::string(source) + " is an Output node and cannot produce data";
  if (target_kind == NodeKind::Input)
    return "target " + std::string(target) + " is the Input node and cannot consume data";
  return std::nullopt;
}

DependencyEdge make_checked_edge(const UseCase& usecase, std::string source, std::string data,
                                 std::string target, EdgeCategory category) {
  auto why = edge_kind_violation(source, node_kind(source, usecase), target,
                                 node_kind(target, usecase));
  if (why) throw std::invalid_argument(*why);
  return DependencyEdge{std::move(source), std::move(data), std::move(target), category};
}

std::string normalize_name(std::string_view raw) {
  if (raw == kInputId) return std::string(raw);
  std::string out;
  out.reserve(raw.size() + 4);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(raw[i]);
    if (std::isupper(c)) {
      // Split camelCase boundaries: aB -> a_b, ABc -> a_bc.
      const bool prev_lower_or_digit =
          i > 0 && (std::islower(static_cast<unsigned char>(raw[i - 1])) ||
                    std::isdigit(static_cast<unsigned char>(raw[i - 1])));
      const bool acronym_end = i > 0 && std::isupper(static_cast<unsigned char>(raw[i - 1])) &&
                               i + 1 < raw.size() &&
                               std::islower(static_cast<unsigned char>(raw[i + 1]));
      if ((prev_lower_or_digit || acronym_end) && !out.empty() && out.back() != '_') out += '_';
      out += static_cast<char>(std::tolower(c));
    } else if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace seqdep
