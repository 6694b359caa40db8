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

#include "seqdep/oracle.hpp"

#include "seqdep/diagnostic.hpp"

namespace seqdep {

namespace {

enum class End { Normal, Return, Break };

struct Run {
  std::vector<int> visited;  // element indices, -1 for @input
  End end = End::Normal;
};

class Enumerator {
 public:
  Enumerator(const UseCase& uc, std::size_t budget) : uc_(uc), budget_(budget) {}

  std::vector<Run> sequence(const std::vector<std::size_t>& elements) {
    std::vector<Run> runs(1);
    for (std::size_t idx : elements) {
      const std::vector<Run> step = element(idx);
      std::vector<Run> next;
      for (auto& r : runs) {
        if (r.end != End::Normal) {
          next.push_back(std::move(r));
          continue;
        }
        for (const auto& s : step) {
          Run joined = r;
          joined.visited.insert(joined.visited.end(), s.visited.begin(), s.visited.end());
          joined.end = s.end;
          next.push_back(std::move(joined));
        }
      }
      check(next.size());
      runs = std::move(next);
    }
    return runs;
  }

 private:
  void check(std::size_t n) const {
    if (n > budget_) throw OracleBudgetError(budget_);
  }

  std::vector<Run> element(std::size_t idx) {
    const Element& e = uc_.elements[idx];
    const int self = static_cast<int>(idx);
    if (std::holds_alternative<Message>(e)) return {Run{{self}, End::Normal}};
    if (std::holds_alternative<ReturnMessage>(e)) return {Run{{self}, End::Return}};

    const auto& f = std::get<Fragment>(e);
    std::vector<Run> inner;
    auto body = [&](std::size_t b) {
      return b < f.branches.size() ? sequence(f.branches[b].elements) : std::vector<Run>(1);
    };
    switch (f.kind) {
      case FragmentKind::Alt:
        for (std::size_t b = 0; b < f.branches.size(); ++b) {
          auto runs = body(b);
          inner.insert(inner.end(), runs.begin(), runs.end());
        }
        break;
      case FragmentKind::Opt:
        inner = body(0);
        inner.push_back(Run{});  // skipped
        break;
      case FragmentKind::Loop:
        inner = body(0);  // exactly one iteration
        for (auto& r : inner)
          if (r.end == End::Break) r.end = End::Normal;
        break;
      case FragmentKind::Break:
        inner = body(0);
        for (auto& r : inner)
          if (r.end == End::Normal) r.end = End::Break;
        inner.push_back(Run{});  // condition false
        break;
    }
    for (auto& r : inner) r.visited.insert(r.visited.begin(), self);
    check(inner.size());
    return inner;
  }

  const UseCase& uc_;
  std::size_t budget_;
};

std::string id_of(const UseCase& uc, int idx) {
  return idx < 0 ? std::string(kInputId) : element_id(uc.elements[static_cast<std::size_t>(idx)]);
}

}  // namespace

std::vector<ExecutionPath> enumerate_paths(const UseCase& usecase, std::size_t budget) {
  std::vector<Run> runs = Enumerator(usecase, budget).sequence(usecase.body);
  std::vector<ExecutionPath> out;
  out.reserve(runs.size());
  for (const auto& r : runs) {
    ExecutionPath p{std::string(kInputId)};
    for (int idx : r.visited) p.push_back(id_of(usecase, idx));
    out.push_back(std::move(p));
  }
  return out;
}

std::map<std::string, std::set<std::string>> oracle_all_predecessors(const UseCase& usecase,
                                                                      std::size_t budget) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [id, _] : usecase.node_index) out[id].insert(std::string(kInputId));
  for (const auto& path : enumerate_paths(usecase, budget)) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      auto& preds = out[path[i]];
      for (std::size_t j = 0; j < i; ++j) preds.insert(path[j]);
    }
  }
  return out;
}

std::set<std::string> oracle_reachable_predecessors(const UseCase& usecase,
                                                    std::string_view target,
                                                    std::size_t budget) {
  if (target != kInputId && !usecase.find(target))
    throw LookupError("unknown node '" + std::string(target) + "' in use case " + usecase.name);
  std::set<std::string> out{std::string(kInputId)};
  for (const auto& path : enumerate_paths(usecase, budget)) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i] != target) continue;
      out.insert(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  out.erase(std::string(target));
  return out;
}

}  // namespace seqdep
