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

// Ground-truth execution reachability by explicit path enumeration. Works on
// the use case syntax tree directly and shares no code with the pruner, so it
// can serve as the reference in property tests.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/model.hpp"

namespace seqdep {

inline constexpr std::size_t kOracleBudget = std::size_t{1} << 20;

class OracleBudgetError : public std::runtime_error {
 public:
  explicit OracleBudgetError(std::size_t paths)
      : std::runtime_error("E_ORACLE_BUDGET: more than " + std::to_string(paths) +
                           " execution paths") {}
};

/// Node ids visited by one complete execution, starting with @input.
using ExecutionPath = std::vector<std::string>;

/// All execution paths of a use case. Throws OracleBudgetError when the count
/// exceeds `budget`.
std::vector<ExecutionPath> enumerate_paths(const UseCase& usecase,
                                           std::size_t budget = kOracleBudget);

/// { s != target : some path visits s strictly before target } plus @input.
std::set<std::string> oracle_reachable_predecessors(const UseCase& usecase,
                                                    std::string_view target,
                                                    std::size_t budget = kOracleBudget);

/// Oracle predecessor sets for every node of the use case except @input.
std::map<std::string, std::set<std::string>> oracle_all_predecessors(
    const UseCase& usecase, std::size_t budget = kOracleBudget);

}  // namespace seqdep
