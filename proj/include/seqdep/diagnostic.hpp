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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqdep {

enum class Severity { Info, Warning, Error };

/// Fixed registry of diagnostic codes. The string form (E_*, W_*) is part of
/// the wire format and must not change.
enum class DiagCode {
  MissingSource,   // E_MISSING_SOURCE
  TypeCompat,      // W_TYPE_COMPAT
  EdgeConstraint,  // E_EDGE_CONSTRAINT
  Parse,           // E_PARSE
  DesignRule,      // E_DESIGN_RULE
  DesignWarning,   // W_DESIGN_RULE
  AmbiguousSlot,   // W_AMBIGUOUS_SLOT
  OracleBudget,    // E_ORACLE_BUDGET
  NoConsumption,   // E_NO_CONSUMPTION
  ResponseFormat,  // E_RESPONSE_FORMAT
  Transport,       // E_TRANSPORT
  Lookup,          // E_LOOKUP
  Usage,           // E_USAGE
};

std::string_view code_name(DiagCode code);
std::optional<DiagCode> code_from_name(std::string_view name);
Severity default_severity(DiagCode code);
std::string_view severity_name(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::Parse;
  std::optional<std::string> node;
  std::optional<std::string> entity;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diagnostic(DiagCode code, std::string message,
                           std::optional<std::string> node = std::nullopt,
                           std::optional<std::string> entity = std::nullopt);

bool has_errors(const std::vector<Diagnostic>& diags);
std::size_t count_code(const std::vector<Diagnostic>& diags, DiagCode code);

/// One-line human form: `error E_PARSE [node] message`.
std::string format_diagnostic(const Diagnostic& d);

/// Thrown when a node id or use case name does not resolve.
class LookupError : public std::exception {
 public:
  explicit LookupError(std::string what) : what_(std::move(what)) {}
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  std::string what_;
};

}  // namespace seqdep
