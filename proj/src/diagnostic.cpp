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

#include "seqdep/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace seqdep {

namespace {

constexpr std::array<std::pair<DiagCode, std::string_view>, 13> kCodes{{
    {DiagCode::MissingSource, "E_MISSING_SOURCE"},
    {DiagCode::TypeCompat, "W_TYPE_COMPAT"},
    {DiagCode::EdgeConstraint, "E_EDGE_CONSTRAINT"},
    {DiagCode::Parse, "E_PARSE"},
    {DiagCode::DesignRule, "E_DESIGN_RULE"},
    {DiagCode::DesignWarning, "W_DESIGN_RULE"},
    {DiagCode::AmbiguousSlot, "W_AMBIGUOUS_SLOT"},
    {DiagCode::OracleBudget, "E_ORACLE_BUDGET"},
    {DiagCode::NoConsumption, "E_NO_CONSUMPTION"},
    {DiagCode::ResponseFormat, "E_RESPONSE_FORMAT"},
    {DiagCode::Transport, "E_TRANSPORT"},
    {DiagCode::Lookup, "E_LOOKUP"},
    {DiagCode::Usage, "E_USAGE"},
}};

}  // namespace

std::string_view code_name(DiagCode code) {
  for (const auto& [c, name] : kCodes)
    if (c == code) return name;
  return "E_UNKNOWN";
}

std::optional<DiagCode> code_from_name(std::string_view name) {
  for (const auto& [c, n] : kCodes)
    if (n == name) return c;
  return std::nullopt;
}

Severity default_severity(DiagCode code) {
  return code_name(code).starts_with("W_") ? Severity::Warning : Severity::Error;
}

std::string_view severity_name(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

Diagnostic make_diagnostic(DiagCode code, std::string message,
                           std::optional<std::string> node,
                           std::optional<std::string> entity) {
  return Diagnostic{default_severity(code), code, std::move(node), std::move(entity),
                    std::move(message)};
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::size_t count_code(const std::vector<Diagnostic>& diags, DiagCode code) {
  return static_cast<std::size_t>(std::count_if(
      diags.begin(), diags.end(), [code](const Diagnostic& d) { return d.code == code; }));
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out(severity_name(d.severity));
  out += ' ';
  out += code_name(d.code);
  if (d.node) out += " [" + *d.node + "]";
  if (d.entity) out += " (" + *d.entity + ")";
  out += ' ';
  out += d.message;
  return out;
}

}  // namespace seqdep
