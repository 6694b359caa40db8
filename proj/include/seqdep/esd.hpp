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

// Reader and writer for the ESD text format (enhanced sequence diagrams).
//
//   file     := (usecase | api | table)*
//   usecase  := "usecase" STRING "{" input participant+ element* "}"
//   element  := message | fragment | return
//   message  := "message" IDENT "from" IDENT "to" IDENT "api" STRING binding?
//   fragment := ("opt"|"loop"|"break") IDENT binding? "{" element* "}"
//             | "alt" IDENT binding? "{" branch+ "}"
//   binding  := "tables" "[" IDENT ("," IDENT)* "]"
//
// `#` starts a comment that runs to end of line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/diagnostic.hpp"
#include "seqdep/model.hpp"

namespace seqdep {

struct ParseError {
  int line = 1;  // 1-based
  int column = 1;
  std::string expected;
  std::string found;
  std::string detail;  // overrides the expected/found wording when set

  std::string message() const;
  Diagnostic to_diagnostic() const;
};

struct ParseResult {
  std::optional<Document> document;
  std::vector<ParseError> errors;

  bool ok() const { return document.has_value(); }
  std::vector<Diagnostic> diagnostics() const;
};

/// Parses ESD text. Syntax errors stop at the first offending token; after a
/// clean syntax pass every dangling api/table/participant reference and every
/// duplicate id is reported.
ParseResult parse_document(std::string_view text, std::string source_path = {});

/// Canonical text: two-space indent, one statement per line, declaration order
/// preserved. Byte-deterministic.
std::string serialize_document(const Document& doc);

/// Design-principle checks: single use case per file, one API per message,
/// fragment branch counts, trailing return, and tables that touch no field in
/// scope (warning).
std::vector<Diagnostic> check_design_rules(const Document& doc);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace seqdep
