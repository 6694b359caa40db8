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

// Prompt construction for LLM-based dependency inference, and parsing and
// validation of the model's structured answer.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqdep/dependency.hpp"
#include "seqdep/diagnostic.hpp"
#include "seqdep/pruner.hpp"
#include "seqdep/transport.hpp"

namespace seqdep {

inline constexpr std::array<std::string_view, 4> kPromptHeadings = {
    "Formal Problem Specification",
    "Contextual Information",
    "Inference Constraints",
    "Output Format",
};

/// Bumped whenever rendered prompt text changes; replay fixtures are keyed by
/// a hash of the text, so a bump invalidates them.
inline constexpr int kPromptTemplateVersion = 1;

struct PromptSection {
  std::string heading;
  std::string body;
};

struct PromptDocument {
  std::vector<PromptSection> sections;  // kPromptHeadings, in order
  std::string rendered;
};

/// Carries the diagnostic for requests that cannot be prompted at all.
class BridgeError : public std::runtime_error {
 public:
  explicit BridgeError(Diagnostic d) : std::runtime_error(d.message), diagnostic(std::move(d)) {}
  Diagnostic diagnostic;
};

/// Builds the four-part prompt. Only `context` members and the target appear
/// as node blocks. Throws BridgeError (E_NO_CONSUMPTION) when the target
/// consumes nothing, std::invalid_argument when `context` belongs to another
/// target and LookupError for unknown ids.
PromptDocument build_prompt(const UseCaseAnalysis& analysis, std::string_view target,
                            const PredecessorSet& context);
PromptDocument build_prompt(const UseCaseAnalysis& analysis, std::string_view target);

struct RawEdge {
  std::string source;
  std::string data;
  std::string target;
  std::string category;  // advisory
};

struct LlmEdgeResponse {
  std::vector<RawEdge> edges;
  std::string raw;
};

/// First JSON object or array in `text` that matches the edge schema; prose
/// and code fences around it are skipped. Unknown fields are ignored.
std::optional<LlmEdgeResponse> extract_response(std::string_view text);

struct BridgeResult {
  std::vector<DependencyEdge> edges;
  std::vector<Diagnostic> diagnostics;
};

/// Validates every extracted edge: source in `context`, target equal to
/// `target`, kind constraints, and data consumed by the target. Violations
/// are dropped with E_EDGE_CONSTRAINT; categories are recomputed locally.
/// Unparseable text yields E_RESPONSE_FORMAT with the raw text attached.
BridgeResult parse_response(const UseCaseAnalysis& analysis, std::string_view text,
                            std::string_view target, const PredecessorSet& context);

/// build_prompt -> send -> parse_response, retrying once on a format error.
/// Transport failures become E_TRANSPORT; nothing here throws on model output.
BridgeResult infer_with_llm(const UseCaseAnalysis& analysis, std::string_view target,
                            Transport& transport, const CompletionParams& params = {});

/// infer_with_llm for every consuming node with at most `max_in_flight`
/// concurrent requests; results merge in document order.
DataDependencyGraph infer_all_with_llm(const UseCaseAnalysis& analysis, Transport& transport,
                                       const CompletionParams& params = {},
                                       std::size_t max_in_flight = 4);

}  // namespace seqdep
