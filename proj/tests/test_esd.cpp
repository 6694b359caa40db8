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

#include <random>

#include "seqdep/corpus.hpp"
#include "seqdep/esd.hpp"
#include "support.hpp"

using namespace seqdep;

namespace {

ShapeParams random_doc_params(std::mt19937_64& rng) {
  ShapeParams p;
  p.p_table = 0.5;
  p.odd_strings = true;
  p.n_usecases = 1 + rng() % 3;
  return p;
}

struct Token {
  std::size_t offset;
  std::size_t length;
  int line;
};

// Mirror of the ESD lexical structure, enough to pick a whole token.
std::vector<Token> tokens_of(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '\n') { ++line; ++i; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '#') { while (i < text.size() && text[i] != '\n') ++i; continue; }
    const std::size_t start = i;
    if (c == '"') {
      for (++i; i < text.size() && text[i] != '"'; ++i)
        if (text[i] == '\\') ++i;
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    } else {
      ++i;
    }
    out.push_back({start, i - start, line});
  }
  return out;
}

}  // namespace

TEST(Parse, DemoFixture) {
  const Document doc = fixture::demo();
  ASSERT_EQ(doc.usecases.size(), 1u);
  EXPECT_EQ(doc.apis.size(), 2u);
  EXPECT_EQ(doc.tables.size(), 1u);
  const UseCase& uc = doc.usecases[0];
  EXPECT_EQ(uc.name, "Demo");
  std::set<std::string> ids;
  for (const auto& [id, _] : uc.node_index) ids.insert(id);
  EXPECT_EQ(ids, (std::set<std::string>{"m1", "f1", "r_err", "m2", "r_ok"}));
  ASSERT_EQ(uc.input_fields.size(), 2u);
  EXPECT_EQ(uc.input_fields[0].type, DataType::of(BaseType::UInt64));
  const auto& f1 = std::get<Fragment>(*uc.find("f1"));
  EXPECT_EQ(f1.kind, FragmentKind::Alt);
  ASSERT_EQ(f1.branches.size(), 2u);
  EXPECT_EQ(f1.branches[0].label, "frozen");
  EXPECT_EQ(f1.tables, std::vector<std::string>{"t1"});
}

TEST(Parse, EmptyInputFailsAtOrigin) {
  const ParseResult r = parse_document("");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 1);
  EXPECT_EQ(r.errors[0].column, 1);
  EXPECT_NE(r.errors[0].expected.find("usecase"), std::string::npos);
  EXPECT_EQ(r.diagnostics().at(0).code, DiagCode::Parse);
}

TEST(Parse, UnresolvedApiIsReported) {
  std::string text = read_text_file(fixture::data_path("demo.esd"));
  text.replace(text.find("api \"Debit\"\n"), 11, "api \"Missing\"");
  const ParseResult r = parse_document(text);
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message().find("unresolved api Missing"), std::string::npos);
  EXPECT_EQ(r.diagnostics()[0].entity, "Missing");
}

TEST(Parse, DuplicateIdsAreErrors) {
  const char* text = R"(usecase "U" {
  input {
  }
  participant a
  participant b
  message m1 from a to b api "A"
  message m1 from a to b api "A"
  return r {
  }
}
api "A" {
  description "a"
  request {
  }
  response {
  }
}
)";
  const ParseResult r = parse_document(text);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.errors[0].line, 7);
}

TEST(Parse, CommentsAreIgnored) {
  std::string text = read_text_file(fixture::data_path("demo.esd"));
  const ParseResult a = parse_document(text);
  text.insert(text.find("message m1"), "# a comment with \"quotes\" and { braces\n  ");
  const ParseResult b = parse_document(text);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(*a.document, *b.document);
}

TEST(Serialize, DemoRoundTripAndDeterminism) {
  const Document doc = fixture::demo();
  const std::string once = serialize_document(doc);
  const ParseResult again = parse_document(once);
  ASSERT_TRUE(again.ok()) << again.errors.front().message();
  EXPECT_EQ(*again.document, doc);
  EXPECT_EQ(serialize_document(*again.document), once);
  EXPECT_EQ(serialize_document(doc), once);
}

TEST(Serialize, ApiOnlyDocument) {
  Document doc;
  doc.apis.push_back({"Ping", "ping", {}, {{"ok", DataType::of(BaseType::Bool), ""}}});
  const std::string text = serialize_document(doc);
  EXPECT_EQ(text.rfind("api \"Ping\"", 0), 0u);
  EXPECT_EQ(text.find("usecase"), std::string::npos);
  EXPECT_EQ(text.find("table"), std::string::npos);
  const ParseResult r = parse_document(text);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.document, doc);
}

TEST(Serialize, RandomDocumentsRoundTrip) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 200; ++i) {
    const Document doc = random_document(rng, random_doc_params(rng));
    const std::string text = serialize_document(doc);
    const ParseResult r = parse_document(text);
    ASSERT_TRUE(r.ok()) << "doc " << i << ": " << r.errors.front().message() << "\n" << text;
    EXPECT_EQ(*r.document, doc) << "doc " << i;
    EXPECT_EQ(serialize_document(*r.document), text) << "doc " << i;
  }
}

TEST(Spans, ChildrenNestInsideFragments) {
  std::mt19937_64 rng(77);
  std::size_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    const ParseResult r = parse_document(serialize_document(random_document(rng, random_doc_params(rng))));
    ASSERT_TRUE(r.ok());
    for (const auto& uc : r.document->usecases) {
      for (const auto& el : uc.elements) {
        const auto* f = std::get_if<Fragment>(&el);
        if (!f) continue;
        const LineSpan outer = uc.spans.at(f->id);
        for (const auto& b : f->branches) {
          for (std::size_t c : b.elements) {
            const LineSpan inner = uc.spans.at(element_id(uc.elements[c]));
            EXPECT_GT(inner.start, outer.start);
            EXPECT_LT(inner.end, outer.end);
            EXPECT_LE(inner.start, inner.end);
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Spans, DemoLines) {
  const Document doc = fixture::demo();
  const UseCase& uc = doc.usecases[0];
  EXPECT_EQ(uc.spans.at("m1").start, 10);
  EXPECT_EQ(uc.spans.at("f1").start, 11);
  EXPECT_EQ(uc.spans.at("f1").end, 20);
  EXPECT_EQ(uc.spans.at("r_err").start, 13);
  EXPECT_EQ(uc.spans.at("r_err").end, 15);
}

TEST(ErrorPositions, SingleTokenMutationStaysOnLine) {
  std::mt19937_64 rng(4242);
  std::size_t mutated = 0;
  for (int d = 0; d < 20; ++d) {
    const std::string text = serialize_document(random_document(rng, random_doc_params(rng)));
    const auto toks = tokens_of(text);
    for (int k = 0; k < 25; ++k) {
      const Token& t = toks[rng() % toks.size()];
      if (text.compare(t.offset, t.length, "]") == 0) continue;
      std::string bad = text;
      bad.replace(t.offset, t.length, "]");
      const ParseResult r = parse_document(bad);
      ASSERT_FALSE(r.ok()) << bad;
      EXPECT_EQ(r.errors.front().line, t.line) << r.errors.front().message() << "\n" << bad;
      ++mutated;
    }
  }
  EXPECT_GT(mutated, 400u);
}

TEST(DesignRules, DemoIsClean) { EXPECT_TRUE(check_design_rules(fixture::demo()).empty()); }

TEST(DesignRules, TwoUseCasesInOneFile) {
  Document doc = fixture::demo();
  UseCase copy = doc.usecases[0];
  copy.name = "Demo2";
  doc.usecases.push_back(copy);
  const auto d = check_design_rules(doc);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, DiagCode::DesignRule);
  EXPECT_NE(d[0].message.find("One Use Case per Sequence Diagram"), std::string::npos);
}

TEST(DesignRules, AltWithOneBranch) {
  std::string text = read_text_file(fixture::data_path("demo.esd"));
  const auto from = text.find("    branch \"frozen\"");
  const auto to = text.find("    branch \"active\"");
  text.erase(from, to - from);
  const ParseResult r = parse_document(text);
  ASSERT_TRUE(r.ok());
  const auto d = check_design_rules(*r.document);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, DiagCode::DesignRule);
  EXPECT_EQ(d[0].node, "f1");
}

TEST(DesignRules, MessageWithoutApiAndMissingTrailingReturn) {
  std::string text = read_text_file(fixture::data_path("demo.esd"));
  text.replace(text.find(" api \"QueryAccount\"\n"), 20, "\n");
  const auto r_ok = text.find("  return r_ok");
  text.erase(r_ok, text.find("}\n", text.find("new_balance")) + 2 - r_ok);
  const ParseResult r = parse_document(text);
  ASSERT_TRUE(r.ok()) << r.errors.front().message();
  const auto d = check_design_rules(*r.document);
  EXPECT_EQ(count_code(d, DiagCode::DesignRule), 2u);
}

TEST(DesignRules, UnrelatedTableIsAWarning) {
  Document doc = fixture::demo();
  doc.tables[0].rules[0].condition_reads = {"nothing_here"};
  const auto d = check_design_rules(doc);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, DiagCode::DesignWarning);
  EXPECT_EQ(d[0].severity, Severity::Warning);
}
