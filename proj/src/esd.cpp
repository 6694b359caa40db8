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

#include "seqdep/esd.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seqdep {

namespace {

enum class Tok { Word, String, LBrace, RBrace, LBracket, RBracket, Comma, Colon, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // word text or unescaped string contents
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Word: return "'" + t.text + "'";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct SyntaxError {
  ParseError error;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += advance();
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = read_string(t);
      } else {
        t.kind = punct(c);
        if (t.kind == Tok::End)
          throw SyntaxError{{t.line, t.column, "token", std::string("'") + c + "'", {}}};
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static Tok punct(char c) {
    switch (c) {
      case '{': return Tok::LBrace;
      case '}': return Tok::RBrace;
      case '[': return Tok::LBracket;
      case ']': return Tok::RBracket;
      case ',': return Tok::Comma;
      case ':': return Tok::Colon;
      default: return Tok::End;
    }
  }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_string(const Token& start) {
    advance();  // opening quote
    std::string out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\n') break;
      if (c == '\\') {
        const int line = line_, col = col_;
        advance();
        if (pos_ >= src_.size()) break;
        const char e = advance();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default:
            throw SyntaxError{{line, col, "escape sequence", std::string("\\") + e, {}}};
        }
        continue;
      }
      out += advance();
    }
    throw SyntaxError{{start.line, start.column, "closing '\"'", "unterminated string", {}}};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_ident(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Reference recorded during the syntax pass and resolved afterwards.
struct Reference {
  enum Kind { Api, Table, Participant } kind;
  std::string name;
  int line;
  int column;
  std::size_t usecase = 0;  // owning use case, for participant references
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Document parse_file() {
    Document doc;
    if (peek().kind == Tok::End) fail("'usecase', 'api' or 'table'");
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Word && t.text == "usecase") {
        doc.usecases.push_back(parse_usecase());
      } else if (t.kind == Tok::Word && t.text == "api") {
        doc.apis.push_back(parse_api());
      } else if (t.kind == Tok::Word && t.text == "table") {
        doc.tables.push_back(parse_table());
      } else {
        fail("'usecase', 'api' or 'table'");
      }
    }
    return doc;
  }

  std::vector<Reference> references;
  std::vector<ParseError> semantic_errors;

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(std::string expected) const {
    const Token& t = peek();
    throw SyntaxError{{t.line, t.column, std::move(expected), describe(t), {}}};
  }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }
  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail(std::string(what));
    return take();
  }
  void keyword(std::string_view w) {
    if (!at_word(w)) fail("'" + std::string(w) + "'");
    take();
  }
  std::string ident() {
    if (peek().kind != Tok::Word || !is_ident(peek().text)) fail("identifier");
    return take().text;
  }
  std::string string_lit() { return expect(Tok::String, "string").text; }

  void semantic(const Token& at, std::string detail) {
    semantic_errors.push_back({at.line, at.column, {}, {}, std::move(detail)});
  }

  std::vector<std::string> ident_list() {
    expect(Tok::LBracket, "'['");
    std::vector<std::string> out;
    if (peek().kind == Tok::RBracket) {
      take();
      return out;
    }
    out.push_back(ident());
    while (peek().kind == Tok::Comma) {
      take();
      out.push_back(ident());
    }
    expect(Tok::RBracket, "',' or ']'");
    return out;
  }

  Field parse_field() {
    keyword("field");
    Field f;
    f.name = ident();
    expect(Tok::Colon, "':'");
    if (peek().kind != Tok::Word || !is_ident(peek().text)) fail("type name");
    std::string type_name = take().text;
    bool list = false;
    if (peek().kind == Tok::LBracket) {
      take();
      expect(Tok::RBracket, "']'");
      list = true;
    }
    f.type = DataType::from_name(type_name, list);
    if (peek().kind == Tok::String) f.description = take().text;
    return f;
  }

  std::vector<Field> field_block(std::string_view owner) {
    expect(Tok::LBrace, "'{'");
    std::vector<Field> out;
    std::set<std::string> seen;
    while (!at_word("field")) {
      if (peek().kind == Tok::RBrace) {
        take();
        return out;
      }
      fail("'field' or '}'");
    }
    while (at_word("field")) {
      const Token& at = peek();
      Field f = parse_field();
      if (!seen.insert(f.name).second)
        semantic(at, "duplicate field " + f.name + " in " + std::string(owner));
      out.push_back(std::move(f));
    }
    expect(Tok::RBrace, "'field' or '}'");
    return out;
  }

  std::vector<std::string> binding() {
    std::vector<std::string> tables;
    if (at_word("tables")) {
      take();
      const Token& at = peek();
      tables = ident_list();
      for (const auto& t : tables) references.push_back({Reference::Table, t, at.line, at.column});
    }
    return tables;
  }

  UseCase parse_usecase() {
    keyword("usecase");
    UseCase uc;
    uc.name = string_lit();
    expect(Tok::LBrace, "'{'");
    keyword("input");
    uc.input_fields = field_block("input");
    if (!at_word("participant")) fail("'participant'");
    while (at_word("participant")) {
      take();
      const Token& at = peek();
      std::string p = ident();
      if (std::find(uc.participants.begin(), uc.participants.end(), p) != uc.participants.end())
        semantic(at, "duplicate participant " + p);
      uc.participants.push_back(std::move(p));
    }
    parse_elements(uc, UseCase::top());
    expect(Tok::RBrace, "element or '}'");
    ++usecase_count_;
    return uc;
  }

  bool at_element() const {
    if (peek().kind != Tok::Word) return false;
    const auto& w = peek().text;
    return w == "message" || w == "return" || w == "alt" || w == "opt" || w == "loop" ||
           w == "break";
  }

  void parse_elements(UseCase& uc, Scope scope) {
    while (at_element()) parse_element(uc, scope);
    if (peek().kind != Tok::RBrace) fail("element or '}'");
  }

  std::size_t add_element(UseCase& uc, Scope scope, Element e, const Token& at) {
    const std::string id = element_id(e);
    if (uc.node_index.contains(id)) {
      semantic(at, "duplicate node id " + id);
      // Keep parsing with a unique placeholder so spans stay consistent.
      std::visit([&](auto& v) { v.id = id + "#dup" + std::to_string(uc.elements.size()); }, e);
    }
    return uc.add(scope, std::move(e));
  }

  void parse_element(UseCase& uc, Scope scope) {
    const Token head = peek();
    const std::string kw = take().text;
    std::size_t index = 0;
    if (kw == "message") {
      Message m;
      m.id = ident();
      keyword("from");
      const Token& from_at = peek();
      m.from = ident();
      keyword("to");
      const Token& to_at = peek();
      m.to = ident();
      references.push_back(
          {Reference::Participant, m.from, from_at.line, from_at.column, usecase_count_});
      references.push_back(
          {Reference::Participant, m.to, to_at.line, to_at.column, usecase_count_});
      while (at_word("api")) {
        take();
        const Token& at = peek();
        m.apis.push_back(string_lit());
        references.push_back({Reference::Api, m.apis.back(), at.line, at.column});
      }
      m.tables = binding();
      index = add_element(uc, scope, std::move(m), head);
    } else if (kw == "return") {
      ReturnMessage r;
      r.id = ident();
      r.fields = field_block("return " + r.id);
      index = add_element(uc, scope, std::move(r), head);
    } else {
      Fragment f;
      f.kind = *fragment_kind_from_name(kw);
      f.id = ident();
      f.tables = binding();
      expect(Tok::LBrace, "'{'");
      if (f.kind == FragmentKind::Alt) {
        // The fragment is indexed before its children so the arena stays in
        // document order.
        index = add_element(uc, scope, std::move(f), head);
        std::size_t branch = 0;
        std::set<std::string> seen;
        while (at_word("branch")) {
          take();
          const Token& at = peek();
          std::string label = string_lit();
          if (!seen.insert(label).second) semantic(at, "duplicate branch label \"" + label + "\"");
          std::get<Fragment>(uc.elements[index]).branches.push_back(Branch{label, {}});
          expect(Tok::LBrace, "'{'");
          parse_elements(uc, UseCase::branch_of(index, branch));
          take();  // '}'
          ++branch;
        }
        if (peek().kind != Tok::RBrace) fail("'branch' or '}'");
      } else {
        f.branches.push_back(Branch{});
        index = add_element(uc, scope, std::move(f), head);
        parse_elements(uc, UseCase::branch_of(index, 0));
      }
      take();  // closing '}' of the fragment
    }
    const Token& last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    uc.spans[element_id(uc.elements[index])] = LineSpan{head.line, last.line};
  }

  ApiSpec parse_api() {
    keyword("api");
    ApiSpec api;
    api.name = string_lit();
    expect(Tok::LBrace, "'{'");
    keyword("description");
    api.description = string_lit();
    keyword("request");
    api.request = field_block("request of " + api.name);
    keyword("response");
    api.response = field_block("response of " + api.name);
    expect(Tok::RBrace, "'}'");
    return api;
  }

  Rule parse_rule() {
    keyword("rule");
    expect(Tok::LBrace, "'{'");
    Rule r;
    if (at_word("when")) {
      take();
      r.condition = string_lit();
      keyword("reads");
      r.condition_reads = ident_list();
    }
    if (!at_word("then")) fail(r.condition ? "'then'" : "'when' or 'then'");
    take();
    r.action = string_lit();
    if (at_word("reads")) {
      take();
      r.action_reads = ident_list();
    }
    if (at_word("writes")) {
      take();
      r.action_writes = field_block("rule writes");
    }
    expect(Tok::RBrace, "'reads', 'writes' or '}'");
    return r;
  }

  DecisionTable parse_table() {
    keyword("table");
    DecisionTable t;
    t.id = ident();
    expect(Tok::LBrace, "'{'");
    if (!at_word("rule")) fail("'rule'");
    while (at_word("rule")) t.rules.push_back(parse_rule());
    expect(Tok::RBrace, "'rule' or '}'");
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t usecase_count_ = 0;
};

void resolve_references(const Document& doc, const std::vector<Reference>& refs,
                        std::vector<ParseError>& errors) {
  for (const Reference& r : refs) {
    bool ok = true;
    std::string what;
    switch (r.kind) {
      case Reference::Api:
        ok = doc.find_api(r.name) != nullptr;
        what = "api";
        break;
      case Reference::Table:
        ok = doc.find_table(r.name) != nullptr;
        what = "table";
        break;
      case Reference::Participant: {
        const auto& ps = doc.usecases.at(r.usecase).participants;
        ok = std::find(ps.begin(), ps.end(), r.name) != ps.end();
        what = "participant";
        break;
      }
    }
    if (!ok)
      errors.push_back({r.line, r.column, "defined " + what, r.name,
                        "unresolved " + what + " " + r.name});
  }
}

// --- serialization ---------------------------------------------------------

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string join_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out + "]";
}

class Writer {
 public:
  void line(int depth, std::string_view text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }
  void blank() { out_ += '\n'; }
  std::string take() { return std::move(out_); }

  void fields(int depth, std::string_view head, const std::vector<Field>& fs) {
    line(depth, std::string(head) + " {");
    for (const auto& f : fs) {
      std::string s = "field " + f.name + ": " + f.type.str();
      if (!f.description.empty()) s += " " + quote(f.description);
      line(depth + 1, s);
    }
    line(depth, "}");
  }

  void elements(const UseCase& uc, const std::vector<std::size_t>& scope, int depth) {
    for (std::size_t idx : scope) element(uc, uc.elements[idx], depth);
  }

  void element(const UseCase& uc, const Element& e, int depth) {
    if (const auto* m = std::get_if<Message>(&e)) {
      std::string s = "message " + m->id + " from " + m->from + " to " + m->to;
      for (const auto& a : m->apis) s += " api " + quote(a);
      if (!m->tables.empty()) s += " tables " + join_list(m->tables);
      line(depth, s);
    } else if (const auto* r = std::get_if<ReturnMessage>(&e)) {
      fields(depth, "return " + r->id, r->fields);
    } else {
      const auto& f = std::get<Fragment>(e);
      std::string s = std::string(fragment_kind_name(f.kind)) + " " + f.id;
      if (!f.tables.empty()) s += " tables " + join_list(f.tables);
      line(depth, s + " {");
      if (f.kind == FragmentKind::Alt) {
        for (const auto& b : f.branches) {
          line(depth + 1, "branch " + quote(b.label) + " {");
          elements(uc, b.elements, depth + 2);
          line(depth + 1, "}");
        }
      } else if (!f.branches.empty()) {
        elements(uc, f.branches.front().elements, depth + 1);
      }
      line(depth, "}");
    }
  }

 private:
  std::string out_;
};

}  // namespace

std::string ParseError::message() const {
  std::string where = std::to_string(line) + ":" + std::to_string(column);
  if (!detail.empty()) return detail + " at " + where;
  return "expected " + expected + ", found " + found + " at " + where;
}

Diagnostic ParseError::to_diagnostic() const {
  Diagnostic d = make_diagnostic(DiagCode::Parse, message());
  if (!detail.empty() && detail.starts_with("unresolved")) d.entity = found;
  return d;
}

std::vector<Diagnostic> ParseResult::diagnostics() const {
  std::vector<Diagnostic> out;
  out.reserve(errors.size());
  for (const auto& e : errors) out.push_back(e.to_diagnostic());
  return out;
}

ParseResult parse_document(std::string_view text, std::string source_path) {
  ParseResult result;
  try {
    Parser parser(Lexer(text).run());
    Document doc = parser.parse_file();
    doc.source_path = std::move(source_path);

    std::vector<ParseError> errors = std::move(parser.semantic_errors);
    {
      std::set<std::string> seen;
      for (const auto& a : doc.apis)
        if (!seen.insert(a.name).second)
          errors.push_back({1, 1, {}, a.name, "duplicate api " + a.name});
      seen.clear();
      for (const auto& t : doc.tables)
        if (!seen.insert(t.id).second)
          errors.push_back({1, 1, {}, t.id, "duplicate table " + t.id});
    }

    resolve_references(doc, parser.references, errors);
    std::stable_sort(errors.begin(), errors.end(), [](const ParseError& a, const ParseError& b) {
      return std::pair(a.line, a.column) < std::pair(b.line, b.column);
    });
    if (errors.empty())
      result.document = std::move(doc);
    else
      result.errors = std::move(errors);
  } catch (const SyntaxError& e) {
    result.errors.push_back(e.error);
  }
  return result;
}

std::string serialize_document(const Document& doc) {
  Writer w;
  bool first = true;
  auto separate = [&] {
    if (!first) w.blank();
    first = false;
  };
  for (const auto& uc : doc.usecases) {
    separate();
    w.line(0, "usecase " + quote(uc.name) + " {");
    w.fields(1, "input", uc.input_fields);
    for (const auto& p : uc.participants) w.line(1, "participant " + p);
    w.elements(uc, uc.body, 1);
    w.line(0, "}");
  }
  for (const auto& api : doc.apis) {
    separate();
    w.line(0, "api " + quote(api.name) + " {");
    w.line(1, "description " + quote(api.description));
    w.fields(1, "request", api.request);
    w.fields(1, "response", api.response);
    w.line(0, "}");
  }
  for (const auto& t : doc.tables) {
    separate();
    w.line(0, "table " + t.id + " {");
    for (const auto& r : t.rules) {
      w.line(1, "rule {");
      if (r.condition)
        w.line(2, "when " + quote(*r.condition) + " reads " + join_list(r.condition_reads));
      std::string then = "then " + quote(r.action);
      if (!r.action_reads.empty()) then += " reads " + join_list(r.action_reads);
      w.line(2, then);
      if (!r.action_writes.empty()) w.fields(2, "writes", r.action_writes);
      w.line(1, "}");
    }
    w.line(0, "}");
  }
  return w.take();
}

namespace {

void collect_scope_names(const Document& doc, const UseCase& uc, std::set<std::string>& names,
                         const DecisionTable* exclude) {
  for (const auto& f : uc.input_fields) names.insert(f.name);
  for (const auto& e : uc.elements) {
    if (const auto* m = std::get_if<Message>(&e)) {
      for (const auto& a : m->apis)
        if (const ApiSpec* api = doc.find_api(a)) {
          for (const auto& f : api->request) names.insert(f.name);
          for (const auto& f : api->response) names.insert(f.name);
        }
    } else if (const auto* r = std::get_if<ReturnMessage>(&e)) {
      for (const auto& f : r->fields) names.insert(f.name);
    }
    for (const auto& tid : element_tables(e)) {
      const DecisionTable* t = doc.find_table(tid);
      if (!t || t == exclude) continue;
      for (const auto& rule : t->rules)
        for (const auto& f : rule.action_writes) names.insert(f.name);
    }
  }
}

}  // namespace

std::vector<Diagnostic> check_design_rules(const Document& doc) {
  std::vector<Diagnostic> out;
  if (doc.usecases.size() > 1)
    out.push_back(make_diagnostic(
        DiagCode::DesignRule, "One Use Case per Sequence Diagram: file defines " +
                                  std::to_string(doc.usecases.size()) + " use cases"));
  for (const auto& uc : doc.usecases) {
    for (const auto& e : uc.elements) {
      if (const auto* m = std::get_if<Message>(&e)) {
        if (m->apis.size() != 1)
          out.push_back(make_diagnostic(DiagCode::DesignRule,
                                        "message must invoke exactly one API, found " +
                                            std::to_string(m->apis.size()),
                                        m->id));
      } else if (const auto* f = std::get_if<Fragment>(&e)) {
        const bool alt = f->kind == FragmentKind::Alt;
        if (alt && f->branches.size() < 2)
          out.push_back(make_diagnostic(DiagCode::DesignRule,
                                        "alt fragment needs at least 2 branches, found " +
                                            std::to_string(f->branches.size()),
                                        f->id));
        if (!alt && f->branches.size() != 1)
          out.push_back(make_diagnostic(DiagCode::DesignRule,
                                        std::string(fragment_kind_name(f->kind)) +
                                            " fragment must have exactly one body",
                                        f->id));
      }
    }
    if (uc.body.empty() || !std::holds_alternative<ReturnMessage>(uc.elements[uc.body.back()]))
      out.push_back(make_diagnostic(DiagCode::DesignRule,
                                    "use case " + uc.name + " must end with a return message"));

    std::set<std::string> reported;
    for (const auto& e : uc.elements) {
      for (const auto& tid : element_tables(e)) {
        const DecisionTable* t = doc.find_table(tid);
        if (!t || reported.contains(tid + "@" + element_id(e))) continue;
        std::set<std::string> scope;
        collect_scope_names(doc, uc, scope, t);
        bool touches = false;
        for (const auto& r : t->rules) {
          for (const auto& n : r.condition_reads) touches |= scope.contains(n);
          for (const auto& n : r.action_reads) touches |= scope.contains(n);
          for (const auto& f : r.action_writes) touches |= scope.contains(f.name);
        }
        if (!touches) {
          reported.insert(tid + "@" + element_id(e));
          out.push_back(make_diagnostic(DiagCode::DesignWarning,
                                        "table " + tid +
                                            " reads and writes no field in scope of the use case",
                                        element_id(e)));
        }
      }
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace seqdep
