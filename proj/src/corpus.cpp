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

#include "seqdep/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "seqdep/dependency.hpp"

namespace seqdep {

namespace {

struct PoolEntry {
  const char* name;
  DataType type;
};

const std::array<PoolEntry, 24>& entity_pool() {
  static const std::array<PoolEntry, 24> pool = {{
      {"user_id", DataType::of(BaseType::UInt64)},
      {"amount", DataType::of(BaseType::Int64)},
      {"account_id", DataType::of(BaseType::UInt64)},
      {"account_status", DataType::of(BaseType::String)},
      {"balance", DataType::of(BaseType::Int64)},
      {"card_no", DataType::of(BaseType::String)},
      {"order_id", DataType::of(BaseType::String)},
      {"quota", DataType::of(BaseType::Int64)},
      {"daily_limit", DataType::of(BaseType::Int64)},
      {"risk_level", DataType::of(BaseType::Int32)},
      {"face_token", DataType::of(BaseType::String)},
      {"pay_key", DataType::of(BaseType::String)},
      {"verified", DataType::of(BaseType::Bool)},
      {"flag", DataType::of(BaseType::Bool)},
      {"fee", DataType::of(BaseType::Decimal)},
      {"currency", DataType::of(BaseType::String)},
      {"parent_id", DataType::of(BaseType::UInt64)},
      {"merchant_id", DataType::of(BaseType::UInt32)},
      {"session_id", DataType::of(BaseType::String)},
      {"result_code", DataType::of(BaseType::Int32)},
      {"items", DataType::named("order_item", true)},
      {"profile", DataType::named("user_profile")},
      {"expire_time", DataType::of(BaseType::Int64)},
      {"channel", DataType::of(BaseType::String)},
  }};
  return pool;
}

constexpr std::array<const char*, 10> kVerbs = {"Query", "Set",    "Update", "Verify", "Bind",
                                                "Open",  "Freeze", "Clear",  "Check",  "Debit"};
constexpr std::array<const char*, 10> kNouns = {"Account", "Card",  "Limit", "Quota",   "Flag",
                                                "PayKey",  "Order", "Face",  "Profile", "Merchant"};
constexpr std::array<const char*, 4> kParticipants = {"client", "gateway", "account_svc", "risk_svc"};

DataType narrowed(const DataType& t) {
  if (t.list) return t;
  switch (t.base) {
    case BaseType::UInt64: return DataType::of(BaseType::UInt32);
    case BaseType::Int64: return DataType::of(BaseType::Int32);
    default: return t;
  }
}

class Builder {
 public:
  Builder(std::mt19937_64& rng, const ShapeParams& p, Document& doc, std::set<std::string>& names)
      : rng_(rng), p_(p), doc_(doc), used_names_(names) {}

  UseCase build(std::string name) {
    uc_ = UseCase{};
    uc_.name = std::move(name);
    available_.clear();
    counter_ = 0;
    for (std::size_t i = 0, n = pick(1, 3); i < n; ++i) {
      const auto& e = pool_entry();
      if (has_field(uc_.input_fields, e.name)) continue;
      uc_.input_fields.push_back({e.name, e.type, maybe_description()});
      available_.push_back(e.name);
    }
    const std::size_t np = pick(2, kParticipants.size());
    for (std::size_t i = 0; i < np; ++i) uc_.participants.push_back(kParticipants[i]);
    remaining_ = std::max<std::size_t>(p_.max_nodes, 1);
    scope(UseCase::top(), 0, true);
    add_return(UseCase::top(), true);
    return std::move(uc_);
  }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(std::clamp(p, 0.0, 1.0))(rng_); }
  const PoolEntry& pool_entry() { return entity_pool()[pick(0, entity_pool().size() - 1)]; }

  static bool has_field(const std::vector<Field>& fields, std::string_view name) {
    return std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return f.name == name; });
  }

  DataType type_of(std::string_view name) const {
    for (const auto& e : entity_pool())
      if (name == e.name) return e.type;
    return DataType::of(BaseType::String);
  }

  // Mostly names already produced earlier in document order, so that the
  // generated diagrams carry real data flow.
  std::string consumed_name(double p_available) {
    if (!available_.empty() && chance(p_available)) return available_[pick(0, available_.size() - 1)];
    return pool_entry().name;
  }

  std::string maybe_description() {
    if (!chance(0.3)) return {};
    if (p_.odd_strings && chance(0.5)) return "say \"hi\" \\ then\ttab\nnewline";
    return std::string(kNouns[pick(0, kNouns.size() - 1)]) + " detail";
  }

  std::string fresh_name(std::string base) {
    std::string name = base;
    for (int k = 2; used_names_.contains(name); ++k) name = base + std::to_string(k);
    used_names_.insert(name);
    return name;
  }

  std::vector<std::string> maybe_table() {
    if (!chance(p_.p_table)) return {};
    DecisionTable t;
    t.id = fresh_name("t" + std::to_string(doc_.tables.size() + 1));
    std::vector<std::string> written;
    for (std::size_t r = 0, n = pick(1, 2); r < n; ++r) {
      Rule rule;
      if (chance(0.8)) {
        const std::string read = consumed_name(0.95);
        rule.condition = read + " is set";
        rule.condition_reads.push_back(read);
      }
      rule.action = chance(0.5) ? "continue" : "record outcome";
      if (chance(0.4)) rule.action_reads.push_back(consumed_name(0.95));
      if (chance(0.4)) {
        const auto& e = pool_entry();
        rule.action_writes.push_back({e.name, e.type, {}});
        written.push_back(e.name);
      }
      if (rule.condition_reads.empty() && rule.action_reads.empty() && rule.action_writes.empty()) {
        rule.condition = "always";
        rule.condition_reads.push_back(consumed_name(1.0));
      }
      t.rules.push_back(std::move(rule));
    }
    doc_.tables.push_back(std::move(t));
    available_.insert(available_.end(), written.begin(), written.end());
    return {doc_.tables.back().id};
  }

  std::string next_id(char prefix) { return std::string(1, prefix) + std::to_string(++counter_); }

  void add_message(Scope s) {
    Message m;
    m.id = next_id('m');
    const std::size_t from = pick(0, uc_.participants.size() - 1);
    std::size_t to = pick(0, uc_.participants.size() - 2);
    if (to >= from) ++to;
    m.from = uc_.participants[from];
    m.to = uc_.participants[to];

    ApiSpec api;
    api.name = fresh_name(std::string(kVerbs[pick(0, kVerbs.size() - 1)]) +
                          kNouns[pick(0, kNouns.size() - 1)]);
    api.description = p_.odd_strings && chance(0.3) ? "quoted \"api\" \\ desc" : "operation " + api.name;
    for (std::size_t i = 0, n = pick(1, 3); i < n; ++i) {
      const std::string name = consumed_name(0.85);
      if (!has_field(api.request, name)) api.request.push_back({name, type_of(name), maybe_description()});
    }
    for (std::size_t i = 0, n = pick(1, 2); i < n; ++i) {
      const auto& e = pool_entry();
      if (has_field(api.response, e.name) || has_field(api.request, e.name)) continue;
      api.response.push_back({e.name, chance(0.05) ? narrowed(e.type) : e.type, maybe_description()});
    }
    m.apis.push_back(api.name);
    m.tables = maybe_table();
    for (const auto& f : api.response) available_.push_back(f.name);
    doc_.apis.push_back(std::move(api));
    uc_.add(s, std::move(m));
    --remaining_;
  }

  void add_return(Scope s, bool final) {
    ReturnMessage r;
    r.id = next_id('r');
    for (std::size_t i = 0, n = pick(1, 2); i < n; ++i) {
      const std::string name = final ? consumed_name(0.9) : (chance(0.5) ? "result_code" : consumed_name(0.7));
      if (!has_field(r.fields, name)) r.fields.push_back({name, type_of(name), {}});
    }
    uc_.add(s, std::move(r));
    if (remaining_ > 0) --remaining_;
  }

  void add_fragment(Scope s, std::size_t depth) {
    Fragment f;
    f.id = next_id('f');
    if (chance(p_.p_alt)) {
      f.kind = FragmentKind::Alt;
    } else {
      constexpr FragmentKind others[] = {FragmentKind::Opt, FragmentKind::Loop, FragmentKind::Break};
      f.kind = others[pick(0, 2)];
    }
    const std::size_t nb = f.kind == FragmentKind::Alt ? pick(2, 3) : 1;
    for (std::size_t b = 0; b < nb; ++b)
      f.branches.push_back({f.kind == FragmentKind::Alt ? "b" + std::to_string(b + 1) : "", {}});
    f.tables = maybe_table();
    const std::size_t idx = uc_.add(s, std::move(f));
    --remaining_;

    const auto before = available_;
    std::vector<std::string> merged;
    for (std::size_t b = 0; b < nb; ++b) {
      available_ = before;
      scope(UseCase::branch_of(idx, b), depth + 1, false);
      merged.insert(merged.end(), available_.begin() + static_cast<long>(before.size()), available_.end());
    }
    available_ = before;
    available_.insert(available_.end(), merged.begin(), merged.end());
  }

  void scope(Scope s, std::size_t depth, bool top) {
    std::size_t n = top ? pick(1, 6) : (chance(p_.p_empty_branch) ? 0 : pick(1, 4));
    for (std::size_t i = 0; i < n && remaining_ > 1; ++i) {
      const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
      if (r < p_.p_return) {
        add_return(s, false);
        if (chance(0.7)) return;  // otherwise leave dead code after it
      } else if (r < p_.p_return + p_.p_fragment && depth < p_.max_depth && remaining_ >= 2) {
        add_fragment(s, depth);
      } else {
        add_message(s);
      }
    }
  }

  std::mt19937_64& rng_;
  const ShapeParams& p_;
  Document& doc_;
  std::set<std::string>& used_names_;
  UseCase uc_;
  std::vector<std::string> available_;
  std::size_t remaining_ = 0;
  std::size_t counter_ = 0;
};

}  // namespace

Document random_document(std::mt19937_64& rng, const ShapeParams& params) {
  Document doc;
  std::set<std::string> names;
  Builder builder(rng, params, doc, names);
  for (std::size_t i = 0; i < std::max<std::size_t>(params.n_usecases, 1); ++i) {
    std::string name = std::string(kVerbs[rng() % kVerbs.size()]) + kNouns[rng() % kNouns.size()];
    while (doc.find_usecase(name)) name += "X";
    doc.usecases.push_back(builder.build(std::move(name)));
  }
  return doc;
}

void check_corpus_params(const CorpusParams& p) {
  auto fail = [](const std::string& why) { throw std::invalid_argument("corpus params: " + why); };
  if (p.n_usecases == 0) fail("n_usecases must be positive");
  if (p.max_nodes < 2 || p.max_nodes > 40) fail("max_nodes must be in [2, 40]");
  if (p.max_depth > 5) fail("max_depth must be at most 5");
  for (double q : {p.p_alt, p.p_table, p.perturb.p_drop, p.perturb.p_add, p.perturb.p_retarget})
    if (!(q >= 0.0 && q <= 1.0)) fail("probabilities must lie in [0, 1]");
}

std::vector<DependencyEdge> perturb_edges(const std::vector<DependencyEdge>& gold,
                                          const std::vector<std::string>& nodes,
                                          const std::vector<std::string>& entities,
                                          const PerturbParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  auto any_of = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  std::vector<std::string> targets;
  for (const auto& n : nodes)
    if (n != kInputId) targets.push_back(n);

  std::vector<DependencyEdge> out;
  for (const auto& e : gold) {
    if (chance(params.p_drop)) continue;
    DependencyEdge kept = e;
    if (targets.size() > 1 && chance(params.p_retarget)) {
      do kept.target = any_of(targets);
      while (kept.target == e.target);
    }
    out.push_back(std::move(kept));
  }
  if (!targets.empty() && !entities.empty()) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!chance(params.p_add)) continue;
      constexpr EdgeCategory cats[] = {EdgeCategory::Api, EdgeCategory::Condition, EdgeCategory::Action};
      out.push_back({any_of(nodes), any_of(entities), any_of(targets), cats[rng() % 3]});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CorpusEntry> gen_corpus(std::uint64_t seed, const CorpusParams& params) {
  check_corpus_params(params);
  ShapeParams shape;
  shape.max_nodes = params.max_nodes;
  shape.max_depth = params.max_depth;
  shape.p_fragment = 0.3;
  shape.p_alt = params.p_alt;
  shape.p_return = 0.05;
  shape.p_empty_branch = 0.0;
  shape.p_table = params.p_table;

  std::vector<CorpusEntry> out;
  std::set<std::string> taken;
  for (std::size_t i = 0; i < params.n_usecases; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    CorpusEntry entry;
    entry.document = random_document(rng, shape);
    UseCase& uc = entry.document.usecases.front();
    while (taken.contains(uc.name)) uc.name += std::to_string(i);
    taken.insert(uc.name);
    entry.document.source_path = uc.name + ".esd";

    const DataDependencyGraph ddg = infer_all(uc, entry.document);
    entry.gold = {uc.name, ddg.edges};

    std::vector<std::string> nodes{std::string(kInputId)}, entities;
    for (const auto& el : uc.elements) nodes.push_back(element_id(el));
    for (const auto& e : entity_pool()) entities.push_back(e.name);
    entry.perturbed = perturb_edges(entry.gold.edges, nodes, entities, params.perturb, rng());
    out.push_back(std::move(entry));
  }
  return out;
}

CorpusStatistics corpus_statistics(const UseCase& usecase, const GoldAnnotation& gold) {
  CorpusStatistics s;
  s.usecase = usecase.name;
  for (const auto& e : gold.edges) {
    switch (e.category) {
      case EdgeCategory::Api: ++s.api_edges; break;
      case EdgeCategory::Condition: ++s.condition_edges; break;
      case EdgeCategory::Action: ++s.action_edges; break;
    }
  }
  for (const auto& el : usecase.elements) {
    if (std::holds_alternative<Message>(el)) ++s.functions;
    else if (std::holds_alternative<Fragment>(el)) ++s.controls;
    else ++s.outputs;
  }
  return s;
}

std::string format_statistics_table(const std::vector<CorpusStatistics>& rows) {
  std::size_t w = 8;
  for (const auto& r : rows) w = std::max(w, r.usecase.size() + 1);
  std::string out;
  char buf[160];
  auto line = [&](const std::string& name, const CorpusStatistics& s) {
    std::snprintf(buf, sizeof buf, "%-*s | %5zu %9zu %6zu | %4zu %4zu %4zu\n", static_cast<int>(w),
                  name.c_str(), s.api_edges, s.condition_edges, s.action_edges, s.functions,
                  s.controls, s.outputs);
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "%-*s | %5s %9s %6s | %4s %4s %4s\n", static_cast<int>(w), "Use case",
                "API", "Condition", "Action", "|F|", "|C|", "|O|");
  out += buf;
  const std::string rule(std::string(buf).size() - 1, '-');
  out += rule + "\n";
  CorpusStatistics total;
  for (const auto& r : rows) {
    line(r.usecase, r);
    total.api_edges += r.api_edges;
    total.condition_edges += r.condition_edges;
    total.action_edges += r.action_edges;
    total.functions += r.functions;
    total.controls += r.controls;
    total.outputs += r.outputs;
  }
  out += rule + "\n";
  line("Overall", total);
  return out;
}

}  // namespace seqdep
