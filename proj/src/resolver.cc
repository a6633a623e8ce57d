#include "flexq/resolver.h"

#include <algorithm>
#include <map>
#include <set>

#include "flexq/error.h"
#include "flexq/text.h"

namespace flexq {

std::string_view bind_method_name(BindMethod m) {
  switch (m) {
    case BindMethod::kExact: return "exact";
    case BindMethod::kSemantic: return "semantic";
    case BindMethod::kFuzzy: return "fuzzy";
  }
  return "exact";
}

BindMethod parse_bind_method(std::string_view name) {
  for (BindMethod m : {BindMethod::kExact, BindMethod::kSemantic, BindMethod::kFuzzy}) {
    if (bind_method_name(m) == name) return m;
  }
  throw Error(ErrorKind::kMalformedFormat, "unknown binding method '" + std::string(name) + "'");
}

namespace {

std::string metric_name(DistanceMetric m) {
  return m == DistanceMetric::kDamerau ? "damerau-levenshtein" : "levenshtein";
}

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string braces(const std::vector<std::string>& names) { return "{" + join(names, ", ") + "}"; }

// "distance 2 = 1 to singular 'supplier' + 1 plural" when the candidate is a
// plural whose singular is exactly one edit closer.
std::string distance_note(const Binding& b, DistanceMetric metric) {
  std::string out = metric_name(metric) + " distance " + std::to_string(b.distance);
  std::string lower = to_lower(b.bound);
  if (b.distance > 0 && lower.size() > 1 && lower.back() == 's') {
    std::string singular = b.bound.substr(0, b.bound.size() - 1);
    int d = edit_distance(b.surface, singular, metric);
    if (d + 1 == b.distance) {
      out += " = " + std::to_string(d) + " to singular " + in_quotes(singular) + " + 1 plural";
    }
  }
  return out;
}

std::string describe(const Binding& b, DistanceMetric metric) {
  std::string out = std::string(bind_method_name(b.method)) + ": " + in_quotes(b.surface) + " -> " + b.bound;
  if (b.method == BindMethod::kFuzzy) out += " (" + distance_note(b, metric) + ")";
  return out;
}

std::vector<Candidate> nearest(std::map<std::string, int> best, size_t limit) {
  std::vector<Candidate> out;
  for (auto& [name, d] : best) out.push_back({name, d});
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.name < b.name;
  });
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::string candidate_list(const std::vector<Candidate>& cands) {
  std::vector<std::string> parts;
  for (const auto& c : cands) parts.push_back(c.name + " (" + std::to_string(c.distance) + ")");
  return join(parts, ", ");
}

const std::set<std::string>* table_synonyms_for(const Lexicon& lex, std::string_view table) {
  for (const auto& [name, syns] : lex.table_synonyms) {
    if (iequals(name, table)) return &syns;
  }
  return nullptr;
}

}  // namespace

std::vector<Binding> rank_tables(const std::vector<Token>& display_tokens, const SchemaCatalog& cat,
                                 const Lexicon& lex, const ResolverOptions& opts) {
  std::vector<Binding> ranked;
  for (const auto& tok : display_tokens) {
    if (const Table* t = cat.find_table(tok.text)) {
      ranked.push_back({tok.text, t->def.name, BindMethod::kExact, 0});
    }
  }
  for (const auto& tok : display_tokens) {
    for (const auto& t : cat.tables()) {
      const auto* syns = table_synonyms_for(lex, t.def.name);
      if (syns && syns->count(tok.lower)) {
        ranked.push_back({tok.text, t.def.name, BindMethod::kSemantic, 0});
      }
    }
  }
  if (!cat.tables().empty()) {
    std::vector<std::string> names;
    for (const auto& t : cat.tables()) names.push_back(t.def.name);
    std::vector<Binding> fuzzy;
    for (const auto& tok : display_tokens) {
      for (const auto& m : best_match(tok.text, names, opts.max_distance, opts.metric)) {
        fuzzy.push_back({tok.text, m.candidate, BindMethod::kFuzzy, m.distance});
      }
    }
    std::stable_sort(fuzzy.begin(), fuzzy.end(), [](const Binding& a, const Binding& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.bound < b.bound;
    });
    ranked.insert(ranked.end(), fuzzy.begin(), fuzzy.end());
  }

  std::vector<Binding> out;
  std::set<std::string> seen;
  for (auto& b : ranked) {
    if (seen.insert(to_lower(b.bound)).second) out.push_back(std::move(b));
  }
  return out;
}

namespace {

Error unresolvable_table(const std::vector<Token>& display_tokens, const SchemaCatalog& cat,
                         const ResolverOptions& opts) {
  std::map<std::string, int> best;
  for (const auto& tok : display_tokens) {
    for (const auto& t : cat.tables()) {
      int d = edit_distance(tok.text, t.def.name, opts.metric);
      auto [it, inserted] = best.emplace(t.def.name, d);
      if (!inserted) it->second = std::min(it->second, d);
    }
  }
  auto cands = nearest(std::move(best), 3);
  std::vector<std::string> words;
  for (const auto& t : display_tokens) words.push_back(t.text);
  std::string msg = "no table matches " + braces(words);
  if (!cands.empty()) msg += "; nearest: " + candidate_list(cands);
  return Error(ErrorKind::kUnresolvableTable, msg, cands);
}

}  // namespace

Binding resolve_table(const std::vector<Token>& display_tokens, const SchemaCatalog& cat,
                      const Lexicon& lex, const ResolverOptions& opts) {
  auto ranked = rank_tables(display_tokens, cat, lex, opts);
  if (ranked.empty()) throw unresolvable_table(display_tokens, cat, opts);
  return ranked.front();
}

std::vector<std::string> related_tables(std::string_view base, const SchemaCatalog& cat) {
  const Table& b = cat.table(base);
  std::vector<std::string> out;
  for (auto& name : cat.tables_with_field(b.def.primary_key)) {
    if (!iequals(name, b.def.name)) out.push_back(std::move(name));
  }
  return out;
}

std::vector<std::string> refine_by_values(const std::vector<std::string>& candidates,
                                          std::string_view base, const SchemaCatalog& cat) {
  const Table& b = cat.table(base);
  auto base_values = cat.value_set(b.def.name, b.def.primary_key);
  std::set<std::string> keys(base_values.begin(), base_values.end());
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    auto values = cat.value_set(c, b.def.primary_key);
    bool subset = std::all_of(values.begin(), values.end(),
                              [&](const std::string& v) { return keys.count(v) > 0; });
    if (subset) out.push_back(c);
  }
  return out;
}

namespace {

// Spellings to try for a field phrase: all words run together first, then
// each word alone.
std::vector<std::string> field_forms(const std::vector<std::string>& phrase) {
  std::vector<std::string> forms;
  if (phrase.size() > 1) forms.push_back(join(phrase, ""));
  for (const auto& w : phrase) {
    if (std::find(forms.begin(), forms.end(), w) == forms.end()) forms.push_back(w);
  }
  return forms;
}

size_t distinct_tables(const std::vector<FieldMatch>& hits) {
  std::set<std::string> tables;
  for (const auto& h : hits) tables.insert(to_lower(h.table));
  return tables.size();
}

Error ambiguous(const std::string& surface, const std::vector<FieldMatch>& hits) {
  std::vector<std::string> names;
  std::vector<Candidate> cands;
  std::set<std::string> seen;
  for (const auto& h : hits) {
    std::string name = h.table + "." + h.field.bound;
    if (!seen.insert(name).second) continue;
    names.push_back(name);
    cands.push_back({name, h.field.distance});
  }
  return Error(ErrorKind::kAmbiguousField,
               in_quotes(surface) + " matches fields in several tables: " + join(names, ", "), cands);
}

void collect_synonyms(const Lexicon& lex, const Table& table, const std::vector<std::string>& forms,
                      std::vector<FieldMatch>& hits) {
  for (const auto& form : forms) {
    std::string lower = to_lower(form);
    for (const auto& [key, syns] : lex.field_synonyms) {
      if (!iequals(key.first, table.def.name) || !syns.count(lower)) continue;
      if (auto idx = table.def.field_index(key.second)) {
        hits.push_back({table.def.name, {form, table.def.fields[*idx].name, BindMethod::kSemantic, 0}});
      }
    }
  }
}

}  // namespace

std::vector<FieldMatch> rank_fields(const Condition& cond, const Binding& base,
                                    const std::vector<std::string>& refined, const SchemaCatalog& cat,
                                    const Lexicon& lex, const ResolverOptions& opts) {
  const auto forms = field_forms(cond.field_phrase);
  const std::string surface = join(cond.field_phrase, " ");
  const Table& base_table = cat.table(base.bound);
  std::vector<const Table*> refined_tables;
  for (const auto& r : refined) refined_tables.push_back(&cat.table(r));

  auto exact_in = [&](const Table& t, std::vector<FieldMatch>& hits) {
    for (const auto& form : forms) {
      if (auto idx = t.def.field_index(form)) {
        hits.push_back({t.def.name, {form, t.def.fields[*idx].name, BindMethod::kExact, 0}});
      }
    }
  };

  std::vector<std::vector<FieldMatch>> stages(4);
  exact_in(base_table, stages[0]);
  for (const Table* t : refined_tables) exact_in(*t, stages[1]);
  collect_synonyms(lex, base_table, forms, stages[2]);
  if (stages[2].empty()) {
    for (const Table* t : refined_tables) collect_synonyms(lex, *t, forms, stages[2]);
  } else {
    std::vector<FieldMatch> later;
    for (const Table* t : refined_tables) collect_synonyms(lex, *t, forms, later);
    stages[2].insert(stages[2].end(), later.begin(), later.end());
  }

  std::vector<const Table*> all_tables{&base_table};
  all_tables.insert(all_tables.end(), refined_tables.begin(), refined_tables.end());
  for (size_t ti = 0; ti < all_tables.size(); ++ti) {
    const Table& t = *all_tables[ti];
    for (const auto& form : forms) {
      for (const auto& f : t.def.fields) {
        int d = edit_distance(form, f.name, opts.metric);
        if (d <= opts.max_distance) {
          stages[3].push_back({t.def.name, {form, f.name, BindMethod::kFuzzy, d}});
        }
      }
    }
  }
  std::stable_sort(stages[3].begin(), stages[3].end(), [](const FieldMatch& a, const FieldMatch& b) {
    if (a.field.distance != b.field.distance) return a.field.distance < b.field.distance;
    return to_lower(a.field.bound) < to_lower(b.field.bound);
  });

  // Ambiguity is judged on the first stage that produced anything. Stage 0
  // is the base alone and stage 2 lists base hits first, so only ties among
  // tables at the same precedence count.
  for (size_t s = 0; s < stages.size(); ++s) {
    const auto& hits = stages[s];
    if (hits.empty()) continue;
    if (s == 1 && distinct_tables(hits) > 1) throw ambiguous(surface, hits);
    if (s == 2 && !iequals(hits.front().table, base_table.def.name) && distinct_tables(hits) > 1) {
      throw ambiguous(surface, hits);
    }
    if (s == 3) {
      std::vector<FieldMatch> tied;
      for (const auto& h : hits) {
        if (h.field.distance == hits.front().field.distance) tied.push_back(h);
      }
      if (distinct_tables(tied) > 1) throw ambiguous(surface, tied);
    }
    break;
  }

  std::vector<FieldMatch> out;
  std::set<std::string> seen;
  for (auto& stage : stages) {
    for (auto& h : stage) {
      if (seen.insert(to_lower(h.table + "." + h.field.bound)).second) out.push_back(std::move(h));
    }
  }
  return out;
}

namespace {

Error unresolvable_field(const Condition& cond, const Binding& base,
                         const std::vector<std::string>& refined, const SchemaCatalog& cat,
                         const ResolverOptions& opts) {
  std::vector<std::string> tables{base.bound};
  tables.insert(tables.end(), refined.begin(), refined.end());
  std::map<std::string, int> best;
  for (const auto& form : field_forms(cond.field_phrase)) {
    for (const auto& name : tables) {
      const Table& t = cat.table(name);
      for (const auto& f : t.def.fields) {
        int d = edit_distance(form, f.name, opts.metric);
        auto [it, inserted] = best.emplace(t.def.name + "." + f.name, d);
        if (!inserted) it->second = std::min(it->second, d);
      }
    }
  }
  auto cands = nearest(std::move(best), 3);
  std::string msg = "no field matches " + in_quotes(join(cond.field_phrase, " ")) + " in " + braces(tables);
  if (!cands.empty()) msg += "; nearest: " + candidate_list(cands);
  return Error(ErrorKind::kUnresolvableField, msg, cands);
}

}  // namespace

FieldMatch resolve_field(const Condition& cond, const Binding& base,
                         const std::vector<std::string>& refined, const SchemaCatalog& cat,
                         const Lexicon& lex, const ResolverOptions& opts) {
  auto ranked = rank_fields(cond, base, refined, cat, lex, opts);
  if (ranked.empty()) throw unresolvable_field(cond, base, refined, cat, opts);
  return ranked.front();
}

namespace {

ResolvedQuery assemble(const Binding& base, const std::vector<std::string>& refined,
                       const std::vector<Condition>& conditions,
                       const std::vector<const FieldMatch*>& choice, const SchemaCatalog& cat) {
  ResolvedQuery rq;
  rq.base_table = base;
  const Table& base_table = cat.table(base.bound);
  for (size_t i = 0; i < conditions.size(); ++i) {
    rq.conditions.push_back(
        {choice[i]->table, choice[i]->field, conditions[i].op, conditions[i].literal});
  }
  for (const auto& r : refined) {
    bool used = std::any_of(rq.conditions.begin(), rq.conditions.end(),
                            [&](const ResolvedCondition& c) { return iequals(c.table, r); });
    if (!used) continue;
    const Table& t = cat.table(r);
    rq.join_tables.push_back({t.def.name, t.def.fields[*t.def.field_index(base_table.def.primary_key)].name});
  }
  return rq;
}

std::string summarize(const ResolvedQuery& rq) {
  std::vector<std::string> parts{rq.base_table.bound};
  for (const auto& c : rq.conditions) parts.push_back(c.table + "." + c.field.bound);
  return join(parts, "; ");
}

}  // namespace

ResolvedQuery resolve(const QueryIR& ir, const SchemaCatalog& cat, const Lexicon& lex,
                      const ResolverOptions& opts) {
  std::vector<TraceStep> trace;
  std::vector<std::string> display;
  for (const auto& t : ir.display_tokens) display.push_back(t.text);
  const std::string display_text = join(display, " ");

  auto tables = rank_tables(ir.display_tokens, cat, lex, opts);
  if (tables.empty()) throw unresolvable_table(ir.display_tokens, cat, opts).with_stage("resolve-table");

  size_t offered = 0;
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    const Binding& base = tables[ti];
    const bool first_table = ti == 0;
    trace.push_back({"table", display_text, describe(base, opts.metric)});

    auto related = related_tables(base.bound, cat);
    trace.push_back({"related", base.bound + "." + cat.table(base.bound).def.primary_key, braces(related)});
    auto refined = refine_by_values(related, base.bound, cat);
    trace.push_back({"refine", braces(related), braces(refined)});

    std::vector<std::vector<FieldMatch>> per_condition;
    bool viable = true;
    for (const auto& cond : ir.conditions) {
      const std::string surface = join(cond.field_phrase, " ");
      try {
        auto ranked = rank_fields(cond, base, refined, cat, lex, opts);
        if (ranked.empty()) throw unresolvable_field(cond, base, refined, cat, opts);
        const FieldMatch& head = ranked.front();
        trace.push_back({"field", surface, describe(head.field, opts.metric) + " in " + head.table});
        per_condition.push_back(std::move(ranked));
      } catch (const Error& e) {
        if (first_table) throw e.with_stage("resolve-field");
        trace.push_back({"field", surface, std::string(e.code()) + ", skipping table " + base.bound});
        viable = false;
        break;
      }
    }
    if (!viable) continue;

    // Odometer over field alternatives, most significant digit first.
    std::vector<size_t> pick(per_condition.size(), 0);
    while (true) {
      std::vector<const FieldMatch*> choice;
      for (size_t i = 0; i < pick.size(); ++i) choice.push_back(&per_condition[i][pick[i]]);
      ResolvedQuery rq = assemble(base, refined, ir.conditions, choice, cat);
      ++offered;
      if (!opts.accept || opts.accept(rq)) {
        std::vector<std::string> joins;
        for (const auto& j : rq.join_tables) joins.push_back(j.table);
        trace.push_back({"join", base.bound, braces(joins)});
        rq.trace = std::move(trace);
        return rq;
      }
      trace.push_back({"blocklist", summarize(rq), "skipped previously rejected translation"});
      if (offered >= opts.max_alternatives) break;

      size_t d = pick.size();
      while (d > 0) {
        --d;
        if (++pick[d] < per_condition[d].size()) break;
        pick[d] = 0;
        if (d == 0) {
          d = SIZE_MAX;
          break;
        }
      }
      if (pick.empty() || d == SIZE_MAX) break;
    }
    if (offered >= opts.max_alternatives) break;
  }
  throw Error(ErrorKind::kNoAlternative,
              "every candidate translation of this query was rejected before")
      .with_stage("resolve");
}

}  // namespace flexq
