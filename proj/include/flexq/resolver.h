#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "flexq/catalog.h"
#include "flexq/lexicon.h"
#include "flexq/matching.h"
#include "flexq/parser.h"

namespace flexq {

enum class BindMethod { kExact, kSemantic, kFuzzy };

std::string_view bind_method_name(BindMethod m);
BindMethod parse_bind_method(std::string_view name);

// A surface word from the query bound to a canonical catalog identifier.
struct Binding {
  std::string surface;
  std::string bound;
  BindMethod method = BindMethod::kExact;
  int distance = 0;

  bool operator==(const Binding&) const = default;
};

struct JoinTable {
  std::string table;
  std::string field;  // the join table's own spelling of the base primary key

  bool operator==(const JoinTable&) const = default;
};

struct ResolvedCondition {
  std::string table;
  Binding field;
  CompareOp op = CompareOp::kEq;
  Literal literal;

  bool operator==(const ResolvedCondition&) const = default;
};

struct TraceStep {
  std::string stage;
  std::string input;
  std::string outcome;

  bool operator==(const TraceStep&) const = default;
};

struct ResolvedQuery {
  Binding base_table;
  std::vector<JoinTable> join_tables;  // catalog order, each hosts a condition
  std::vector<ResolvedCondition> conditions;
  std::vector<TraceStep> trace;

  bool operator==(const ResolvedQuery&) const = default;
};

struct ResolverOptions {
  int max_distance = 2;
  DistanceMetric metric = DistanceMetric::kLevenshtein;
  // When set, candidate resolutions are offered in rank order and the first
  // one accepted is returned. Used to skip translations the user rejected.
  std::function<bool(const ResolvedQuery&)> accept;
  size_t max_alternatives = 256;
};

struct FieldMatch {
  std::string table;
  Binding field;

  bool operator==(const FieldMatch&) const = default;
};

// Every table the display words could name, best first: exact matches, then
// synonym matches, then edit-distance matches within max_distance.
std::vector<Binding> rank_tables(const std::vector<Token>& display_tokens, const SchemaCatalog& cat,
                                 const Lexicon& lex, const ResolverOptions& opts = {});

// Head of rank_tables. Throws Error(kUnresolvableTable) listing the nearest
// table names when nothing qualifies.
Binding resolve_table(const std::vector<Token>& display_tokens, const SchemaCatalog& cat,
                      const Lexicon& lex, const ResolverOptions& opts = {});

// Tables other than `base` that declare base's primary-key field.
std::vector<std::string> related_tables(std::string_view base, const SchemaCatalog& cat);

// Keeps candidates whose distinct key values are a subset of the base
// table's distinct primary-key values.
std::vector<std::string> refine_by_values(const std::vector<std::string>& candidates,
                                          std::string_view base, const SchemaCatalog& cat);

// Field candidates for a condition, best first: exact in base, exact in a
// refined table, synonym (base then refined), then edit distance over all.
// Throws Error(kAmbiguousField) when the winning stage ties across tables.
std::vector<FieldMatch> rank_fields(const Condition& cond, const Binding& base,
                                    const std::vector<std::string>& refined, const SchemaCatalog& cat,
                                    const Lexicon& lex, const ResolverOptions& opts = {});

// Head of rank_fields. Throws Error(kUnresolvableField) with nearest fields.
FieldMatch resolve_field(const Condition& cond, const Binding& base,
                         const std::vector<std::string>& refined, const SchemaCatalog& cat,
                         const Lexicon& lex, const ResolverOptions& opts = {});

ResolvedQuery resolve(const QueryIR& ir, const SchemaCatalog& cat, const Lexicon& lex,
                      const ResolverOptions& opts = {});

}  // namespace flexq
