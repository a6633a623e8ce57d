#pragma once

#include <string>

#include "flexq/catalog.h"
#include "flexq/resolver.h"

namespace flexq {

struct SqlText {
  std::string text;
  std::string dialect_note = "paper-implicit-join";

  bool operator==(const SqlText&) const = default;
};

// SELECT * with one alias per table (A, B, ...), implicit joins on the base
// primary key, then the conditions, all joined by AND. Identifier casing comes
// from the catalog; text literals are single-quoted.
SqlText build_sql(const ResolvedQuery& rq, const SchemaCatalog& cat);

// Alias for the n-th table: A..Z, then AA, AB, ...
std::string table_alias(size_t index);

// Lowercases, collapses whitespace and drops whitespace around comparison
// operators and commas so differently typeset SQL compares equal.
std::string canonicalize_sql(std::string_view sql);

}  // namespace flexq
