#pragma once

#include "flexq/catalog.h"
#include "flexq/error.h"
#include "flexq/executor.h"
#include "flexq/knowledge.h"
#include "flexq/resolver.h"
#include "json.hpp"

namespace flexq {

// JSON forms used by the journal and the HTTP API.

void to_json(nlohmann::json& j, const Binding& b);
void from_json(const nlohmann::json& j, Binding& b);
void to_json(nlohmann::json& j, const TraceStep& s);
void from_json(const nlohmann::json& j, TraceStep& s);
void to_json(nlohmann::json& j, const ResolvedQuery& rq);
void from_json(const nlohmann::json& j, ResolvedQuery& rq);

nlohmann::json cell_to_json(const CellValue& v);
// {columns:[{table,field}], rows:[[...]], rowCount}
nlohmann::json result_set_to_json(const ResultSet& rs);
// {tables:[{name, primaryKey, rowCount, fields:[{name, dtype}]}]}
nlohmann::json catalog_summary(const SchemaCatalog& cat);
nlohmann::json entry_to_json(const KnowledgeEntry& e);
// {error, stage, message, candidates:[{name, distance}]}
nlohmann::json error_to_json(const Error& e);

}  // namespace flexq
