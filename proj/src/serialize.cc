#include "flexq/serialize.h"

namespace flexq {

using nlohmann::json;

void to_json(json& j, const Binding& b) {
  j = json{{"surface", b.surface},
           {"bound", b.bound},
           {"method", bind_method_name(b.method)},
           {"distance", b.distance}};
}

void from_json(const json& j, Binding& b) {
  b.surface = j.at("surface").get<std::string>();
  b.bound = j.at("bound").get<std::string>();
  b.method = parse_bind_method(j.at("method").get<std::string>());
  b.distance = j.at("distance").get<int>();
}

void to_json(json& j, const TraceStep& s) {
  j = json{{"stage", s.stage}, {"input", s.input}, {"outcome", s.outcome}};
}

void from_json(const json& j, TraceStep& s) {
  s.stage = j.at("stage").get<std::string>();
  s.input = j.at("input").get<std::string>();
  s.outcome = j.at("outcome").get<std::string>();
}

void to_json(json& j, const ResolvedQuery& rq) {
  json joins = json::array();
  for (const auto& t : rq.join_tables) joins.push_back({{"table", t.table}, {"field", t.field}});
  json conds = json::array();
  for (const auto& c : rq.conditions) {
    conds.push_back({{"table", c.table},
                     {"field", c.field},
                     {"operator", op_code(c.op)},
                     {"literal", c.literal.text},
                     {"numeric", c.literal.numeric}});
  }
  j = json{{"baseTable", rq.base_table}, {"joinTables", joins}, {"conditions", conds}, {"trace", rq.trace}};
}

void from_json(const json& j, ResolvedQuery& rq) {
  rq.base_table = j.at("baseTable").get<Binding>();
  rq.join_tables.clear();
  for (const auto& t : j.at("joinTables")) {
    rq.join_tables.push_back({t.at("table").get<std::string>(), t.at("field").get<std::string>()});
  }
  rq.conditions.clear();
  for (const auto& c : j.at("conditions")) {
    rq.conditions.push_back({c.at("table").get<std::string>(), c.at("field").get<Binding>(),
                             parse_op_code(c.at("operator").get<std::string>()),
                             Literal{c.at("literal").get<std::string>(), c.at("numeric").get<bool>()}});
  }
  rq.trace = j.at("trace").get<std::vector<TraceStep>>();
}

json cell_to_json(const CellValue& v) {
  switch (v.kind) {
    case CellValue::Kind::kNull:
      return nullptr;
    case CellValue::Kind::kNumber:
      if (v.text.find('.') == std::string::npos) {
        try {
          return std::stoll(v.text);
        } catch (const std::out_of_range&) {
          return v.number;
        }
      }
      return v.number;
    case CellValue::Kind::kText:
      return v.text;
  }
  return nullptr;
}

json result_set_to_json(const ResultSet& rs) {
  json columns = json::array();
  for (const auto& c : rs.columns) columns.push_back({{"table", c.table}, {"field", c.field}});
  json rows = json::array();
  for (const auto& row : rs.rows) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  return json{{"columns", columns}, {"rows", rows}, {"rowCount", rs.row_count}};
}

json catalog_summary(const SchemaCatalog& cat) {
  json tables = json::array();
  for (const auto& t : cat.tables()) {
    json fields = json::array();
    for (const auto& f : t.def.fields) fields.push_back({{"name", f.name}, {"dtype", dtype_name(f.dtype)}});
    tables.push_back({{"name", t.def.name},
                      {"primaryKey", t.def.primary_key},
                      {"rowCount", t.rows.size()},
                      {"fields", fields}});
  }
  return json{{"tables", tables}};
}

json entry_to_json(const KnowledgeEntry& e) {
  return json{{"id", e.id},
              {"key", e.key},
              {"sql", e.sql.text},
              {"status", status_name(e.status)},
              {"accepts", e.accepts},
              {"rejects", e.rejects},
              {"created_at", e.created_at},
              {"updated_at", e.updated_at},
              {"notes", e.notes}};
}

json error_to_json(const Error& e) {
  json cands = json::array();
  for (const auto& c : e.candidates()) cands.push_back({{"name", c.name}, {"distance", c.distance}});
  return json{{"error", e.code()}, {"stage", e.stage()}, {"message", e.what()}, {"candidates", cands}};
}

}  // namespace flexq
