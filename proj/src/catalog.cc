#include "flexq/catalog.h"

#include <fstream>
#include <set>
#include <sstream>

#include "flexq/csv.h"
#include "flexq/error.h"
#include "flexq/text.h"
#include "json.hpp"

namespace flexq {

using nlohmann::json;

std::string_view dtype_name(DType t) {
  switch (t) {
    case DType::kInteger: return "integer";
    case DType::kDecimal: return "decimal";
    case DType::kText: return "text";
    case DType::kDateText: return "date-text";
  }
  return "text";
}

DType parse_dtype(std::string_view name) {
  for (DType t : {DType::kInteger, DType::kDecimal, DType::kText, DType::kDateText}) {
    if (dtype_name(t) == name) return t;
  }
  throw Error(ErrorKind::kMalformedFormat, "unknown dtype '" + std::string(name) + "'");
}

std::optional<size_t> TableDef::field_index(std::string_view field) const {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (iequals(fields[i].name, field)) return i;
  }
  return std::nullopt;
}

std::string canonical_cell(std::string_view raw, DType dtype) {
  if (!is_numeric(dtype) || raw.empty()) return std::string(raw);
  auto canon = canonical_number(trim(raw));
  if (!canon) {
    throw Error(ErrorKind::kMalformedFormat, "'" + std::string(raw) + "' is not a number");
  }
  return *canon;
}

SchemaCatalog::SchemaCatalog(std::vector<Table> tables) : tables_(std::move(tables)) {
  std::set<std::string> names;
  for (const auto& t : tables_) {
    const TableDef& def = t.def;
    if (def.name.empty()) throw Error(ErrorKind::kInvariantViolation, "table with empty name");
    if (!names.insert(to_lower(def.name)).second) {
      throw Error(ErrorKind::kDuplicateTable, "table '" + def.name + "' declared twice");
    }
    std::set<std::string> fields;
    for (const auto& f : def.fields) {
      if (f.name.empty()) {
        throw Error(ErrorKind::kInvariantViolation, "table '" + def.name + "' has a field with empty name");
      }
      if (!fields.insert(to_lower(f.name)).second) {
        throw Error(ErrorKind::kInvariantViolation,
                    "field '" + f.name + "' declared twice in table '" + def.name + "'");
      }
    }
    auto pk = def.field_index(def.primary_key);
    if (!pk) {
      throw Error(ErrorKind::kInvariantViolation, "primary key '" + def.primary_key +
                                                      "' of table '" + def.name + "' is not a field");
    }
    std::vector<std::string> keys;
    keys.reserve(t.rows.size());
    for (const auto& row : t.rows) {
      if (row.size() != def.fields.size()) {
        throw Error(ErrorKind::kInvariantViolation,
                    "row width mismatch in table '" + def.name + "'");
      }
      keys.push_back(row[*pk]);
    }
    value_index_[{to_lower(def.name), to_lower(def.primary_key)}] = std::move(keys);
  }
}

const Table* SchemaCatalog::find_table(std::string_view name) const {
  for (const auto& t : tables_) {
    if (iequals(t.def.name, name)) return &t;
  }
  return nullptr;
}

const Table& SchemaCatalog::table(std::string_view name) const {
  if (const Table* t = find_table(name)) return *t;
  throw Error(ErrorKind::kUnknownTable, "no table named '" + std::string(name) + "'");
}

std::vector<std::string> SchemaCatalog::tables_with_field(std::string_view field) const {
  std::vector<std::string> out;
  for (const auto& t : tables_) {
    if (t.def.field_index(field)) out.push_back(t.def.name);
  }
  return out;
}

bool SchemaCatalog::is_indexed(std::string_view table, std::string_view field) const {
  return value_index_.count({to_lower(table), to_lower(field)}) > 0;
}

std::vector<std::string> SchemaCatalog::value_set(std::string_view table,
                                                  std::string_view field) const {
  const Table& t = this->table(table);
  auto idx = t.def.field_index(field);
  if (!idx) {
    throw Error(ErrorKind::kUnknownField,
                "table '" + t.def.name + "' has no field '" + std::string(field) + "'");
  }
  if (auto it = value_index_.find({to_lower(table), to_lower(field)}); it != value_index_.end()) {
    return it->second;
  }
  std::vector<std::string> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(row[*idx]);
  return out;
}

namespace {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileMissing, "cannot open catalog file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kMalformedFormat, path.string() + ": " + e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::kMalformedFormat, where + ": missing \"" + key + "\"");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw Error(ErrorKind::kMalformedFormat, where + ": \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

Table load_table(const TableDef& def, const std::filesystem::path& data_dir) {
  std::filesystem::path file = data_dir / def.data_file;
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kFileMissing,
                "data file " + file.string() + " for table '" + def.name + "' not found");
  }
  std::vector<CsvRow> rows;
  try {
    rows = read_csv(in);
  } catch (const Error& e) {
    throw Error(e.kind(), file.string() + ": " + e.detail());
  }
  if (rows.empty()) {
    throw Error(ErrorKind::kHeaderMismatch, file.string() + ": missing header row");
  }

  const CsvRow& header = rows.front();
  std::vector<size_t> column_of_field(def.fields.size(), SIZE_MAX);
  std::vector<std::string> extra;
  for (size_t c = 0; c < header.size(); ++c) {
    std::string name = trim(header[c]);
    auto idx = def.field_index(name);
    if (!idx) {
      extra.push_back(name);
    } else if (column_of_field[*idx] != SIZE_MAX) {
      throw Error(ErrorKind::kHeaderMismatch, file.string() + ": column '" + name + "' repeated");
    } else {
      column_of_field[*idx] = c;
    }
  }
  std::vector<std::string> missing;
  for (size_t i = 0; i < def.fields.size(); ++i) {
    if (column_of_field[i] == SIZE_MAX) missing.push_back(def.fields[i].name);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = file.string() + ":";
    if (!missing.empty()) msg += " missing columns [" + join(missing, ", ") + "]";
    if (!extra.empty()) msg += " extra columns [" + join(extra, ", ") + "]";
    throw Error(ErrorKind::kHeaderMismatch, msg);
  }

  Table table{def, {}};
  table.rows.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& src = rows[r];
    if (src.size() != header.size()) {
      throw Error(ErrorKind::kMalformedFormat, file.string() + ": record " + std::to_string(r + 1) +
                                                   " has " + std::to_string(src.size()) +
                                                   " cells, header has " +
                                                   std::to_string(header.size()));
    }
    std::vector<std::string> cells(def.fields.size());
    for (size_t i = 0; i < def.fields.size(); ++i) {
      try {
        cells[i] = canonical_cell(src[column_of_field[i]], def.fields[i].dtype);
      } catch (const Error& e) {
        throw Error(e.kind(), file.string() + ": record " + std::to_string(r + 1) + ", field '" +
                                  def.fields[i].name + "': " + e.detail());
      }
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace

SchemaCatalog load_catalog(const std::filesystem::path& catalog_path,
                           const std::filesystem::path& data_dir) {
  json doc = read_json_file(catalog_path);
  std::string where = catalog_path.string();
  const json& tables = require(doc, "tables", where);
  if (!tables.is_array()) throw Error(ErrorKind::kMalformedFormat, where + ": \"tables\" must be an array");

  std::vector<TableDef> defs;
  std::set<std::string> seen;
  for (const auto& t : tables) {
    TableDef def;
    def.name = require_string(t, "name", where);
    std::string twhere = where + " table '" + def.name + "'";
    def.primary_key = require_string(t, "primaryKey", twhere);
    def.data_file = require_string(t, "dataFile", twhere);
    const json& fields = require(t, "fields", twhere);
    if (!fields.is_array()) throw Error(ErrorKind::kMalformedFormat, twhere + ": \"fields\" must be an array");
    for (const auto& f : fields) {
      def.fields.push_back({require_string(f, "name", twhere),
                            parse_dtype(require_string(f, "dtype", twhere))});
    }
    if (!seen.insert(to_lower(def.name)).second) {
      throw Error(ErrorKind::kDuplicateTable, "table '" + def.name + "' declared twice");
    }
    defs.push_back(std::move(def));
  }

  std::vector<Table> loaded;
  loaded.reserve(defs.size());
  for (const auto& def : defs) {
    if (!def.field_index(def.primary_key)) {
      throw Error(ErrorKind::kInvariantViolation, "primary key '" + def.primary_key +
                                                      "' of table '" + def.name + "' is not a field");
    }
    loaded.push_back(load_table(def, data_dir));
  }
  return SchemaCatalog(std::move(loaded));
}

}  // namespace flexq
