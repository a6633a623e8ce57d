#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flexq {

enum class DType { kInteger, kDecimal, kText, kDateText };

std::string_view dtype_name(DType t);
DType parse_dtype(std::string_view name);
inline bool is_numeric(DType t) { return t == DType::kInteger || t == DType::kDecimal; }

struct FieldDef {
  std::string name;
  DType dtype = DType::kText;

  bool operator==(const FieldDef&) const = default;
};

struct TableDef {
  std::string name;
  std::string primary_key;
  std::vector<FieldDef> fields;
  std::string data_file;

  bool operator==(const TableDef&) const = default;

  // Case-insensitive lookup; returns the position in `fields`.
  std::optional<size_t> field_index(std::string_view field) const;
};

// Table definition plus its rows. Cells are canonical text, one per declared
// field in declaration order; an empty cell is a null.
struct Table {
  TableDef def;
  std::vector<std::vector<std::string>> rows;
};

// Canonical text for a cell of the given type: numeric cells lose leading
// zeros and trailing fraction zeros, everything else is kept verbatim.
// Throws Error(kMalformedFormat) for a non-numeric value in a numeric column.
std::string canonical_cell(std::string_view raw, DType dtype);

// The metadata set: tables, fields, primary keys and per-key value indexes.
// Immutable after construction and safe to share between threads.
class SchemaCatalog {
 public:
  SchemaCatalog() = default;
  // Validates table/field/key invariants and builds the primary-key value
  // index. Rows must already be canonical and sized to the field list.
  explicit SchemaCatalog(std::vector<Table> tables);

  const std::vector<Table>& tables() const { return tables_; }
  const Table* find_table(std::string_view name) const;
  const Table& table(std::string_view name) const;  // throws kUnknownTable

  // Every table declaring `field` (case-insensitive), in catalog order.
  std::vector<std::string> tables_with_field(std::string_view field) const;

  // Multiset of canonical cell values for (table, field), in row order.
  // Primary-key columns are served from the index; others are computed.
  std::vector<std::string> value_set(std::string_view table, std::string_view field) const;

  // True when (table, field) is held in the value index.
  bool is_indexed(std::string_view table, std::string_view field) const;

 private:
  std::vector<Table> tables_;
  // (lowercase table, lowercase field) -> values
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> value_index_;
};

// Loads the catalog JSON and every referenced CSV file from `data_dir`.
SchemaCatalog load_catalog(const std::filesystem::path& catalog_path,
                           const std::filesystem::path& data_dir);

}  // namespace flexq
