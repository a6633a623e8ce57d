#pragma once

#include <string>
#include <vector>

#include "flexq/catalog.h"
#include "flexq/lexicon.h"
#include "flexq/resolver.h"

namespace flexq {

struct CellValue {
  enum class Kind { kNull, kNumber, kText };

  Kind kind = Kind::kNull;
  std::string text;   // canonical text, empty for null
  double number = 0;  // valid when kind == kNumber

  static CellValue null() { return {}; }
  static CellValue from_text(std::string s);
  static CellValue from_number_text(const std::string& s);  // s must be numeric
  // Cell of a catalog column: numeric dtypes become numbers, empty is null.
  static CellValue from_cell(const std::string& canonical, DType dtype);
  static CellValue from_literal(const Literal& lit);

  bool operator==(const CellValue&) const = default;
};

// Numeric comparison when both sides read as numbers; otherwise EQ/NEQ are
// case-insensitive text equality and ordering operators throw
// Error(kTypeMismatch). A null side is false under every operator.
bool compare(const CellValue& a, CompareOp op, const CellValue& b);

struct ResultColumn {
  std::string table;
  std::string field;

  bool operator==(const ResultColumn&) const = default;
};

struct ResultSet {
  std::vector<ResultColumn> columns;
  std::vector<std::vector<CellValue>> rows;
  size_t row_count = 0;
};

// Base table columns then each join table's columns; rows in base CSV order,
// then join table order.
ResultSet execute(const ResolvedQuery& rq, const SchemaCatalog& cat);

}  // namespace flexq
