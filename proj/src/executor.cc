#include "flexq/executor.h"

#include <functional>
#include <optional>
#include <cstdlib>
#include <unordered_map>

#include "flexq/error.h"
#include "flexq/text.h"

namespace flexq {

CellValue CellValue::from_text(std::string s) {
  CellValue v;
  v.kind = Kind::kText;
  v.text = std::move(s);
  return v;
}

CellValue CellValue::from_number_text(const std::string& s) {
  CellValue v;
  v.kind = Kind::kNumber;
  v.text = canonical_number(s).value_or(s);
  v.number = std::strtod(v.text.c_str(), nullptr);
  return v;
}

CellValue CellValue::from_cell(const std::string& canonical, DType dtype) {
  if (canonical.empty()) return null();
  if (is_numeric(dtype) && is_numeric_literal(canonical)) return from_number_text(canonical);
  return from_text(canonical);
}

CellValue CellValue::from_literal(const Literal& lit) {
  return lit.numeric ? from_number_text(lit.text) : from_text(lit.text);
}

namespace {

std::optional<double> as_number(const CellValue& v) {
  if (v.kind == CellValue::Kind::kNumber) return v.number;
  if (v.kind == CellValue::Kind::kText && is_numeric_literal(v.text)) {
    return std::strtod(v.text.c_str(), nullptr);
  }
  return std::nullopt;
}

}  // namespace

bool compare(const CellValue& a, CompareOp op, const CellValue& b) {
  if (a.kind == CellValue::Kind::kNull || b.kind == CellValue::Kind::kNull) return false;
  auto x = as_number(a);
  auto y = as_number(b);
  if (x && y) {
    switch (op) {
      case CompareOp::kEq: return *x == *y;
      case CompareOp::kNeq: return *x != *y;
      case CompareOp::kGt: return *x > *y;
      case CompareOp::kLt: return *x < *y;
      case CompareOp::kGte: return *x >= *y;
      case CompareOp::kLte: return *x <= *y;
    }
  }
  switch (op) {
    case CompareOp::kEq: return iequals(a.text, b.text);
    case CompareOp::kNeq: return !iequals(a.text, b.text);
    default:
      throw Error(ErrorKind::kTypeMismatch, "cannot apply " + std::string(op_symbol(op)) + " to '" +
                                                a.text + "' and '" + b.text + "'");
  }
}

namespace {

// Equality key consistent with compare(EQ): numbers by canonical text,
// text case-folded. Numbers and numeric-looking text share a key space.
std::optional<std::string> join_key(const CellValue& v) {
  switch (v.kind) {
    case CellValue::Kind::kNull: return std::nullopt;
    case CellValue::Kind::kNumber: return "n:" + v.text;
    case CellValue::Kind::kText:
      if (is_numeric_literal(v.text)) return "n:" + *canonical_number(v.text);
      return "t:" + to_lower(v.text);
  }
  return std::nullopt;
}

struct BoundCondition {
  size_t column;  // index into the combined row
  CompareOp op;
  CellValue literal;
};

}  // namespace

ResultSet execute(const ResolvedQuery& rq, const SchemaCatalog& cat) {
  const Table& base = cat.table(rq.base_table.bound);
  std::vector<const Table*> tables{&base};
  for (const auto& j : rq.join_tables) tables.push_back(&cat.table(j.table));

  ResultSet rs;
  std::vector<size_t> offset;
  for (const Table* t : tables) {
    offset.push_back(rs.columns.size());
    for (const auto& f : t->def.fields) rs.columns.push_back({t->def.name, f.name});
  }

  auto table_position = [&](const std::string& name) -> size_t {
    for (size_t i = 0; i < tables.size(); ++i) {
      if (iequals(tables[i]->def.name, name)) return i;
    }
    throw Error(ErrorKind::kUnknownTable, "condition table '" + name + "' is not part of the query");
  };

  std::vector<BoundCondition> conditions;
  for (const auto& c : rq.conditions) {
    size_t ti = table_position(c.table);
    auto fi = tables[ti]->def.field_index(c.field.bound);
    if (!fi) {
      throw Error(ErrorKind::kUnknownField,
                  "table '" + tables[ti]->def.name + "' has no field '" + c.field.bound + "'");
    }
    conditions.push_back({offset[ti] + *fi, c.op, CellValue::from_literal(c.literal)});
  }

  const size_t base_pk = *base.def.field_index(base.def.primary_key);
  // Hash index per join table on its copy of the base key, rows kept in order.
  std::vector<std::unordered_map<std::string, std::vector<size_t>>> indexes;
  for (size_t ti = 1; ti < tables.size(); ++ti) {
    const Table& t = *tables[ti];
    auto col = t.def.field_index(rq.join_tables[ti - 1].field);
    if (!col) {
      throw Error(ErrorKind::kUnknownField,
                  "join table '" + t.def.name + "' has no field '" + rq.join_tables[ti - 1].field + "'");
    }
    auto& index = indexes.emplace_back();
    for (size_t r = 0; r < t.rows.size(); ++r) {
      auto key = join_key(CellValue::from_cell(t.rows[r][*col], t.def.fields[*col].dtype));
      if (key) index[*key].push_back(r);
    }
  }

  std::vector<CellValue> combined(rs.columns.size());
  auto emit_if_match = [&] {
    for (const auto& c : conditions) {
      if (!compare(combined[c.column], c.op, c.literal)) return;
    }
    rs.rows.push_back(combined);
  };

  // Depth-first over join tables: base row order, then join row order.
  std::function<void(size_t, const std::string&)> extend = [&](size_t ti, const std::string& key) {
    if (ti == tables.size()) {
      emit_if_match();
      return;
    }
    auto it = indexes[ti - 1].find(key);
    if (it == indexes[ti - 1].end()) return;
    const Table& t = *tables[ti];
    for (size_t r : it->second) {
      for (size_t f = 0; f < t.def.fields.size(); ++f) {
        combined[offset[ti] + f] = CellValue::from_cell(t.rows[r][f], t.def.fields[f].dtype);
      }
      extend(ti + 1, key);
    }
  };

  for (const auto& row : base.rows) {
    for (size_t f = 0; f < base.def.fields.size(); ++f) {
      combined[f] = CellValue::from_cell(row[f], base.def.fields[f].dtype);
    }
    if (tables.size() == 1) {
      emit_if_match();
      continue;
    }
    auto key = join_key(combined[base_pk]);
    if (key) extend(1, *key);
  }
  rs.row_count = rs.rows.size();
  return rs;
}

}  // namespace flexq
