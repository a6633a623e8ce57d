#include "flexq/sqlgen.h"

#include <cctype>

#include "flexq/text.h"

namespace flexq {

std::string table_alias(size_t index) {
  std::string out;
  ++index;
  while (index > 0) {
    --index;
    out.insert(out.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return out;
}

namespace {

std::string render_literal(const Literal& lit) {
  if (lit.numeric) return lit.text;
  std::string out = "'";
  for (char c : lit.text) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string declared_field(const SchemaCatalog& cat, const std::string& table, const std::string& field) {
  const Table& t = cat.table(table);
  return t.def.fields[*t.def.field_index(field)].name;
}

}  // namespace

SqlText build_sql(const ResolvedQuery& rq, const SchemaCatalog& cat) {
  const Table& base = cat.table(rq.base_table.bound);
  std::vector<std::string> tables{base.def.name};
  for (const auto& j : rq.join_tables) tables.push_back(cat.table(j.table).def.name);

  auto alias_of = [&](const std::string& table) {
    for (size_t i = 0; i < tables.size(); ++i) {
      if (iequals(tables[i], table)) return table_alias(i);
    }
    return table_alias(0);
  };

  std::vector<std::string> from;
  for (size_t i = 0; i < tables.size(); ++i) from.push_back(tables[i] + " AS " + table_alias(i));

  std::vector<std::string> where;
  const std::string base_alias = table_alias(0);
  for (size_t i = 0; i < rq.join_tables.size(); ++i) {
    const auto& j = rq.join_tables[i];
    where.push_back(base_alias + "." + base.def.primary_key + " = " + table_alias(i + 1) + "." +
                    declared_field(cat, j.table, j.field));
  }
  for (const auto& c : rq.conditions) {
    where.push_back(alias_of(c.table) + "." + declared_field(cat, c.table, c.field.bound) + " " +
                    std::string(op_symbol(c.op)) + " " + render_literal(c.literal));
  }

  SqlText out;
  out.text = "SELECT * FROM " + join(from, ", ");
  if (!where.empty()) out.text += " WHERE " + join(where, " AND ");
  return out;
}

std::string canonicalize_sql(std::string_view sql) {
  std::string collapsed = join(split_whitespace(to_lower(sql)), " ");
  auto is_op = [](char c) { return c == '=' || c == '<' || c == '>' || c == '!' || c == ','; };
  std::string out;
  for (size_t i = 0; i < collapsed.size(); ++i) {
    char c = collapsed[i];
    if (c == ' ') {
      char prev = out.empty() ? '\0' : out.back();
      char next = i + 1 < collapsed.size() ? collapsed[i + 1] : '\0';
      if (is_op(prev) || is_op(next)) continue;
      // "A. city" in typeset output: drop space after a qualifier dot.
      if (prev == '.') continue;
    }
    out += c;
  }
  return out;
}

}  // namespace flexq
