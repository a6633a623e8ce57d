#include "flexq/console.h"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "flexq/error.h"
#include "flexq/text.h"

namespace flexq {

namespace {

std::string cell_text(const CellValue& v) {
  return v.kind == CellValue::Kind::kNull ? "NULL" : v.text;
}

std::string fit(const std::string& s, size_t width) {
  if (s.size() <= width) return s;
  if (width <= 3) return s.substr(0, width);
  return s.substr(0, width - 3) + "...";
}

}  // namespace

std::string format_grid(const ResultSet& rs, size_t max_width) {
  std::vector<size_t> widths;
  for (const auto& c : rs.columns) widths.push_back(std::min(c.field.size(), max_width));
  for (const auto& row : rs.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], std::min(cell_text(row[i]).size(), max_width));
    }
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      std::string c = fit(cells[i], widths[i]);
      out << (i ? " | " : "") << c << std::string(widths[i] - c.size(), ' ');
    }
    out << "\n";
  };
  std::vector<std::string> header;
  for (const auto& c : rs.columns) header.push_back(c.field);
  line(header);
  for (size_t i = 0; i < widths.size(); ++i) out << (i ? "-+-" : "") << std::string(widths[i], '-');
  out << "\n";
  for (const auto& row : rs.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(cell_text(v));
    line(cells);
  }
  out << "(" << rs.row_count << (rs.row_count == 1 ? " row)" : " rows)") << "\n";
  return out.str();
}

int run_repl(Engine& engine, std::istream& in, std::ostream& out) {
  int answered = 0;
  std::string line;
  while (true) {
    out << "flexq> " << std::flush;
    if (!std::getline(in, line)) break;
    std::string query = trim(line);
    if (query.empty()) continue;
    if (query == ":quit" || query == ":q" || query == "exit") break;

    TranslateResponse tr;
    try {
      tr = engine.translate(query);
      out << tr.sql << "\n";
      out << "(" << tr.source << ", id " << tr.query_id << ")\n";
      for (const auto& w : tr.warnings) out << "warning: " << w << "\n";
      out << format_grid(engine.execute(tr.query_id));
    } catch (const Error& e) {
      out << "error: " << e.what() << "\n";
      for (const auto& c : e.candidates()) out << "  did you mean " << c.name << " (" << c.distance << ")\n";
      continue;
    }
    ++answered;

    out << "accept/reject? [a/r/skip] " << std::flush;
    if (!std::getline(in, line)) break;
    std::string answer = to_lower(trim(line));
    std::string verdict;
    if (answer == "a" || answer == "accept" || answer == "y" || answer == "yes") verdict = "accept";
    if (answer == "r" || answer == "reject" || answer == "n" || answer == "no") verdict = "reject";
    if (verdict.empty()) continue;
    auto entry = engine.feedback(tr.query_id, verdict);
    out << "recorded: " << status_name(entry.status) << " (accepts " << entry.accepts << ", rejects "
        << entry.rejects << ")\n";
  }
  return answered;
}

}  // namespace flexq
