#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace flexq {

using CsvRow = std::vector<std::string>;

// RFC-4180 reader: comma separated, double-quoted fields with "" escapes,
// CRLF or LF line endings, embedded newlines inside quotes. A UTF-8 BOM on the
// first line is dropped. Blank lines are skipped.
// Throws Error(kMalformedFormat) on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view text);
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace flexq
