#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flexq {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Optional sign, digits, optional fraction.
bool is_numeric_literal(std::string_view s);

// Canonical text for a numeric cell: no leading zeros, no trailing fraction
// zeros, "-0" folded to "0". Returns nullopt when `s` is not numeric.
std::optional<std::string> canonical_number(std::string_view s);

}  // namespace flexq
