#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flexq {

enum class CompareOp { kEq, kNeq, kGt, kLt, kGte, kLte };

// "EQ", "NEQ", ... as used in the lexicon file.
std::string_view op_code(CompareOp op);
// Throws Error(kMalformedFormat) for anything outside the six codes.
CompareOp parse_op_code(std::string_view code);
// "=", "!=", ">", ...
std::string_view op_symbol(CompareOp op);

struct ExpressionRule {
  std::vector<std::string> phrase;  // lowercase words
  CompareOp op = CompareOp::kEq;

  bool operator==(const ExpressionRule&) const = default;
};

// Predefined training structures consulted by the parser and resolver:
// expression mapping, conjunctions, stop words and the table/field synonym
// sets. Values are immutable once built; mutators return a new Lexicon.
struct Lexicon {
  std::vector<ExpressionRule> expression_rules;
  std::set<std::string> conjunctions;
  std::set<std::string> stop_words;
  // canonical table name -> synonyms
  std::map<std::string, std::set<std::string>> table_synonyms;
  // (canonical table, canonical field) -> synonyms
  std::map<std::pair<std::string, std::string>, std::set<std::string>> field_synonyms;

  bool operator==(const Lexicon&) const = default;

  bool is_stop_word(std::string_view lower_word) const;
  bool is_conjunction(std::string_view lower_word) const;
  // Rules ordered by phrase length, longest first; ties keep file order.
  std::vector<ExpressionRule> rules_longest_first() const;
};

// Checks every Lexicon invariant; throws Error(kInvariantViolation) naming the
// offending entry.
void validate(const Lexicon& lex);

// The seed lexicon shipped in data/lexicon.json.
Lexicon default_lexicon();

Lexicon load_lexicon(const std::filesystem::path& path);
Lexicon lexicon_from_json_text(std::string_view text);
std::string lexicon_to_json_text(const Lexicon& lex);
void save_lexicon(const Lexicon& lex, const std::filesystem::path& path);

// Returns lex with `word` added to the conjunction set. Idempotent.
// Throws Error(kAmbiguity) when `word` is the first word of an expression rule.
Lexicon add_conjunction(const Lexicon& lex, std::string_view word);

}  // namespace flexq
