#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flexq/lexicon.h"

namespace flexq {

struct Token {
  std::string text;   // original casing, quotes and trailing punctuation removed
  std::string lower;  // matching shadow
  bool quoted = false;

  bool operator==(const Token&) const = default;
};

Token make_token(std::string text, bool quoted = false);

struct Literal {
  std::string text;
  bool numeric = false;

  bool operator==(const Literal&) const = default;
};

// Numeric iff unquoted and shaped like an optionally signed decimal.
Literal make_literal(std::string text, bool quoted);

struct Condition {
  std::vector<std::string> field_phrase;  // user's field words, stop words removed
  CompareOp op = CompareOp::kEq;
  Literal literal;

  bool operator==(const Condition&) const = default;
};

// A flexible query split into display part, conjunction and criteria part.
// tokens == display_raw ++ [conjunction] ++ criteria_raw when a conjunction
// was found, otherwise tokens == display_raw.
struct QueryIR {
  std::string raw;
  std::vector<Token> tokens;
  std::vector<Token> display_raw;
  std::optional<size_t> conjunction_index;
  std::string conjunction;  // lowercase, empty when absent
  std::vector<Token> criteria_raw;
  std::vector<Token> display_tokens;  // display_raw minus stop words
  std::vector<Condition> conditions;

  bool operator==(const QueryIR&) const = default;
};

// Whitespace tokenizer. Quoted spans ('New York') stay one token; trailing
// sentence punctuation is stripped. Throws Error(kEmptyQuery).
std::vector<Token> tokenize(std::string_view raw);

// First token (by position) that is a conjunction.
std::optional<std::pair<size_t, std::string>> detect_conjunction(const std::vector<Token>& tokens,
                                                                 const Lexicon& lex);

// Splits around the conjunction at `conj_index`; the conjunction itself
// belongs to neither side. Throws Error(kEmptyDisplay) when conj_index == 0.
std::pair<std::vector<Token>, std::vector<Token>> partition(const std::vector<Token>& tokens,
                                                            size_t conj_index);

// Maps the criteria part to conditions. Segments are split on "and"; in each
// segment the leftmost operator wins, a symbolic operator or the longest
// expression phrase at that position, where stop words may sit between the
// phrase words. Field words precede the operator, the literal is the single
// token after it.
std::vector<Condition> map_expressions(const std::vector<Token>& criteria, const Lexicon& lex);

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const Lexicon& lex);

// tokenize -> detect_conjunction -> partition -> map_expressions ->
// remove_stopwords. Errors carry the failing stage.
QueryIR parse(std::string_view raw, const Lexicon& lex);

}  // namespace flexq
