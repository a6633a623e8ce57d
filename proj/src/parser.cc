#include "flexq/parser.h"

#include <cctype>

#include "flexq/error.h"
#include "flexq/text.h"

namespace flexq {

Token make_token(std::string text, bool quoted) {
  Token t;
  t.lower = to_lower(text);
  t.text = std::move(text);
  t.quoted = quoted;
  return t;
}

Literal make_literal(std::string text, bool quoted) {
  bool numeric = !quoted && is_numeric_literal(text);
  return Literal{std::move(text), numeric};
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_quote(char c) { return c == '\'' || c == '"'; }
bool is_sentence_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == '?' || c == '!';
}

std::string strip_trailing_punct(std::string s) {
  while (!s.empty() && is_sentence_punct(s.back())) s.pop_back();
  return s;
}

// A token wrapped in matching quotes, e.g. 'London'.
bool is_wrapped(std::string_view s) {
  return s.size() >= 2 && is_quote(s.front()) && s.back() == s.front();
}

}  // namespace

std::vector<Token> tokenize(std::string_view raw) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    if (i >= raw.size()) break;

    std::string text;
    while (i < raw.size() && !is_space(raw[i])) {
      char c = raw[i];
      if (is_quote(c)) {
        size_t close = raw.find(c, i + 1);
        if (close != std::string_view::npos) {
          text.append(raw.substr(i, close - i + 1));
          i = close + 1;
          continue;
        }
      }
      text += c;
      ++i;
    }

    text = strip_trailing_punct(std::move(text));
    if (is_wrapped(text)) {
      out.push_back(make_token(text.substr(1, text.size() - 2), true));
    } else if (!text.empty()) {
      out.push_back(make_token(std::move(text)));
    }
  }
  if (out.empty()) throw Error(ErrorKind::kEmptyQuery, "query has no words");
  return out;
}

std::optional<std::pair<size_t, std::string>> detect_conjunction(const std::vector<Token>& tokens,
                                                                 const Lexicon& lex) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].quoted && lex.is_conjunction(tokens[i].lower)) {
      return std::make_pair(i, tokens[i].lower);
    }
  }
  return std::nullopt;
}

std::pair<std::vector<Token>, std::vector<Token>> partition(const std::vector<Token>& tokens,
                                                            size_t conj_index) {
  if (conj_index >= tokens.size()) {
    throw Error(ErrorKind::kInvariantViolation, "conjunction index out of range");
  }
  if (conj_index == 0) {
    throw Error(ErrorKind::kEmptyDisplay,
                "query starts with '" + tokens[0].text + "', nothing names what to retrieve");
  }
  return {std::vector<Token>(tokens.begin(), tokens.begin() + conj_index),
          std::vector<Token>(tokens.begin() + conj_index + 1, tokens.end())};
}

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const Lexicon& lex) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (!lex.is_stop_word(t.lower)) out.push_back(t);
  }
  return out;
}

namespace {

struct SymbolHit {
  size_t pos = 0;
  size_t len = 0;
  CompareOp op = CompareOp::kEq;
};

// Finds the first comparison symbol inside an unquoted token.
std::optional<SymbolHit> find_symbol(std::string_view s) {
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (is_quote(c)) return std::nullopt;
    char next = i + 1 < s.size() ? s[i + 1] : '\0';
    switch (c) {
      case '>':
        if (next == '=') return SymbolHit{i, 2, CompareOp::kGte};
        return SymbolHit{i, 1, CompareOp::kGt};
      case '<':
        if (next == '=') return SymbolHit{i, 2, CompareOp::kLte};
        return SymbolHit{i, 1, CompareOp::kLt};
      case '=':
        return SymbolHit{i, 1, CompareOp::kEq};
      case '!':
        if (next == '=') return SymbolHit{i, 2, CompareOp::kNeq};
        break;
      default:
        break;
    }
  }
  return std::nullopt;
}

// Tries `rule` at `start`; returns the index just past the phrase.
std::optional<size_t> match_phrase(const std::vector<Token>& seg, size_t start,
                                   const ExpressionRule& rule, const Lexicon& lex) {
  size_t j = start;
  for (size_t k = 0; k < rule.phrase.size(); ++k) {
    const std::string& word = rule.phrase[k];
    if (k > 0) {
      while (j < seg.size() && !seg[j].quoted && seg[j].lower != word &&
             lex.is_stop_word(seg[j].lower)) {
        ++j;
      }
    }
    if (j >= seg.size() || seg[j].quoted || seg[j].lower != word) return std::nullopt;
    ++j;
  }
  return j;
}

std::vector<std::string> field_words(const std::vector<Token>& seg, size_t end, const Lexicon& lex) {
  std::vector<std::string> out;
  for (size_t i = 0; i < end; ++i) {
    if (!lex.is_stop_word(seg[i].lower)) out.push_back(seg[i].text);
  }
  return out;
}

std::string segment_text(const std::vector<Token>& seg) {
  std::vector<std::string> words;
  for (const auto& t : seg) words.push_back(t.text);
  return join(words, " ");
}

Condition finish(std::vector<std::string> field, CompareOp op, std::optional<Literal> literal,
                 const std::vector<Token>& seg) {
  if (field.empty()) {
    throw Error(ErrorKind::kMissingField, "no field named before the operator in '" + segment_text(seg) + "'");
  }
  if (!literal || literal->text.empty()) {
    throw Error(ErrorKind::kMissingLiteral, "no value after the operator in '" + segment_text(seg) + "'");
  }
  return Condition{std::move(field), op, std::move(*literal)};
}

Condition map_segment(const std::vector<Token>& seg, const Lexicon& lex,
                      const std::vector<ExpressionRule>& rules) {
  for (size_t i = 0; i < seg.size(); ++i) {
    const Token& tok = seg[i];
    if (!tok.quoted) {
      if (auto hit = find_symbol(tok.text)) {
        auto field = field_words(seg, i, lex);
        std::string left = tok.text.substr(0, hit->pos);
        std::string right = tok.text.substr(hit->pos + hit->len);
        if (!left.empty()) field.push_back(left);
        std::optional<Literal> literal;
        if (!right.empty()) {
          literal = is_wrapped(right) ? make_literal(right.substr(1, right.size() - 2), true)
                                      : make_literal(right, false);
        } else if (i + 1 < seg.size()) {
          literal = make_literal(seg[i + 1].text, seg[i + 1].quoted);
        }
        return finish(std::move(field), hit->op, std::move(literal), seg);
      }
    }
    for (const auto& rule : rules) {
      if (auto end = match_phrase(seg, i, rule, lex)) {
        std::optional<Literal> literal;
        if (*end < seg.size()) literal = make_literal(seg[*end].text, seg[*end].quoted);
        return finish(field_words(seg, i, lex), rule.op, std::move(literal), seg);
      }
    }
  }
  throw Error(ErrorKind::kNoOperatorFound, "no comparison found in '" + segment_text(seg) + "'");
}

}  // namespace

std::vector<Condition> map_expressions(const std::vector<Token>& criteria, const Lexicon& lex) {
  if (criteria.empty()) {
    throw Error(ErrorKind::kNoOperatorFound, "criteria part is empty");
  }
  std::vector<std::vector<Token>> segments(1);
  for (const auto& t : criteria) {
    if (!t.quoted && t.lower == "and") {
      segments.emplace_back();
    } else {
      segments.back().push_back(t);
    }
  }
  auto rules = lex.rules_longest_first();
  std::vector<Condition> out;
  for (const auto& seg : segments) {
    if (seg.empty()) throw Error(ErrorKind::kNoOperatorFound, "empty condition around 'and'");
    out.push_back(map_segment(seg, lex, rules));
  }
  return out;
}

QueryIR parse(std::string_view raw, const Lexicon& lex) {
  QueryIR ir;
  ir.raw = std::string(raw);
  try {
    ir.tokens = tokenize(raw);
  } catch (const Error& e) {
    throw e.with_stage("tokenize");
  }

  auto conj = detect_conjunction(ir.tokens, lex);
  if (conj) {
    ir.conjunction_index = conj->first;
    ir.conjunction = conj->second;
    try {
      std::tie(ir.display_raw, ir.criteria_raw) = partition(ir.tokens, conj->first);
    } catch (const Error& e) {
      throw e.with_stage("partition");
    }
    try {
      ir.conditions = map_expressions(ir.criteria_raw, lex);
    } catch (const Error& e) {
      throw e.with_stage("expressions");
    }
  } else {
    ir.display_raw = ir.tokens;
  }

  ir.display_tokens = remove_stopwords(ir.display_raw, lex);
  if (ir.display_tokens.empty()) {
    throw Error(ErrorKind::kEmptyDisplay, "only stop words before the criteria")
        .with_stage("stopwords");
  }
  return ir;
}

}  // namespace flexq
