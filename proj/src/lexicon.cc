#include "flexq/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "flexq/error.h"
#include "flexq/text.h"
#include "json.hpp"

namespace flexq {

using nlohmann::json;

std::string_view op_code(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "EQ";
    case CompareOp::kNeq: return "NEQ";
    case CompareOp::kGt: return "GT";
    case CompareOp::kLt: return "LT";
    case CompareOp::kGte: return "GTE";
    case CompareOp::kLte: return "LTE";
  }
  return "EQ";
}

CompareOp parse_op_code(std::string_view code) {
  static constexpr CompareOp kAll[] = {CompareOp::kEq,  CompareOp::kNeq, CompareOp::kGt,
                                       CompareOp::kLt,  CompareOp::kGte, CompareOp::kLte};
  for (CompareOp op : kAll) {
    if (op_code(op) == code) return op;
  }
  throw Error(ErrorKind::kMalformedFormat, "unknown operator code '" + std::string(code) + "'");
}

std::string_view op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNeq: return "!=";
    case CompareOp::kGt: return ">";
    case CompareOp::kLt: return "<";
    case CompareOp::kGte: return ">=";
    case CompareOp::kLte: return "<=";
  }
  return "=";
}

bool Lexicon::is_stop_word(std::string_view lower_word) const {
  return stop_words.count(std::string(lower_word)) > 0;
}

bool Lexicon::is_conjunction(std::string_view lower_word) const {
  return conjunctions.count(std::string(lower_word)) > 0;
}

std::vector<ExpressionRule> Lexicon::rules_longest_first() const {
  std::vector<ExpressionRule> rules = expression_rules;
  std::stable_sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
    return a.phrase.size() > b.phrase.size();
  });
  return rules;
}

namespace {

bool is_clean_word(std::string_view w) {
  if (w.empty()) return false;
  return std::all_of(w.begin(), w.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '-' || c == '_' || c >= 0x80;
  });
}

void check_word(std::string_view w, const std::string& where) {
  if (!is_clean_word(w)) {
    throw Error(ErrorKind::kInvariantViolation,
                where + ": '" + std::string(w) + "' is not a lowercase word");
  }
}

}  // namespace

void validate(const Lexicon& lex) {
  std::set<std::vector<std::string>> phrases;
  std::set<std::string> first_words;
  for (const auto& rule : lex.expression_rules) {
    std::string shown = join(rule.phrase, " ");
    if (rule.phrase.empty()) {
      throw Error(ErrorKind::kInvariantViolation, "expression rule with empty phrase");
    }
    for (const auto& w : rule.phrase) check_word(w, "expression rule '" + shown + "'");
    if (!phrases.insert(rule.phrase).second) {
      throw Error(ErrorKind::kInvariantViolation, "duplicate expression phrase '" + shown + "'");
    }
    first_words.insert(rule.phrase.front());
  }
  for (const auto& c : lex.conjunctions) {
    check_word(c, "conjunction");
    if (first_words.count(c)) {
      throw Error(ErrorKind::kInvariantViolation,
                  "conjunction '" + c + "' is also the first word of an expression rule");
    }
  }
  for (const auto& s : lex.stop_words) check_word(s, "stop word");
  for (const auto& [table, syns] : lex.table_synonyms) {
    for (const auto& s : syns) {
      check_word(s, "table synonym for '" + table + "'");
      if (iequals(s, table)) {
        throw Error(ErrorKind::kInvariantViolation,
                    "synonym set of table '" + table + "' contains the table name itself");
      }
    }
  }
  for (const auto& [key, syns] : lex.field_synonyms) {
    std::string shown = key.first + "." + key.second;
    for (const auto& s : syns) {
      check_word(s, "field synonym for '" + shown + "'");
      if (iequals(s, key.second)) {
        throw Error(ErrorKind::kInvariantViolation,
                    "synonym set of field '" + shown + "' contains the field name itself");
      }
    }
  }
}

Lexicon default_lexicon() {
  Lexicon lex;
  auto rule = [&](std::string_view phrase, CompareOp op) {
    lex.expression_rules.push_back({split_whitespace(phrase), op});
  };
  rule("greater than", CompareOp::kGt);
  rule("less than", CompareOp::kLt);
  rule("is equal to", CompareOp::kEq);
  rule("equal to", CompareOp::kEq);
  rule("equals", CompareOp::kEq);
  rule("not equal to", CompareOp::kNeq);
  rule("at least", CompareOp::kGte);
  rule("at most", CompareOp::kLte);
  lex.conjunctions = {"where", "who", "whose", "which", "having", "with"};
  lex.stop_words = {"list", "show", "display", "give",   "get", "all",    "the",     "a",
                    "an",   "of",   "details", "detail", "should", "be", "is", "are",
                    "me",   "please", "records", "record"};
  return lex;
}

namespace {

std::set<std::string> read_word_set(const json& arr, const std::string& where) {
  if (!arr.is_array()) {
    throw Error(ErrorKind::kMalformedFormat, "'" + where + "' must be an array of strings");
  }
  std::set<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) {
      throw Error(ErrorKind::kMalformedFormat, "'" + where + "' must be an array of strings");
    }
    out.insert(to_lower(trim(item.get<std::string>())));
  }
  return out;
}

}  // namespace

Lexicon lexicon_from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kMalformedFormat, std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::kMalformedFormat, "lexicon must be a JSON object");

  Lexicon lex;
  if (auto it = doc.find("expressionRules"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorKind::kMalformedFormat, "'expressionRules' must be an array");
    for (const auto& r : *it) {
      if (!r.is_object() || !r.contains("phrase") || !r.contains("operator") ||
          !r["phrase"].is_string() || !r["operator"].is_string()) {
        throw Error(ErrorKind::kMalformedFormat,
                    "expression rule must be {\"phrase\": string, \"operator\": string}");
      }
      lex.expression_rules.push_back(
          {split_whitespace(to_lower(r["phrase"].get<std::string>())),
           parse_op_code(r["operator"].get<std::string>())});
    }
  }
  if (auto it = doc.find("conjunctions"); it != doc.end()) {
    lex.conjunctions = read_word_set(*it, "conjunctions");
  }
  if (auto it = doc.find("stopWords"); it != doc.end()) {
    lex.stop_words = read_word_set(*it, "stopWords");
  }
  if (auto it = doc.find("tableSynonyms"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorKind::kMalformedFormat, "'tableSynonyms' must be an object");
    for (const auto& [table, syns] : it->items()) {
      lex.table_synonyms[table] = read_word_set(syns, "tableSynonyms." + table);
    }
  }
  if (auto it = doc.find("fieldSynonyms"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorKind::kMalformedFormat, "'fieldSynonyms' must be an object");
    for (const auto& [key, syns] : it->items()) {
      auto dot = key.find('.');
      if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
        throw Error(ErrorKind::kMalformedFormat,
                    "fieldSynonyms key '" + key + "' must have the form table.field");
      }
      lex.field_synonyms[{key.substr(0, dot), key.substr(dot + 1)}] =
          read_word_set(syns, "fieldSynonyms." + key);
    }
  }
  validate(lex);
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileMissing, "cannot open lexicon file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return lexicon_from_json_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail(), e.candidates());
  }
}

std::string lexicon_to_json_text(const Lexicon& lex) {
  json doc = json::object();
  json rules = json::array();
  for (const auto& r : lex.expression_rules) {
    rules.push_back({{"phrase", join(r.phrase, " ")}, {"operator", op_code(r.op)}});
  }
  doc["expressionRules"] = rules;
  doc["conjunctions"] = lex.conjunctions;
  doc["stopWords"] = lex.stop_words;
  json tables = json::object();
  for (const auto& [t, syns] : lex.table_synonyms) tables[t] = syns;
  doc["tableSynonyms"] = tables;
  json fields = json::object();
  for (const auto& [key, syns] : lex.field_synonyms) fields[key.first + "." + key.second] = syns;
  doc["fieldSynonyms"] = fields;
  return doc.dump(2) + "\n";
}

void save_lexicon(const Lexicon& lex, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot write lexicon file " + path.string());
  out << lexicon_to_json_text(lex);
  out.flush();
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

Lexicon add_conjunction(const Lexicon& lex, std::string_view word) {
  std::string w = to_lower(trim(word));
  check_word(w, "conjunction");
  for (const auto& rule : lex.expression_rules) {
    if (rule.phrase.front() == w) {
      throw Error(ErrorKind::kAmbiguity, "'" + w + "' starts the expression phrase '" +
                                             join(rule.phrase, " ") + "'");
    }
  }
  Lexicon out = lex;
  out.conjunctions.insert(std::move(w));
  return out;
}

}  // namespace flexq
