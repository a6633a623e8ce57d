#include "flexq/api.h"

#include "flexq/error.h"
#include "flexq/serialize.h"

namespace flexq {

using nlohmann::json;

namespace {

ApiResponse error_response(int status, const Error& e) { return {status, error_to_json(e)}; }

ApiResponse bad_request(const std::string& message) {
  return {400, json{{"error", "bad-request"}, {"stage", ""}, {"message", message}, {"candidates", json::array()}}};
}

int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kUnknownEntry: return 404;
    case ErrorKind::kTypeMismatch: return 422;
    case ErrorKind::kStorageIo:
    case ErrorKind::kIoFailure: return 500;
    default: return 400;
  }
}

std::optional<std::string> string_field(const json& req, const char* name) {
  if (!req.is_object()) return std::nullopt;
  auto it = req.find(name);
  if (it == req.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

ApiResponse Api::handle(std::string_view method, std::string_view path, const std::string& body,
                        const std::map<std::string, std::string>& params) {
  try {
    if (method == "GET") {
      if (path == "/api/schema") return schema();
      if (path == "/api/kb") return kb(params);
    } else if (method == "POST") {
      json req;
      try {
        req = body.empty() ? json::object() : json::parse(body);
      } catch (const json::parse_error&) {
        return bad_request("request body is not valid JSON");
      }
      if (path == "/api/translate") return translate(req);
      if (path == "/api/execute") return execute(req);
      if (path == "/api/feedback") return feedback(req);
      if (path == "/api/lexicon/conjunctions") return add_conjunction(req);
    }
    return {404, json{{"error", "not-found"}, {"message", std::string(method) + " " + std::string(path)}}};
  } catch (const Error& e) {
    return error_response(status_for(e), e);
  } catch (const std::exception& e) {
    return {500, json{{"error", "internal"}, {"message", e.what()}}};
  }
}

ApiResponse Api::translate(const json& req) {
  auto query = string_field(req, "query");
  if (!query) return bad_request("body must be {\"query\": string}");
  try {
    TranslateResponse r = engine_.translate(*query);
    return {200, json{{"query_id", r.query_id},
                      {"sql", r.sql},
                      {"source", r.source},
                      {"trace", r.trace},
                      {"warnings", r.warnings}}};
  } catch (const Error& e) {
    ApiResponse resp = error_response(status_for(e), e);
    if (auto remedy = engine_.remedy_for(*query)) {
      resp.body["remedy"] = {{"action", *remedy},
                             {"endpoint", "POST /api/lexicon/conjunctions"},
                             {"hint", "no conjunction (e.g. 'where') found; add the word that "
                                      "introduces your condition"}};
    }
    return resp;
  }
}

ApiResponse Api::execute(const json& req) {
  auto id = string_field(req, "query_id");
  if (!id) return bad_request("body must be {\"query_id\": string}");
  return {200, result_set_to_json(engine_.execute(*id))};
}

ApiResponse Api::feedback(const json& req) {
  auto id = string_field(req, "query_id");
  auto verdict = string_field(req, "verdict");
  if (!id || !verdict) return bad_request("body must be {\"query_id\": string, \"verdict\": string}");
  // Validate the verdict before the id so "maybe" is a 400 even for stale ids.
  parse_verdict(*verdict);
  auto entry = engine_.feedback(*id, *verdict, string_field(req, "note").value_or(""));
  return {200, json{{"query_id", entry.id},
                    {"status", status_name(entry.status)},
                    {"accepts", entry.accepts},
                    {"rejects", entry.rejects}}};
}

ApiResponse Api::schema() { return {200, catalog_summary(engine_.catalog())}; }

ApiResponse Api::kb(const std::map<std::string, std::string>& params) {
  auto it = params.find("key");
  if (it == params.end()) return bad_request("missing ?key= parameter");
  std::string key = normalize_query(it->second);
  json entries = json::array();
  for (const auto& e : engine_.knowledge().entries_for(key)) entries.push_back(entry_to_json(e));
  return {200, entries};
}

ApiResponse Api::add_conjunction(const json& req) {
  auto word = string_field(req, "word");
  if (!word) return bad_request("body must be {\"word\": string}");
  auto lex = engine_.add_conjunction(*word);
  return {200, json{{"conjunctions", lex->conjunctions}}};
}

}  // namespace flexq
