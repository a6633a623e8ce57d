#include "flexq/engine.h"

#include <set>

#include "flexq/error.h"
#include "flexq/parser.h"
#include "flexq/sqlgen.h"
#include "flexq/text.h"

namespace flexq {

Engine::Engine(SchemaCatalog catalog, Lexicon lexicon, std::unique_ptr<KnowledgeStore> knowledge,
               EngineOptions options)
    : catalog_(std::move(catalog)),
      lexicon_(std::make_shared<const Lexicon>(std::move(lexicon))),
      knowledge_(knowledge ? std::move(knowledge) : std::make_unique<KnowledgeStore>()),
      options_(std::move(options)) {}

std::shared_ptr<const Lexicon> Engine::lexicon() const {
  std::lock_guard lock(lexicon_mu_);
  return lexicon_;
}

namespace {

std::string words(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return join(out, " ");
}

std::string describe_conditions(const std::vector<Condition>& conds) {
  std::vector<std::string> out;
  for (const auto& c : conds) {
    out.push_back(join(c.field_phrase, " ") + " " + std::string(op_code(c.op)) + " " + c.literal.text);
  }
  return out.empty() ? "none" : join(out, "; ");
}

void add_fuzzy_warning(const Binding& b, const std::string& what, std::vector<std::string>& warnings) {
  if (b.method != BindMethod::kFuzzy) return;
  warnings.push_back(what + " '" + b.surface + "' was matched to '" + b.bound + "' by edit distance " +
                     std::to_string(b.distance));
}

}  // namespace

TranslateResponse Engine::translate(std::string_view raw) {
  if (trim(raw).empty()) throw Error(ErrorKind::kEmptyQuery, "query is empty").with_stage("tokenize");
  std::string key;
  try {
    key = normalize_query(raw);
  } catch (const Error& e) {
    throw e.with_stage("normalize");
  }

  TranslateResponse resp;
  if (auto hit = knowledge_->lookup(key)) {
    resp.query_id = hit->id;
    resp.sql = hit->sql.text;
    resp.source = "knowledge-base";
    resp.trace.push_back({"knowledge", key,
                          "knowledge-base hit: entry " + hit->id + " (accepts " +
                              std::to_string(hit->accepts) + ", rejects " + std::to_string(hit->rejects) +
                              ")"});
    return resp;
  }

  auto lex = lexicon();
  resp.trace.push_back({"knowledge", key, "miss"});
  QueryIR ir = parse(raw, *lex);
  resp.trace.push_back({"parse", ir.raw,
                        "display [" + words(ir.display_raw) + "], conjunction '" + ir.conjunction +
                            "', criteria [" + words(ir.criteria_raw) + "]"});
  resp.trace.push_back({"stopwords", words(ir.display_raw), "[" + words(ir.display_tokens) + "]"});
  resp.trace.push_back({"expressions", words(ir.criteria_raw), describe_conditions(ir.conditions)});

  ResolverOptions ropts;
  ropts.max_distance = options_.max_distance;
  ropts.metric = options_.metric;
  auto blocked = knowledge_->blocked_sql(key);
  if (!blocked.empty()) {
    resp.trace.push_back({"blocklist", key, std::to_string(blocked.size()) + " rejected translation(s)"});
    ropts.accept = [&](const ResolvedQuery& rq) { return blocked.count(build_sql(rq, catalog_).text) == 0; };
  }
  ResolvedQuery rq = resolve(ir, catalog_, *lex, ropts);
  SqlText sql = build_sql(rq, catalog_);
  resp.trace.insert(resp.trace.end(), rq.trace.begin(), rq.trace.end());
  resp.trace.push_back({"sqlgen", rq.base_table.bound, sql.text});

  add_fuzzy_warning(rq.base_table, "table", resp.warnings);
  for (const auto& c : rq.conditions) add_fuzzy_warning(c.field, "field", resp.warnings);
  if (ir.conditions.empty()) resp.warnings.push_back("no criteria given; selecting every row");

  rq.trace = resp.trace;
  resp.query_id = knowledge_->record(key, sql, rq);
  resp.sql = sql.text;
  resp.source = "pipeline";
  return resp;
}

ResultSet Engine::execute(const std::string& query_id) const {
  auto entry = knowledge_->find(query_id);
  if (!entry) throw Error(ErrorKind::kUnknownEntry, "no query with id '" + query_id + "'");
  try {
    return flexq::execute(entry->resolved, catalog_);
  } catch (const Error& e) {
    throw e.with_stage("execute");
  }
}

KnowledgeEntry Engine::feedback(const std::string& query_id, std::string_view verdict,
                                const std::string& note) {
  return knowledge_->feedback(query_id, parse_verdict(verdict), note);
}

std::shared_ptr<const Lexicon> Engine::add_conjunction(std::string_view word) {
  std::lock_guard lock(lexicon_mu_);
  auto updated = std::make_shared<const Lexicon>(flexq::add_conjunction(*lexicon_, word));
  if (options_.lexicon_path) save_lexicon(*updated, *options_.lexicon_path);
  lexicon_ = updated;
  return updated;
}

std::optional<std::string> Engine::remedy_for(std::string_view raw) const {
  try {
    auto tokens = tokenize(raw);
    if (!detect_conjunction(tokens, *lexicon())) return "add-conjunction";
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::unique_ptr<Engine> open_engine(const ServiceConfig& config) {
  auto at = [&](const std::filesystem::path& p) { return p.is_absolute() ? p : config.workdir / p; };
  SchemaCatalog catalog = load_catalog(at(config.catalog), at(config.data_dir));
  Lexicon lexicon = load_lexicon(at(config.lexicon));
  auto kb = std::make_unique<KnowledgeStore>(at(config.kb));
  EngineOptions opts;
  opts.max_distance = config.max_distance;
  opts.metric = config.damerau ? DistanceMetric::kDamerau : DistanceMetric::kLevenshtein;
  opts.lexicon_path = at(config.lexicon);
  return std::make_unique<Engine>(std::move(catalog), std::move(lexicon), std::move(kb), opts);
}

}  // namespace flexq
