#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flexq/catalog.h"
#include "flexq/executor.h"
#include "flexq/knowledge.h"
#include "flexq/lexicon.h"
#include "flexq/matching.h"
#include "flexq/resolver.h"

namespace flexq {

struct EngineOptions {
  int max_distance = 2;
  DistanceMetric metric = DistanceMetric::kLevenshtein;
  // Where add_conjunction persists the lexicon; unset keeps it in memory.
  std::optional<std::filesystem::path> lexicon_path;
};

struct TranslateResponse {
  std::string query_id;
  std::string sql;
  std::string source;  // "pipeline" or "knowledge-base"
  std::vector<TraceStep> trace;
  std::vector<std::string> warnings;
};

// The full loop: knowledge lookup, parse, resolve, SQL generation,
// execution and feedback. Catalog is read-only; the lexicon is swapped
// atomically on mutation; knowledge writes go through the store's writer.
class Engine {
 public:
  Engine(SchemaCatalog catalog, Lexicon lexicon, std::unique_ptr<KnowledgeStore> knowledge,
         EngineOptions options = {});

  // Throws Error annotated with the failing stage.
  TranslateResponse translate(std::string_view raw);
  // Throws Error(kUnknownEntry) or Error(kTypeMismatch).
  ResultSet execute(const std::string& query_id) const;
  KnowledgeEntry feedback(const std::string& query_id, std::string_view verdict,
                          const std::string& note = {});
  // Appends a conjunction and persists the lexicon when a path is set.
  std::shared_ptr<const Lexicon> add_conjunction(std::string_view word);

  // "add-conjunction" when the query has words but no known conjunction.
  std::optional<std::string> remedy_for(std::string_view raw) const;

  const SchemaCatalog& catalog() const { return catalog_; }
  std::shared_ptr<const Lexicon> lexicon() const;
  KnowledgeStore& knowledge() { return *knowledge_; }
  const KnowledgeStore& knowledge() const { return *knowledge_; }
  const EngineOptions& options() const { return options_; }

 private:
  SchemaCatalog catalog_;
  mutable std::mutex lexicon_mu_;
  std::shared_ptr<const Lexicon> lexicon_;
  std::unique_ptr<KnowledgeStore> knowledge_;
  EngineOptions options_;
};

// Paths as given on the command line; relative ones resolve against workdir.
struct ServiceConfig {
  std::filesystem::path workdir = ".";
  std::filesystem::path catalog = "data/catalog.json";
  std::filesystem::path data_dir = "data";
  std::filesystem::path lexicon = "data/lexicon.json";
  std::filesystem::path kb = "flexq_kb.jsonl";
  int max_distance = 2;
  bool damerau = false;
};

// Loads catalog, lexicon and knowledge journal. Throws Error on any file or
// format problem.
std::unique_ptr<Engine> open_engine(const ServiceConfig& config);

}  // namespace flexq
