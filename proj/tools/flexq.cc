// flexq: translate flexible natural-language queries into SQL.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flexq/api.h"
#include "flexq/console.h"
#include "flexq/engine.h"
#include "flexq/error.h"

namespace {

constexpr int kPipelineError = 1;
constexpr int kConfigError = 2;

void print_error(const flexq::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  for (const auto& c : e.candidates()) {
    std::cerr << "  nearest: " << c.name << " (distance " << c.distance << ")\n";
  }
}

void print_translation(const flexq::TranslateResponse& r) {
  std::cout << r.sql << "\n";
  std::cout << "-- source: " << r.source << ", id: " << r.query_id << "\n";
  for (const auto& s : r.trace) {
    std::cout << "-- [" << s.stage << "] " << s.input << " => " << s.outcome << "\n";
  }
  for (const auto& w : r.warnings) std::cout << "-- warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flexq: natural-language queries to SQL over a declared schema"};
  app.require_subcommand(1);

  flexq::ServiceConfig config;
  app.add_option("--workdir", config.workdir, "Base directory for relative paths")->capture_default_str();
  app.add_option("--catalog", config.catalog, "Catalog JSON file")->envname("FLEXQ_CATALOG")->capture_default_str();
  app.add_option("--data", config.data_dir, "Directory holding the CSV data files")
      ->envname("FLEXQ_DATA")
      ->capture_default_str();
  app.add_option("--lexicon", config.lexicon, "Lexicon JSON file")->envname("FLEXQ_LEXICON")->capture_default_str();
  app.add_option("--kb", config.kb, "Knowledge journal (JSON lines)")->envname("FLEXQ_KB")->capture_default_str();
  app.add_option("--max-distance", config.max_distance, "Edit-distance threshold for fuzzy matches")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_flag("--damerau", config.damerau, "Count adjacent transpositions as one edit");

  std::string query;
  auto* translate = app.add_subcommand("translate", "Print the SQL and resolution trace for a query");
  translate->add_option("query", query, "Flexible query text")->required();
  auto* run = app.add_subcommand("run", "Translate and execute a query, printing the result grid");
  run->add_option("query", query, "Flexible query text")->required();
  app.add_subcommand("repl", "Interactive query/feedback loop");
  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  std::string word;
  auto* add_conj = app.add_subcommand("add-conjunction", "Append a conjunction to the lexicon");
  add_conj->add_option("word", word, "Conjunction word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  std::unique_ptr<flexq::Engine> engine;
  try {
    engine = flexq::open_engine(config);
  } catch (const flexq::Error& e) {
    print_error(e);
    return kConfigError;
  }

  try {
    if (*translate) {
      print_translation(engine->translate(query));
    } else if (*run) {
      auto r = engine->translate(query);
      print_translation(r);
      std::cout << flexq::format_grid(engine->execute(r.query_id));
    } else if (app.got_subcommand("repl")) {
      flexq::run_repl(*engine, std::cin, std::cout);
    } else if (*serve) {
      flexq::Api api(*engine);
      flexq::serve_http(api, host, port);
    } else if (*add_conj) {
      auto lex = engine->add_conjunction(word);
      std::cout << "conjunctions:";
      for (const auto& c : lex->conjunctions) std::cout << " " << c;
      std::cout << "\n";
    }
  } catch (const flexq::Error& e) {
    print_error(e);
    switch (e.kind()) {
      case flexq::ErrorKind::kIoFailure:
      case flexq::ErrorKind::kStorageIo:
        return kConfigError;
      default:
        return kPipelineError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
