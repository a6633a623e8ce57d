#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "flexq/engine.h"
#include "json.hpp"

namespace flexq {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// HTTP/JSON surface of the engine, independent of any socket library:
//   POST /api/translate             {query}
//   POST /api/execute               {query_id}
//   POST /api/feedback              {query_id, verdict, note?}
//   GET  /api/schema
//   GET  /api/kb?key=
//   POST /api/lexicon/conjunctions  {word}
class Api {
 public:
  explicit Api(Engine& engine) : engine_(engine) {}

  ApiResponse handle(std::string_view method, std::string_view path, const std::string& body,
                     const std::map<std::string, std::string>& params = {});

 private:
  ApiResponse translate(const nlohmann::json& req);
  ApiResponse execute(const nlohmann::json& req);
  ApiResponse feedback(const nlohmann::json& req);
  ApiResponse schema();
  ApiResponse kb(const std::map<std::string, std::string>& params);
  ApiResponse add_conjunction(const nlohmann::json& req);

  Engine& engine_;
};

// HTTP listener for `api` with permissive CORS. run() blocks until stop().
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Binds and blocks serving `api`.
void serve_http(Api& api, const std::string& host, int port);

}  // namespace flexq
