#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/config.hpp"
#include "semsnap/history.hpp"
#include "semsnap/operations.hpp"
#include "semsnap/relations.hpp"

namespace semsnap {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

// One editing session over one canvas. Every request is serialized by an
// internal mutex, so concurrent callers observe a total order.
class Session {
 public:
  Session(Canvas canvas, EngineConfig config = {}, std::filesystem::path base_dir = {});

  // Routes a request under /api. Errors come back as {"error", "detail"} with
  // status 400, 404 or 409.
  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  Canvas current_canvas() const;

 private:
  void refresh();

  mutable std::mutex mutex_;
  EngineConfig config_;
  std::filesystem::path base_dir_;
  CanvasHistory history_;
  RelationSet relations_;
  std::vector<SemanticPosition> trail_;
  std::set<std::string> issued_plans_;
};

// HTTP binding of a Session.
class HttpServer {
 public:
  explicit HttpServer(Session& session);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving. Port 0 picks a free port. Returns the bound port,
  // or -1 when binding fails.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace semsnap
