#include "semsnap/service.hpp"

#include <regex>

#include <fmt/format.h>
#include <httplib.h>

#include "json_codec.hpp"
#include "semsnap/document.hpp"
#include "semsnap/error.hpp"
#include "semsnap/render.hpp"

namespace semsnap {

using nlohmann::json;

namespace {

HttpResponse reply(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

HttpResponse failure(int status, std::string_view error, const std::string& detail) {
  return reply(status, {{"error", error}, {"detail", detail}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownView: return 404;
    case ErrorCode::StalePlan:
    case ErrorCode::PendingOperation:
    case ErrorCode::NothingPending:
    case ErrorCode::ContradictoryConfirmation: return 409;
    default: return 400;
  }
}

json position_json(const SemanticPosition& p) { return {{"compactness", p.compactness}, {"consistency", p.consistency}}; }

std::optional<FieldRef> field_arg(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) return std::nullopt;
  return parse_field_ref(body[key].get<std::string>());
}

}  // namespace

Session::Session(Canvas canvas, EngineConfig config, std::filesystem::path base_dir)
    : config_(std::move(config)), base_dir_(std::move(base_dir)), history_(std::move(canvas)) {
  refresh();
  trail_.push_back(semantic_position(relations_, config_.weights));
}

Canvas Session::current_canvas() const {
  std::lock_guard lock(mutex_);
  return history_.current();
}

void Session::refresh() { relations_ = find_relations(history_.current()); }

HttpResponse Session::handle(std::string_view method, std::string_view path, std::string_view body) {
  std::lock_guard lock(mutex_);
  static const std::regex view_ops(R"(^/api/views/([^/]+)/operations$)");
  static const std::regex apply_op(R"(^/api/operations/([^/]+)/apply$)");
  const std::string p(path);
  std::smatch m;

  auto state = [&](bool pending) {
    const Canvas& c = history_.current();
    return json{{"document", detail::canvas_to_json(c)},
                {"relations", detail::lint_to_json(c, relations_, config_)},
                {"position", position_json(semantic_position(relations_, config_.weights))},
                {"pending", pending}};
  };
  auto parse_body = [&]() -> json {
    if (body.empty()) return json::object();
    return json::parse(body);
  };

  try {
    if (method == "GET" && p == "/api/canvas") return reply(200, detail::canvas_to_json(history_.current()));
    if (method == "PUT" && p == "/api/canvas") {
      Canvas fresh = parse_canvas(body, base_dir_);
      history_ = CanvasHistory(std::move(fresh));
      refresh();
      issued_plans_.clear();
      trail_ = {semantic_position(relations_, config_.weights)};
      return reply(200, state(false));
    }
    if (method == "GET" && p == "/api/relations") {
      return reply(200, detail::lint_to_json(history_.current(), relations_, config_));
    }
    if (method == "GET" && std::regex_match(p, m, view_ops)) {
      const std::string id = m[1];
      const Canvas& c = history_.current();
      if (!c.find_view(id)) return failure(404, "UnknownView", fmt::format("unknown view '{}'", id));
      const auto plans = plan_operations(c, relations_, id, config_);
      for (const auto& plan : plans) issued_plans_.insert(plan.id);
      json out = detail::plans_to_json(plans);
      out["viewId"] = id;
      return reply(200, out);
    }
    if (method == "POST" && std::regex_match(p, m, apply_op)) {
      const std::string id = m[1];
      if (history_.pending()) {
        return failure(409, "PendingOperation", "keep or undo the pending operation first");
      }
      const Canvas& c = history_.current();
      const auto plans = plan_all_operations(c, relations_, config_);
      auto it = std::find_if(plans.begin(), plans.end(), [&](const OperationPlan& plan) { return plan.id == id; });
      if (it == plans.end()) {
        if (issued_plans_.count(id)) return failure(409, "StalePlan", fmt::format("operation {} is outdated", id));
        return failure(404, "UnknownOperation", fmt::format("unknown operation '{}'", id));
      }
      std::vector<Answer> answers;
      const json req = parse_body();
      if (req.contains("confirmations")) {
        if (!req["confirmations"].is_array()) return failure(400, "BadRequest", "confirmations must be an array");
        for (const auto& entry : req["confirmations"]) {
          auto a = field_arg(entry, "a");
          auto b = field_arg(entry, "b");
          if (!a || !b || !entry.contains("same") || !entry["same"].is_boolean()) {
            return failure(400, "BadRequest", "confirmation entries need field strings a, b and boolean same");
          }
          answers.push_back({*a, *b, entry["same"].get<bool>()});
        }
      }
      ApplyResult result = apply_operation(c, *it, answers, config_);
      if (result.status == ApplyStatus::Denied) {
        history_.amend_registry(result.canvas.registry);
        refresh();
        json out = state(false);
        out["status"] = "denied";
        return reply(200, out);
      }
      history_.begin(*it, std::move(result.canvas));
      refresh();
      json out = state(true);
      out["status"] = "applied";
      out["operation"] = detail::plan_to_json(*it);
      return reply(200, out);
    }
    if (method == "POST" && p == "/api/history/undo") {
      history_.undo();
      refresh();
      return reply(200, state(false));
    }
    if (method == "POST" && p == "/api/history/keep") {
      history_.keep();
      refresh();
      trail_.push_back(semantic_position(relations_, config_.weights));
      return reply(200, state(false));
    }
    if (method == "POST" && p == "/api/equivalences") {
      if (history_.pending()) return failure(409, "PendingOperation", "keep or undo the pending operation first");
      const json req = parse_body();
      auto a = field_arg(req, "a");
      auto b = field_arg(req, "b");
      if (!a || !b || !req.contains("same") || !req["same"].is_boolean()) {
        return failure(400, "BadRequest", "expected {\"a\": field, \"b\": field, \"same\": boolean}");
      }
      history_.amend_registry(record_equivalence(history_.current().registry, *a, *b, req["same"].get<bool>()));
      refresh();
      return reply(200, state(false));
    }
    if (method == "GET" && p == "/api/render") {
      return reply(200, detail::renders_to_json_value(render_canvas(history_.current())));
    }
    if (method == "GET" && p == "/api/position") {
      json trail = json::array();
      for (const auto& t : trail_) trail.push_back(position_json(t));
      return reply(200, {{"current", position_json(semantic_position(relations_, config_.weights))}, {"trail", trail}});
    }
    return failure(404, "NotFound", fmt::format("no route for {} {}", method, path));
  } catch (const json::exception& e) {
    return failure(400, "BadRequest", e.what());
  } catch (const ValidationError& e) {
    json out{{"error", "ValidationError"}, {"detail", e.what()}, {"issues", e.issues()}};
    return reply(400, out);
  } catch (const Error& e) {
    return failure(status_for(e.code()), to_string(e.code()), e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(Session& s) : session(s) {}
  Session& session;
  httplib::Server server;
};

HttpServer::HttpServer(Session& session) : impl_(std::make_unique<Impl>(session)) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = impl_->session.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  const char* pattern = R"(/api/.*)";
  impl_->server.Get(pattern, route);
  impl_->server.Put(pattern, route);
  impl_->server.Post(pattern, route);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace semsnap
