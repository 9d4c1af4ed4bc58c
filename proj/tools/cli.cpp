#include "cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <regex>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "semsnap/config.hpp"
#include "semsnap/document.hpp"
#include "semsnap/error.hpp"
#include "semsnap/operations.hpp"
#include "semsnap/relations.hpp"
#include "semsnap/render.hpp"
#include "semsnap/service.hpp"

namespace semsnap::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  bool quiet = false;
  std::string canvas_path;
  std::string format = "text";
  bool fail_on_conditional = false;
  std::string view;
  std::string op;
  std::vector<std::string> confirms;
  std::string output;
  bool emit_render = false;
  std::string host = "127.0.0.1";
  int port = 8080;
};

ReportStyle style_of(const std::string& format) { return format == "json" ? ReportStyle::Json : ReportStyle::Text; }

EngineConfig load_config(const Options& opts) {
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SEMSNAP_CONFIG"); env && *env) path = env;
  }
  return path.empty() ? EngineConfig{} : load_config_file(path);
}

// "sum(Europe)=sum(North America):same"
Answer parse_confirm(const std::string& text) {
  static const std::regex pattern(R"(^(.+)=(.+):(same|different)$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::ParseError, fmt::format("bad --confirm '{}': expected \"a=b:same|different\"", text));
  }
  auto a = parse_field_ref(m[1].str());
  auto b = parse_field_ref(m[2].str());
  if (!a || !b) throw Error(ErrorCode::ParseError, fmt::format("bad field in --confirm '{}'", text));
  return {*a, *b, m[3] == "same"};
}

std::string file_name_for(const std::string& view_id) {
  std::string out;
  for (char c : view_id) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '+' || c == '.';
    out += safe ? c : '_';
  }
  return out + ".json";
}

int cmd_lint(const Options& opts, std::ostream& out) {
  const EngineConfig config = load_config(opts);
  const Canvas canvas = load_canvas_file(opts.canvas_path);
  const RelationSet relations = find_relations(canvas);
  out << format_lint_report(canvas, relations, style_of(opts.format), config);
  const bool dirty = std::any_of(relations.instances.begin(), relations.instances.end(),
                                 [&](const RelationInstance& r) { return !r.conditional || opts.fail_on_conditional; });
  return dirty ? kRelationsFound : kClean;
}

int cmd_ops(const Options& opts, std::ostream& out) {
  const EngineConfig config = load_config(opts);
  const Canvas canvas = load_canvas_file(opts.canvas_path);
  const RelationSet relations = find_relations(canvas);
  const auto plans = opts.view.empty() ? plan_all_operations(canvas, relations, config)
                                       : plan_operations(canvas, relations, opts.view, config);
  out << format_plans(plans, style_of(opts.format));
  return kClean;
}

int cmd_apply(const Options& opts, std::ostream& out, std::ostream& err) {
  const EngineConfig config = load_config(opts);
  const Canvas canvas = load_canvas_file(opts.canvas_path);
  std::vector<Answer> answers;
  for (const auto& c : opts.confirms) answers.push_back(parse_confirm(c));

  const auto plans = plan_all_operations(canvas, find_relations(canvas), config);
  auto it = std::find_if(plans.begin(), plans.end(), [&](const OperationPlan& p) { return p.id == opts.op; });
  if (it == plans.end()) {
    err << fmt::format("error: operation {} does not apply to this canvas (StalePlan)\n", opts.op);
    return kApplyError;
  }
  ApplyResult result;
  try {
    result = apply_operation(canvas, *it, answers, config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MissingConfirmation) {
      err << fmt::format("error: confirmation required: {}\n", e.what());
    } else {
      err << fmt::format("error: {} ({})\n", e.what(), to_string(e.code()));
    }
    return kApplyError;
  }
  if (opts.output.empty()) {
    out << serialize_canvas(result.canvas);
  } else {
    const fs::path from = fs::path(opts.canvas_path).parent_path();
    const fs::path to = fs::path(opts.output).parent_path();
    write_text_file(opts.output, serialize_canvas(rebase_dataset_source(result.canvas, from, to)));
  }
  if (result.status == ApplyStatus::Denied) {
    err << fmt::format("operation {} withdrawn: the fields were confirmed different\n", it->id);
    return kApplyError;
  }
  if (!opts.quiet) err << fmt::format("applied {} ({})\n", it->id, to_string(it->kind));
  return kClean;
}

int cmd_render(const Options& opts, std::ostream& out) {
  const Canvas canvas = load_canvas_file(opts.canvas_path);
  const auto renders = render_canvas(canvas);
  if (opts.emit_render || opts.output.empty()) {
    out << render_canvas_to_json(renders);
    if (opts.output.empty()) return kClean;
  }
  fs::create_directories(opts.output);
  std::string index = "{\n  \"views\": [";
  for (std::size_t i = 0; i < renders.size(); ++i) {
    const auto& r = renders[i];
    const std::string file = file_name_for(r.spec.view_id);
    write_text_file(fs::path(opts.output) / file, render_to_json(r.spec));
    index += fmt::format("{}\n    {{\"viewId\": \"{}\", \"file\": \"{}\", \"cell\": {{\"row\": {}, \"col\": {}, "
                         "\"rowSpan\": {}, \"colSpan\": {}}}}}",
                         i == 0 ? "" : ",", r.spec.view_id, file, r.cell.row, r.cell.col, r.cell.row_span,
                         r.cell.col_span);
  }
  index += renders.empty() ? "]\n}\n" : "\n  ]\n}\n";
  write_text_file(fs::path(opts.output) / "index.json", index);
  return kClean;
}

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (HttpServer* s = g_server.load()) s->stop();
}

int cmd_serve(const Options& opts, std::ostream& err) {
  const EngineConfig config = load_config(opts);
  const fs::path path(opts.canvas_path);
  Session session(load_canvas_file(path), config, path.parent_path());
  HttpServer server(session);
  const int port = server.bind(opts.host, opts.port);
  if (port < 0) {
    err << fmt::format("error: cannot bind {}:{}\n", opts.host, opts.port);
    return kUsageError;
  }
  if (!opts.quiet) err << fmt::format("serving {} on http://{}:{}/api\n", opts.canvas_path, opts.host, port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kClean;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Lint multi-view visualization canvases and apply rewrite operations", "semsnap"};
  app.require_subcommand(1);
  app.add_option("--config", opts.config_path, "JSON file with severity weights and palette (or SEMSNAP_CONFIG)");
  app.add_flag("--quiet", opts.quiet, "Suppress informational messages");

  auto* lint = app.add_subcommand("lint", "Report relations between views");
  lint->add_option("canvas", opts.canvas_path, "Canvas document (.canvas.json)")->required();
  lint->add_option("--format", opts.format)->check(CLI::IsMember({"text", "json"}));
  lint->add_flag("--fail-on-conditional", opts.fail_on_conditional, "Exit 1 for conditional relations too");

  auto* ops = app.add_subcommand("ops", "List operations that resolve relations");
  ops->add_option("canvas", opts.canvas_path)->required();
  ops->add_option("--view", opts.view, "Only operations for this view");
  ops->add_option("--format", opts.format)->check(CLI::IsMember({"text", "json"}));

  auto* apply = app.add_subcommand("apply", "Apply one operation and write the rewritten canvas");
  apply->add_option("canvas", opts.canvas_path)->required();
  apply->add_option("--op", opts.op, "Operation id from 'ops'")->required();
  apply->add_option("--confirm", opts.confirms, "Answer as \"a=b:same|different\"");
  apply->add_option("-o,--output", opts.output, "Output document (stdout when omitted)");

  auto* render = app.add_subcommand("render", "Resolve views into render specifications");
  render->add_option("canvas", opts.canvas_path)->required();
  render->add_option("-o,--output", opts.output, "Directory for per-view specs and index.json");
  render->add_flag("--emit-render", opts.emit_render, "Print all specs to stdout");

  auto* serve = app.add_subcommand("serve", "Host the interactive session over HTTP");
  serve->add_option("canvas", opts.canvas_path)->required();
  serve->add_option("--port", opts.port)->check(CLI::Range(0, 65535));
  serve->add_option("--host", opts.host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kClean : kUsageError;
  }

  try {
    if (lint->parsed()) return cmd_lint(opts, out);
    if (ops->parsed()) return cmd_ops(opts, out);
    if (apply->parsed()) return cmd_apply(opts, out, err);
    if (render->parsed()) return cmd_render(opts, out);
    if (serve->parsed()) return cmd_serve(opts, err);
  } catch (const SyntaxError& e) {
    err << fmt::format("error: {}\n", e.what());
    return kUsageError;
  } catch (const ValidationError& e) {
    err << "error: invalid canvas\n";
    for (const auto& issue : e.issues()) err << "  " << issue << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << fmt::format("error: {}\n", e.what());
    return e.code() == ErrorCode::StalePlan || e.code() == ErrorCode::MissingConfirmation ? kApplyError : kUsageError;
  } catch (const std::exception& e) {
    err << fmt::format("error: {}\n", e.what());
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace semsnap::cli
