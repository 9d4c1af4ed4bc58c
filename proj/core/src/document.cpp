#include "semsnap/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json_codec.hpp"
#include "semsnap/error.hpp"

namespace semsnap {

using nlohmann::json;

namespace {

constexpr int kDocumentVersion = 1;
constexpr int kAutoColumns = 3;

// Structural reader that records every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> issues;

  void issue(std::string text) { issues.push_back(std::move(text)); }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& where, bool required) {
    if (!obj.contains(key)) {
      if (required) issue(fmt::format("{}: missing \"{}\"", where, key));
      return std::nullopt;
    }
    if (!obj[key].is_string()) {
      issue(fmt::format("{}: \"{}\" must be a string", where, key));
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
      issue(fmt::format("{}: \"{}\" must be a number", where, key));
      return std::nullopt;
    }
    return obj[key].get<double>();
  }

  std::optional<DataDomain> domain(const json& node, const std::string& where) {
    if (!node.is_object()) {
      issue(where + ": domain must be an object");
      return std::nullopt;
    }
    const auto type = string(node, "type", where + " domain", true);
    if (type == "quantitative") {
      auto lo = number(node, "min", where + " domain");
      auto hi = number(node, "max", where + " domain");
      if (lo && hi) return QuantitativeDomain{*lo, *hi};
    } else if (type == "categorical") {
      if (!node.contains("values") || !node["values"].is_array()) {
        issue(where + ": categorical domain needs a \"values\" array");
        return std::nullopt;
      }
      CategoricalDomain d;
      for (const auto& v : node["values"]) {
        if (!v.is_string()) {
          issue(where + ": categorical domain values must be strings");
          return std::nullopt;
        }
        d.values.push_back(v.get<std::string>());
      }
      return d;
    } else if (type) {
      issue(fmt::format("{}: unknown domain type '{}'", where, *type));
    }
    return std::nullopt;
  }

  std::optional<VisualOutput> visual(const json& node, const std::string& where) {
    if (!node.is_object()) {
      issue(where + ": visual must be an object");
      return std::nullopt;
    }
    const auto type = string(node, "type", where + " visual", true);
    if (!type) return std::nullopt;
    if (*type == "position" || *type == "size") {
      auto lo = number(node, "min", where + " visual");
      auto hi = number(node, "max", where + " visual");
      if (!lo || !hi) return std::nullopt;
      if (*type == "position") return PositionRange{*lo, *hi};
      return SizeRange{*lo, *hi};
    }
    if (*type == "constant") {
      auto color = string(node, "color", where + " visual", true);
      if (color) return ConstantColor{*color};
      return std::nullopt;
    }
    if (*type == "scheme") {
      ColorScheme s;
      auto id = string(node, "id", where + " visual", true);
      auto kind = string(node, "kind", where + " visual", true);
      if (!id || !kind) return std::nullopt;
      s.id = *id;
      if (*kind == "categorical") {
        s.kind = SchemeKind::Categorical;
      } else if (*kind == "continuous") {
        s.kind = SchemeKind::Continuous;
      } else {
        issue(fmt::format("{}: unknown scheme kind '{}'", where, *kind));
        return std::nullopt;
      }
      const json& a = node.contains("assignment") ? node["assignment"] : json();
      if (!a.is_array()) {
        issue(where + ": scheme needs an \"assignment\" array of [key, color] pairs");
        return std::nullopt;
      }
      for (const auto& pair : a) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
          issue(where + ": scheme assignment entries must be [key, color] pairs");
          return std::nullopt;
        }
        s.assignment.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
      return s;
    }
    issue(fmt::format("{}: unknown visual type '{}'", where, *type));
    return std::nullopt;
  }

  std::optional<FieldRef> field(const json& obj, const std::string& where) {
    auto column = string(obj, "field", where, true);
    if (!column) return std::nullopt;
    Aggregate aggregate = Aggregate::None;
    if (auto text = string(obj, "aggregate", where, false)) {
      auto parsed = parse_aggregate(*text);
      if (!parsed) {
        issue(fmt::format("{}: unknown aggregate '{}'", where, *text));
        return std::nullopt;
      }
      aggregate = *parsed;
    }
    return FieldRef{*column, aggregate};
  }

  std::optional<View> view(const json& node, std::size_t index) {
    std::string where = fmt::format("views[{}]", index);
    if (!node.is_object()) {
      issue(where + ": view must be an object");
      return std::nullopt;
    }
    View v;
    if (auto id = string(node, "id", where, true)) {
      v.id = *id;
      where = fmt::format("view '{}'", v.id);
    }
    const std::size_t before = issues.size();
    if (auto chart = string(node, "chart", where, true)) {
      if (auto parsed = parse_chart_type(*chart)) {
        v.chart = *parsed;
      } else {
        issue(fmt::format("{}: unknown chart type '{}'", where, *chart));
      }
    }
    if (auto grouping = string(node, "grouping", where, true)) v.grouping = *grouping;
    if (auto composition = string(node, "composition", where, false)) {
      if (auto parsed = parse_composition(*composition)) {
        v.composition = *parsed;
      } else {
        issue(fmt::format("{}: unknown composition '{}'", where, *composition));
      }
    }
    if (node.contains("series")) {
      if (!node["series"].is_array()) {
        issue(where + ": \"series\" must be an array");
      } else {
        for (const auto& s : node["series"]) {
          if (!s.is_object()) {
            issue(where + ": series entries must be objects");
            continue;
          }
          auto label = string(s, "label", where + " series", true);
          auto f = field(s, where + " series");
          auto color = string(s, "color", where + " series", true);
          if (label && f && color) v.series.push_back({*label, *f, ConstantColor{*color}});
        }
      }
    }
    if (node.contains("cell")) {
      const auto& c = node["cell"];
      auto get = [&](const char* key, int fallback) {
        if (!c.contains(key)) return fallback;
        if (!c[key].is_number_integer()) {
          issue(fmt::format("{}: cell \"{}\" must be an integer", where, key));
          return fallback;
        }
        return c[key].get<int>();
      };
      if (!c.is_object()) {
        issue(where + ": \"cell\" must be an object");
      } else {
        v.cell = {get("row", 0), get("col", 0), get("rowSpan", 1), get("colSpan", 1)};
      }
    } else {
      v.cell = {static_cast<int>(index) / kAutoColumns, static_cast<int>(index) % kAutoColumns, 1, 1};
    }
    if (!node.contains("channels") || !node["channels"].is_object()) {
      issue(where + ": missing \"channels\" object");
    } else if (issues.size() == before) {
      for (const auto& [raw, spec] : node["channels"].items()) {
        const std::string cw = fmt::format("{} channel '{}'", where, raw);
        ChannelBinding b;
        b.raw_channel = raw;
        try {
          b.cls = channel_class(v.chart, raw);
        } catch (const Error& e) {
          issue(fmt::format("{}: {}", where, e.what()));
          continue;
        }
        if (!spec.is_object()) {
          issue(cw + ": must be an object");
          continue;
        }
        if (spec.contains("field")) {
          b.mapping = field(spec, cw);
          if (!b.mapping) continue;
        }
        if (spec.contains("domain")) {
          b.domain = domain(spec["domain"], cw);
          if (!b.domain) continue;
        }
        if (!spec.contains("visual")) {
          issue(cw + ": missing \"visual\"");
          continue;
        }
        auto vis = visual(spec["visual"], cw);
        if (!vis) continue;
        b.visual = *vis;
        v.bindings.push_back(std::move(b));
      }
      std::stable_sort(v.bindings.begin(), v.bindings.end(),
                       [](const ChannelBinding& x, const ChannelBinding& y) { return x.cls < y.cls; });
    }
    return v;
  }
};

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json domain_to_json(const DataDomain& d) {
  if (const auto* q = std::get_if<QuantitativeDomain>(&d)) {
    return {{"type", "quantitative"}, {"min", q->min}, {"max", q->max}};
  }
  return {{"type", "categorical"}, {"values", std::get<CategoricalDomain>(d).values}};
}

json visual_to_json(const VisualOutput& v) {
  if (const auto* p = std::get_if<PositionRange>(&v)) return {{"type", "position"}, {"min", p->axis_min}, {"max", p->axis_max}};
  if (const auto* s = std::get_if<SizeRange>(&v)) return {{"type", "size"}, {"min", s->min}, {"max", s->max}};
  if (const auto* c = std::get_if<ConstantColor>(&v)) return {{"type", "constant"}, {"color", c->hex}};
  const auto& s = std::get<ColorScheme>(v);
  json assignment = json::array();
  for (const auto& [key, color] : s.assignment) assignment.push_back({key, color});
  return {{"type", "scheme"},
          {"id", s.id},
          {"kind", s.kind == SchemeKind::Categorical ? "categorical" : "continuous"},
          {"assignment", assignment}};
}

}  // namespace

namespace detail {

json field_to_json(const FieldRef& field) { return {{"field", field.column}, {"aggregate", to_string(field.aggregate)}}; }

json canvas_to_json(const Canvas& canvas) {
  json doc;
  doc["version"] = kDocumentVersion;
  json dataset = json::object();
  json columns = json::array();
  if (canvas.dataset) {
    if (canvas.dataset->inline_csv) {
      dataset["csv"] = *canvas.dataset->inline_csv;
    } else {
      dataset["source"] = canvas.dataset->source;
    }
    for (const auto& c : canvas.dataset->columns) {
      json col{{"name", c.name}, {"type", to_string(c.type)}};
      if (!c.order.empty()) col["order"] = c.order;
      columns.push_back(col);
    }
  }
  dataset["columns"] = columns;
  doc["dataset"] = dataset;

  json equivalences = json::array();
  for (const auto& c : canvas.registry.confirmations()) {
    equivalences.push_back({{"a", c.a}, {"b", c.b}, {"status", to_string(c.status)}});
  }
  doc["equivalences"] = equivalences;

  json views = json::array();
  for (const auto& v : canvas.views) {
    json view{{"id", v.id},
              {"chart", to_string(v.chart)},
              {"grouping", v.grouping},
              {"composition", to_string(v.composition)},
              {"cell", {{"row", v.cell.row}, {"col", v.cell.col}, {"rowSpan", v.cell.row_span}, {"colSpan", v.cell.col_span}}}};
    json series = json::array();
    for (const auto& s : v.series) {
      json entry = field_to_json(s.y_field);
      entry["label"] = s.label;
      entry["color"] = representative_color(s.color).value_or("");
      series.push_back(entry);
    }
    view["series"] = series;
    json channels = json::object();
    for (const auto& b : v.bindings) {
      json ch = b.mapping ? field_to_json(*b.mapping) : json::object();
      if (b.domain) ch["domain"] = domain_to_json(*b.domain);
      ch["visual"] = visual_to_json(b.visual);
      channels[b.raw_channel] = ch;
    }
    view["channels"] = channels;
    views.push_back(view);
  }
  doc["views"] = views;
  return doc;
}

json plan_to_json(const OperationPlan& plan) {
  json confirmations = json::array();
  for (const auto& pair : plan.required_confirmations) {
    confirmations.push_back({{"a", pair.a.canonical()}, {"b", pair.b.canonical()}});
  }
  json out{{"id", plan.id},
           {"kind", to_string(plan.kind)},
           {"category", to_string(category(plan.kind))},
           {"targets", plan.target_view_ids},
           {"resolves", plan.resolves_relation_id},
           {"params", plan.params},
           {"requiredConfirmations", confirmations},
           {"description", plan.description}};
  out["source"] = plan.source_view_id ? json(*plan.source_view_id) : json(nullptr);
  out["question"] = plan.question ? json(*plan.question) : json(nullptr);
  return out;
}

json plans_to_json(const std::vector<OperationPlan>& plans) {
  json ops = json::array();
  json categories = json::object();
  for (auto c : kAllCategories) categories[std::string(to_string(c))] = 0;
  for (const auto& p : plans) {
    ops.push_back(plan_to_json(p));
    categories[std::string(to_string(category(p.kind)))] = categories[std::string(to_string(category(p.kind)))].get<int>() + 1;
  }
  return {{"operations", ops}, {"categories", categories}};
}

}  // namespace detail

namespace {

std::vector<const RelationInstance*> report_order(const RelationSet& relations) {
  std::vector<const RelationInstance*> out;
  for (const auto& r : relations.instances) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const RelationInstance* x, const RelationInstance* y) {
    return std::tuple(code(x->kind), x->view_ids) < std::tuple(code(y->kind), y->view_ids);
  });
  return out;
}

std::string channel_names(const RelationInstance& r) {
  std::string out;
  for (auto c : r.witness_channels()) {
    if (!out.empty()) out += ',';
    out += to_string(c);
  }
  return out;
}

}  // namespace

namespace detail {

json lint_to_json(const Canvas& canvas, const RelationSet& relations, const EngineConfig& config) {
  const auto plans = plan_all_operations(canvas, relations, config);
  json entries = json::array();
  for (const RelationInstance* r : report_order(relations)) {
    std::vector<std::string> suggested;
    for (const auto& p : plans) {
      const std::string kind(to_string(p.kind));
      if (p.resolves_relation_id == r->id && std::find(suggested.begin(), suggested.end(), kind) == suggested.end()) {
        suggested.push_back(kind);
      }
    }
    std::vector<std::string> channels;
    for (auto c : r->witness_channels()) channels.emplace_back(to_string(c));
    json entry{{"id", r->id},
               {"code", code(r->kind)},
               {"relation", display_name(r->kind)},
               {"viewIds", r->view_ids},
               {"channels", channels},
               {"message", lint_message(*r)},
               {"conditional", r->conditional},
               {"domainMismatch", r->domain_mismatch()},
               {"suggestedOperations", suggested}};
    const auto pending = r->pending_confirmations();
    entry["question"] = pending.empty() ? json(nullptr) : json(confirmation_question(pending.front()));
    entries.push_back(entry);
  }
  return {{"entries", entries}, {"count", entries.size()}};
}

}  // namespace detail

Canvas parse_canvas(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw SyntaxError(what, line, column);
  }

  Reader reader;
  if (!root.is_object()) throw ValidationError({"document must be a JSON object"});
  if (!root.contains("version") || !root["version"].is_number_integer() || root["version"].get<int>() != kDocumentVersion) {
    reader.issue(fmt::format("\"version\" must be {}", kDocumentVersion));
  }

  std::vector<ColumnSpec> schema;
  std::optional<std::string> csv_text;
  std::string source;
  if (!root.contains("dataset") || !root["dataset"].is_object()) {
    reader.issue("missing \"dataset\" object");
  } else {
    const json& ds = root["dataset"];
    if (auto inline_csv = reader.string(ds, "csv", "dataset", false)) {
      csv_text = *inline_csv;
    } else if (auto src = reader.string(ds, "source", "dataset", true)) {
      source = *src;
    }
    if (!ds.contains("columns") || !ds["columns"].is_array()) {
      reader.issue("dataset: missing \"columns\" array");
    } else {
      for (const auto& c : ds["columns"]) {
        if (!c.is_object()) {
          reader.issue("dataset: column entries must be objects");
          continue;
        }
        auto name = reader.string(c, "name", "dataset column", true);
        auto type = reader.string(c, "type", fmt::format("dataset column '{}'", name.value_or("?")), true);
        if (!name || !type) continue;
        auto parsed = parse_column_type(*type);
        if (!parsed) {
          reader.issue(fmt::format("dataset column '{}': unknown type '{}'", *name, *type));
          continue;
        }
        ColumnSpec spec{*name, *parsed, {}};
        if (c.contains("order")) {
          if (!c["order"].is_array()) {
            reader.issue(fmt::format("dataset column '{}': \"order\" must be an array", *name));
          } else {
            for (const auto& o : c["order"]) {
              if (o.is_string()) spec.order.push_back(o.get<std::string>());
            }
          }
        }
        schema.push_back(std::move(spec));
      }
    }
  }

  Canvas canvas;
  if (root.contains("equivalences")) {
    if (!root["equivalences"].is_array()) {
      reader.issue("\"equivalences\" must be an array");
    } else {
      for (const auto& e : root["equivalences"]) {
        if (!e.is_object()) {
          reader.issue("equivalence entries must be objects");
          continue;
        }
        auto a = reader.string(e, "a", "equivalence", true);
        auto b = reader.string(e, "b", "equivalence", true);
        auto status = reader.string(e, "status", "equivalence", true);
        if (!a || !b || !status) continue;
        auto parsed = parse_confirmation_status(*status);
        if (!parsed) {
          reader.issue(fmt::format("equivalence {} / {}: unknown status '{}'", *a, *b, *status));
          continue;
        }
        try {
          if (*parsed == ConfirmationStatus::Pending) {
            canvas.registry.mark_pending(*a, *b);
          } else {
            canvas.registry.record(*a, *b, *parsed == ConfirmationStatus::ConfirmedSame);
          }
        } catch (const Error& err) {
          reader.issue(err.what());
        }
      }
    }
  }

  if (!root.contains("views") || !root["views"].is_array()) {
    reader.issue("missing \"views\" array");
  } else {
    std::size_t i = 0;
    for (const auto& v : root["views"]) {
      if (auto view = reader.view(v, i)) canvas.views.push_back(std::move(*view));
      ++i;
    }
  }
  if (!reader.issues.empty()) throw ValidationError(std::move(reader.issues));

  try {
    std::string csv = csv_text ? *csv_text : read_text_file(base_dir / source);
    Dataset dataset = load_dataset(csv, schema);
    dataset.source = source;
    dataset.inline_csv = csv_text;
    canvas.dataset = std::make_shared<const Dataset>(std::move(dataset));
  } catch (const Error& e) {
    throw ValidationError({fmt::format("dataset: {}", e.what())});
  }

  // Domains are computed before validation; failures that validation reports
  // on its own (unknown columns, bad aggregates) are not repeated.
  std::vector<std::string> domain_issues;
  for (auto& view : canvas.views) {
    for (auto& b : view.bindings) {
      if (!b.mapping || b.domain) continue;
      try {
        b.domain = compute_domain(*canvas.dataset, view, b);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::UnknownColumn || e.code() == ErrorCode::TypeError) continue;
        domain_issues.push_back(fmt::format("view '{}': channel '{}': {}", view.id, b.raw_channel, e.what()));
      }
    }
  }
  auto issues = validate_canvas(canvas);
  issues.insert(issues.end(), domain_issues.begin(), domain_issues.end());
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return canvas;
}

Canvas rebase_dataset_source(const Canvas& canvas, const std::filesystem::path& from_dir,
                             const std::filesystem::path& to_dir) {
  namespace fs = std::filesystem;
  if (!canvas.dataset || canvas.dataset->inline_csv || canvas.dataset->source.empty()) return canvas;
  const fs::path source(canvas.dataset->source);
  if (source.is_absolute()) return canvas;
  const fs::path target = fs::weakly_canonical(fs::absolute(from_dir / source));
  const fs::path rel = target.lexically_relative(fs::weakly_canonical(fs::absolute(to_dir)));
  Canvas out = canvas;
  auto dataset = std::make_shared<Dataset>(*canvas.dataset);
  dataset->source = (rel.empty() ? target : rel).generic_string();
  out.dataset = std::move(dataset);
  return out;
}

std::string serialize_canvas(const Canvas& canvas) { return detail::canvas_to_json(canvas).dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot read '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(ErrorCode::IoError, fmt::format("failed writing '{}'", path.string()));
}

Canvas load_canvas_file(const std::filesystem::path& path) {
  return parse_canvas(read_text_file(path), path.parent_path());
}

std::string lint_message(const RelationInstance& r) {
  const std::string& a = r.view_ids[0];
  const std::string& b = r.view_ids[1];
  std::string text;
  switch (r.kind) {
    case RelationKind::FullRedundancy:
      text = fmt::format("full redundancy: '{}' and '{}' show the same data", a, b);
      break;
    case RelationKind::PartialRedundancy:
      text = fmt::format("partial redundancy: '{}' shows a subset of the data in '{}'", r.subset_view.value_or(a),
                         r.subset_view == a ? b : a);
      break;
    case RelationKind::MultiplesSameGrouping:
      text = fmt::format("multiples: '{}' and '{}' share a grouping but show different data", a, b);
      break;
    case RelationKind::MultiplesSameData:
      text = fmt::format("multiples: '{}' and '{}' show the same data under different groupings", a, b);
      break;
    case RelationKind::Hallucinator:
      text = fmt::format("hallucinator: '{}' and '{}' show the same data but encode it differently", a, b);
      break;
    case RelationKind::Confuser:
      text = fmt::format("confuser: '{}' and '{}' show different data that looks the same", a, b);
      break;
  }
  if (r.domain_mismatch()) text += "; their domains differ";
  if (r.conditional) {
    const auto pending = r.pending_confirmations();
    text += fmt::format(" (conditional: {})", confirmation_question(pending.front()));
  }
  return text;
}

std::string format_lint_report(const Canvas& canvas, const RelationSet& relations, ReportStyle style,
                               const EngineConfig& config) {
  if (style == ReportStyle::Json) return detail::lint_to_json(canvas, relations, config).dump(2) + "\n";
  if (relations.instances.empty()) return "no relations found\n";
  std::string out;
  for (const RelationInstance* r : report_order(relations)) {
    out += fmt::format("{} [{},{}] {}: {}\n", code(r->kind), r->view_ids[0], r->view_ids[1], channel_names(*r),
                       lint_message(*r));
  }
  return out;
}

std::string format_plans(const std::vector<OperationPlan>& plans, ReportStyle style) {
  if (style == ReportStyle::Json) return detail::plans_to_json(plans).dump(2) + "\n";
  if (plans.empty()) return "no operations available\n";
  std::string out;
  for (const auto& p : plans) {
    std::string kind(to_string(p.kind));
    if (kind.rfind("integrate-", 0) == 0) kind = kind.substr(10);
    std::string targets;
    for (const auto& t : p.target_view_ids) targets += (targets.empty() ? "" : ",") + t;
    out += fmt::format("{} {}: {} [{}] {}\n", p.id, to_string(category(p.kind)), kind, targets, p.description);
    if (p.question) out += fmt::format("    question: {}\n", *p.question);
  }
  return out;
}

}  // namespace semsnap
