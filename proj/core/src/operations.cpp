#include "semsnap/operations.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "hash.hpp"
#include "semsnap/error.hpp"

namespace semsnap {

std::string_view to_string(OperationKind kind) {
  switch (kind) {
    case OperationKind::Delete: return "delete";
    case OperationKind::HomogenizeData: return "homogenize-data";
    case OperationKind::HomogenizeStyle: return "homogenize-style";
    case OperationKind::Differentiate: return "differentiate";
    case OperationKind::IntegrateOverlay: return "integrate-overlay";
    case OperationKind::IntegrateGroup: return "integrate-group";
    case OperationKind::IntegrateStack: return "integrate-stack";
    case OperationKind::IntegrateMirror: return "integrate-mirror";
    case OperationKind::IntegrateTransfer: return "integrate-transfer";
  }
  return "";
}

std::optional<OperationKind> parse_operation_kind(std::string_view text) {
  for (auto kind : {OperationKind::Delete, OperationKind::HomogenizeData, OperationKind::HomogenizeStyle,
                    OperationKind::Differentiate, OperationKind::IntegrateOverlay, OperationKind::IntegrateGroup,
                    OperationKind::IntegrateStack, OperationKind::IntegrateMirror, OperationKind::IntegrateTransfer}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(OperationCategory c) {
  switch (c) {
    case OperationCategory::HomogenizeData: return "homogenize-data";
    case OperationCategory::HomogenizeStyle: return "homogenize-style";
    case OperationCategory::Differentiate: return "differentiate";
    case OperationCategory::Integrate: return "integrate";
  }
  return "";
}

OperationCategory category(OperationKind kind) {
  switch (kind) {
    case OperationKind::HomogenizeData: return OperationCategory::HomogenizeData;
    case OperationKind::HomogenizeStyle: return OperationCategory::HomogenizeStyle;
    case OperationKind::Differentiate: return OperationCategory::Differentiate;
    default: return OperationCategory::Integrate;
  }
}

RelationAxis improves_axis(OperationKind kind) {
  return category(kind) == OperationCategory::Integrate ? RelationAxis::Redundancy : RelationAxis::Consistency;
}

std::string_view to_string(IntegrationVariant variant) {
  switch (variant) {
    case IntegrationVariant::Overlay: return "overlay";
    case IntegrationVariant::Group: return "group";
    case IntegrationVariant::Stack: return "stack";
    case IntegrationVariant::Mirror: return "mirror";
    case IntegrationVariant::Transfer: return "transfer";
  }
  return "";
}

std::optional<IntegrationVariant> parse_integration_variant(std::string_view text) {
  for (auto v : {IntegrationVariant::Overlay, IntegrationVariant::Group, IntegrationVariant::Stack,
                 IntegrationVariant::Mirror, IntegrationVariant::Transfer}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

bool variant_applies(IntegrationVariant variant, ChartType chart) {
  switch (variant) {
    case IntegrationVariant::Overlay: return chart == ChartType::Scatter || chart == ChartType::Line;
    case IntegrationVariant::Mirror:
      return chart == ChartType::Line || chart == ChartType::Area || chart == ChartType::Bar ||
             chart == ChartType::Streamgraph;
    case IntegrationVariant::Stack:
      return chart == ChartType::Bar || chart == ChartType::Area || chart == ChartType::Streamgraph;
    case IntegrationVariant::Group: return chart == ChartType::Bar;
    case IntegrationVariant::Transfer: return chart != ChartType::Pie;
  }
  return false;
}

std::string confirmation_question(const FieldPair& pair) {
  return fmt::format("Are {} and {} representing the same quantity?", pair.a.canonical(), pair.b.canonical());
}

namespace {

OperationKind integrate_kind(IntegrationVariant variant) {
  switch (variant) {
    case IntegrationVariant::Overlay: return OperationKind::IntegrateOverlay;
    case IntegrationVariant::Group: return OperationKind::IntegrateGroup;
    case IntegrationVariant::Stack: return OperationKind::IntegrateStack;
    case IntegrationVariant::Mirror: return OperationKind::IntegrateMirror;
    case IntegrationVariant::Transfer: return OperationKind::IntegrateTransfer;
  }
  return OperationKind::IntegrateTransfer;
}

Composition variant_composition(IntegrationVariant variant) {
  switch (variant) {
    case IntegrationVariant::Overlay: return Composition::Overlaid;
    case IntegrationVariant::Group: return Composition::Grouped;
    case IntegrationVariant::Stack: return Composition::Stacked;
    case IntegrationVariant::Mirror: return Composition::Mirrored;
    default: return Composition::Single;
  }
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string channel_list(const std::vector<ChannelClass>& classes) {
  std::vector<std::string> names;
  for (auto c : classes) names.emplace_back(to_string(c));
  return join(names, ",");
}

std::vector<ChannelClass> parse_channel_list(const std::string& text) {
  std::vector<ChannelClass> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto token = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (auto cls = parse_channel_class(token)) out.push_back(*cls);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::string describe_output(const VisualOutput& v) {
  if (const auto* c = std::get_if<ConstantColor>(&v)) return c->hex;
  if (const auto* s = std::get_if<ColorScheme>(&v)) return s->id;
  if (const auto* r = std::get_if<SizeRange>(&v)) return fmt::format("{}-{}", r->min, r->max);
  const auto& p = std::get<PositionRange>(v);
  return fmt::format("{}-{}", p.axis_min, p.axis_max);
}

class Planner {
 public:
  Planner(const Canvas& canvas, const RelationSet& relations, const EngineConfig& config)
      : canvas_(canvas), relations_(relations), config_(config), groups_(integration_groups(relations, canvas)) {}

  void plan_for(const RelationInstance& r, std::string_view view_id) {
    const std::string& a = r.view_ids[0];
    const std::string& b = r.view_ids[1];
    switch (r.kind) {
      case RelationKind::FullRedundancy:
        for (const auto& v : r.view_ids) {
          add(r, OperationKind::Delete, {v}, std::nullopt, {},
              fmt::format("'{}' and '{}' show the same data (full redundancy). Delete '{}'.", a, b, v));
        }
        break;
      case RelationKind::PartialRedundancy: {
        const std::string& subset = *r.subset_view;
        const std::string& superset = subset == a ? b : a;
        add(r, OperationKind::Delete, {subset}, std::nullopt, {},
            fmt::format("'{}' shows a subset of the data in '{}' (partial redundancy). Delete '{}'.", subset,
                        superset, subset));
        if (transferable(canvas_.view(subset), canvas_.view(superset))) {
          add(r, OperationKind::IntegrateTransfer, {subset, superset}, std::nullopt, {{"variant", "transfer"}},
              fmt::format("'{}' shows a subset of the data in '{}' (partial redundancy). Move the extra "
                          "encodings of '{}' into '{}' and remove '{}'.",
                          subset, superset, superset, subset, superset));
        }
        break;
      }
      case RelationKind::MultiplesSameGrouping:
        plan_homogenize_data(r);
        plan_integrations(r, view_id);
        break;
      case RelationKind::MultiplesSameData:
        plan_homogenize_data(r);
        break;
      case RelationKind::Hallucinator: {
        const auto channels = channel_list(r.witness_channels());
        for (const auto& [target, source] : {std::pair{a, b}, std::pair{b, a}}) {
          if (adopting_confuses(target, source, r.witness_channels())) continue;
          add(r, OperationKind::HomogenizeStyle, {target}, source, {{"channels", channels}},
              fmt::format("'{}' and '{}' show the same data on {} but look different (hallucinator). Apply "
                          "the style of '{}' to '{}'.",
                          a, b, channels, source, target));
        }
        break;
      }
      case RelationKind::Confuser: {
        const std::string& other = view_id == a ? b : a;
        for (const auto& recolor : {std::string(view_id), other}) {
          auto params = differentiate_params(r, recolor);
          if (!params) continue;
          add(r, OperationKind::Differentiate, {recolor}, std::nullopt, *params,
              fmt::format("'{}' and '{}' show different data that looks the same on {} (confuser). Give '{}' "
                          "a distinct {}.",
                          a, b, (*params)["channels"], recolor, (*params)["output"]));
          break;
        }
        break;
      }
    }
  }

  std::vector<OperationPlan> take() {
    std::sort(plans_.begin(), plans_.end(), [](const OperationPlan& x, const OperationPlan& y) {
      return std::tuple(category(x.kind), x.target_view_ids, x.kind, x.id) <
             std::tuple(category(y.kind), y.target_view_ids, y.kind, y.id);
    });
    return std::move(plans_);
  }

 private:
  void add(const RelationInstance& r, OperationKind kind, std::vector<std::string> targets,
           std::optional<std::string> source, std::map<std::string, std::string> params, std::string description) {
    // Several relations can call for the same rewrite; the first one planned owns it.
    for (const auto& p : plans_) {
      if (p.kind == kind && p.target_view_ids == targets && p.source_view_id == source && p.params == params) return;
    }
    OperationPlan plan;
    plan.kind = kind;
    plan.target_view_ids = std::move(targets);
    plan.source_view_id = std::move(source);
    plan.resolves_relation_id = r.id;
    plan.params = std::move(params);
    plan.required_confirmations = r.pending_confirmations();
    plan.description = std::move(description);
    if (!plan.required_confirmations.empty()) {
      std::vector<std::string> questions;
      for (const auto& pair : plan.required_confirmations) questions.push_back(confirmation_question(pair));
      plan.question = join(questions, " ");
    }
    std::string key = fmt::format("{}|{}|{}|{}", to_string(plan.kind), join(plan.target_view_ids, ","),
                                  plan.source_view_id.value_or(""), plan.resolves_relation_id);
    for (const auto& [k, v] : plan.params) key += fmt::format("|{}={}", k, v);
    plan.id = "op-" + detail::short_hash(key, 10);
    plans_.push_back(std::move(plan));
  }

  void plan_homogenize_data(const RelationInstance& r) {
    std::set<ChannelClass> mismatched;
    for (const auto& w : r.witnesses) {
      if (w.domain_mismatch) mismatched.insert(w.channel);
    }
    if (mismatched.empty()) return;
    const auto channels = channel_list({mismatched.begin(), mismatched.end()});
    add(r, OperationKind::HomogenizeData, {r.view_ids[0], r.view_ids[1]}, std::nullopt, {{"channels", channels}},
        fmt::format("'{}' and '{}' are {} with different {} domains. Align the domains.", r.view_ids[0],
                    r.view_ids[1], display_name(r.kind), channels));
  }

  void plan_integrations(const RelationInstance& r, std::string_view view_id) {
    const std::vector<std::string>* group = nullptr;
    for (const auto& g : groups_) {
      if (std::find(g.begin(), g.end(), std::string(view_id)) != g.end()) group = &g;
    }
    if (!group || !std::all_of(r.view_ids.begin(), r.view_ids.end(), [&](const std::string& id) {
          return std::find(group->begin(), group->end(), id) != group->end();
        })) {
      return;
    }
    const View& first = canvas_.view(group->front());
    for (auto variant : {IntegrationVariant::Overlay, IntegrationVariant::Group, IntegrationVariant::Stack,
                         IntegrationVariant::Mirror}) {
      if (!variant_applies(variant, first.chart)) continue;
      const bool pairwise = variant == IntegrationVariant::Mirror || variant == IntegrationVariant::Overlay;
      if (pairwise && group->size() != 2) continue;
      const bool compositions_ok = std::all_of(group->begin(), group->end(), [&](const std::string& id) {
        const Composition c = canvas_.view(id).composition;
        return c == Composition::Single || (!pairwise && c == variant_composition(variant));
      });
      if (!compositions_ok) continue;
      add(r, integrate_kind(variant), *group, std::nullopt, {{"variant", std::string(to_string(variant))}},
          fmt::format("{} show related data side by side ({}). Integrate them: {}.", join(*group, ", "),
                      display_name(r.kind), to_string(variant)));
    }
  }

  std::optional<std::map<std::string, std::string>> differentiate_params(const RelationInstance& r,
                                                                        const std::string& view_id) {
    const auto channels = r.witness_channels();
    std::vector<std::string> outputs;
    try {
      for (auto cls : channels) {
        outputs.push_back(describe_output(choose_distinct_output(canvas_, view_id, cls, config_.palette)));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PaletteExhausted) return std::nullopt;
      throw;
    }
    return std::map<std::string, std::string>{{"channels", channel_list(channels)}, {"output", join(outputs, ",")}};
  }

  static bool transferable(const View& subset, const View& superset) {
    for (const auto& b : superset.bindings) {
      if (!b.mapping) continue;
      const ChannelBinding* s = subset.binding(b.cls);
      if (s && s->mapping) continue;
      if (!raw_channel_for(subset.chart, b.cls)) return false;
    }
    return subset.chart != ChartType::Pie;
  }

  // True when the target or a view restyled along with it, wearing the
  // source's output, would look like a view that shows different data.
  bool adopting_confuses(const std::string& target, const std::string& source,
                         const std::vector<ChannelClass>& classes) const {
    const View& s = canvas_.view(source);
    for (auto cls : classes) {
      const ChannelBinding* adopted = s.binding(cls);
      if (!adopted) continue;
      const auto group = differentiate_group(canvas_, target, cls);
      for (const auto& member : group) {
        for (const auto& other : canvas_.views) {
          if (std::find(group.begin(), group.end(), other.id) != group.end()) continue;
          if (looks_like_other_data(canvas_.view(member), other, cls, adopted->visual)) return true;
        }
      }
    }
    return false;
  }

  bool looks_like_other_data(const View& view, const View& other, ChannelClass cls, const VisualOutput& output) const {
    const TriState g = grouping_eq(view, other, canvas_.registry);
    for (const auto& mine : tuples_of(view)) {
      if (mine.c != cls) continue;
      for (const auto& theirs : tuples_of(other)) {
        if (theirs.c == cls && data_eq(mine, theirs, g, canvas_.registry) == TriState::Different &&
            visual_eq(output, theirs.v)) {
          return true;
        }
      }
    }
    return false;
  }

  const Canvas& canvas_;
  const RelationSet& relations_;
  const EngineConfig& config_;
  std::vector<std::vector<std::string>> groups_;
  std::vector<OperationPlan> plans_;
};

}  // namespace

namespace {

Canvas execute(const Canvas& canvas, const OperationPlan& plan, const EngineConfig& config);

double score_on(RelationAxis axis, const Canvas& canvas, const SeverityWeights& weights) {
  const SemanticPosition p = semantic_position(find_relations(canvas), weights);
  return axis == RelationAxis::Redundancy ? p.compactness : p.consistency;
}

// A plan that would leave the canvas worse on the axis it is meant to improve,
// assuming its questions are answered "same". Integrating can, for example,
// turn a third view into a redundant copy of the merged view.
bool regresses(const Canvas& canvas, const OperationPlan& plan, const EngineConfig& config) {
  Canvas before = canvas;
  try {
    for (const auto& pair : plan.required_confirmations) {
      before.registry.record(pair.a.canonical(), pair.b.canonical(), true);
    }
  } catch (const Error&) {
    return false;  // can only be denied
  }
  Canvas after;
  try {
    after = execute(before, plan, config);
  } catch (const Error&) {
    return false;  // surfaces on apply
  }
  const RelationAxis axis = improves_axis(plan.kind);
  return score_on(axis, after, config.weights) < score_on(axis, before, config.weights);
}

}  // namespace

std::vector<OperationPlan> plan_operations(const Canvas& canvas, const RelationSet& relations,
                                           std::string_view view_id, const EngineConfig& config) {
  canvas.view(view_id);
  Planner planner(canvas, relations, config);
  for (const auto& r : relations.instances) {
    if (r.involves(view_id)) planner.plan_for(r, view_id);
  }
  auto plans = planner.take();
  std::erase_if(plans, [&](const OperationPlan& p) { return regresses(canvas, p, config); });
  return plans;
}

std::vector<OperationPlan> plan_all_operations(const Canvas& canvas, const RelationSet& relations,
                                               const EngineConfig& config) {
  std::vector<OperationPlan> out;
  std::set<std::string> seen;
  for (const auto& view : canvas.views) {
    for (auto& plan : plan_operations(canvas, relations, view.id, config)) {
      if (seen.insert(plan.id).second) out.push_back(std::move(plan));
    }
  }
  return out;
}

namespace {

const Answer* find_answer(const std::vector<Answer>& answers, const FieldPair& pair) {
  for (const auto& a : answers) {
    if ((a.a == pair.a && a.b == pair.b) || (a.a == pair.b && a.b == pair.a)) return &a;
  }
  return nullptr;
}

std::vector<ChannelClass> plan_channels(const OperationPlan& plan) {
  auto it = plan.params.find("channels");
  return it == plan.params.end() ? std::vector<ChannelClass>{} : parse_channel_list(it->second);
}

Canvas execute(const Canvas& canvas, const OperationPlan& plan, const EngineConfig& config) {
  const auto& targets = plan.target_view_ids;
  switch (plan.kind) {
    case OperationKind::Delete: return delete_view(canvas, targets.at(0));
    case OperationKind::HomogenizeData: {
      Canvas out = canvas;
      for (auto cls : plan_channels(plan)) out = homogenize_data(out, targets.at(0), targets.at(1), cls);
      return out;
    }
    case OperationKind::HomogenizeStyle: {
      Canvas out = canvas;
      for (auto cls : plan_channels(plan)) out = homogenize_style(out, targets.at(0), *plan.source_view_id, cls);
      return out;
    }
    case OperationKind::Differentiate: {
      Canvas out = canvas;
      for (auto cls : plan_channels(plan)) out = differentiate(out, targets.at(0), cls, config.palette);
      return out;
    }
    case OperationKind::IntegrateOverlay: return integrate_views(canvas, targets, IntegrationVariant::Overlay, config.palette);
    case OperationKind::IntegrateGroup: return integrate_views(canvas, targets, IntegrationVariant::Group, config.palette);
    case OperationKind::IntegrateStack: return integrate_views(canvas, targets, IntegrationVariant::Stack, config.palette);
    case OperationKind::IntegrateMirror: return integrate_views(canvas, targets, IntegrationVariant::Mirror, config.palette);
    case OperationKind::IntegrateTransfer:
      return integrate_views(canvas, targets, IntegrationVariant::Transfer, config.palette);
  }
  return canvas;
}

}  // namespace

ApplyResult apply_operation(const Canvas& canvas, const OperationPlan& plan, const std::vector<Answer>& answers,
                            const EngineConfig& config) {
  const auto current = plan_all_operations(canvas, find_relations(canvas), config);
  const bool fresh = std::any_of(current.begin(), current.end(), [&](const OperationPlan& p) { return p == plan; });
  if (!fresh) {
    throw Error(ErrorCode::StalePlan, fmt::format("operation {} no longer applies to this canvas", plan.id));
  }

  bool denied = false;
  for (const auto& pair : plan.required_confirmations) {
    const Answer* answer = find_answer(answers, pair);
    if (!answer) throw Error(ErrorCode::MissingConfirmation, confirmation_question(pair));
    denied = denied || !answer->same;
  }
  ApplyResult result{ApplyStatus::Applied, canvas};
  for (const auto& a : answers) {
    result.canvas.registry = record_equivalence(std::move(result.canvas.registry), a.a, a.b, a.same);
  }
  if (denied) {
    result.status = ApplyStatus::Denied;
    return result;
  }
  result.canvas = execute(result.canvas, plan, config);
  return result;
}

SemanticPosition semantic_position(const RelationSet& relations, const SeverityWeights& weights) {
  SemanticPosition pos;
  for (const auto& r : relations.instances) {
    const double factor = r.conditional ? weights.conditional_factor : 1.0;
    switch (r.kind) {
      case RelationKind::FullRedundancy:
      case RelationKind::PartialRedundancy: pos.compactness -= factor * weights.weight(r.kind); break;
      case RelationKind::MultiplesSameGrouping:
        pos.compactness -= factor * weights.weight(r.kind);
        if (r.domain_mismatch()) pos.consistency -= factor * weights.domain_mismatch;
        break;
      case RelationKind::MultiplesSameData:
        // Same data under another grouping only hurts when the scales disagree.
        if (r.domain_mismatch()) pos.consistency -= factor * weights.weight(r.kind);
        break;
      case RelationKind::Hallucinator:
      case RelationKind::Confuser: pos.consistency -= factor * weights.weight(r.kind); break;
    }
  }
  return pos;
}

}  // namespace semsnap
