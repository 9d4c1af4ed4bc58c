#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/canvas.hpp"
#include "semsnap/config.hpp"
#include "semsnap/relations.hpp"

namespace semsnap {

enum class OperationKind {
  Delete,
  HomogenizeData,
  HomogenizeStyle,
  Differentiate,
  IntegrateOverlay,
  IntegrateGroup,
  IntegrateStack,
  IntegrateMirror,
  IntegrateTransfer,
};

enum class OperationCategory { HomogenizeData, HomogenizeStyle, Differentiate, Integrate };

inline constexpr OperationCategory kAllCategories[] = {OperationCategory::HomogenizeData,
                                                       OperationCategory::HomogenizeStyle,
                                                       OperationCategory::Differentiate, OperationCategory::Integrate};

std::string_view to_string(OperationKind kind);  // "delete", "integrate-mirror", ...
std::optional<OperationKind> parse_operation_kind(std::string_view text);
std::string_view to_string(OperationCategory category);  // "homogenize-data", ...
// Delete is listed with the integrate operations.
OperationCategory category(OperationKind kind);
// Consistency for homogenize/differentiate, compactness otherwise.
RelationAxis improves_axis(OperationKind kind);

enum class IntegrationVariant { Overlay, Group, Stack, Mirror, Transfer };

std::string_view to_string(IntegrationVariant variant);
std::optional<IntegrationVariant> parse_integration_variant(std::string_view text);
bool variant_applies(IntegrationVariant variant, ChartType chart);

struct OperationPlan {
  std::string id;
  OperationKind kind = OperationKind::Delete;
  std::vector<std::string> target_view_ids;
  std::optional<std::string> source_view_id;
  std::string resolves_relation_id;
  std::map<std::string, std::string> params;
  std::vector<FieldPair> required_confirmations;
  std::string description;
  std::optional<std::string> question;

  friend bool operator==(const OperationPlan&, const OperationPlan&) = default;
};

// "Are {a} and {b} representing the same quantity?"
std::string confirmation_question(const FieldPair& pair);

// Plans resolving the relations that touch a view, sorted by category, then
// targets. Throws Error(UnknownView).
std::vector<OperationPlan> plan_operations(const Canvas& canvas, const RelationSet& relations,
                                           std::string_view view_id, const EngineConfig& config = {});

// Union of plan_operations over every view, without duplicates.
std::vector<OperationPlan> plan_all_operations(const Canvas& canvas, const RelationSet& relations,
                                               const EngineConfig& config = {});

// A user answer to a confirmation question.
struct Answer {
  FieldRef a;
  FieldRef b;
  bool same = true;
};

enum class ApplyStatus { Applied, Denied };

struct ApplyResult {
  ApplyStatus status = ApplyStatus::Applied;
  // Rewritten canvas; when denied, the input views with the answers recorded.
  Canvas canvas;
};

// Records the answers, then rewrites. A "different" answer withdraws the plan:
// the result carries the updated registry and unchanged views.
// Throws Error(StalePlan | MissingConfirmation | ContradictoryConfirmation) and
// any error of the rewrite itself.
ApplyResult apply_operation(const Canvas& canvas, const OperationPlan& plan, const std::vector<Answer>& answers,
                            const EngineConfig& config = {});

Canvas delete_view(const Canvas& canvas, std::string_view view_id);

// Unifies the domains of the class across both views and every multiples
// partner reachable from them on that class.
Canvas homogenize_data(const Canvas& canvas, std::string_view view_a, std::string_view view_b, ChannelClass cls);

// Target adopts the source's visual output; domains are unioned.
Canvas homogenize_style(const Canvas& canvas, std::string_view target_view, std::string_view source_view,
                        ChannelClass cls);

// The chosen replacement output for a differentiate plan, or Error(PaletteExhausted).
VisualOutput choose_distinct_output(const Canvas& canvas, std::string_view view_id, ChannelClass cls,
                                    const Palette& palette);

// Views recolored together with the target: those showing the same data with
// the same output on the class.
std::vector<std::string> differentiate_group(const Canvas& canvas, std::string_view view_id, ChannelClass cls);

Canvas differentiate(const Canvas& canvas, std::string_view view_id, ChannelClass cls,
                     const Palette& palette = EngineConfig::default_palette());

// Throws Error(IncompatibleChartTypes | UnsharedXAxis | UnsupportedVariant).
// Transfer expects {subset, superset}.
Canvas integrate_views(const Canvas& canvas, const std::vector<std::string>& group, IntegrationVariant variant,
                       const Palette& palette = EngineConfig::default_palette());

// Id of the view produced by integrating a group.
std::string integrated_view_id(const std::vector<std::string>& group);

struct SemanticPosition {
  double compactness = 0.0;
  double consistency = 0.0;
  friend bool operator==(const SemanticPosition&, const SemanticPosition&) = default;
};

SemanticPosition semantic_position(const RelationSet& relations, const SeverityWeights& weights = {});

}  // namespace semsnap
