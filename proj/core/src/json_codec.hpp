#pragma once

#include <vector>

#include <json.hpp>

#include "semsnap/canvas.hpp"
#include "semsnap/config.hpp"
#include "semsnap/operations.hpp"
#include "semsnap/relations.hpp"

namespace semsnap::detail {

nlohmann::json canvas_to_json(const Canvas& canvas);
nlohmann::json lint_to_json(const Canvas& canvas, const RelationSet& relations, const EngineConfig& config);
nlohmann::json plan_to_json(const OperationPlan& plan);
nlohmann::json plans_to_json(const std::vector<OperationPlan>& plans);
nlohmann::json field_to_json(const FieldRef& field);

}  // namespace semsnap::detail

#include "semsnap/render.hpp"

namespace semsnap::detail {

nlohmann::json render_to_json_value(const RenderSpec& spec);
nlohmann::json renders_to_json_value(const std::vector<PlacedRender>& renders);

}  // namespace semsnap::detail
