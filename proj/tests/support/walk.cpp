#include "walk.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "properties.hpp"

namespace semsnap::testing {

Walk::Walk(Canvas initial, EngineConfig config) : history_(std::move(initial)), config_(std::move(config)) {}

OperationPlan Walk::plan(OperationKind kind, const std::vector<std::string>& targets,
                         const std::optional<std::string>& source) const {
  for (const auto& p : plan_all_operations(canvas(), relations(), config_)) {
    if (p.kind == kind && p.target_view_ids == targets && (!source || p.source_view_id == source)) return p;
  }
  throw std::runtime_error(fmt::format("no {} plan for [{}]", to_string(kind), fmt::join(targets, ",")));
}

void Walk::apply(const OperationPlan& plan) {
  ApplyResult result = apply_operation(canvas(), plan, affirm_all(plan, canvas().registry), config_);
  if (result.status != ApplyStatus::Applied) throw std::runtime_error("plan was denied");
  history_.begin(plan, std::move(result.canvas));
}

void Walk::keep() { history_.keep(); }
void Walk::undo() { history_.undo(); }

void Walk::perform(OperationKind kind, const std::vector<std::string>& targets,
                   const std::optional<std::string>& source) {
  apply(plan(kind, targets, source));
  keep();
}

}  // namespace semsnap::testing
