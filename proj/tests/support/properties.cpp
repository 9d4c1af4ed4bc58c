#include "properties.hpp"

#include <fmt/format.h>

#include "semsnap/error.hpp"
#include "semsnap/relations.hpp"

namespace semsnap::testing {

std::vector<Answer> affirm_all(const OperationPlan& plan, const EquivalenceRegistry& registry) {
  EquivalenceRegistry scratch = registry;
  std::vector<Answer> out;
  for (const auto& pair : plan.required_confirmations) {
    const bool same = !scratch.different(pair.a.canonical(), pair.b.canonical());
    scratch.record(pair.a.canonical(), pair.b.canonical(), same);
    out.push_back({pair.a, pair.b, same});
  }
  return out;
}

void PropertyReport::fail(std::string detail) {
  ++counterexamples;
  if (details.size() < 8) details.push_back(std::move(detail));
}

PropertyReport check_closure(const std::vector<Canvas>& corpus, const EngineConfig& config) {
  PropertyReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Canvas& canvas = corpus[i];
    const RelationSet before = find_relations(canvas);
    for (const auto& plan : plan_all_operations(canvas, before, config)) {
      ++report.plans;
      const RelationInstance* resolved = before.find(plan.resolves_relation_id);
      if (!resolved) {
        report.fail(fmt::format("canvas {} plan {}: resolves unknown {}", i, plan.id, plan.resolves_relation_id));
        continue;
      }
      try {
        const ApplyResult result = apply_operation(canvas, plan, affirm_all(plan, canvas.registry), config);
        if (result.status == ApplyStatus::Denied) {
          ++report.denied;
          continue;
        }
        const std::string signature = relation_signature(*resolved);
        for (const auto& r : find_relations(result.canvas).instances) {
          if (relation_signature(r) == signature) {
            report.fail(fmt::format("canvas {} plan {} ({}): {} survives", i, plan.id, to_string(plan.kind), signature));
            break;
          }
        }
      } catch (const Error& e) {
        report.fail(fmt::format("canvas {} plan {} ({}): {}", i, plan.id, to_string(plan.kind), e.what()));
      }
    }
  }
  return report;
}

PropertyReport check_monotonicity(const std::vector<Canvas>& corpus, const EngineConfig& config) {
  PropertyReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Canvas& canvas = corpus[i];
    for (const auto& plan : plan_all_operations(canvas, find_relations(canvas), config)) {
      ++report.plans;
      try {
        const ApplyResult result = apply_operation(canvas, plan, affirm_all(plan, canvas.registry), config);
        if (result.status == ApplyStatus::Denied) ++report.denied;
        Canvas baseline = canvas;
        baseline.registry = result.canvas.registry;
        const auto before = semantic_position(find_relations(baseline), config.weights);
        const auto after = semantic_position(find_relations(result.canvas), config.weights);
        const bool integrate = category(plan.kind) == OperationCategory::Integrate;
        const double was = integrate ? before.compactness : before.consistency;
        const double now = integrate ? after.compactness : after.consistency;
        if (now < was) {
          report.fail(fmt::format("canvas {} plan {} ({}): {} {} -> {}", i, plan.id, to_string(plan.kind),
                                  integrate ? "compactness" : "consistency", was, now));
        }
      } catch (const Error& e) {
        report.fail(fmt::format("canvas {} plan {} ({}): {}", i, plan.id, to_string(plan.kind), e.what()));
      }
    }
  }
  return report;
}

}  // namespace semsnap::testing
