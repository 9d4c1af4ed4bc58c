#include "case_studies.hpp"

#include <chrono>
#include <exception>
#include <functional>

#include <fmt/format.h>

#include "semsnap/document.hpp"
#include "walk.hpp"

namespace semsnap::testing {

std::string fixture_path(const std::string& name) { return std::string(SEMSNAP_FIXTURE_DIR) + "/" + name; }

bool instance_present(const RelationSet& set, const Target& target) {
  for (const auto& r : set.instances) {
    if (r.kind == target.kind && r.view_ids == target.views) return true;
  }
  return false;
}

namespace {

CaseStudyResult run(const std::string& name, const std::string& fixture, std::vector<Target> targets,
                    const std::function<void(Walk&)>& script) {
  const auto start = std::chrono::steady_clock::now();
  CaseStudyResult result;
  result.name = name;
  result.targets = std::move(targets);
  try {
    Walk walk(load_canvas_file(fixture_path(fixture)));
    const RelationSet initial = walk.relations();
    for (const auto& t : result.targets) {
      if (!instance_present(initial, t)) {
        throw std::runtime_error(fmt::format("{} [{},{}] absent at the start", code(t.kind), t.views[0], t.views[1]));
      }
    }
    script(walk);
    result.final_canvas = walk.canvas();
    result.committed_snapshots = walk.history().committed().size();
    const RelationSet final_set = walk.relations();
    for (const auto& t : result.targets) {
      if (instance_present(final_set, t)) {
        result.lingering.push_back(fmt::format("{} [{},{}]", code(t.kind), t.views[0], t.views[1]));
      }
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

CaseStudyResult run_election_walk() {
  return run("election", "election.canvas.json",
             {{RelationKind::Confuser, {"pollsters", "trump"}},
              {RelationKind::MultiplesSameGrouping, {"clinton", "trump"}}},
             [](Walk& w) {
               w.perform(OperationKind::Differentiate, {"pollsters"});
               const Canvas before_overlay = w.canvas();
               w.apply(w.plan(OperationKind::IntegrateOverlay, {"clinton", "trump"}));
               w.undo();
               if (!(w.canvas() == before_overlay)) throw std::runtime_error("undo did not restore the canvas");
               w.perform(OperationKind::IntegrateMirror, {"clinton", "trump"});
             });
}

CaseStudyResult run_nightingale_walk() {
  return run("nightingale", "nightingale.canvas.json",
             {{RelationKind::MultiplesSameGrouping, {"deaths", "unharmed"}},
              {RelationKind::MultiplesSameGrouping, {"disease", "wounds"}},
              {RelationKind::MultiplesSameGrouping, {"disease", "other"}},
              {RelationKind::MultiplesSameGrouping, {"other", "wounds"}}},
             [](Walk& w) {
               w.perform(OperationKind::IntegrateMirror, {"deaths", "unharmed"});
               w.perform(OperationKind::IntegrateStack, {"disease", "wounds", "other"});
             });
}

CaseStudyResult run_covid_walk() {
  return run("covid", "covid.canvas.json",
             {{RelationKind::Confuser, {"cases_stream", "deaths_pie"}},
              {RelationKind::Hallucinator, {"cases_pie", "deaths_pie"}},
              {RelationKind::Hallucinator, {"cases_bar", "cases_stream"}},
              {RelationKind::Hallucinator, {"deaths_bar", "deaths_stream"}},
              {RelationKind::MultiplesSameGrouping, {"cases_bar", "deaths_bar"}},
              {RelationKind::MultiplesSameGrouping, {"cases_stream", "deaths_stream"}}},
             [](Walk& w) {
               w.perform(OperationKind::Differentiate, {"deaths_pie"});
               w.perform(OperationKind::HomogenizeStyle, {"cases_pie"}, "deaths_pie");
               w.perform(OperationKind::HomogenizeStyle, {"deaths_bar"}, "deaths_stream");
               w.perform(OperationKind::HomogenizeStyle, {"cases_bar"}, "cases_stream");
               w.perform(OperationKind::IntegrateGroup, {"deaths_bar", "cases_bar"});
               w.perform(OperationKind::IntegrateMirror, {"deaths_stream", "cases_stream"});
             });
}

}  // namespace semsnap::testing
