#include "doctest.h"

#include <algorithm>

#include "case_studies.hpp"
#include "properties.hpp"
#include "semsnap/document.hpp"
#include "semsnap/error.hpp"
#include "semsnap/operations.hpp"

using namespace semsnap;

namespace {

Canvas fixture(const std::string& name) { return load_canvas_file(testing::fixture_path(name)); }

std::vector<OperationPlan> menu(const Canvas& c, const std::string& view) {
  return plan_operations(c, find_relations(c), view);
}

OperationPlan first_of(const std::vector<OperationPlan>& plans, OperationKind kind) {
  auto it = std::find_if(plans.begin(), plans.end(), [&](const OperationPlan& p) { return p.kind == kind; });
  REQUIRE(it != plans.end());
  return *it;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("menus are ordered by category") {
  const Canvas c = fixture("election.canvas.json");
  const auto plans = menu(c, "trump");
  REQUIRE(plans.size() == 4);
  CHECK(plans[0].kind == OperationKind::HomogenizeData);
  CHECK(plans[1].kind == OperationKind::Differentiate);
  CHECK(plans[2].kind == OperationKind::IntegrateOverlay);
  CHECK(plans[3].kind == OperationKind::IntegrateMirror);
  CHECK(std::is_sorted(plans.begin(), plans.end(), [](const auto& a, const auto& b) {
    return category(a.kind) < category(b.kind);
  }));
  CHECK_THROWS_AS(menu(c, "nobody"), Error);
}

TEST_CASE("differentiating the election scatter picks the next free constant") {
  const Canvas c = fixture("election.canvas.json");
  const auto& plan = first_of(menu(c, "pollsters"), OperationKind::Differentiate);
  CHECK(plan.target_view_ids == std::vector<std::string>{"pollsters"});
  CHECK(plan.params.at("output") == "#2ca02c");
  const auto result = apply_operation(c, plan, {});
  CHECK(result.status == ApplyStatus::Applied);
  const auto* fill = result.canvas.view("pollsters").binding(ChannelClass::Color);
  CHECK(std::get<ConstantColor>(fill->visual).hex == "#2ca02c");
  CHECK(find_relations(result.canvas).count(RelationKind::Confuser) == 0);
}

TEST_CASE("differentiating the covid pie switches to the pastel scheme") {
  const Canvas c = fixture("covid.canvas.json");
  const auto& plan = first_of(menu(c, "deaths_pie"), OperationKind::Differentiate);
  const auto out = apply_operation(c, plan, {}).canvas;
  const auto& scheme = std::get<ColorScheme>(out.view("deaths_pie").binding(ChannelClass::Color)->visual);
  CHECK(scheme.id == "pastel");
  REQUIRE(scheme.assignment.size() == 2);
  CHECK(scheme.assignment[0] == std::pair<std::string, std::string>{"female", "#f7b6d2"});
  CHECK(scheme.assignment[1] == std::pair<std::string, std::string>{"male", "#98df8a"});
}

TEST_CASE("conditional plans ask, record the answer, and may be denied") {
  const Canvas c = fixture("sales-prompt.canvas.json");
  const auto plans = menu(c, "europe");
  REQUIRE_FALSE(plans.empty());
  for (const auto& p : plans) {
    REQUIRE(p.question.has_value());
    CHECK(*p.question == "Are sum(Europe) and sum(North America) representing the same quantity?");
  }
  const auto& group = first_of(plans, OperationKind::IntegrateGroup);
  CHECK(code_of([&] { apply_operation(c, group, {}); }) == ErrorCode::MissingConfirmation);

  const Answer no{{"Europe", Aggregate::Sum}, {"North America", Aggregate::Sum}, false};
  const auto denied = apply_operation(c, group, {no});
  CHECK(denied.status == ApplyStatus::Denied);
  CHECK(denied.canvas.views == c.views);
  CHECK(denied.canvas.registry.different("sum(Europe)", "sum(North America)"));
  const auto after = find_relations(denied.canvas);
  REQUIRE(after.instances.size() == 1);
  CHECK_FALSE(after.instances[0].conditional);

  Answer yes = no;
  yes.same = true;
  const auto applied = apply_operation(c, group, {yes});
  CHECK(applied.status == ApplyStatus::Applied);
  CHECK(applied.canvas.views.size() == 1);
  CHECK(applied.canvas.views[0].composition == Composition::Grouped);
}

TEST_CASE("stale plans are refused") {
  const Canvas c = fixture("election.canvas.json");
  const auto plan = first_of(menu(c, "pollsters"), OperationKind::Differentiate);
  const auto moved = apply_operation(c, plan, {}).canvas;
  CHECK(code_of([&] { apply_operation(moved, plan, {}); }) == ErrorCode::StalePlan);
  OperationPlan forged = plan;
  forged.params["output"] = "#000000";
  CHECK(code_of([&] { apply_operation(c, forged, {}); }) == ErrorCode::StalePlan);
}

TEST_CASE("delete plans for full redundancy") {
  const Canvas c = fixture("table1/a-full-redundancy.canvas.json");
  const auto plans = plan_all_operations(c, find_relations(c));
  REQUIRE(plans.size() == 2);
  const auto out = apply_operation(c, plans[0], {}).canvas;
  CHECK(out.views.size() == 1);
  CHECK(find_relations(out).instances.empty());
}

TEST_CASE("transfer keeps the subset view with the extra encoding") {
  const Canvas c = fixture("table1/b-partial-redundancy.canvas.json");
  const auto plans = plan_all_operations(c, find_relations(c));
  const auto& transfer = first_of(plans, OperationKind::IntegrateTransfer);
  const auto out = apply_operation(c, transfer, {}).canvas;
  REQUIRE(out.views.size() == 1);
  CHECK(out.views[0].id == "plain");
  CHECK(out.views[0].binding(ChannelClass::Color)->mapping.has_value());
}

TEST_CASE("homogenize data aligns the multiples domains") {
  const Canvas c = fixture("table1/c-multiples-same-grouping.canvas.json");
  const auto plans = plan_all_operations(c, find_relations(c));
  const auto out = apply_operation(c, first_of(plans, OperationKind::HomogenizeData), {}).canvas;
  CHECK(out.views[0].binding(ChannelClass::PositionY)->domain == out.views[1].binding(ChannelClass::PositionY)->domain);
  const auto after = find_relations(out);
  REQUIRE(after.instances.size() == 1);
  CHECK_FALSE(after.instances[0].domain_mismatch());
}

TEST_CASE("homogenize style copies the donor output") {
  const Canvas c = fixture("table1/e-hallucinator.canvas.json");
  const auto out = homogenize_style(c, "sales_dots", "sales_bubbles", ChannelClass::Color);
  CHECK(out.view("sales_dots").binding(ChannelClass::Color)->visual ==
        c.view("sales_bubbles").binding(ChannelClass::Color)->visual);
  CHECK(find_relations(out).instances.empty());
  CHECK(code_of([&] { homogenize_style(out, "sales_dots", "sales_bubbles", ChannelClass::Color); }) ==
        ErrorCode::NoWitness);
}

TEST_CASE("integration preconditions") {
  const Canvas night = fixture("nightingale.canvas.json");
  CHECK(code_of([&] { integrate_views(night, {"deaths", "disease"}, IntegrationVariant::Mirror); }) ==
        ErrorCode::IncompatibleChartTypes);
  CHECK(code_of([&] { integrate_views(night, {"disease", "wounds"}, IntegrationVariant::Overlay); }) ==
        ErrorCode::UnsupportedVariant);
  CHECK(code_of([&] { integrate_views(night, {"disease", "wounds", "other"}, IntegrationVariant::Mirror); }) ==
        ErrorCode::UnsupportedVariant);
  const Canvas covid = fixture("covid.canvas.json");
  CHECK(code_of([&] { integrate_views(covid, {"deaths_stream", "cases_bar"}, IntegrationVariant::Stack); }) ==
        ErrorCode::IncompatibleChartTypes);
  CHECK(code_of([&] { integrate_views(covid, {"cases_pie", "deaths_pie"}, IntegrationVariant::Stack); }) ==
        ErrorCode::UnsupportedVariant);

  const Canvas mirrored = integrate_views(night, {"deaths", "unharmed"}, IntegrationVariant::Mirror);
  const View& m = mirrored.view(integrated_view_id({"deaths", "unharmed"}));
  CHECK(m.id == "deaths+unharmed");
  CHECK(m.composition == Composition::Mirrored);
  REQUIRE(m.series.size() == 2);
  CHECK(m.series[0].label == "sum(deaths)");
  CHECK(m.series[1].label == "sum(unharmed)");
  CHECK(m.cell == night.view("deaths").cell);
  CHECK(mirrored.views.size() == 4);
}

TEST_CASE("variant applicability") {
  CHECK(variant_applies(IntegrationVariant::Overlay, ChartType::Line));
  CHECK_FALSE(variant_applies(IntegrationVariant::Overlay, ChartType::Bar));
  CHECK(variant_applies(IntegrationVariant::Group, ChartType::Bar));
  CHECK_FALSE(variant_applies(IntegrationVariant::Group, ChartType::Line));
  CHECK(variant_applies(IntegrationVariant::Stack, ChartType::Streamgraph));
  CHECK_FALSE(variant_applies(IntegrationVariant::Mirror, ChartType::Pie));
}

TEST_CASE("semantic position of the election dashboard") {
  const Canvas c = fixture("election.canvas.json");
  const auto pos = semantic_position(find_relations(c));
  CHECK(pos.compactness == doctest::Approx(-1.0));
  CHECK(pos.consistency == doctest::Approx(-3.0));
  SeverityWeights w;
  w.by_kind[RelationKind::Confuser] = 5.0;
  CHECK(semantic_position(find_relations(c), w).consistency == doctest::Approx(-6.0));
}

TEST_CASE("conditional relations count at half weight") {
  const Canvas c = fixture("sales-prompt.canvas.json");
  const auto pos = semantic_position(find_relations(c));
  CHECK(pos.compactness == doctest::Approx(-0.5));
}

TEST_CASE("the final election canvas equals mirroring without the overlay detour") {
  const auto walk = testing::run_election_walk();
  REQUIRE_FALSE(walk.failure.has_value());
  Canvas direct = fixture("election.canvas.json");
  direct = differentiate(direct, "pollsters", ChannelClass::Color);
  direct = integrate_views(direct, {"clinton", "trump"}, IntegrationVariant::Mirror);
  CHECK(walk.final_canvas.views == direct.views);
  CHECK(serialize_canvas(walk.final_canvas) == serialize_canvas(direct));
}
