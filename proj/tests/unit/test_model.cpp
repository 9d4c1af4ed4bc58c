#include "doctest.h"

#include "case_studies.hpp"
#include "semsnap/document.hpp"
#include "semsnap/error.hpp"
#include "semsnap/model.hpp"
#include "semsnap/relations.hpp"

using namespace semsnap;

TEST_CASE("field refs print and parse canonically") {
  CHECK(FieldRef{"Europe", Aggregate::Sum}.canonical() == "sum(Europe)");
  CHECK(FieldRef{"region", Aggregate::None}.canonical() == "region");
  CHECK(parse_field_ref("mean(North America)") == FieldRef{"North America", Aggregate::Mean});
  CHECK(parse_field_ref("count(*)") == FieldRef{"*", Aggregate::Count});
  CHECK(parse_field_ref("cost (usd)") == FieldRef{"cost (usd)", Aggregate::None});
  CHECK(parse_field_ref("sum(cost (usd))") == FieldRef{"cost (usd)", Aggregate::Sum});
  CHECK(parse_field_ref("median(x)") == FieldRef{"median(x)", Aggregate::None});
  CHECK_FALSE(parse_field_ref("sum()").has_value());
  CHECK_FALSE(parse_field_ref("").has_value());
}

TEST_CASE("stroke of unfilled marks and fill of filled marks are both color") {
  CHECK(channel_class(ChartType::Line, "stroke") == ChannelClass::Color);
  CHECK(channel_class(ChartType::Bar, "fill") == ChannelClass::Color);
  CHECK(channel_class(ChartType::Pie, "angle") == ChannelClass::Angle);
  CHECK_THROWS_AS(channel_class(ChartType::Bar, "size"), Error);
}

TEST_CASE("registry closes sameness transitively and keeps classes apart") {
  EquivalenceRegistry r;
  r.record("sum(a)", "sum(b)", true);
  r.record("sum(b)", "sum(c)", true);
  CHECK(r.same("sum(a)", "sum(c)"));
  r.record("sum(c)", "sum(d)", false);
  CHECK(r.different("sum(a)", "sum(d)"));
  CHECK(r.compare("sum(a)", "sum(e)") == TriState::NeedsConfirmation);
  CHECK_THROWS_AS(r.record("sum(a)", "sum(d)", true), Error);
  CHECK_THROWS_AS(r.record("sum(b)", "sum(a)", false), Error);
  CHECK_THROWS_AS(r.record("sum(a)", "sum(a)", false), Error);
}

TEST_CASE("data equality of tuples") {
  EquivalenceRegistry reg;
  auto t = [](std::optional<FieldRef> d) { return GcdvTuple{"g", ChannelClass::PositionY, d, PositionRange{}, "v"}; };
  const FieldRef eu{"Europe", Aggregate::Sum};
  const FieldRef na{"North America", Aggregate::Sum};
  CHECK(data_eq(t(eu), t(eu), TriState::Equal, reg) == TriState::Equal);
  CHECK(data_eq(t(eu), t(na), TriState::Equal, reg) == TriState::NeedsConfirmation);
  CHECK(data_eq(t(eu), t(FieldRef{"Europe", Aggregate::Mean}), TriState::Equal, reg) == TriState::Different);
  CHECK(data_eq(t(FieldRef{"a", Aggregate::Count}), t(FieldRef{"b", Aggregate::Count}), TriState::Equal, reg) ==
        TriState::Different);
  CHECK(data_eq(t(std::nullopt), t(std::nullopt), TriState::Equal, reg) == TriState::Equal);
  CHECK(data_eq(t(std::nullopt), t(std::nullopt), TriState::Different, reg) == TriState::Different);
  CHECK(data_eq(t(eu), t(std::nullopt), TriState::Equal, reg) == TriState::Different);
  reg.record(eu.canonical(), na.canonical(), true);
  CHECK(data_eq(t(eu), t(na), TriState::Equal, reg) == TriState::Equal);
}

TEST_CASE("visual equality") {
  const ColorScheme tab{"tableau10", SchemeKind::Categorical, {{"f", "#1f77b4"}, {"m", "#ff7f0e"}}};
  const ColorScheme blues{"blues", SchemeKind::Continuous, {{"low", "#deebf7"}, {"high", "#1F77B4"}}};
  CHECK(visual_eq(ConstantColor{"#D62728"}, ConstantColor{"#d62728"}));
  CHECK_FALSE(visual_eq(ConstantColor{"#d62728"}, ConstantColor{"#1f77b4"}));
  CHECK(visual_eq(ConstantColor{"#1f77b4"}, tab));
  CHECK_FALSE(visual_eq(ConstantColor{"#1f77b4"}, blues));
  CHECK(visual_eq(tab, blues));
  CHECK(visual_eq(PositionRange{0, 300}, PositionRange{0, 300 + 1e-12}));
  CHECK_FALSE(visual_eq(SizeRange{4, 4}, SizeRange{2, 12}));
  CHECK_THROWS_AS(visual_eq(ConstantColor{"#000000"}, SizeRange{}), Error);
}

TEST_CASE("integrated views emit one y tuple per series") {
  const auto walk = testing::run_election_walk();
  REQUIRE_FALSE(walk.failure.has_value());
  const View& merged = walk.final_canvas.view("clinton+trump");
  std::size_t ys = 0;
  for (const auto& t : tuples_of(merged)) ys += t.c == ChannelClass::PositionY;
  CHECK(ys == 2);
}

TEST_CASE("fixture relations") {
  auto lint = [](const std::string& name) { return find_relations(load_canvas_file(testing::fixture_path(name))); };

  SUBCASE("election") {
    const auto set = lint("election.canvas.json");
    REQUIRE(set.instances.size() == 2);
    CHECK(set.count(RelationKind::MultiplesSameGrouping) == 1);
    CHECK(set.count(RelationKind::Confuser) == 1);
    const auto* r5 = &set.instances[1];
    CHECK(r5->view_ids == std::array<std::string, 2>{"pollsters", "trump"});
    CHECK(r5->witness_channels() == std::vector<ChannelClass>{ChannelClass::Color});
  }
  SUBCASE("covid") {
    const auto set = lint("covid.canvas.json");
    CHECK(set.count(RelationKind::MultiplesSameGrouping) == 7);
    CHECK(set.count(RelationKind::Hallucinator) == 3);
    CHECK(set.count(RelationKind::Confuser) == 1);
    bool pies = false;
    for (const auto& r : set.instances) {
      if (r.kind == RelationKind::Hallucinator && r.view_ids[0] == "cases_pie") {
        pies = r.witness_channels() == std::vector<ChannelClass>{ChannelClass::Color};
      }
    }
    CHECK(pies);
  }
  SUBCASE("conditional multiples carry the question") {
    const auto set = lint("sales-prompt.canvas.json");
    REQUIRE(set.instances.size() == 1);
    const auto& r = set.instances[0];
    CHECK(r.kind == RelationKind::MultiplesSameGrouping);
    CHECK(r.conditional);
    REQUIRE(r.pending_confirmations().size() == 1);
  }
  SUBCASE("clean") { CHECK(lint("clean.canvas.json").instances.empty()); }
}

TEST_CASE("a verbatim duplicate is one full redundancy") {
  Canvas c = load_canvas_file(testing::fixture_path("table1/c-multiples-same-grouping.canvas.json"));
  View copy = c.views[0];
  copy.id = "copy";
  c.views.push_back(copy);
  std::size_t r1 = 0;
  for (const auto& r : find_relations(c).instances) {
    if (r.kind == RelationKind::FullRedundancy) {
      ++r1;
      CHECK(r.involves("copy"));
      CHECK(r.involves(c.views[0].id));
    }
  }
  CHECK(r1 == 1);
}

TEST_CASE("relation ids are stable and per-view lookup is complete") {
  const Canvas c = load_canvas_file(testing::fixture_path("covid.canvas.json"));
  const auto a = find_relations(c);
  const auto b = find_relations(c);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) CHECK(a.instances[i].id == b.instances[i].id);
  for (const auto& v : c.views) {
    const auto mine = relations_for_view(c, a, v.id);
    for (const auto& r : mine) CHECK(r.involves(v.id));
    std::size_t expected = 0;
    for (const auto& r : a.instances) expected += r.involves(v.id);
    CHECK(mine.size() == expected);
  }
  CHECK_THROWS_AS(relations_for_view(c, a, "nope"), Error);
}

TEST_CASE("integration groups follow chart type and x data") {
  const Canvas c = load_canvas_file(testing::fixture_path("nightingale.canvas.json"));
  const auto groups = integration_groups(find_relations(c), c);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<std::string>{"deaths", "unharmed"});
  CHECK(groups[1] == std::vector<std::string>{"disease", "wounds", "other"});
}
