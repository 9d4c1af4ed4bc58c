#include "doctest.h"

#include <json.hpp>

#include "case_studies.hpp"
#include "semsnap/config.hpp"
#include "semsnap/document.hpp"
#include "semsnap/error.hpp"
#include "semsnap/relations.hpp"
#include "semsnap/render.hpp"

using namespace semsnap;
using nlohmann::json;

namespace {

const std::string kInline = R"({
  "version": 1,
  "dataset": {
    "csv": "k,a,b\nx,1,4\ny,2,5\nx,3,6\n",
    "columns": [{"name": "k", "type": "nominal"}, {"name": "a", "type": "quantitative"},
                {"name": "b", "type": "quantitative"}]
  },
  "views": [
    {"id": "one", "chart": "bar", "grouping": "k",
     "channels": {"x": {"field": "k", "visual": {"type": "position", "min": 0, "max": 100}},
                  "y": {"field": "a", "aggregate": "sum", "visual": {"type": "position", "min": 80, "max": 0}},
                  "fill": {"visual": {"type": "constant", "color": "#1f77b4"}}}},
    {"id": "two", "chart": "bar", "grouping": "k",
     "channels": {"x": {"field": "k", "visual": {"type": "position", "min": 0, "max": 100}},
                  "y": {"field": "b", "aggregate": "sum", "visual": {"type": "position", "min": 80, "max": 0}},
                  "fill": {"visual": {"type": "constant", "color": "#ff7f0e"}}}}
  ]
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kInline;
  s.replace(s.find(from), from.size(), to);
  return s;
}

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse_canvas(text);
  } catch (const ValidationError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST_CASE("inline csv documents parse, compute domains and auto-place cells") {
  const Canvas c = parse_canvas(kInline);
  REQUIRE(c.views.size() == 2);
  const auto& y = std::get<QuantitativeDomain>(*c.view("one").binding(ChannelClass::PositionY)->domain);
  CHECK(y.min == 0.0);
  CHECK(y.max == 4.0);
  CHECK(std::get<CategoricalDomain>(*c.view("one").binding(ChannelClass::PositionX)->domain).values ==
        std::vector<std::string>{"x", "y"});
  CHECK(c.view("two").cell == Cell{0, 1, 1, 1});
  const auto set = find_relations(c);
  REQUIRE(set.instances.size() == 1);
  CHECK(set.instances[0].kind == RelationKind::MultiplesSameGrouping);
  CHECK(set.instances[0].conditional);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    load_canvas_file(testing::fixture_path("malformed.canvas.json"));
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 37);
  }
}

TEST_CASE("validation collects every issue") {
  CHECK_FALSE(issues_of(with("\"chart\": \"bar\", \"grouping\": \"k\",\n     \"channels\": {\"x\": {\"field\": \"k\", \"visual\": {\"type\": \"position\", \"min\": 0, \"max\": 100}},\n                  \"y\": {\"field\": \"b\"",
                             "\"chart\": \"bar\", \"grouping\": \"k\",\n     \"channels\": {\"x\": {\"field\": \"k\", \"visual\": {\"type\": \"position\", \"min\": 0, \"max\": 100}},\n                  \"y\": {\"field\": \"zzz\""))
                  .empty());
  CHECK_FALSE(issues_of(with("\"id\": \"two\"", "\"id\": \"one\"")).empty());
  CHECK_FALSE(issues_of(with("\"fill\": {\"visual\": {\"type\": \"constant\", \"color\": \"#ff7f0e\"}}",
                             "\"angle\": {\"visual\": {\"type\": \"constant\", \"color\": \"#ff7f0e\"}}"))
                  .empty());
  CHECK_FALSE(issues_of(with("#ff7f0e", "orange")).empty());
  CHECK_FALSE(issues_of(with("\"version\": 1", "\"version\": 2")).empty());
  const auto many = issues_of(with("\"chart\": \"bar\", \"grouping\": \"k\"", "\"chart\": \"donut\", \"grouping\": \"nope\""));
  CHECK(many.size() >= 1);
}

TEST_CASE("round trip is exact and byte stable") {
  const Canvas c = parse_canvas(kInline);
  const std::string once = serialize_canvas(c);
  const Canvas again = parse_canvas(once);
  CHECK(again.views == c.views);
  CHECK(serialize_canvas(again) == once);
  CHECK(once.back() == '\n');
}

TEST_CASE("integrated views and registries survive a round trip") {
  const auto walk = testing::run_covid_walk();
  REQUIRE_FALSE(walk.failure.has_value());
  const std::string text = serialize_canvas(walk.final_canvas);
  const Canvas back = parse_canvas(text, std::filesystem::path(testing::fixture_path("covid.canvas.json")).parent_path());
  CHECK(back.views == walk.final_canvas.views);
  CHECK(back.registry == walk.final_canvas.registry);
  CHECK(serialize_canvas(back) == text);
}

TEST_CASE("lint report formats") {
  const Canvas c = load_canvas_file(testing::fixture_path("election.canvas.json"));
  const auto set = find_relations(c);
  const std::string text = format_lint_report(c, set, ReportStyle::Text);
  CHECK(text.find("R5 [pollsters,trump] Color: confuser: ") != std::string::npos);
  CHECK(text.find("R3a [clinton,trump] PositionY: multiples: ") != std::string::npos);

  const json j = json::parse(format_lint_report(c, set, ReportStyle::Json));
  CHECK(j["count"] == 2);
  REQUIRE(j["entries"].size() == 2);
  const auto& e = j["entries"][1];
  CHECK(e["code"] == "R5");
  CHECK(e["relation"] == "confuser");
  CHECK(e["viewIds"] == json::array({"pollsters", "trump"}));
  CHECK(e["channels"] == json::array({"Color"}));
  CHECK(e["conditional"] == false);
  CHECK(e["suggestedOperations"].size() >= 1);

  const Canvas clean = load_canvas_file(testing::fixture_path("clean.canvas.json"));
  CHECK(format_lint_report(clean, find_relations(clean), ReportStyle::Text) == "no relations found\n");
}

TEST_CASE("plan listing json counts all four categories") {
  const Canvas c = load_canvas_file(testing::fixture_path("election.canvas.json"));
  const json j = json::parse(format_plans(plan_operations(c, find_relations(c), "trump"), ReportStyle::Json));
  CHECK(j["operations"].size() == 4);
  CHECK(j["categories"]["homogenize-data"] == 1);
  CHECK(j["categories"]["homogenize-style"] == 0);
  CHECK(j["categories"]["differentiate"] == 1);
  CHECK(j["categories"]["integrate"] == 2);
}

TEST_CASE("render specs") {
  const auto walk = testing::run_election_walk();
  REQUIRE_FALSE(walk.failure.has_value());
  const RenderSpec mirror = render_view(walk.final_canvas, "clinton+trump");
  CHECK(mirror.mark == MarkType::Line);
  CHECK(mirror.mirror);
  REQUIRE(mirror.series.size() == 2);
  CHECK_FALSE(mirror.series[0].negated);
  CHECK(mirror.series[1].negated);
  CHECK(mirror.legend.size() == 2);

  const json j = json::parse(render_to_json(mirror));
  CHECK(j["viewId"] == "clinton+trump");
  CHECK(j["markType"] == "line");
  CHECK(j["composition"] == "mirrored");
  CHECK(j["seriesMarks"].size() == 2);
  CHECK(j["mirror"] == true);
  CHECK(j["axes"].contains("x"));

  const auto placed = render_canvas(walk.final_canvas);
  REQUIRE(placed.size() == 2);
  CHECK(std::tie(placed[0].cell.row, placed[0].cell.col) <= std::tie(placed[1].cell.row, placed[1].cell.col));
  const json all = json::parse(render_canvas_to_json(placed));
  CHECK(all["views"].size() == 2);

  const Canvas covid = load_canvas_file(testing::fixture_path("covid.canvas.json"));
  const RenderSpec pie = render_view(covid, "cases_pie");
  CHECK(pie.mark == MarkType::Arc);
  CHECK_FALSE(pie.x_axis.has_value());
  CHECK_THROWS_AS(render_view(covid, "nope"), Error);
}

TEST_CASE("config parsing") {
  const EngineConfig c = parse_config(R"({"weights": {"R5": 4, "conditionalFactor": 0.25},
                                          "palette": {"constants": ["#000000", "#ffffff"]}})");
  CHECK(c.weights.weight(RelationKind::Confuser) == 4.0);
  CHECK(c.weights.weight(RelationKind::FullRedundancy) == 3.0);
  CHECK(c.weights.conditional_factor == 0.25);
  CHECK(c.palette.constants == std::vector<std::string>{"#000000", "#ffffff"});
  CHECK_FALSE(c.palette.categorical.empty());
  CHECK_THROWS_AS(parse_config("{\"weights\": {\"R9\": 1}}"), Error);
  CHECK_THROWS_AS(parse_config("{\"bogus\": 1}"), Error);
  CHECK_THROWS_AS(parse_config("{\"palette\": {\"constants\": [\"red\"]}}"), Error);
  CHECK_THROWS_AS(parse_config("{\"weights\": {\"R1\": -1}}"), Error);
  CHECK_THROWS_AS(parse_config("not json"), Error);
}

TEST_CASE("moving a document rebases its relative dataset path") {
  const auto fixtures = std::filesystem::path(testing::fixture_path("election.canvas.json")).parent_path();
  const Canvas c = load_canvas_file(fixtures / "election.canvas.json");
  CHECK(rebase_dataset_source(c, fixtures, fixtures / "table1").dataset->source == "../election.csv");
  CHECK(rebase_dataset_source(c, fixtures, fixtures).dataset->source == "election.csv");
  const Canvas inline_csv = parse_canvas(kInline);
  CHECK(rebase_dataset_source(inline_csv, fixtures, "/tmp").dataset == inline_csv.dataset);
}
