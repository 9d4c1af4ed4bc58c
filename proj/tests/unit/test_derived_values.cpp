// Reference numbers come from tests/oracle/derive_values.py (pandas).

#include "doctest.h"

#include <map>

#include "case_studies.hpp"
#include "semsnap/dataset.hpp"
#include "semsnap/document.hpp"
#include "semsnap/render.hpp"

using namespace semsnap;

namespace {

QuantitativeDomain quant(const View& v, ChannelClass cls) {
  return std::get<QuantitativeDomain>(*v.binding(cls)->domain);
}

}  // namespace

TEST_CASE("nightingale bar domains") {
  const Canvas c = load_canvas_file(testing::fixture_path("nightingale.canvas.json"));
  CHECK(quant(c.view("disease"), ChannelClass::PositionY).max == doctest::Approx(2788.0));
  CHECK(quant(c.view("wounds"), ChannelClass::PositionY).max == doctest::Approx(289.0));
  CHECK(quant(c.view("other"), ChannelClass::PositionY).max == doctest::Approx(321.0));
  CHECK(quant(c.view("deaths"), ChannelClass::PositionY).max == doctest::Approx(3279.0));
  CHECK(quant(c.view("unharmed"), ChannelClass::PositionY).max == doctest::Approx(39231.0));
  CHECK(quant(c.view("disease"), ChannelClass::PositionY).min == doctest::Approx(0.0));
}

TEST_CASE("stacking the nightingale bars widens the y domain to the monthly totals") {
  const auto walk = testing::run_nightingale_walk();
  REQUIRE_FALSE(walk.failure.has_value());
  const View& stacked = walk.final_canvas.view("disease+wounds+other");
  CHECK(stacked.composition == Composition::Stacked);
  const auto y = quant(stacked, ChannelClass::PositionY);
  CHECK(y.min == doctest::Approx(0.0));
  CHECK(y.max == doctest::Approx(3279.0));

  const RenderSpec spec = render_view(walk.final_canvas, stacked.id);
  REQUIRE(spec.series.size() == 3);
  double top = 0.0;
  for (const auto& p : spec.series.back().points) top = std::max(top, p.base + p.value);
  CHECK(top == doctest::Approx(3279.0));
  CHECK(spec.series.front().points.size() == 12);
}

TEST_CASE("covid pie arcs and angle domain") {
  const Canvas c = load_canvas_file(testing::fixture_path("covid.canvas.json"));
  const auto angle = quant(c.view("cases_pie"), ChannelClass::Angle);
  CHECK(angle.min == doctest::Approx(0.0));
  CHECK(angle.max == doctest::Approx(69322.0));

  std::map<std::string, double> arcs;
  for (const auto& s : render_view(c, "cases_pie").series) {
    for (const auto& p : s.points) arcs[p.key] += p.value;
  }
  CHECK(arcs.at("female") == doctest::Approx(32675.0));
  CHECK(arcs.at("male") == doctest::Approx(36647.0));

  const auto deaths = group_aggregate(*c.dataset, "gender", FieldRef{"deaths", Aggregate::Sum});
  REQUIRE(deaths.keys == std::vector<std::string>{"female", "male"});
  CHECK(deaths.values[0] == doctest::Approx(513.0));
  CHECK(deaths.values[1] == doctest::Approx(719.0));
}

TEST_CASE("covid deaths by age group and streamgraph domain") {
  const Canvas c = load_canvas_file(testing::fixture_path("covid.canvas.json"));
  const auto t = group_aggregate(*c.dataset, "age_group", FieldRef{"deaths", Aggregate::Sum});
  const std::map<std::string, double> expected = {
      {"0-14", 0.0}, {"15-34", 42.0}, {"35-59", 184.0}, {"60-79", 414.0}, {"80+", 592.0}};
  REQUIRE(t.keys.size() == expected.size());
  for (std::size_t i = 0; i < t.keys.size(); ++i) CHECK(t.values[i] == doctest::Approx(expected.at(t.keys[i])));
  const auto y = quant(c.view("deaths_stream"), ChannelClass::PositionY);
  CHECK(y.min == doctest::Approx(0.0));
  CHECK(y.max == doctest::Approx(212.0));
}

TEST_CASE("election line domains") {
  const Canvas c = load_canvas_file(testing::fixture_path("election.canvas.json"));
  const auto clinton = quant(c.view("clinton"), ChannelClass::PositionY);
  CHECK(clinton.min == doctest::Approx(41.3));
  CHECK(clinton.max == doctest::Approx(46.43333333333334));
  const auto trump = quant(c.view("trump"), ChannelClass::PositionY);
  CHECK(trump.min == doctest::Approx(37.96666666666667));
  CHECK(trump.max == doctest::Approx(42.166666666666664));
  CHECK(group_keys(*c.dataset, "date").size() == 12);
  CHECK(group_keys(*c.dataset, "pollster").size() == 5);
}
