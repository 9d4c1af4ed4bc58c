#include "semsnap/render.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "json_codec.hpp"
#include "semsnap/error.hpp"

namespace semsnap {

using nlohmann::json;

std::string_view to_string(MarkType mark) {
  switch (mark) {
    case MarkType::Bar: return "bar";
    case MarkType::Line: return "line";
    case MarkType::Area: return "area";
    case MarkType::Point: return "point";
    case MarkType::Arc: return "arc";
    case MarkType::Stream: return "stream";
  }
  return "bar";
}

MarkType mark_type(ChartType chart) {
  switch (chart) {
    case ChartType::Bar: return MarkType::Bar;
    case ChartType::Line: return MarkType::Line;
    case ChartType::Area: return MarkType::Area;
    case ChartType::Pie: return MarkType::Arc;
    case ChartType::Scatter: return MarkType::Point;
    case ChartType::Streamgraph: return MarkType::Stream;
  }
  return MarkType::Bar;
}

std::string_view to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::Quantitative: return "quantitative";
    case AxisKind::Categorical: return "categorical";
    case AxisKind::Temporal: return "temporal";
  }
  return "categorical";
}

namespace {

constexpr const char* kFallbackColor = "#7f7f7f";

int hex_channel(const std::string& hex, int i) { return std::stoi(hex.substr(1 + 2 * i, 2), nullptr, 16); }

std::string lerp_color(const std::string& lo, const std::string& hi, double t) {
  t = std::clamp(t, 0.0, 1.0);
  int rgb[3];
  for (int i = 0; i < 3; ++i) {
    rgb[i] = static_cast<int>(std::lround(hex_channel(lo, i) + t * (hex_channel(hi, i) - hex_channel(lo, i))));
  }
  return fmt::format("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2]);
}

std::optional<std::string> scheme_lookup(const ColorScheme& s, const std::string& key) {
  for (const auto& [k, c] : s.assignment) {
    if (k == key) return c;
  }
  return std::nullopt;
}

// Colors a mark from the view's color binding: categorical schemes by key,
// continuous schemes by value within the binding's domain.
std::optional<std::string> point_color(const ChannelBinding* color, const std::string& key, double value) {
  if (!color || !color->mapping) return std::nullopt;
  const auto* scheme = std::get_if<ColorScheme>(&color->visual);
  if (!scheme || scheme->assignment.empty()) return std::nullopt;
  if (scheme->kind == SchemeKind::Categorical) return scheme_lookup(*scheme, key);
  double t = 0.0;
  if (color->domain) {
    if (const auto* q = std::get_if<QuantitativeDomain>(&*color->domain); q && q->max > q->min) {
      t = (value - q->min) / (q->max - q->min);
    }
  }
  const auto& stops = scheme->assignment;
  if (stops.size() == 1) return stops.front().second;
  const double scaled = t * static_cast<double>(stops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(scaled), stops.size() - 2);
  return lerp_color(stops[i].second, stops[i + 1].second, scaled - static_cast<double>(i));
}

AxisSpec axis_for(const Dataset& dataset, const ChannelBinding& b, std::string title) {
  AxisSpec axis;
  axis.title = std::move(title);
  axis.domain = b.domain ? *b.domain : DataDomain{QuantitativeDomain{}};
  if (std::holds_alternative<QuantitativeDomain>(axis.domain)) {
    axis.kind = AxisKind::Quantitative;
  } else {
    const ColumnSpec* spec = b.mapping ? dataset.column(b.mapping->column) : nullptr;
    axis.kind = spec && spec->type == ColumnType::Temporal ? AxisKind::Temporal : AxisKind::Categorical;
  }
  return axis;
}

std::string base_color(const ChannelBinding* color) {
  if (!color) return kFallbackColor;
  return representative_color(color->visual).value_or(kFallbackColor);
}

}  // namespace

RenderSpec render_view(const Canvas& canvas, std::string_view view_id) {
  const View& view = canvas.view(view_id);
  if (!canvas.dataset || canvas.dataset->rows.empty()) {
    throw Error(ErrorCode::EmptyData, fmt::format("view '{}' has no data to render", view.id));
  }
  const Dataset& data = *canvas.dataset;
  RenderSpec spec;
  spec.view_id = view.id;
  spec.mark = mark_type(view.chart);
  spec.composition = view.composition;
  spec.mirror = view.composition == Composition::Mirrored;

  const ChannelBinding* x = view.binding(ChannelClass::PositionX);
  const ChannelBinding* y = view.binding(ChannelClass::PositionY);
  const ChannelBinding* color = view.binding(ChannelClass::Color);
  if (const auto* scheme = color ? std::get_if<ColorScheme>(&color->visual) : nullptr;
      scheme && scheme->kind == SchemeKind::Categorical) {
    spec.legend = scheme->assignment;
  }

  if (view.chart == ChartType::Pie) {
    const ChannelBinding* angle = view.binding(ChannelClass::Angle);
    if (!angle || !angle->mapping) throw Error(ErrorCode::EmptyMapping, fmt::format("pie '{}' has no angle data", view.id));
    const SeriesTable t = group_aggregate(data, view.grouping, *angle->mapping);
    SeriesMark s{angle->mapping->canonical(), base_color(color), {}, false};
    for (std::size_t i = 0; i < t.keys.size(); ++i) {
      MarkPoint p{t.keys[i], std::nullopt, std::fabs(t.values[i]), 0.0, point_color(color, t.keys[i], t.values[i])};
      if (!p.color && color) {
        if (const auto* scheme = std::get_if<ColorScheme>(&color->visual)) p.color = scheme_lookup(*scheme, t.keys[i]);
      }
      s.points.push_back(std::move(p));
    }
    spec.series.push_back(std::move(s));
    return spec;
  }

  if (!x || !y) throw Error(ErrorCode::EmptyMapping, fmt::format("view '{}' needs x and y", view.id));
  spec.x_axis = axis_for(data, *x, x->mapping ? x->mapping->canonical() : "");
  spec.y_axis = axis_for(data, *y, y->mapping ? y->mapping->canonical() : "");
  const auto secondary = secondary_key(view);
  const bool numeric_x = x->mapping && x->mapping->column != view.grouping && !secondary;

  if (view.composition != Composition::Single) {
    const std::string key_column = secondary.value_or(view.grouping);
    std::vector<double> running;
    std::string title;
    for (std::size_t si = 0; si < view.series.size(); ++si) {
      const Series& s = view.series[si];
      const SeriesTable t = group_aggregate(data, key_column, s.y_field);
      if (running.empty()) running.assign(t.keys.size(), 0.0);
      SeriesMark mark{s.label, representative_color(s.color).value_or(kFallbackColor), {}, false};
      mark.negated = spec.mirror && si == 1;
      for (std::size_t i = 0; i < t.keys.size(); ++i) {
        MarkPoint p{t.keys[i], std::nullopt, t.values[i], 0.0, std::nullopt};
        if (view.composition == Composition::Stacked && i < running.size()) {
          p.base = running[i];
          running[i] += t.values[i];
        }
        mark.points.push_back(std::move(p));
      }
      spec.series.push_back(std::move(mark));
      title += (title.empty() ? "" : ", ") + s.label;
    }
    spec.y_axis->title = title;
    spec.legend.clear();
    for (const auto& s : spec.series) spec.legend.emplace_back(s.label, s.color);
    return spec;
  }

  if (!y->mapping) throw Error(ErrorCode::EmptyMapping, fmt::format("view '{}' has no y data", view.id));
  if (secondary) {
    // One layer per group, one mark per x key.
    const GridTable grid = group_aggregate2(data, view.grouping, *secondary, *y->mapping);
    std::vector<double> running(grid.inner.size(), 0.0);
    const bool stacked = view.chart == ChartType::Streamgraph;
    for (std::size_t i = 0; i < grid.outer.size(); ++i) {
      SeriesMark mark{grid.outer[i], base_color(color), {}, false};
      if (color && color->mapping && color->mapping->column == view.grouping) {
        if (const auto* scheme = std::get_if<ColorScheme>(&color->visual)) {
          mark.color = scheme_lookup(*scheme, grid.outer[i]).value_or(mark.color);
        }
      }
      for (std::size_t j = 0; j < grid.inner.size(); ++j) {
        if (!grid.values[i][j]) continue;
        const double v = *grid.values[i][j];
        MarkPoint p{grid.inner[j], std::nullopt, v, stacked ? running[j] : 0.0, std::nullopt};
        if (color && color->mapping && color->mapping->column != view.grouping) {
          p.color = point_color(color, grid.inner[j], v);
        }
        if (stacked) running[j] += v;
        mark.points.push_back(std::move(p));
      }
      spec.series.push_back(std::move(mark));
    }
    return spec;
  }

  const SeriesTable t = group_aggregate(data, view.grouping, *y->mapping);
  std::optional<SeriesTable> xs;
  if (numeric_x) xs = group_aggregate(data, view.grouping, *x->mapping);
  std::optional<SeriesTable> colors;
  if (color && color->mapping && color->mapping->aggregate != Aggregate::None) {
    colors = group_aggregate(data, view.grouping, *color->mapping);
  }
  SeriesMark mark{y->mapping->canonical(), base_color(color), {}, false};
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    MarkPoint p{t.keys[i], std::nullopt, t.values[i], 0.0, std::nullopt};
    if (xs) p.x = xs->values[i];
    if (color && color->mapping) p.color = point_color(color, t.keys[i], colors ? colors->values[i] : t.values[i]);
    mark.points.push_back(std::move(p));
  }
  spec.series.push_back(std::move(mark));
  return spec;
}

std::vector<PlacedRender> render_canvas(const Canvas& canvas) {
  std::vector<PlacedRender> out;
  for (const auto& v : canvas.views) out.push_back({render_view(canvas, v.id), v.cell});
  std::stable_sort(out.begin(), out.end(), [](const PlacedRender& a, const PlacedRender& b) {
    return std::tie(a.cell.row, a.cell.col) < std::tie(b.cell.row, b.cell.col);
  });
  return out;
}

namespace detail {

namespace {

json domain_json(const DataDomain& d) {
  if (const auto* q = std::get_if<QuantitativeDomain>(&d)) return {{"type", "quantitative"}, {"min", q->min}, {"max", q->max}};
  return {{"type", "categorical"}, {"values", std::get<CategoricalDomain>(d).values}};
}

json axis_json(const std::optional<AxisSpec>& a) {
  if (!a) return nullptr;
  return {{"title", a->title}, {"kind", to_string(a->kind)}, {"domain", domain_json(a->domain)}};
}

}  // namespace

json render_to_json_value(const RenderSpec& spec) {
  json series = json::array();
  for (const auto& s : spec.series) {
    json points = json::array();
    for (const auto& p : s.points) {
      json point{{"key", p.key}, {"value", p.value}};
      if (p.x) point["x"] = *p.x;
      if (p.base != 0.0) point["base"] = p.base;
      if (p.color) point["color"] = *p.color;
      points.push_back(point);
    }
    series.push_back({{"label", s.label}, {"color", s.color}, {"negated", s.negated}, {"points", points}});
  }
  json legend = json::array();
  for (const auto& [label, color] : spec.legend) legend.push_back({{"label", label}, {"color", color}});
  return {{"viewId", spec.view_id},
          {"markType", to_string(spec.mark)},
          {"composition", to_string(spec.composition)},
          {"seriesMarks", series},
          {"axes", {{"x", axis_json(spec.x_axis)}, {"y", axis_json(spec.y_axis)}}},
          {"legend", legend},
          {"mirror", spec.mirror}};
}

json renders_to_json_value(const std::vector<PlacedRender>& renders) {
  json views = json::array();
  for (const auto& r : renders) {
    views.push_back({{"viewId", r.spec.view_id},
                     {"cell", {{"row", r.cell.row}, {"col", r.cell.col}, {"rowSpan", r.cell.row_span}, {"colSpan", r.cell.col_span}}},
                     {"spec", render_to_json_value(r.spec)}});
  }
  return {{"views", views}};
}

}  // namespace detail

std::string render_to_json(const RenderSpec& spec) { return detail::render_to_json_value(spec).dump(2) + "\n"; }

std::string render_canvas_to_json(const std::vector<PlacedRender>& renders) {
  return detail::renders_to_json_value(renders).dump(2) + "\n";
}

}  // namespace semsnap
