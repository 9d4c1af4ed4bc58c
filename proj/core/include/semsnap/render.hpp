#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsnap/canvas.hpp"

namespace semsnap {

enum class MarkType { Bar, Line, Area, Point, Arc, Stream };

std::string_view to_string(MarkType mark);
MarkType mark_type(ChartType chart);

enum class AxisKind { Quantitative, Categorical, Temporal };

std::string_view to_string(AxisKind kind);

struct AxisSpec {
  std::string title;
  DataDomain domain;
  AxisKind kind = AxisKind::Categorical;
};

// key is the category (or group) of the mark; x is set when the x axis is
// quantitative. base is the stacking baseline.
struct MarkPoint {
  std::string key;
  std::optional<double> x;
  double value = 0.0;
  double base = 0.0;
  std::optional<std::string> color;
};

struct SeriesMark {
  std::string label;
  std::string color;
  std::vector<MarkPoint> points;
  bool negated = false;  // drawn below the axis of a mirrored chart
};

struct RenderSpec {
  std::string view_id;
  MarkType mark = MarkType::Bar;
  Composition composition = Composition::Single;
  std::vector<SeriesMark> series;
  std::optional<AxisSpec> x_axis;  // absent for arcs
  std::optional<AxisSpec> y_axis;
  std::vector<std::pair<std::string, std::string>> legend;
  bool mirror = false;
};

// Throws Error(UnknownView | EmptyData).
RenderSpec render_view(const Canvas& canvas, std::string_view view_id);

struct PlacedRender {
  RenderSpec spec;
  Cell cell;
};

// One entry per view ordered by (row, col).
std::vector<PlacedRender> render_canvas(const Canvas& canvas);

std::string render_to_json(const RenderSpec& spec);
// {"views": [{"viewId", "cell", "spec"}]}
std::string render_canvas_to_json(const std::vector<PlacedRender>& renders);

}  // namespace semsnap
