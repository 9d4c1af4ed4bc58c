#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/equivalence.hpp"
#include "semsnap/types.hpp"

namespace semsnap {

struct ChannelBinding {
  std::string raw_channel;
  ChannelClass cls = ChannelClass::PositionX;
  DataMapping mapping;
  std::optional<DataDomain> domain;  // present iff mapping is present
  VisualOutput visual;

  friend bool operator==(const ChannelBinding&, const ChannelBinding&) = default;
};

struct Series {
  std::string label;
  FieldRef y_field;
  VisualOutput color;

  friend bool operator==(const Series&, const Series&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  int row_span = 1;
  int col_span = 1;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct View {
  std::string id;
  ChartType chart = ChartType::Bar;
  std::string grouping;
  Composition composition = Composition::Single;
  std::vector<Series> series;            // empty for single views
  std::vector<ChannelBinding> bindings;  // at most one per class, sorted by class
  Cell cell;

  const ChannelBinding* binding(ChannelClass cls) const;
  ChannelBinding* binding(ChannelClass cls);

  friend bool operator==(const View&, const View&) = default;
};

// One (G, C, D, V) tuple of a view. Derived; never persisted.
struct GcdvTuple {
  std::string g;
  ChannelClass c = ChannelClass::PositionX;
  DataMapping d;
  VisualOutput v;
  std::string view_id;
};

// Maps a chart-native channel name onto its class. Stroke color of unfilled
// marks and fill color of filled marks both map to Color.
// Throws Error(UnknownChannel) when the channel is not valid for the chart.
ChannelClass channel_class(ChartType chart, std::string_view raw_channel);

// Raw channel names accepted for a chart type, in canonical order.
const std::vector<std::string_view>& raw_channels(ChartType chart);

// The raw channel name used for a class on a chart, if the chart has one.
std::optional<std::string_view> raw_channel_for(ChartType chart, ChannelClass cls);

// One tuple per binding. Integrated views emit one PositionY tuple per series.
std::vector<GcdvTuple> tuples_of(const View& view);

TriState grouping_eq(const View& a, const View& b, const EquivalenceRegistry& registry);

// d-equality of two tuples from distinct views, given the grouping equality.
TriState data_eq(const GcdvTuple& a, const GcdvTuple& b, TriState grouping,
                 const EquivalenceRegistry& registry);

// v-equality. Throws Error(ClassMismatch) for outputs of unrelated classes.
bool visual_eq(const VisualOutput& a, const VisualOutput& b);

// Relative tolerance used when comparing numeric ranges.
inline constexpr double kRangeTolerance = 1e-9;

// The channel class a visual output variant belongs to: positional ranges
// serve PositionX/PositionY/Angle, colors serve Color, sizes serve Size.
bool visual_fits_class(const VisualOutput& visual, ChannelClass cls);

// A representative single color for a color output (scheme: last stop).
std::optional<std::string> representative_color(const VisualOutput& visual);

// Colors a color output can paint with.
std::vector<std::string> colors_of(const VisualOutput& visual);

}  // namespace semsnap
