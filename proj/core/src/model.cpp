#include "semsnap/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "semsnap/error.hpp"

namespace semsnap {

std::string_view to_string(Aggregate aggregate) {
  switch (aggregate) {
    case Aggregate::None: return "none";
    case Aggregate::Sum: return "sum";
    case Aggregate::Mean: return "mean";
    case Aggregate::Count: return "count";
    case Aggregate::Min: return "min";
    case Aggregate::Max: return "max";
  }
  return "none";
}

std::optional<Aggregate> parse_aggregate(std::string_view text) {
  if (text == "none") return Aggregate::None;
  if (text == "sum") return Aggregate::Sum;
  if (text == "mean") return Aggregate::Mean;
  if (text == "count") return Aggregate::Count;
  if (text == "min") return Aggregate::Min;
  if (text == "max") return Aggregate::Max;
  return std::nullopt;
}

std::string FieldRef::canonical() const {
  if (aggregate == Aggregate::None) return column;
  return fmt::format("{}({})", to_string(aggregate), column);
}

std::optional<FieldRef> parse_field_ref(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto open = text.find('(');
  const auto aggregate = open == std::string_view::npos ? std::nullopt : parse_aggregate(text.substr(0, open));
  // Anything that is not "agg(column)" is a bare column name, parentheses included.
  if (!aggregate || *aggregate == Aggregate::None || text.back() != ')') {
    return FieldRef{std::string(text), Aggregate::None};
  }
  std::string column(text.substr(open + 1, text.size() - open - 2));
  if (column.empty()) return std::nullopt;
  return FieldRef{std::move(column), *aggregate};
}

std::string_view to_string(ChannelClass cls) {
  switch (cls) {
    case ChannelClass::PositionX: return "PositionX";
    case ChannelClass::PositionY: return "PositionY";
    case ChannelClass::Color: return "Color";
    case ChannelClass::Size: return "Size";
    case ChannelClass::Angle: return "Angle";
  }
  return "PositionX";
}

std::optional<ChannelClass> parse_channel_class(std::string_view text) {
  for (auto cls : kAllChannelClasses) {
    if (to_string(cls) == text) return cls;
  }
  return std::nullopt;
}

std::string_view to_string(ChartType chart) {
  switch (chart) {
    case ChartType::Bar: return "bar";
    case ChartType::Line: return "line";
    case ChartType::Area: return "area";
    case ChartType::Pie: return "pie";
    case ChartType::Scatter: return "scatter";
    case ChartType::Streamgraph: return "streamgraph";
  }
  return "bar";
}

std::optional<ChartType> parse_chart_type(std::string_view text) {
  for (auto chart : {ChartType::Bar, ChartType::Line, ChartType::Area, ChartType::Pie, ChartType::Scatter,
                     ChartType::Streamgraph}) {
    if (to_string(chart) == text) return chart;
  }
  return std::nullopt;
}

std::string_view to_string(Composition composition) {
  switch (composition) {
    case Composition::Single: return "single";
    case Composition::Grouped: return "grouped";
    case Composition::Stacked: return "stacked";
    case Composition::Mirrored: return "mirrored";
    case Composition::Overlaid: return "overlaid";
  }
  return "single";
}

std::optional<Composition> parse_composition(std::string_view text) {
  for (auto c : {Composition::Single, Composition::Grouped, Composition::Stacked, Composition::Mirrored,
                 Composition::Overlaid}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view to_string(TriState value) {
  switch (value) {
    case TriState::Equal: return "equal";
    case TriState::Different: return "different";
    case TriState::NeedsConfirmation: return "needs-confirmation";
  }
  return "different";
}

bool is_valid_hex_color(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') return false;
  return std::all_of(hex.begin() + 1, hex.end(), [](char ch) { return std::isxdigit(static_cast<unsigned char>(ch)); });
}

namespace {

struct ChannelEntry {
  std::string_view raw;
  ChannelClass cls;
};

const std::vector<ChannelEntry>& channel_table(ChartType chart) {
  static const std::map<ChartType, std::vector<ChannelEntry>> table = {
      {ChartType::Bar, {{"x", ChannelClass::PositionX}, {"y", ChannelClass::PositionY}, {"fill", ChannelClass::Color}}},
      {ChartType::Line, {{"x", ChannelClass::PositionX}, {"y", ChannelClass::PositionY}, {"stroke", ChannelClass::Color}}},
      {ChartType::Area, {{"x", ChannelClass::PositionX}, {"y", ChannelClass::PositionY}, {"fill", ChannelClass::Color}}},
      {ChartType::Pie, {{"angle", ChannelClass::Angle}, {"fill", ChannelClass::Color}}},
      {ChartType::Scatter,
       {{"x", ChannelClass::PositionX},
        {"y", ChannelClass::PositionY},
        {"fill", ChannelClass::Color},
        {"size", ChannelClass::Size}}},
      {ChartType::Streamgraph,
       {{"x", ChannelClass::PositionX}, {"y", ChannelClass::PositionY}, {"fill", ChannelClass::Color}}},
  };
  return table.at(chart);
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

bool close(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kRangeTolerance * scale;
}

bool constant_hits_scheme(const ConstantColor& constant, const ColorScheme& scheme) {
  if (scheme.kind != SchemeKind::Categorical) return false;
  const auto hex = lower(constant.hex);
  return std::any_of(scheme.assignment.begin(), scheme.assignment.end(),
                     [&](const auto& entry) { return lower(entry.second) == hex; });
}

bool schemes_collide(const ColorScheme& a, const ColorScheme& b) {
  if (a.kind == b.kind) return false;
  for (const auto& [ka, ca] : a.assignment) {
    for (const auto& [kb, cb] : b.assignment) {
      if (lower(ca) == lower(cb)) return true;
    }
  }
  return false;
}

bool same_scheme(const ColorScheme& a, const ColorScheme& b) {
  if (a.id != b.id || a.kind != b.kind || a.assignment.size() != b.assignment.size()) return false;
  for (std::size_t i = 0; i < a.assignment.size(); ++i) {
    if (a.assignment[i].first != b.assignment[i].first) return false;
    if (lower(a.assignment[i].second) != lower(b.assignment[i].second)) return false;
  }
  return true;
}

enum class VisualFamily { Position, Color, Size };

VisualFamily family(const VisualOutput& v) {
  if (std::holds_alternative<PositionRange>(v)) return VisualFamily::Position;
  if (std::holds_alternative<SizeRange>(v)) return VisualFamily::Size;
  return VisualFamily::Color;
}

}  // namespace

const std::vector<std::string_view>& raw_channels(ChartType chart) {
  static const std::map<ChartType, std::vector<std::string_view>> names = [] {
    std::map<ChartType, std::vector<std::string_view>> out;
    for (auto c : {ChartType::Bar, ChartType::Line, ChartType::Area, ChartType::Pie, ChartType::Scatter,
                   ChartType::Streamgraph}) {
      for (const auto& entry : channel_table(c)) out[c].push_back(entry.raw);
    }
    return out;
  }();
  return names.at(chart);
}

ChannelClass channel_class(ChartType chart, std::string_view raw_channel) {
  for (const auto& entry : channel_table(chart)) {
    if (entry.raw == raw_channel) return entry.cls;
  }
  throw Error(ErrorCode::UnknownChannel,
              fmt::format("channel '{}' is not valid for {} charts", raw_channel, to_string(chart)));
}

std::optional<std::string_view> raw_channel_for(ChartType chart, ChannelClass cls) {
  for (const auto& entry : channel_table(chart)) {
    if (entry.cls == cls) return entry.raw;
  }
  return std::nullopt;
}

const ChannelBinding* View::binding(ChannelClass cls) const {
  auto it = std::find_if(bindings.begin(), bindings.end(), [cls](const ChannelBinding& b) { return b.cls == cls; });
  return it == bindings.end() ? nullptr : &*it;
}

ChannelBinding* View::binding(ChannelClass cls) {
  auto it = std::find_if(bindings.begin(), bindings.end(), [cls](const ChannelBinding& b) { return b.cls == cls; });
  return it == bindings.end() ? nullptr : &*it;
}

std::vector<GcdvTuple> tuples_of(const View& view) {
  std::vector<GcdvTuple> out;
  out.reserve(view.bindings.size() + view.series.size());
  for (const auto& b : view.bindings) {
    if (b.cls == ChannelClass::PositionY && view.composition != Composition::Single) {
      for (const auto& s : view.series) {
        out.push_back({view.grouping, ChannelClass::PositionY, s.y_field, b.visual, view.id});
      }
      continue;
    }
    out.push_back({view.grouping, b.cls, b.mapping, b.visual, view.id});
  }
  return out;
}

TriState grouping_eq(const View& a, const View& b, const EquivalenceRegistry& registry) {
  if (a.grouping == b.grouping) return TriState::Equal;
  return registry.same(a.grouping, b.grouping) ? TriState::Equal : TriState::Different;
}

TriState data_eq(const GcdvTuple& a, const GcdvTuple& b, TriState grouping, const EquivalenceRegistry& registry) {
  if (!a.d && !b.d) return grouping == TriState::Equal ? TriState::Equal : TriState::Different;
  if (!a.d || !b.d) return TriState::Different;
  if (*a.d == *b.d) return TriState::Equal;
  const TriState recorded = registry.compare(a.d->canonical(), b.d->canonical());
  if (recorded != TriState::NeedsConfirmation) return recorded;
  // Only two aggregates of the same kind over different columns can plausibly
  // be one quantity ("sum(Europe)" vs "sum(North America)"); anything else
  // differs outright.
  if (a.d->aggregate == b.d->aggregate && a.d->aggregate != Aggregate::None &&
      a.d->aggregate != Aggregate::Count) {
    return TriState::NeedsConfirmation;
  }
  return TriState::Different;
}

bool visual_eq(const VisualOutput& a, const VisualOutput& b) {
  if (family(a) != family(b)) {
    throw Error(ErrorCode::ClassMismatch, "visual outputs belong to different channel classes");
  }
  if (const auto* pa = std::get_if<PositionRange>(&a)) {
    const auto& pb = std::get<PositionRange>(b);
    return close(pa->axis_min, pb.axis_min) && close(pa->axis_max, pb.axis_max);
  }
  if (const auto* sa = std::get_if<SizeRange>(&a)) {
    const auto& sb = std::get<SizeRange>(b);
    return close(sa->min, sb.min) && close(sa->max, sb.max);
  }
  const auto* ca = std::get_if<ConstantColor>(&a);
  const auto* cb = std::get_if<ConstantColor>(&b);
  if (ca && cb) return lower(ca->hex) == lower(cb->hex);
  if (ca) return constant_hits_scheme(*ca, std::get<ColorScheme>(b));
  if (cb) return constant_hits_scheme(*cb, std::get<ColorScheme>(a));
  const auto& sa = std::get<ColorScheme>(a);
  const auto& sb = std::get<ColorScheme>(b);
  return same_scheme(sa, sb) || schemes_collide(sa, sb);
}

bool visual_fits_class(const VisualOutput& visual, ChannelClass cls) {
  switch (cls) {
    case ChannelClass::PositionX:
    case ChannelClass::PositionY:
    case ChannelClass::Angle: return family(visual) == VisualFamily::Position;
    case ChannelClass::Color: return family(visual) == VisualFamily::Color;
    case ChannelClass::Size: return family(visual) == VisualFamily::Size;
  }
  return false;
}

std::optional<std::string> representative_color(const VisualOutput& visual) {
  if (const auto* c = std::get_if<ConstantColor>(&visual)) return lower(c->hex);
  if (const auto* s = std::get_if<ColorScheme>(&visual)) {
    if (!s->assignment.empty()) return lower(s->assignment.back().second);
  }
  return std::nullopt;
}

std::vector<std::string> colors_of(const VisualOutput& visual) {
  std::vector<std::string> out;
  if (const auto* c = std::get_if<ConstantColor>(&visual)) out.push_back(lower(c->hex));
  if (const auto* s = std::get_if<ColorScheme>(&visual)) {
    for (const auto& entry : s->assignment) out.push_back(lower(entry.second));
  }
  return out;
}

}  // namespace semsnap
