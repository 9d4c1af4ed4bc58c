#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace semsnap {

enum class Aggregate { None, Sum, Mean, Count, Min, Max };

std::string_view to_string(Aggregate aggregate);
std::optional<Aggregate> parse_aggregate(std::string_view text);

// A column, optionally aggregated. count permits the synthetic column "*".
struct FieldRef {
  std::string column;
  Aggregate aggregate = Aggregate::None;

  // "sum(Europe)", or the bare column name when not aggregated.
  std::string canonical() const;

  friend bool operator==(const FieldRef&, const FieldRef&) = default;
  friend auto operator<=>(const FieldRef&, const FieldRef&) = default;
};

// Inverse of FieldRef::canonical(). Returns nullopt for malformed text.
std::optional<FieldRef> parse_field_ref(std::string_view text);

// Empty (nullopt) means the channel is not mapped to data.
using DataMapping = std::optional<FieldRef>;

struct QuantitativeDomain {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const QuantitativeDomain&, const QuantitativeDomain&) = default;
};

struct CategoricalDomain {
  std::vector<std::string> values;
  friend bool operator==(const CategoricalDomain&, const CategoricalDomain&) = default;
};

using DataDomain = std::variant<QuantitativeDomain, CategoricalDomain>;

struct PositionRange {
  double axis_min = 0.0;
  double axis_max = 0.0;
  friend bool operator==(const PositionRange&, const PositionRange&) = default;
};

struct ConstantColor {
  std::string hex;  // "#rrggbb", lower case
  friend bool operator==(const ConstantColor&, const ConstantColor&) = default;
};

enum class SchemeKind { Continuous, Categorical };

// Categorical schemes assign a color per category; continuous schemes list
// their ramp stops in order (keys such as "low"/"high").
struct ColorScheme {
  std::string id;
  SchemeKind kind = SchemeKind::Categorical;
  std::vector<std::pair<std::string, std::string>> assignment;
  friend bool operator==(const ColorScheme&, const ColorScheme&) = default;
};

struct SizeRange {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const SizeRange&, const SizeRange&) = default;
};

using VisualOutput = std::variant<PositionRange, ConstantColor, ColorScheme, SizeRange>;

enum class ChannelClass { PositionX, PositionY, Color, Size, Angle };

inline constexpr ChannelClass kAllChannelClasses[] = {
    ChannelClass::PositionX, ChannelClass::PositionY, ChannelClass::Color, ChannelClass::Size,
    ChannelClass::Angle};

std::string_view to_string(ChannelClass cls);
std::optional<ChannelClass> parse_channel_class(std::string_view text);

enum class ChartType { Bar, Line, Area, Pie, Scatter, Streamgraph };

std::string_view to_string(ChartType chart);
std::optional<ChartType> parse_chart_type(std::string_view text);

enum class Composition { Single, Grouped, Stacked, Mirrored, Overlaid };

std::string_view to_string(Composition composition);
std::optional<Composition> parse_composition(std::string_view text);

enum class TriState { Equal, Different, NeedsConfirmation };

std::string_view to_string(TriState value);

// True when the hex string is "#" followed by six hex digits.
bool is_valid_hex_color(std::string_view hex);

}  // namespace semsnap
