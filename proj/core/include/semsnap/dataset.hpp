#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/types.hpp"

namespace semsnap {

struct View;
struct ChannelBinding;

enum class ColumnType { Nominal, Ordinal, Quantitative, Temporal };

std::string_view to_string(ColumnType type);
std::optional<ColumnType> parse_column_type(std::string_view text);

struct ColumnSpec {
  std::string name;
  ColumnType type = ColumnType::Nominal;
  std::vector<std::string> order;  // optional explicit order for ordinal columns

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// One typed table. Immutable after load_dataset().
struct Dataset {
  std::string source;                     // path as written in the document
  std::optional<std::string> inline_csv;  // set when the table is embedded
  std::vector<ColumnSpec> columns;
  std::vector<std::vector<std::string>> rows;    // cell text, schema order
  std::vector<std::vector<double>> numeric;      // per column; empty unless quantitative

  std::optional<std::size_t> column_index(std::string_view name) const;
  const ColumnSpec* column(std::string_view name) const;
  std::size_t row_count() const noexcept { return rows.size(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Parses RFC-4180 CSV (comma delimiter, header row) and validates every cell
// against the schema. Columns absent from the schema are dropped.
// Throws Error(ParseError | TypeError | SchemaError).
Dataset load_dataset(std::string_view csv_text, const std::vector<ColumnSpec>& schema);

// Group labels and one aggregate per group.
struct SeriesTable {
  std::vector<std::string> keys;
  std::vector<double> values;

  friend bool operator==(const SeriesTable&, const SeriesTable&) = default;
};

// Distinct values of a column in grouping order: first appearance for nominal,
// declared or sorted order for ordinal, ascending for temporal and quantitative.
std::vector<std::string> group_keys(const Dataset& dataset, std::string_view column);

// GROUP BY grouping, aggregating field per group.
// Throws Error(UnknownColumn | NonScalarGroup | TypeError).
SeriesTable group_aggregate(const Dataset& dataset, std::string_view grouping, const FieldRef& field);

// Two-level grouping: one row per (outer, inner) pair present in the data,
// ordered by outer keys then inner keys.
struct GridTable {
  std::vector<std::string> outer;
  std::vector<std::string> inner;
  // values[i][j] for outer[i], inner[j]; nullopt where the pair has no rows.
  std::vector<std::vector<std::optional<double>>> values;
};

GridTable group_aggregate2(const Dataset& dataset, std::string_view outer, std::string_view inner,
                           const FieldRef& field);

// Column of the secondary mark key for a view: the PositionX column when it is
// an unaggregated field that differs from the grouping.
std::optional<std::string> secondary_key(const View& view);

// Data domain backing a mapped binding of a view.
// Throws Error(EmptyData) when the dataset has no rows.
DataDomain compute_domain(const Dataset& dataset, const View& view, const ChannelBinding& binding);

// Throws Error(VariantMismatch) when the domains are of different kinds.
DataDomain union_domain(const DataDomain& a, const DataDomain& b);

bool is_quantitative_field(const Dataset& dataset, const FieldRef& field);

}  // namespace semsnap
