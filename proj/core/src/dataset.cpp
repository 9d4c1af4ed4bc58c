#include "semsnap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <regex>
#include <set>

#include <fmt/format.h>

#include "semsnap/error.hpp"
#include "semsnap/model.hpp"

namespace semsnap {

std::string_view to_string(ColumnType type) {
  switch (type) {
    case ColumnType::Nominal: return "nominal";
    case ColumnType::Ordinal: return "ordinal";
    case ColumnType::Quantitative: return "quantitative";
    case ColumnType::Temporal: return "temporal";
  }
  return "nominal";
}

std::optional<ColumnType> parse_column_type(std::string_view text) {
  if (text == "nominal") return ColumnType::Nominal;
  if (text == "ordinal") return ColumnType::Ordinal;
  if (text == "quantitative") return ColumnType::Quantitative;
  if (text == "temporal") return ColumnType::Temporal;
  return std::nullopt;
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

const ColumnSpec* Dataset::column(std::string_view name) const {
  auto idx = column_index(name);
  return idx ? &columns[*idx] : nullptr;
}

namespace {

// RFC-4180 records. Quoted fields may contain commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool closed_quote = false;
  int line = 1;
  std::size_t i = 0;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    closed_quote = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          closed_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::ParseError, fmt::format("CSV line {}: quote inside unquoted field", line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (closed_quote) {
          throw Error(ErrorCode::ParseError, fmt::format("CSV line {}: text after closing quote", line));
        }
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::ParseError, "CSV: unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  std::string buf(text);
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool is_iso_date(std::string_view text) {
  static const std::regex pattern(R"(^(\d{4})-(\d{2})(-(\d{2})(T\d{2}:\d{2}(:\d{2})?Z?)?)?$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) return false;
  const int month = std::stoi(m[2].str());
  if (month < 1 || month > 12) return false;
  if (m[4].matched) {
    const int day = std::stoi(m[4].str());
    if (day < 1 || day > 31) return false;
  }
  return true;
}

const std::vector<std::string>& cells_of(const Dataset& dataset, std::size_t col, std::vector<std::string>& scratch) {
  scratch.clear();
  scratch.reserve(dataset.rows.size());
  for (const auto& row : dataset.rows) scratch.push_back(row[col]);
  return scratch;
}

std::size_t require_column(const Dataset& dataset, std::string_view name) {
  auto idx = dataset.column_index(name);
  if (!idx) throw Error(ErrorCode::UnknownColumn, fmt::format("unknown column '{}'", name));
  return *idx;
}

// Per-row group index for a column, plus the ordered keys.
struct Grouping {
  std::vector<std::string> keys;
  std::vector<std::size_t> row_group;
};

Grouping group_rows(const Dataset& dataset, std::string_view column) {
  const std::size_t col = require_column(dataset, column);
  Grouping out;
  out.keys = group_keys(dataset, column);
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < out.keys.size(); ++i) index.emplace(out.keys[i], i);
  out.row_group.reserve(dataset.rows.size());
  for (const auto& row : dataset.rows) out.row_group.push_back(index.at(row[col]));
  return out;
}

struct Accumulator {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  void add(double v) {
    if (count == 0) {
      min = max = v;
    } else {
      min = std::min(min, v);
      max = std::max(max, v);
    }
    sum += v;
    ++count;
  }
};

double finish(const Accumulator& acc, const FieldRef& field, std::string_view group) {
  switch (field.aggregate) {
    case Aggregate::Sum: return acc.sum;
    case Aggregate::Mean: return acc.count ? acc.sum / static_cast<double>(acc.count) : 0.0;
    case Aggregate::Count: return static_cast<double>(acc.count);
    case Aggregate::Min: return acc.min;
    case Aggregate::Max: return acc.max;
    case Aggregate::None:
      if (acc.count > 1) {
        throw Error(ErrorCode::NonScalarGroup,
                    fmt::format("field '{}' is not aggregated but group '{}' has {} rows", field.column, group,
                                acc.count));
      }
      return acc.sum;
  }
  return 0.0;
}

// Index of the numeric column feeding an aggregate, or nullopt for count.
std::optional<std::size_t> value_column(const Dataset& dataset, const FieldRef& field) {
  if (field.aggregate == Aggregate::Count) {
    if (field.column != "*") require_column(dataset, field.column);
    return std::nullopt;
  }
  const std::size_t col = require_column(dataset, field.column);
  if (dataset.columns[col].type != ColumnType::Quantitative) {
    throw Error(ErrorCode::TypeError,
                fmt::format("field '{}' needs a quantitative column", field.canonical()));
  }
  return col;
}

std::pair<double, double> extent(const std::vector<double>& values) {
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

bool zero_baseline(ChartType chart) {
  return chart == ChartType::Bar || chart == ChartType::Area || chart == ChartType::Streamgraph;
}

// Aggregated values for every mark of a view, plus per-inner totals when the
// view has a secondary key (used for stream stacking).
struct MarkValues {
  std::vector<double> values;
  std::vector<double> inner_totals;
};

MarkValues mark_values(const Dataset& dataset, const View& view, const FieldRef& field) {
  MarkValues out;
  if (auto sec = secondary_key(view)) {
    const GridTable grid = group_aggregate2(dataset, view.grouping, *sec, field);
    out.inner_totals.assign(grid.inner.size(), 0.0);
    for (std::size_t i = 0; i < grid.outer.size(); ++i) {
      for (std::size_t j = 0; j < grid.inner.size(); ++j) {
        if (!grid.values[i][j]) continue;
        out.values.push_back(*grid.values[i][j]);
        out.inner_totals[j] += *grid.values[i][j];
      }
    }
  } else {
    out.values = group_aggregate(dataset, view.grouping, field).values;
  }
  return out;
}

QuantitativeDomain value_domain(const Dataset& dataset, const View& view, ChannelClass cls, const FieldRef& field) {
  const MarkValues marks = mark_values(dataset, view, field);
  if (marks.values.empty()) throw Error(ErrorCode::EmptyData, "no marks to compute a domain from");
  auto [lo, hi] = extent(marks.values);
  if (cls == ChannelClass::Angle) {
    double total = 0.0;
    for (double v : marks.values) total += std::fabs(v);
    return {0.0, total};
  }
  if (cls == ChannelClass::PositionY && zero_baseline(view.chart)) {
    if (view.chart == ChartType::Streamgraph && !marks.inner_totals.empty()) {
      auto [tlo, thi] = extent(marks.inner_totals);
      lo = std::min(lo, tlo);
      hi = std::max(hi, thi);
    }
    return {std::min(0.0, lo), std::max(0.0, hi)};
  }
  return {lo, hi};
}

}  // namespace

Dataset load_dataset(std::string_view csv_text, const std::vector<ColumnSpec>& schema) {
  auto records = parse_csv(csv_text);
  if (records.empty()) throw Error(ErrorCode::ParseError, "CSV has no header row");
  const auto& header = records.front();

  Dataset out;
  out.columns = schema;
  std::vector<std::size_t> source_index;
  for (const auto& spec : schema) {
    auto it = std::find(header.begin(), header.end(), spec.name);
    if (it == header.end()) {
      throw Error(ErrorCode::SchemaError, fmt::format("column '{}' is missing from the CSV header", spec.name));
    }
    source_index.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  out.numeric.resize(schema.size());
  out.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& record = records[r];
    if (record.size() != header.size()) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("CSV row {} has {} fields, header has {}", r, record.size(), header.size()));
    }
    std::vector<std::string> row;
    row.reserve(schema.size());
    for (std::size_t c = 0; c < schema.size(); ++c) {
      const std::string& cell = record[source_index[c]];
      switch (schema[c].type) {
        case ColumnType::Quantitative: {
          auto value = parse_number(cell);
          if (!value) {
            throw Error(ErrorCode::TypeError, fmt::format("row {}, column '{}': '{}' is not a finite number", r,
                                                          schema[c].name, cell));
          }
          out.numeric[c].push_back(*value);
          break;
        }
        case ColumnType::Temporal:
          if (!is_iso_date(cell)) {
            throw Error(ErrorCode::TypeError,
                        fmt::format("row {}, column '{}': '{}' is not an ISO-8601 date", r, schema[c].name, cell));
          }
          break;
        case ColumnType::Ordinal:
          if (!schema[c].order.empty() &&
              std::find(schema[c].order.begin(), schema[c].order.end(), cell) == schema[c].order.end()) {
            throw Error(ErrorCode::TypeError,
                        fmt::format("row {}, column '{}': '{}' is not a declared level", r, schema[c].name, cell));
          }
          break;
        case ColumnType::Nominal: break;
      }
      row.push_back(cell);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<std::string> group_keys(const Dataset& dataset, std::string_view column) {
  const std::size_t col = require_column(dataset, column);
  const ColumnSpec& spec = dataset.columns[col];
  std::vector<std::string> scratch;
  const auto& cells = cells_of(dataset, col, scratch);

  std::vector<std::string> keys;
  std::set<std::string, std::less<>> seen;
  std::vector<double> numbers;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (seen.insert(cells[i]).second) {
      keys.push_back(cells[i]);
      if (spec.type == ColumnType::Quantitative) numbers.push_back(dataset.numeric[col][i]);
    }
  }
  switch (spec.type) {
    case ColumnType::Nominal: break;
    case ColumnType::Ordinal:
      if (!spec.order.empty()) {
        std::vector<std::string> ordered;
        for (const auto& level : spec.order) {
          if (seen.count(level)) ordered.push_back(level);
        }
        keys = std::move(ordered);
      } else {
        std::sort(keys.begin(), keys.end());
      }
      break;
    case ColumnType::Temporal: std::sort(keys.begin(), keys.end()); break;
    case ColumnType::Quantitative: {
      std::vector<std::size_t> order(keys.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return numbers[a] < numbers[b]; });
      std::vector<std::string> sorted;
      for (auto i : order) sorted.push_back(keys[i]);
      keys = std::move(sorted);
      break;
    }
  }
  return keys;
}

SeriesTable group_aggregate(const Dataset& dataset, std::string_view grouping, const FieldRef& field) {
  const Grouping groups = group_rows(dataset, grouping);
  const auto value_col = value_column(dataset, field);
  std::vector<Accumulator> acc(groups.keys.size());
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    acc[groups.row_group[r]].add(value_col ? dataset.numeric[*value_col][r] : 1.0);
  }
  SeriesTable out;
  out.keys = groups.keys;
  out.values.reserve(acc.size());
  for (std::size_t g = 0; g < acc.size(); ++g) out.values.push_back(finish(acc[g], field, groups.keys[g]));
  return out;
}

GridTable group_aggregate2(const Dataset& dataset, std::string_view outer, std::string_view inner,
                           const FieldRef& field) {
  const Grouping outer_groups = group_rows(dataset, outer);
  const Grouping inner_groups = group_rows(dataset, inner);
  const auto value_col = value_column(dataset, field);
  std::vector<std::vector<Accumulator>> acc(outer_groups.keys.size(),
                                            std::vector<Accumulator>(inner_groups.keys.size()));
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    acc[outer_groups.row_group[r]][inner_groups.row_group[r]].add(value_col ? dataset.numeric[*value_col][r] : 1.0);
  }
  GridTable out;
  out.outer = outer_groups.keys;
  out.inner = inner_groups.keys;
  out.values.resize(out.outer.size());
  for (std::size_t i = 0; i < out.outer.size(); ++i) {
    out.values[i].resize(out.inner.size());
    for (std::size_t j = 0; j < out.inner.size(); ++j) {
      if (acc[i][j].count == 0) continue;
      out.values[i][j] = finish(acc[i][j], field, out.outer[i] + "/" + out.inner[j]);
    }
  }
  return out;
}

std::optional<std::string> secondary_key(const View& view) {
  const ChannelBinding* x = view.binding(ChannelClass::PositionX);
  if (!x || !x->mapping || x->mapping->aggregate != Aggregate::None) return std::nullopt;
  if (x->mapping->column == view.grouping) return std::nullopt;
  return x->mapping->column;
}

bool is_quantitative_field(const Dataset& dataset, const FieldRef& field) {
  if (field.aggregate != Aggregate::None) return true;
  const ColumnSpec* spec = dataset.column(field.column);
  return spec && spec->type == ColumnType::Quantitative;
}

DataDomain compute_domain(const Dataset& dataset, const View& view, const ChannelBinding& binding) {
  if (!binding.mapping) throw Error(ErrorCode::EmptyMapping, "cannot compute a domain for an unmapped channel");
  if (dataset.rows.empty()) throw Error(ErrorCode::EmptyData, "dataset has no rows");
  const FieldRef& field = *binding.mapping;

  if (binding.cls == ChannelClass::PositionY && view.composition != Composition::Single && !view.series.empty()) {
    std::optional<QuantitativeDomain> merged;
    for (const auto& s : view.series) {
      auto d = value_domain(dataset, view, binding.cls, s.y_field);
      if (merged) {
        merged->min = std::min(merged->min, d.min);
        merged->max = std::max(merged->max, d.max);
      } else {
        merged = d;
      }
    }
    if (view.composition == Composition::Stacked) {
      std::vector<double> totals;
      for (const auto& s : view.series) {
        auto marks = mark_values(dataset, view, s.y_field).values;
        if (totals.empty()) totals.assign(marks.size(), 0.0);
        for (std::size_t i = 0; i < marks.size() && i < totals.size(); ++i) totals[i] += marks[i];
      }
      if (!totals.empty()) {
        auto [lo, hi] = extent(totals);
        merged->min = std::min({merged->min, lo, 0.0});
        merged->max = std::max({merged->max, hi, 0.0});
      }
    }
    return *merged;
  }

  if (field.aggregate == Aggregate::None) {
    const std::size_t col = require_column(dataset, field.column);
    if (dataset.columns[col].type != ColumnType::Quantitative) {
      return CategoricalDomain{group_keys(dataset, field.column)};
    }
    if (field.column == view.grouping || secondary_key(view) == field.column) {
      auto [lo, hi] = extent(dataset.numeric[col]);
      return QuantitativeDomain{lo, hi};
    }
  }
  return value_domain(dataset, view, binding.cls, field);
}

DataDomain union_domain(const DataDomain& a, const DataDomain& b) {
  if (a.index() != b.index()) throw Error(ErrorCode::VariantMismatch, "cannot union quantitative and categorical domains");
  if (const auto* qa = std::get_if<QuantitativeDomain>(&a)) {
    const auto& qb = std::get<QuantitativeDomain>(b);
    return QuantitativeDomain{std::min(qa->min, qb.min), std::max(qa->max, qb.max)};
  }
  CategoricalDomain out = std::get<CategoricalDomain>(a);
  for (const auto& v : std::get<CategoricalDomain>(b).values) {
    if (std::find(out.values.begin(), out.values.end(), v) == out.values.end()) out.values.push_back(v);
  }
  return out;
}

}  // namespace semsnap
