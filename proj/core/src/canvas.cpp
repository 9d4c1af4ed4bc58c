#include "semsnap/canvas.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "semsnap/error.hpp"

namespace semsnap {

const View* Canvas::find_view(std::string_view id) const {
  auto it = std::find_if(views.begin(), views.end(), [&](const View& v) { return v.id == id; });
  return it == views.end() ? nullptr : &*it;
}

View* Canvas::find_view(std::string_view id) {
  auto it = std::find_if(views.begin(), views.end(), [&](const View& v) { return v.id == id; });
  return it == views.end() ? nullptr : &*it;
}

const View& Canvas::view(std::string_view id) const {
  if (const View* v = find_view(id)) return *v;
  throw Error(ErrorCode::UnknownView, fmt::format("unknown view '{}'", id));
}

bool operator==(const Canvas& a, const Canvas& b) {
  if (a.views != b.views || !(a.registry == b.registry)) return false;
  if (a.dataset == b.dataset) return true;
  if (!a.dataset || !b.dataset) return false;
  return *a.dataset == *b.dataset;
}

namespace {

bool column_exists(const Dataset& dataset, const std::string& column, Aggregate aggregate) {
  if (column == "*") return aggregate == Aggregate::Count;
  return dataset.column(column) != nullptr;
}

void check_field(const Dataset& dataset, const View& view, std::string_view where, const FieldRef& field,
                 std::vector<std::string>& issues) {
  if (!column_exists(dataset, field.column, field.aggregate)) {
    issues.push_back(fmt::format("view '{}': {} references unknown column '{}'", view.id, where, field.column));
    return;
  }
  if (field.aggregate != Aggregate::None && field.aggregate != Aggregate::Count) {
    const ColumnSpec* spec = dataset.column(field.column);
    if (spec && spec->type != ColumnType::Quantitative) {
      issues.push_back(fmt::format("view '{}': {} aggregates non-quantitative column '{}'", view.id, where,
                                   field.column));
    }
  }
}

}  // namespace

std::vector<std::string> validate_canvas(const Canvas& canvas) {
  std::vector<std::string> issues;
  if (!canvas.dataset) {
    issues.push_back("canvas has no dataset");
    return issues;
  }
  const Dataset& dataset = *canvas.dataset;
  std::set<std::string> ids;
  for (const auto& view : canvas.views) {
    if (view.id.empty()) issues.push_back("a view has an empty id");
    if (!ids.insert(view.id).second) issues.push_back(fmt::format("duplicate view id '{}'", view.id));
    if (view.grouping.empty()) {
      issues.push_back(fmt::format("view '{}': missing grouping", view.id));
    } else if (!dataset.column(view.grouping)) {
      issues.push_back(fmt::format("view '{}': grouping column '{}' does not exist", view.id, view.grouping));
    }

    std::set<ChannelClass> seen;
    for (const auto& b : view.bindings) {
      if (!seen.insert(b.cls).second) {
        issues.push_back(fmt::format("view '{}': more than one {} binding", view.id, to_string(b.cls)));
      }
      try {
        if (channel_class(view.chart, b.raw_channel) != b.cls) {
          issues.push_back(fmt::format("view '{}': channel '{}' is not a {} channel", view.id, b.raw_channel,
                                       to_string(b.cls)));
        }
      } catch (const Error& e) {
        issues.push_back(fmt::format("view '{}': {}", view.id, e.what()));
      }
      if (b.mapping.has_value() != b.domain.has_value()) {
        issues.push_back(fmt::format("view '{}': channel '{}' must have a domain iff it is mapped", view.id,
                                     b.raw_channel));
      }
      if (b.mapping) check_field(dataset, view, fmt::format("channel '{}'", b.raw_channel), *b.mapping, issues);
      if (b.mapping && b.domain && column_exists(dataset, b.mapping->column, b.mapping->aggregate)) {
        const bool quantitative = is_quantitative_field(dataset, *b.mapping);
        if (quantitative != std::holds_alternative<QuantitativeDomain>(*b.domain)) {
          issues.push_back(fmt::format("view '{}': channel '{}' domain does not match the field type", view.id,
                                       b.raw_channel));
        }
      }
      if (b.domain) {
        if (const auto* q = std::get_if<QuantitativeDomain>(&*b.domain); q && q->min > q->max) {
          issues.push_back(fmt::format("view '{}': channel '{}' domain min exceeds max", view.id, b.raw_channel));
        }
        if (const auto* c = std::get_if<CategoricalDomain>(&*b.domain)) {
          std::set<std::string> distinct(c->values.begin(), c->values.end());
          if (distinct.size() != c->values.size()) {
            issues.push_back(fmt::format("view '{}': channel '{}' domain repeats a category", view.id,
                                         b.raw_channel));
          }
        }
      }
      if (!visual_fits_class(b.visual, b.cls)) {
        issues.push_back(fmt::format("view '{}': channel '{}' visual output does not fit its class", view.id,
                                     b.raw_channel));
      }
      if (const auto* c = std::get_if<ConstantColor>(&b.visual); c && !is_valid_hex_color(c->hex)) {
        issues.push_back(fmt::format("view '{}': color '{}' is not a 6-digit hex color", view.id, c->hex));
      }
      if (const auto* s = std::get_if<ColorScheme>(&b.visual)) {
        std::set<std::string> keys;
        for (const auto& [key, hex] : s->assignment) {
          if (!keys.insert(key).second) {
            issues.push_back(fmt::format("view '{}': scheme '{}' assigns '{}' twice", view.id, s->id, key));
          }
          if (!is_valid_hex_color(hex)) {
            issues.push_back(fmt::format("view '{}': color '{}' is not a 6-digit hex color", view.id, hex));
          }
        }
      }
    }
    const bool positional = view.chart != ChartType::Pie;
    if (positional && (!seen.count(ChannelClass::PositionX) || !seen.count(ChannelClass::PositionY))) {
      issues.push_back(fmt::format("view '{}': {} charts need x and y channels", view.id, to_string(view.chart)));
    }
    if (!positional && !seen.count(ChannelClass::Angle)) {
      issues.push_back(fmt::format("view '{}': pie charts need an angle channel", view.id));
    }

    if (view.composition == Composition::Single && !view.series.empty()) {
      issues.push_back(fmt::format("view '{}': single views carry no series", view.id));
    }
    if (view.composition != Composition::Single && view.series.size() < 2) {
      issues.push_back(fmt::format("view '{}': {} views need at least two series", view.id,
                                   to_string(view.composition)));
    }
    if (view.composition == Composition::Mirrored && view.series.size() != 2) {
      issues.push_back(fmt::format("view '{}': mirrored views need exactly two series", view.id));
    }
    for (const auto& s : view.series) {
      check_field(dataset, view, fmt::format("series '{}'", s.label), s.y_field, issues);
      if (!visual_fits_class(s.color, ChannelClass::Color)) {
        issues.push_back(fmt::format("view '{}': series '{}' color is not a color", view.id, s.label));
      }
    }
    if (view.cell.row < 0 || view.cell.col < 0 || view.cell.row_span < 1 || view.cell.col_span < 1) {
      issues.push_back(fmt::format("view '{}': invalid grid cell", view.id));
    }
  }
  return issues;
}

void fill_missing_domains(Canvas& canvas) {
  for (auto& view : canvas.views) {
    for (auto& b : view.bindings) {
      if (b.mapping && !b.domain) b.domain = compute_domain(*canvas.dataset, view, b);
    }
  }
}

}  // namespace semsnap
