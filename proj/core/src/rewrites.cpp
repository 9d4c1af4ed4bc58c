#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "semsnap/error.hpp"
#include "semsnap/operations.hpp"

namespace semsnap {

namespace {

View& mutable_view(Canvas& canvas, std::string_view id) {
  View* v = canvas.find_view(id);
  if (!v) throw Error(ErrorCode::UnknownView, fmt::format("unknown view '{}'", id));
  return *v;
}

bool is_mapped(const View& view, ChannelClass cls) {
  const ChannelBinding* b = view.binding(cls);
  return b && b->mapping.has_value();
}

std::optional<MatchedPair> matched_on(const PairContext& ctx, ChannelClass cls) {
  for (const auto& p : ctx.pairs) {
    if (p.a.c == cls) return p;
  }
  return std::nullopt;
}

// Multiples edge on a class: the pair would count as R3a or R3b there.
bool multiples_edge(const View& a, const View& b, ChannelClass cls, const EquivalenceRegistry& registry) {
  const PairContext ctx = make_pair_context(a, b, registry);
  for (const auto& p : ctx.pairs) {
    if (p.a.c != cls || !p.a.d || !p.b.d) continue;
    if (ctx.g == TriState::Equal && p.d != TriState::Equal) return true;
    if (ctx.g == TriState::Different && p.d != TriState::Different) return true;
  }
  return false;
}

bool same_domain_kind(const DataDomain& a, const DataDomain& b) { return a.index() == b.index(); }

std::string ramp_key(std::size_t i, std::size_t n) {
  if (n == 2) return i == 0 ? "low" : "high";
  return std::to_string(i);
}

ColorScheme ramp_scheme(const PaletteScheme& ramp) {
  ColorScheme s{ramp.id, SchemeKind::Continuous, {}};
  for (std::size_t i = 0; i < ramp.colors.size(); ++i) s.assignment.emplace_back(ramp_key(i, ramp.colors.size()), ramp.colors[i]);
  return s;
}

// Category keys a categorical scheme on this binding must cover.
std::vector<std::string> scheme_keys(const View& view, const ChannelBinding& binding) {
  if (binding.domain) {
    if (const auto* cat = std::get_if<CategoricalDomain>(&*binding.domain)) return cat->values;
  }
  if (!view.series.empty() && !binding.mapping) {
    std::vector<std::string> labels;
    for (const auto& s : view.series) labels.push_back(s.label);
    return labels;
  }
  std::vector<std::string> keys;
  if (const auto* s = std::get_if<ColorScheme>(&binding.visual)) {
    for (const auto& [key, color] : s->assignment) keys.push_back(key);
  }
  return keys;
}

ColorScheme categorical_scheme(const PaletteScheme& scheme, const std::vector<std::string>& keys) {
  ColorScheme s{scheme.id, SchemeKind::Categorical, {}};
  for (std::size_t i = 0; i < keys.size(); ++i) s.assignment.emplace_back(keys[i], scheme.colors[i % scheme.colors.size()]);
  return s;
}

// Palette entries of the same variant as the current output, in order.
std::vector<VisualOutput> candidates_for(const View& view, const ChannelBinding& binding, const Palette& palette) {
  std::vector<VisualOutput> out;
  if (std::holds_alternative<ConstantColor>(binding.visual)) {
    for (const auto& c : palette.constants) out.push_back(ConstantColor{c});
  } else if (const auto* s = std::get_if<ColorScheme>(&binding.visual)) {
    if (s->kind == SchemeKind::Continuous) {
      for (const auto& r : palette.ramps) out.push_back(ramp_scheme(r));
    } else {
      const auto keys = scheme_keys(view, binding);
      for (const auto& c : palette.categorical) out.push_back(categorical_scheme(c, keys));
    }
  } else if (std::holds_alternative<SizeRange>(binding.visual)) {
    for (const auto& r : palette.sizes) out.push_back(r);
  }
  return out;
}

void sync_series_colors(View& view) {
  const ChannelBinding* color = view.binding(ChannelClass::Color);
  if (!color || view.series.empty() || color->mapping) return;
  const auto* scheme = std::get_if<ColorScheme>(&color->visual);
  if (!scheme) return;
  for (auto& s : view.series) {
    for (const auto& [key, hex] : scheme->assignment) {
      if (key == s.label) s.color = ConstantColor{hex};
    }
  }
}

}  // namespace

Canvas delete_view(const Canvas& canvas, std::string_view view_id) {
  canvas.view(view_id);
  Canvas out = canvas;
  std::erase_if(out.views, [&](const View& v) { return v.id == view_id; });
  return out;
}

Canvas homogenize_data(const Canvas& canvas, std::string_view view_a, std::string_view view_b, ChannelClass cls) {
  const View& a = canvas.view(view_a);
  const View& b = canvas.view(view_b);
  for (const View* v : {&a, &b}) {
    const ChannelBinding* binding = v->binding(cls);
    if (!binding || !binding->mapping || !binding->domain) {
      throw Error(ErrorCode::EmptyMapping, fmt::format("view '{}' has no data on {}", v->id, to_string(cls)));
    }
  }
  const DataDomain& reference = *a.binding(cls)->domain;

  // Breadth-first over multiples partners so that no partner keeps a domain
  // that disagrees with the homogenized pair.
  std::vector<std::string> component{a.id, b.id};
  std::deque<std::string> queue{a.id, b.id};
  while (!queue.empty()) {
    const View& cur = canvas.view(queue.front());
    queue.pop_front();
    for (const auto& other : canvas.views) {
      if (std::find(component.begin(), component.end(), other.id) != component.end()) continue;
      if (!is_mapped(other, cls) || !other.binding(cls)->domain) continue;
      if (!same_domain_kind(*other.binding(cls)->domain, reference)) continue;
      if (!multiples_edge(cur, other, cls, canvas.registry)) continue;
      component.push_back(other.id);
      queue.push_back(other.id);
    }
  }

  DataDomain merged = reference;
  for (const auto& id : component) merged = union_domain(merged, *canvas.view(id).binding(cls)->domain);
  Canvas out = canvas;
  for (const auto& id : component) mutable_view(out, id).binding(cls)->domain = merged;
  return out;
}

Canvas homogenize_style(const Canvas& canvas, std::string_view target_view, std::string_view source_view,
                        ChannelClass cls) {
  const View& target = canvas.view(target_view);
  const View& source = canvas.view(source_view);
  const PairContext ctx = make_pair_context(target, source, canvas.registry);
  const auto witnesses = is_hallucinator(ctx);
  const bool has_witness = witnesses && std::any_of(witnesses->begin(), witnesses->end(),
                                                    [cls](const Witness& w) { return w.channel == cls; });
  if (!has_witness) {
    throw Error(ErrorCode::NoWitness, fmt::format("'{}' and '{}' show the same {} data with the same style",
                                                  target.id, source.id, to_string(cls)));
  }
  // Views that currently match the target move with it.
  const auto group = differentiate_group(canvas, target.id, cls);
  Canvas out = canvas;
  const ChannelBinding& s = *source.binding(cls);
  std::optional<DataDomain> merged = s.domain;
  for (const auto& id : group) {
    const ChannelBinding& b = *canvas.view(id).binding(cls);
    if (merged && b.domain && same_domain_kind(*merged, *b.domain)) merged = union_domain(*merged, *b.domain);
  }
  auto adopt_domain = [&](ChannelBinding& b) {
    if (merged && b.domain && same_domain_kind(*merged, *b.domain)) b.domain = merged;
  };
  for (const auto& id : group) {
    if (id == source.id) continue;
    View& v = mutable_view(out, id);
    ChannelBinding& b = *v.binding(cls);
    b.visual = s.visual;
    adopt_domain(b);
    sync_series_colors(v);
  }
  adopt_domain(*mutable_view(out, source.id).binding(cls));
  return out;
}

std::vector<std::string> differentiate_group(const Canvas& canvas, std::string_view view_id, ChannelClass cls) {
  const View& view = canvas.view(view_id);
  std::vector<std::string> group{view.id};
  if (!is_mapped(view, cls)) return group;
  for (const auto& other : canvas.views) {
    if (other.id == view.id || !other.binding(cls)) continue;
    const auto pair = matched_on(make_pair_context(view, other, canvas.registry), cls);
    if (pair && pair->d == TriState::Equal && pair->v) group.push_back(other.id);
  }
  return group;
}

VisualOutput choose_distinct_output(const Canvas& canvas, std::string_view view_id, ChannelClass cls,
                                    const Palette& palette) {
  const View& view = canvas.view(view_id);
  const ChannelBinding* binding = view.binding(cls);
  if (!binding) {
    throw Error(ErrorCode::NoWitness, fmt::format("view '{}' has no {} channel", view.id, to_string(cls)));
  }
  const auto group = differentiate_group(canvas, view_id, cls);
  for (const auto& candidate : candidates_for(view, *binding, palette)) {
    if (visual_eq(candidate, binding->visual)) continue;
    const bool collides = std::any_of(canvas.views.begin(), canvas.views.end(), [&](const View& other) {
      if (std::find(group.begin(), group.end(), other.id) != group.end()) return false;
      const ChannelBinding* ob = other.binding(cls);
      return ob && visual_eq(candidate, ob->visual);
    });
    if (!collides) return candidate;
  }
  throw Error(ErrorCode::PaletteExhausted,
              fmt::format("every palette entry collides with another view's {} output", to_string(cls)));
}

Canvas differentiate(const Canvas& canvas, std::string_view view_id, ChannelClass cls, const Palette& palette) {
  const VisualOutput chosen = choose_distinct_output(canvas, view_id, cls, palette);
  const auto group = differentiate_group(canvas, view_id, cls);
  Canvas out = canvas;
  for (const auto& id : group) {
    View& v = mutable_view(out, id);
    ChannelBinding& b = *v.binding(cls);
    VisualOutput value = chosen;
    // Each member keeps its own category keys.
    if (auto* scheme = std::get_if<ColorScheme>(&value); scheme && scheme->kind == SchemeKind::Categorical) {
      for (const auto& entry : palette.categorical) {
        if (entry.id == scheme->id) value = categorical_scheme(entry, scheme_keys(v, b));
      }
    }
    b.visual = std::move(value);
    sync_series_colors(v);
  }
  return out;
}

std::string integrated_view_id(const std::vector<std::string>& group) {
  std::string id;
  for (const auto& member : group) {
    if (!id.empty()) id += '+';
    id += member;
  }
  return id;
}

namespace {

Composition composition_of(IntegrationVariant variant) {
  switch (variant) {
    case IntegrationVariant::Overlay: return Composition::Overlaid;
    case IntegrationVariant::Group: return Composition::Grouped;
    case IntegrationVariant::Stack: return Composition::Stacked;
    case IntegrationVariant::Mirror: return Composition::Mirrored;
    case IntegrationVariant::Transfer: return Composition::Single;
  }
  return Composition::Single;
}

Canvas transfer(const Canvas& canvas, const std::vector<std::string>& group) {
  if (group.size() != 2) {
    throw Error(ErrorCode::UnsupportedVariant, "transfer needs exactly a subset and a superset view");
  }
  const View& subset = canvas.view(group[0]);
  const View& superset = canvas.view(group[1]);
  if (grouping_eq(subset, superset, canvas.registry) != TriState::Equal) {
    throw Error(ErrorCode::UnsharedXAxis, fmt::format("'{}' and '{}' group by different fields", subset.id, superset.id));
  }
  View merged = subset;
  for (const auto& b : superset.bindings) {
    if (!b.mapping || is_mapped(subset, b.cls)) continue;
    const auto raw = raw_channel_for(subset.chart, b.cls);
    if (!raw) {
      throw Error(ErrorCode::UnsupportedVariant, fmt::format("{} charts have no {} channel to receive '{}'",
                                                             to_string(subset.chart), to_string(b.cls),
                                                             b.mapping->canonical()));
    }
    ChannelBinding moved = b;
    moved.raw_channel = std::string(*raw);
    if (ChannelBinding* existing = merged.binding(b.cls)) {
      *existing = std::move(moved);
    } else {
      merged.bindings.push_back(std::move(moved));
    }
  }
  std::sort(merged.bindings.begin(), merged.bindings.end(),
            [](const ChannelBinding& x, const ChannelBinding& y) { return x.cls < y.cls; });
  Canvas out = canvas;
  mutable_view(out, subset.id) = std::move(merged);
  std::erase_if(out.views, [&](const View& v) { return v.id == superset.id; });
  return out;
}

}  // namespace

Canvas integrate_views(const Canvas& canvas, const std::vector<std::string>& group, IntegrationVariant variant,
                       const Palette& palette) {
  if (variant == IntegrationVariant::Transfer) return transfer(canvas, group);
  if (group.size() < 2) throw Error(ErrorCode::UnsupportedVariant, "integration needs at least two views");

  std::vector<const View*> members;
  for (const auto& id : group) members.push_back(&canvas.view(id));
  const View& first = *members.front();
  const Composition composition = composition_of(variant);

  for (const View* m : members) {
    if (m->chart != first.chart) {
      throw Error(ErrorCode::IncompatibleChartTypes,
                  fmt::format("'{}' is a {} chart but '{}' is a {} chart", first.id, to_string(first.chart), m->id,
                              to_string(m->chart)));
    }
  }
  if (!variant_applies(variant, first.chart)) {
    throw Error(ErrorCode::UnsupportedVariant,
                fmt::format("{} is not available for {} charts", to_string(variant), to_string(first.chart)));
  }
  const bool pairwise = variant == IntegrationVariant::Mirror || variant == IntegrationVariant::Overlay;
  if (pairwise && group.size() != 2) {
    throw Error(ErrorCode::UnsupportedVariant, fmt::format("{} combines exactly two views", to_string(variant)));
  }
  for (const View* m : members) {
    const bool ok = m->composition == Composition::Single || (!pairwise && m->composition == composition);
    if (!ok) {
      throw Error(ErrorCode::UnsupportedVariant,
                  fmt::format("'{}' is already {} and cannot be {}", m->id, to_string(m->composition),
                              to_string(composition)));
    }
  }

  const ChannelBinding* first_x = first.binding(ChannelClass::PositionX);
  const ChannelBinding* first_y = first.binding(ChannelClass::PositionY);
  if (!first_x || !first_y) throw Error(ErrorCode::UnsharedXAxis, fmt::format("'{}' has no x/y axes", first.id));
  const GcdvTuple first_tuple{first.grouping, ChannelClass::PositionX, first_x->mapping, first_x->visual, first.id};
  for (const View* m : members) {
    const ChannelBinding* x = m->binding(ChannelClass::PositionX);
    if (!x) throw Error(ErrorCode::UnsharedXAxis, fmt::format("'{}' has no x axis", m->id));
    const GcdvTuple t{m->grouping, ChannelClass::PositionX, x->mapping, x->visual, m->id};
    const TriState g = grouping_eq(first, *m, canvas.registry);
    if (m != &first && data_eq(first_tuple, t, g, canvas.registry) != TriState::Equal) {
      throw Error(ErrorCode::UnsharedXAxis, fmt::format("'{}' and '{}' do not share the x axis", first.id, m->id));
    }
  }

  View merged;
  merged.id = integrated_view_id(group);
  merged.chart = first.chart;
  merged.grouping = first.grouping;
  merged.composition = composition;
  merged.cell = first.cell;

  std::set<std::string> used_colors;
  std::set<std::string> used_labels;
  auto add_series = [&](std::string label, const FieldRef& field, std::optional<std::string> color) {
    if (used_labels.count(label)) {
      int n = 2;
      while (used_labels.count(fmt::format("{} ({})", label, n))) ++n;
      label = fmt::format("{} ({})", label, n);
    }
    used_labels.insert(label);
    if (!color || used_colors.count(*color)) {
      color.reset();
      for (const auto& c : palette.constants) {
        if (!used_colors.count(c)) {
          color = c;
          break;
        }
      }
      if (!color) throw Error(ErrorCode::PaletteExhausted, "not enough distinct colors for the integrated series");
    }
    used_colors.insert(*color);
    merged.series.push_back({label, field, ConstantColor{*color}});
  };
  for (const View* m : members) {
    if (m->composition != Composition::Single) {
      for (const auto& s : m->series) add_series(s.label, s.y_field, representative_color(s.color));
      continue;
    }
    const ChannelBinding* y = m->binding(ChannelClass::PositionY);
    if (!y || !y->mapping) throw Error(ErrorCode::EmptyMapping, fmt::format("'{}' has no y data", m->id));
    const ChannelBinding* color = m->binding(ChannelClass::Color);
    add_series(y->mapping->canonical(), *y->mapping, color ? representative_color(color->visual) : std::nullopt);
  }

  ChannelBinding x = *first_x;
  for (const View* m : members) {
    const ChannelBinding* mx = m->binding(ChannelClass::PositionX);
    if (x.domain && mx->domain && same_domain_kind(*x.domain, *mx->domain)) x.domain = union_domain(*x.domain, *mx->domain);
  }
  merged.bindings.push_back(std::move(x));

  ChannelBinding y = *first_y;
  y.mapping = merged.series.front().y_field;
  merged.bindings.push_back(y);

  if (auto raw = raw_channel_for(merged.chart, ChannelClass::Color)) {
    ColorScheme scheme{"series", SchemeKind::Categorical, {}};
    for (const auto& s : merged.series) scheme.assignment.emplace_back(s.label, std::get<ConstantColor>(s.color).hex);
    merged.bindings.push_back({std::string(*raw), ChannelClass::Color, std::nullopt, std::nullopt, scheme});
  }

  // Remaining channels survive only when every member agrees on them.
  for (const auto& b : first.bindings) {
    if (b.cls == ChannelClass::PositionX || b.cls == ChannelClass::PositionY || b.cls == ChannelClass::Color) continue;
    const bool shared = std::all_of(members.begin(), members.end(), [&](const View* m) {
      const ChannelBinding* mb = m->binding(b.cls);
      return mb && mb->mapping == b.mapping && visual_eq(mb->visual, b.visual);
    });
    if (shared) merged.bindings.push_back(b);
  }
  std::sort(merged.bindings.begin(), merged.bindings.end(),
            [](const ChannelBinding& p, const ChannelBinding& q) { return p.cls < q.cls; });

  if (canvas.dataset) {
    ChannelBinding& yb = *merged.binding(ChannelClass::PositionY);
    DataDomain domain = compute_domain(*canvas.dataset, merged, yb);
    for (const View* m : members) {
      const ChannelBinding* my = m->binding(ChannelClass::PositionY);
      if (my->domain && same_domain_kind(domain, *my->domain)) domain = union_domain(domain, *my->domain);
    }
    yb.domain = domain;
  }

  Canvas out = canvas;
  const auto pos = std::find_if(out.views.begin(), out.views.end(), [&](const View& v) { return v.id == first.id; });
  *pos = std::move(merged);
  std::erase_if(out.views, [&](const View& v) {
    return std::find(group.begin() + 1, group.end(), v.id) != group.end();
  });
  return out;
}

}  // namespace semsnap
