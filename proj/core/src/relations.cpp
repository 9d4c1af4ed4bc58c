#include "semsnap/relations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "hash.hpp"
#include "semsnap/error.hpp"

namespace semsnap {

std::string_view code(RelationKind kind) {
  switch (kind) {
    case RelationKind::FullRedundancy: return "R1";
    case RelationKind::PartialRedundancy: return "R2";
    case RelationKind::MultiplesSameGrouping: return "R3a";
    case RelationKind::MultiplesSameData: return "R3b";
    case RelationKind::Hallucinator: return "R4";
    case RelationKind::Confuser: return "R5";
  }
  return "R1";
}

std::optional<RelationKind> parse_relation_code(std::string_view text) {
  for (auto kind : kAllRelationKinds) {
    if (code(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view display_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::FullRedundancy: return "full redundancy";
    case RelationKind::PartialRedundancy: return "partial redundancy";
    case RelationKind::MultiplesSameGrouping: return "multiples (same grouping)";
    case RelationKind::MultiplesSameData: return "multiples (same data)";
    case RelationKind::Hallucinator: return "hallucinator";
    case RelationKind::Confuser: return "confuser";
  }
  return "";
}

RelationAxis axis(RelationKind kind) {
  switch (kind) {
    case RelationKind::FullRedundancy:
    case RelationKind::PartialRedundancy:
    case RelationKind::MultiplesSameGrouping: return RelationAxis::Redundancy;
    default: return RelationAxis::Consistency;
  }
}

bool RelationInstance::domain_mismatch() const {
  return std::any_of(witnesses.begin(), witnesses.end(), [](const Witness& w) { return w.domain_mismatch; });
}

std::vector<FieldPair> RelationInstance::pending_confirmations() const {
  std::vector<FieldPair> out;
  for (const auto& w : witnesses) {
    for (const auto& p : w.pending_confirmations) {
      const bool known = std::any_of(out.begin(), out.end(), [&](const FieldPair& q) {
        return (q.a == p.a && q.b == p.b) || (q.a == p.b && q.b == p.a);
      });
      if (!known) out.push_back(p);
    }
  }
  return out;
}

std::vector<ChannelClass> RelationInstance::witness_channels() const {
  std::set<ChannelClass> classes;
  for (const auto& w : witnesses) classes.insert(w.channel);
  return {classes.begin(), classes.end()};
}

bool RelationInstance::involves(std::string_view view_id) const {
  return view_ids[0] == view_id || view_ids[1] == view_id;
}

const RelationInstance* RelationSet::find(std::string_view id) const {
  auto it = std::find_if(instances.begin(), instances.end(), [&](const RelationInstance& r) { return r.id == id; });
  return it == instances.end() ? nullptr : &*it;
}

std::size_t RelationSet::count(RelationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [kind](const RelationInstance& r) { return r.kind == kind; }));
}

namespace {

bool quantitative_mismatch(const View& a, const View& b, ChannelClass cls) {
  const ChannelBinding* ba = a.binding(cls);
  const ChannelBinding* bb = b.binding(cls);
  if (!ba || !bb || !ba->domain || !bb->domain) return false;
  const auto* qa = std::get_if<QuantitativeDomain>(&*ba->domain);
  const auto* qb = std::get_if<QuantitativeDomain>(&*bb->domain);
  if (!qa || !qb) return false;
  return !visual_eq(PositionRange{qa->min, qa->max}, PositionRange{qb->min, qb->max});
}

bool both_mapped(const MatchedPair& p) { return p.a.d.has_value() && p.b.d.has_value(); }

Witness witness_of(const MatchedPair& p, bool record_domain = false) {
  Witness w;
  w.channel = p.a.c;
  w.tuple_a = p.a;
  w.tuple_b = p.b;
  if (p.d == TriState::NeedsConfirmation) w.pending_confirmations.push_back({*p.a.d, *p.b.d});
  if (record_domain) w.domain_mismatch = p.domain_mismatch;
  return w;
}

// Existential relations hold conditionally when every witness awaits a
// confirmation.
bool all_pending(const WitnessList& witnesses) {
  return std::all_of(witnesses.begin(), witnesses.end(),
                     [](const Witness& w) { return !w.pending_confirmations.empty(); });
}

}  // namespace

PairContext make_pair_context(const View& a, const View& b, const EquivalenceRegistry& registry) {
  PairContext ctx;
  ctx.view_a = &a;
  ctx.view_b = &b;
  ctx.g = grouping_eq(a, b, registry);
  const auto ta = tuples_of(a);
  const auto tb = tuples_of(b);
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      if (x.c != y.c) continue;
      MatchedPair p;
      p.a = x;
      p.b = y;
      p.d = data_eq(x, y, ctx.g, registry);
      p.v = visual_eq(x.v, y.v);
      p.domain_mismatch = both_mapped(p) && quantitative_mismatch(a, b, x.c);
      ctx.pairs.push_back(std::move(p));
    }
  }
  return ctx;
}

std::optional<WitnessList> is_full_redundancy(const PairContext& ctx) {
  if (ctx.g != TriState::Equal || ctx.pairs.empty()) return std::nullopt;
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    if (p.d != TriState::Equal) return std::nullopt;
    out.push_back(witness_of(p));
  }
  return out;
}

std::optional<WitnessList> is_partial_redundancy(const PairContext& ctx, std::string* subset) {
  if (ctx.g != TriState::Equal) return std::nullopt;
  bool shared = false;
  std::optional<bool> empty_in_a;
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    if (p.d == TriState::NeedsConfirmation) return std::nullopt;
    if (p.d == TriState::Equal) {
      shared = shared || both_mapped(p);
      continue;
    }
    // d differs: exactly one side must be unmapped, always on the same view.
    if (both_mapped(p)) return std::nullopt;
    const bool a_empty = !p.a.d.has_value();
    if (empty_in_a && *empty_in_a != a_empty) return std::nullopt;
    empty_in_a = a_empty;
    out.push_back(witness_of(p));
  }
  if (!shared || out.empty()) return std::nullopt;
  if (subset) *subset = *empty_in_a ? ctx.view_a->id : ctx.view_b->id;
  return out;
}

std::optional<WitnessList> is_multiples_same_grouping(const PairContext& ctx) {
  if (ctx.g != TriState::Equal) return std::nullopt;
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    if (both_mapped(p) && p.d != TriState::Equal) out.push_back(witness_of(p, true));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<WitnessList> is_multiples_same_data(const PairContext& ctx) {
  if (ctx.g != TriState::Different) return std::nullopt;
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    if (both_mapped(p) && p.d != TriState::Different) out.push_back(witness_of(p, true));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<WitnessList> is_hallucinator(const PairContext& ctx) {
  if (ctx.g != TriState::Equal) return std::nullopt;
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    const bool mapped = p.a.d.has_value() || p.b.d.has_value();
    if (p.d == TriState::Equal && mapped && !p.v) out.push_back(witness_of(p));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<WitnessList> is_confuser(const PairContext& ctx) {
  WitnessList out;
  for (const auto& p : ctx.pairs) {
    // Equal axis extents are the norm in a grid of charts, so only retinal
    // channels can confuse.
    if (p.a.c != ChannelClass::Color && p.a.c != ChannelClass::Size) continue;
    if (p.d == TriState::Different && p.v) out.push_back(witness_of(p));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string relation_signature(const RelationInstance& instance) {
  std::string channels;
  for (auto cls : instance.witness_channels()) {
    channels += to_string(cls);
    channels += ',';
  }
  return fmt::format("{}|{}|{}|{}|{}", code(instance.kind), instance.view_ids[0], instance.view_ids[1], channels,
                     instance.domain_mismatch() ? "mismatch" : "aligned");
}

namespace {

RelationInstance make_instance(RelationKind kind, const View& a, const View& b, WitnessList witnesses) {
  RelationInstance r;
  r.kind = kind;
  const bool swap = b.id < a.id;
  r.view_ids = swap ? std::array<std::string, 2>{b.id, a.id} : std::array<std::string, 2>{a.id, b.id};
  if (swap) {
    for (auto& w : witnesses) std::swap(w.tuple_a, w.tuple_b);
  }
  r.witnesses = std::move(witnesses);
  r.conditional = all_pending(r.witnesses);
  r.id = fmt::format("{}-{}", code(kind), detail::short_hash(relation_signature(r) + (r.conditional ? "|c" : ""), 8));
  return r;
}

}  // namespace

RelationSet find_relations(const Canvas& canvas) {
  RelationSet set;
  const auto& views = canvas.views;
  for (std::size_t i = 0; i < views.size(); ++i) {
    for (std::size_t j = i + 1; j < views.size(); ++j) {
      const View& a = views[i];
      const View& b = views[j];
      const PairContext ctx = make_pair_context(a, b, canvas.registry);

      if (auto w = is_full_redundancy(ctx)) {
        set.instances.push_back(make_instance(RelationKind::FullRedundancy, a, b, std::move(*w)));
      } else {
        std::string subset;
        if (auto w2 = is_partial_redundancy(ctx, &subset)) {
          auto r = make_instance(RelationKind::PartialRedundancy, a, b, std::move(*w2));
          r.subset_view = subset;
          set.instances.push_back(std::move(r));
        } else if (auto w3 = is_multiples_same_grouping(ctx)) {
          set.instances.push_back(make_instance(RelationKind::MultiplesSameGrouping, a, b, std::move(*w3)));
        }
      }
      if (auto w = is_multiples_same_data(ctx)) {
        set.instances.push_back(make_instance(RelationKind::MultiplesSameData, a, b, std::move(*w)));
      }
      if (auto w = is_hallucinator(ctx)) {
        set.instances.push_back(make_instance(RelationKind::Hallucinator, a, b, std::move(*w)));
      }
      if (auto w = is_confuser(ctx)) {
        set.instances.push_back(make_instance(RelationKind::Confuser, a, b, std::move(*w)));
      }
    }
  }
  std::stable_sort(set.instances.begin(), set.instances.end(), [](const RelationInstance& x, const RelationInstance& y) {
    return std::tie(x.view_ids[0], x.view_ids[1], x.kind) < std::tie(y.view_ids[0], y.view_ids[1], y.kind);
  });
  for (const auto& r : set.instances) {
    set.by_view[r.view_ids[0]].push_back(r.id);
    set.by_view[r.view_ids[1]].push_back(r.id);
  }
  return set;
}

std::vector<RelationInstance> relations_for_view(const Canvas& canvas, const RelationSet& set,
                                                 std::string_view view_id) {
  canvas.view(view_id);
  std::vector<RelationInstance> out;
  for (const auto& r : set.instances) {
    if (r.involves(view_id)) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RelationInstance& x, const RelationInstance& y) { return x.id < y.id; });
  return out;
}

std::vector<std::vector<std::string>> integration_groups(const RelationSet& set, const Canvas& canvas) {
  const auto& views = canvas.views;
  std::vector<std::size_t> parent(views.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&](const std::string& id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < views.size(); ++i) {
      if (views[i].id == id) return i;
    }
    return std::nullopt;
  };

  for (const auto& r : set.instances) {
    if (r.kind != RelationKind::MultiplesSameGrouping) continue;
    auto ia = index_of(r.view_ids[0]);
    auto ib = index_of(r.view_ids[1]);
    if (!ia || !ib) continue;
    const View& a = views[*ia];
    const View& b = views[*ib];
    if (a.chart != b.chart) continue;
    const ChannelBinding* xa = a.binding(ChannelClass::PositionX);
    const ChannelBinding* xb = b.binding(ChannelClass::PositionX);
    if (!xa || !xb) continue;
    const TriState g = grouping_eq(a, b, canvas.registry);
    const GcdvTuple ta{a.grouping, ChannelClass::PositionX, xa->mapping, xa->visual, a.id};
    const GcdvTuple tb{b.grouping, ChannelClass::PositionX, xb->mapping, xb->visual, b.id};
    if (data_eq(ta, tb, g, canvas.registry) != TriState::Equal) continue;
    const auto ra = root(*ia);
    const auto rb = root(*ib);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::map<std::size_t, std::vector<std::string>> components;
  for (std::size_t i = 0; i < views.size(); ++i) components[root(i)].push_back(views[i].id);
  std::vector<std::vector<std::string>> out;
  for (auto& [rootIndex, members] : components) {
    if (members.size() >= 2) out.push_back(std::move(members));
  }
  return out;
}

}  // namespace semsnap
