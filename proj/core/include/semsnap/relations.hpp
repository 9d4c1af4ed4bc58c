#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/canvas.hpp"
#include "semsnap/model.hpp"

namespace semsnap {

enum class RelationKind {
  FullRedundancy,         // R1
  PartialRedundancy,      // R2
  MultiplesSameGrouping,  // R3a
  MultiplesSameData,      // R3b
  Hallucinator,           // R4
  Confuser,               // R5
};

enum class RelationAxis { Redundancy, Consistency };

inline constexpr RelationKind kAllRelationKinds[] = {
    RelationKind::FullRedundancy, RelationKind::PartialRedundancy, RelationKind::MultiplesSameGrouping,
    RelationKind::MultiplesSameData, RelationKind::Hallucinator, RelationKind::Confuser};

// Diagnostic code: R1, R2, R3a, R3b, R4, R5.
std::string_view code(RelationKind kind);
std::optional<RelationKind> parse_relation_code(std::string_view text);
// "full redundancy", "confuser", ...
std::string_view display_name(RelationKind kind);
RelationAxis axis(RelationKind kind);

struct FieldPair {
  FieldRef a;
  FieldRef b;
  friend bool operator==(const FieldPair&, const FieldPair&) = default;
};

// The matched channel pair that makes a relation true.
struct Witness {
  ChannelClass channel = ChannelClass::PositionX;
  GcdvTuple tuple_a;
  GcdvTuple tuple_b;
  std::vector<FieldPair> pending_confirmations;
  // Multiples only: both sides carry quantitative domains that differ.
  bool domain_mismatch = false;
};

struct RelationInstance {
  std::string id;
  RelationKind kind = RelationKind::FullRedundancy;
  std::array<std::string, 2> view_ids;  // lexicographically ordered
  std::vector<Witness> witnesses;
  bool conditional = false;
  // Partial redundancy: the view whose data is contained in the other.
  std::optional<std::string> subset_view;

  bool domain_mismatch() const;
  std::vector<FieldPair> pending_confirmations() const;
  std::vector<ChannelClass> witness_channels() const;
  bool involves(std::string_view view_id) const;
};

struct RelationSet {
  std::vector<RelationInstance> instances;
  std::map<std::string, std::vector<std::string>> by_view;  // view id -> instance ids

  const RelationInstance* find(std::string_view id) const;
  std::size_t count(RelationKind kind) const;
};

// One matched (same class) tuple pair between two views.
struct MatchedPair {
  GcdvTuple a;
  GcdvTuple b;
  TriState d = TriState::Different;
  bool v = false;
  bool domain_mismatch = false;
};

// Shared evaluation state for one view pair.
struct PairContext {
  const View* view_a = nullptr;
  const View* view_b = nullptr;
  TriState g = TriState::Different;
  std::vector<MatchedPair> pairs;
};

PairContext make_pair_context(const View& a, const View& b, const EquivalenceRegistry& registry);

using WitnessList = std::vector<Witness>;

std::optional<WitnessList> is_full_redundancy(const PairContext& ctx);
// On success also reports the subset view through `subset` when provided.
std::optional<WitnessList> is_partial_redundancy(const PairContext& ctx, std::string* subset = nullptr);
std::optional<WitnessList> is_multiples_same_grouping(const PairContext& ctx);
std::optional<WitnessList> is_multiples_same_data(const PairContext& ctx);
std::optional<WitnessList> is_hallucinator(const PairContext& ctx);
std::optional<WitnessList> is_confuser(const PairContext& ctx);

// All relations over all unordered view pairs. Redundancy-axis relations obey
// R1 > R2 > R3a (at most one per pair); consistency-axis relations are
// reported independently.
RelationSet find_relations(const Canvas& canvas);

// Instances touching a view, in id order. Throws Error(UnknownView).
std::vector<RelationInstance> relations_for_view(const Canvas& canvas, const RelationSet& set,
                                                 std::string_view view_id);

// Connected components over R3a instances whose views share a chart type and
// show the same x-axis data. Each group has at least two views, in canvas order.
std::vector<std::vector<std::string>> integration_groups(const RelationSet& set, const Canvas& canvas);

// Stable identity of an instance ignoring its id: kind, views, witness channels
// and domain mismatch.
std::string relation_signature(const RelationInstance& instance);

}  // namespace semsnap
