#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/types.hpp"

namespace semsnap {

enum class ConfirmationStatus { ConfirmedSame, ConfirmedDifferent, Pending };

std::string_view to_string(ConfirmationStatus status);
std::optional<ConfirmationStatus> parse_confirmation_status(std::string_view text);

// A user answer about two canonical field strings; a <= b lexicographically.
struct Confirmation {
  std::string a;
  std::string b;
  ConfirmationStatus status = ConfirmationStatus::Pending;
  friend bool operator==(const Confirmation&, const Confirmation&) = default;
};

// Semantic sameness of fields, as confirmed by the user. Keys are canonical
// FieldRef strings ("sum(Europe)") or bare column names. Confirmed-same pairs
// are closed transitively (union-find); confirmed-different pins whole classes
// apart.
class EquivalenceRegistry {
 public:
  EquivalenceRegistry() = default;

  const std::vector<Confirmation>& confirmations() const noexcept { return confirmations_; }

  bool same(std::string_view a, std::string_view b) const;
  bool different(std::string_view a, std::string_view b) const;

  // Equal if same(), Different if different(), otherwise NeedsConfirmation.
  TriState compare(std::string_view a, std::string_view b) const;

  // Throws Error(ContradictoryConfirmation) when the answer contradicts what is
  // already recorded, including through transitive closure.
  void record(std::string_view a, std::string_view b, bool same);

  // Adds a pending entry unless the pair already has one.
  void mark_pending(std::string_view a, std::string_view b);

  bool empty() const noexcept { return confirmations_.empty(); }

  friend bool operator==(const EquivalenceRegistry& lhs, const EquivalenceRegistry& rhs) {
    return lhs.confirmations_ == rhs.confirmations_;
  }

 private:
  std::string find(const std::string& key) const;
  void rebuild();

  std::vector<Confirmation> confirmations_;
  std::map<std::string, std::string> parent_;
};

EquivalenceRegistry record_equivalence(EquivalenceRegistry registry, const FieldRef& a,
                                       const FieldRef& b, bool same);

}  // namespace semsnap
