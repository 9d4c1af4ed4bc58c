#include "semsnap/equivalence.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "semsnap/error.hpp"

namespace semsnap {

std::string_view to_string(ConfirmationStatus status) {
  switch (status) {
    case ConfirmationStatus::ConfirmedSame: return "confirmed-same";
    case ConfirmationStatus::ConfirmedDifferent: return "confirmed-different";
    case ConfirmationStatus::Pending: return "pending";
  }
  return "pending";
}

std::optional<ConfirmationStatus> parse_confirmation_status(std::string_view text) {
  if (text == "confirmed-same") return ConfirmationStatus::ConfirmedSame;
  if (text == "confirmed-different") return ConfirmationStatus::ConfirmedDifferent;
  if (text == "pending") return ConfirmationStatus::Pending;
  return std::nullopt;
}

namespace {

std::pair<std::string, std::string> ordered(std::string_view a, std::string_view b) {
  if (b < a) return {std::string(b), std::string(a)};
  return {std::string(a), std::string(b)};
}

}  // namespace

std::string EquivalenceRegistry::find(const std::string& key) const {
  std::string current = key;
  for (auto it = parent_.find(current); it != parent_.end() && it->second != current;
       it = parent_.find(current)) {
    current = it->second;
  }
  return current;
}

void EquivalenceRegistry::rebuild() {
  parent_.clear();
  auto root = [this](std::string key) {
    while (true) {
      auto it = parent_.find(key);
      if (it == parent_.end() || it->second == key) return key;
      key = it->second;
    }
  };
  for (const auto& c : confirmations_) {
    if (c.status != ConfirmationStatus::ConfirmedSame) continue;
    parent_.try_emplace(c.a, c.a);
    parent_.try_emplace(c.b, c.b);
    std::string ra = root(c.a);
    std::string rb = root(c.b);
    if (ra == rb) continue;
    // Smaller key becomes the root so the structure is order independent.
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }
}

bool EquivalenceRegistry::same(std::string_view a, std::string_view b) const {
  if (a == b) return true;
  return find(std::string(a)) == find(std::string(b));
}

bool EquivalenceRegistry::different(std::string_view a, std::string_view b) const {
  if (same(a, b)) return false;
  const std::string ra = find(std::string(a));
  const std::string rb = find(std::string(b));
  for (const auto& c : confirmations_) {
    if (c.status != ConfirmationStatus::ConfirmedDifferent) continue;
    const std::string ca = find(c.a);
    const std::string cb = find(c.b);
    if ((ca == ra && cb == rb) || (ca == rb && cb == ra)) return true;
  }
  return false;
}

TriState EquivalenceRegistry::compare(std::string_view a, std::string_view b) const {
  if (same(a, b)) return TriState::Equal;
  if (different(a, b)) return TriState::Different;
  return TriState::NeedsConfirmation;
}

void EquivalenceRegistry::record(std::string_view a, std::string_view b, bool is_same) {
  auto [lo, hi] = ordered(a, b);
  if (lo == hi) {
    if (!is_same) {
      throw Error(ErrorCode::ContradictoryConfirmation,
                  fmt::format("a field cannot differ from itself: {}", lo));
    }
    return;
  }
  if (is_same && different(lo, hi)) {
    throw Error(ErrorCode::ContradictoryConfirmation,
                fmt::format("{} and {} were confirmed different", lo, hi));
  }
  if (!is_same && same(lo, hi)) {
    throw Error(ErrorCode::ContradictoryConfirmation,
                fmt::format("{} and {} were confirmed the same", lo, hi));
  }
  const auto saved = confirmations_;
  const auto status = is_same ? ConfirmationStatus::ConfirmedSame : ConfirmationStatus::ConfirmedDifferent;
  auto it = std::find_if(confirmations_.begin(), confirmations_.end(),
                         [&](const Confirmation& c) { return c.a == lo && c.b == hi; });
  if (it != confirmations_.end()) {
    it->status = status;
  } else {
    confirmations_.push_back({lo, hi, status});
    std::sort(confirmations_.begin(), confirmations_.end(),
              [](const Confirmation& x, const Confirmation& y) {
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
              });
  }
  rebuild();
  if (is_same) {
    // A new union must not merge two classes that were pinned apart.
    for (const auto& c : confirmations_) {
      if (c.status == ConfirmationStatus::ConfirmedDifferent && same(c.a, c.b)) {
        const std::string merged_a = c.a;
        const std::string merged_b = c.b;
        confirmations_ = saved;
        rebuild();
        throw Error(ErrorCode::ContradictoryConfirmation,
                    fmt::format("confirming {} = {} would merge {} and {}, which were confirmed different",
                                lo, hi, merged_a, merged_b));
      }
    }
  }
}

void EquivalenceRegistry::mark_pending(std::string_view a, std::string_view b) {
  auto [lo, hi] = ordered(a, b);
  if (lo == hi) return;
  auto it = std::find_if(confirmations_.begin(), confirmations_.end(),
                         [&](const Confirmation& c) { return c.a == lo && c.b == hi; });
  if (it != confirmations_.end()) return;
  confirmations_.push_back({lo, hi, ConfirmationStatus::Pending});
  std::sort(confirmations_.begin(), confirmations_.end(), [](const Confirmation& x, const Confirmation& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
}

EquivalenceRegistry record_equivalence(EquivalenceRegistry registry, const FieldRef& a, const FieldRef& b,
                                       bool same) {
  registry.record(a.canonical(), b.canonical(), same);
  return registry;
}

}  // namespace semsnap
