#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/dataset.hpp"
#include "semsnap/equivalence.hpp"
#include "semsnap/model.hpp"

namespace semsnap {

// Several views over one dataset, plus the user's field confirmations.
struct Canvas {
  std::shared_ptr<const Dataset> dataset;
  std::vector<View> views;
  EquivalenceRegistry registry;

  const View* find_view(std::string_view id) const;
  View* find_view(std::string_view id);

  // Throws Error(UnknownView).
  const View& view(std::string_view id) const;

  friend bool operator==(const Canvas& a, const Canvas& b);
};

// Every violated model invariant, in view order. Empty when the canvas is valid.
std::vector<std::string> validate_canvas(const Canvas& canvas);

// Computes domains for mapped bindings that lack one.
void fill_missing_domains(Canvas& canvas);

}  // namespace semsnap
