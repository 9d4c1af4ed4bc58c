#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "semsnap/canvas.hpp"

namespace semsnap::testing {

// Shared table behind every generated canvas.
std::shared_ptr<const Dataset> corpus_dataset();

// A random valid canvas: up to 5 views of mixed chart types, up to 4 channels
// each, many derived from one another so that relations are common.
Canvas random_canvas(std::uint32_t seed);

std::vector<Canvas> random_corpus(std::size_t count, std::uint32_t seed);

}  // namespace semsnap::testing
