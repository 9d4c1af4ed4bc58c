#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/relations.hpp"
#include "semsnap/types.hpp"

namespace semsnap {

// Severity per relation kind used by semantic_position.
struct SeverityWeights {
  std::map<RelationKind, double> by_kind{
      {RelationKind::FullRedundancy, 3.0},    {RelationKind::PartialRedundancy, 2.0},
      {RelationKind::MultiplesSameGrouping, 1.0}, {RelationKind::MultiplesSameData, 1.0},
      {RelationKind::Hallucinator, 2.0},      {RelationKind::Confuser, 2.0},
  };
  // Added to consistency for each multiples instance with mismatched domains.
  double domain_mismatch = 1.0;
  // Factor for instances that still await a confirmation.
  double conditional_factor = 0.5;

  double weight(RelationKind kind) const;
};

// A named list of colors. Categorical schemes hand out colors in order; ramps
// become continuous schemes with one stop per color.
struct PaletteScheme {
  std::string id;
  std::vector<std::string> colors;
};

struct Palette {
  std::vector<std::string> constants;
  std::vector<PaletteScheme> categorical;
  std::vector<PaletteScheme> ramps;
  std::vector<SizeRange> sizes;
};

struct EngineConfig {
  SeverityWeights weights;
  Palette palette = default_palette();

  static Palette default_palette();
};

// Reads {"weights": {"R1": 3, ..., "domainMismatch": 1, "conditionalFactor": 0.5},
// "palette": {"constants": [...], "categorical": [{id, colors}], "ramps": [...],
// "sizes": [[min, max], ...]}}. Absent keys keep their defaults.
// Throws Error(ConfigError).
EngineConfig parse_config(std::string_view json_text);
EngineConfig load_config_file(const std::string& path);

}  // namespace semsnap
