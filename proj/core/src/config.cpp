#include "semsnap/config.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "semsnap/error.hpp"

namespace semsnap {

using nlohmann::json;

double SeverityWeights::weight(RelationKind kind) const {
  auto it = by_kind.find(kind);
  return it == by_kind.end() ? 0.0 : it->second;
}

Palette EngineConfig::default_palette() {
  Palette p;
  p.constants = {"#1f77b4", "#2ca02c", "#ff7f0e", "#d62728", "#9467bd",
                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  p.categorical = {
      {"tableau10", {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                     "#bcbd22", "#17becf"}},
      {"pastel", {"#f7b6d2", "#98df8a", "#c5b0d5", "#ffbb78", "#aec7e8", "#c49c94", "#dbdb8d", "#9edae5",
                  "#ff9896", "#c7c7c7"}},
      {"dark2", {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"}},
      {"set1", {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf"}},
      {"set2", {"#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f", "#e5c494", "#b3b3b3"}},
      {"set3", {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"}},
      {"accent", {"#7fc97f", "#beaed4", "#fdc086", "#ffff99", "#386cb0", "#f0027f", "#bf5b17", "#666666"}},
      {"paired", {"#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00"}},
      {"pastel1", {"#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4", "#fed9a6", "#ffffcc", "#e5d8bd", "#fddaec"}},
      {"pastel2", {"#b3e2cd", "#fdcdac", "#cbd5e8", "#f4cae4", "#e6f5c9", "#fff2ae", "#f1e2cc", "#cccccc"}},
  };
  p.ramps = {
      {"blues", {"#deebf7", "#1f77b4"}},   {"reds", {"#fee0d2", "#d62728"}},
      {"greens", {"#e5f5e0", "#2ca02c"}},  {"purples", {"#efedf5", "#756bb1"}},
      {"oranges", {"#fee6ce", "#e6550d"}}, {"greys", {"#f0f0f0", "#636363"}},
      {"teals", {"#e0f3f3", "#01665e"}},   {"browns", {"#f6e8c3", "#8c510a"}},
      {"pinks", {"#fde0ef", "#c51b7d"}},   {"olives", {"#f7fcb9", "#556b2f"}},
  };
  p.sizes = {{2, 10}, {4, 16}, {6, 24}, {3, 30}, {8, 40}, {1, 6}, {5, 12}, {10, 50}, {2, 20}, {12, 60}};
  return p;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::vector<std::string> read_colors(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) bad(where + " must be a non-empty array of colors");
  std::vector<std::string> out;
  for (const auto& c : node) {
    if (!c.is_string() || !is_valid_hex_color(c.get<std::string>())) bad(where + " has an invalid color");
    out.push_back(c.get<std::string>());
  }
  return out;
}

std::vector<PaletteScheme> read_schemes(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) bad(where + " must be a non-empty array");
  std::vector<PaletteScheme> out;
  for (const auto& s : node) {
    if (!s.is_object() || !s.contains("id") || !s["id"].is_string()) bad(where + " entries need a string id");
    out.push_back({s["id"].get<std::string>(), read_colors(s.value("colors", json()), where + ".colors")});
  }
  return out;
}

}  // namespace

EngineConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) bad("config must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (key != "weights" && key != "palette") bad(fmt::format("unknown config key '{}'", key));
  }

  EngineConfig config;
  if (root.contains("weights")) {
    const auto& w = root["weights"];
    if (!w.is_object()) bad("weights must be an object");
    for (const auto& [key, value] : w.items()) {
      if (!value.is_number() || value.get<double>() < 0) bad(fmt::format("weight '{}' must be a non-negative number", key));
      const double x = value.get<double>();
      if (key == "domainMismatch") {
        config.weights.domain_mismatch = x;
      } else if (key == "conditionalFactor") {
        config.weights.conditional_factor = x;
      } else if (auto kind = parse_relation_code(key)) {
        config.weights.by_kind[*kind] = x;
      } else {
        bad(fmt::format("unknown weight '{}'", key));
      }
    }
  }
  if (root.contains("palette")) {
    const auto& p = root["palette"];
    if (!p.is_object()) bad("palette must be an object");
    for (const auto& [key, value] : p.items()) {
      if (key == "constants") {
        config.palette.constants = read_colors(value, "palette.constants");
      } else if (key == "categorical") {
        config.palette.categorical = read_schemes(value, "palette.categorical");
      } else if (key == "ramps") {
        config.palette.ramps = read_schemes(value, "palette.ramps");
      } else if (key == "sizes") {
        if (!value.is_array()) bad("palette.sizes must be an array");
        config.palette.sizes.clear();
        for (const auto& r : value) {
          if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number() ||
              r[0].get<double>() > r[1].get<double>()) {
            bad("palette.sizes entries must be [min, max]");
          }
          config.palette.sizes.push_back({r[0].get<double>(), r[1].get<double>()});
        }
      } else {
        bad(fmt::format("unknown palette key '{}'", key));
      }
    }
  }
  return config;
}

EngineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, fmt::format("cannot read config file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace semsnap
