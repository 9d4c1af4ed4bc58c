#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "semsnap/canvas.hpp"
#include "semsnap/config.hpp"
#include "semsnap/operations.hpp"
#include "semsnap/relations.hpp"

namespace semsnap {

enum class ReportStyle { Text, Json };

// Parses a .canvas.json document. A dataset "source" is resolved against
// base_dir; an inline "csv" string takes precedence. Missing domains are
// computed and cells default to row-major placement.
// Throws SyntaxError (line/column) or ValidationError (every issue found).
Canvas parse_canvas(std::string_view text, const std::filesystem::path& base_dir = {});

// Deterministic: sorted keys, 2-space indent, trailing newline.
std::string serialize_canvas(const Canvas& canvas);

// Rewrites a relative dataset source so that a document moved from from_dir
// to to_dir still finds its table. Inline and absolute sources are kept.
Canvas rebase_dataset_source(const Canvas& canvas, const std::filesystem::path& from_dir,
                             const std::filesystem::path& to_dir);

// Throws Error(IoError) plus anything parse_canvas throws.
Canvas load_canvas_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// One-line description of an instance using the relation vocabulary.
std::string lint_message(const RelationInstance& instance);

// Text: one "R5 [a,b] Color: message" line per instance, ordered by code then
// views, or "no relations found". Json: {"entries": [...], "count": n}.
std::string format_lint_report(const Canvas& canvas, const RelationSet& relations, ReportStyle style,
                               const EngineConfig& config = {});

// Json: {"operations": [...], "categories": {"integrate": 2, ...}}.
std::string format_plans(const std::vector<OperationPlan>& plans, ReportStyle style);

}  // namespace semsnap
