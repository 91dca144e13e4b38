#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mutagame/simulate.hpp"

namespace YAML {
class Node;
}

namespace mutagame {

inline constexpr int kSchemaVersion = 1;

/// Dotted-path scalar override, e.g. {"discount.delta", "0.45"}.
/// Sequence elements are addressed by index: "noise.segments.1.value".
/// "kernel.epsilon" rescales every kernel row to the given mutation rate.
using Override = std::pair<std::string, std::string>;

Override parse_override(std::string_view assignment);

/// Reads and parses a scenario document; IoError on unreadable files or YAML syntax errors.
YAML::Node load_document(const std::filesystem::path& path);
YAML::Node parse_document(std::string_view text);

/// Builds a validated scenario. Throws ValidationError listing every violation,
/// each prefixed with the source line when known.
Scenario scenario_from_document(const YAML::Node& document, const std::vector<Override>& overrides = {});

Scenario load_scenario(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

/// True when the path names a numeric scalar a sweep may vary.
bool is_sweepable(const YAML::Node& document, std::string_view path);

std::vector<std::string> preset_names();
/// Scenario file text for a named preset; ConfigError on unknown names.
std::string preset_text(std::string_view name);

}  // namespace mutagame
