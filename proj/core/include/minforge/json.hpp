#pragma once

// nlohmann::json mappings shared by the file formats, the CLI's machine
// output, and the HTTP service bodies.

#include "minforge/io.hpp"
#include "minforge/paths.hpp"
#include "minforge/sim.hpp"

#include <nlohmann/json.hpp>

namespace minforge {

using nlohmann::json;

void to_json(json& j, const Rgb& color);
void from_json(const json& j, Rgb& color);

void to_json(json& j, const Circuit& circuit);
/// Throws ParseError on missing or mistyped fields; performs no structural checks.
Circuit circuit_from_json(const json& j);

void to_json(json& j, const CircuitDocument& doc);
void to_json(json& j, const ScenarioDocument& doc);

void to_json(json& j, const Violation& v);
void to_json(json& j, const ValidationFlag& flag);
void to_json(json& j, const ValidationReport& report);
void to_json(json& j, const PathSetResult& result);
void to_json(json& j, const SimConfig& config);
void to_json(json& j, const SimEvent& event);
void to_json(json& j, const SimulationReport& report);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_text(const json& j);

} // namespace minforge
