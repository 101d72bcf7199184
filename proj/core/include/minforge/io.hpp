#pragma once

#include "minforge/model.hpp"
#include "minforge/sim.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace minforge {

constexpr int circuit_format_version = 1;
constexpr int scenario_format_version = 1;

/// Capacity of the original tool's fixed-size arrays.
constexpr std::size_t legacy_capacity = 100;

struct CircuitDocument {
    int format_version = circuit_format_version;
    Circuit circuit;

    friend bool operator==(const CircuitDocument&, const CircuitDocument&) = default;
};

struct ScenarioDocument {
    std::string path_input;
    std::string faults_input;
    int duration_ticks = default_duration_ticks;
    DropParity drop_parity = DropParity::drop_first;

    friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

struct LoadOptions {
    /// Reject documents with more than legacy_capacity components or wires.
    bool strict_capacity = false;
    /// When false the loader returns structurally invalid circuits so
    /// callers can list the violations themselves.
    bool check_structure = true;
};

// Circuit documents (.mincir). Writers throw InvalidCircuit for circuits with
// structural violations and SinkError when the stream fails.
void save_circuit(const CircuitDocument& doc, std::ostream& sink);
std::string circuit_to_text(const CircuitDocument& doc);

// Readers throw ParseError, UnsupportedVersion or InvalidCircuit.
CircuitDocument load_circuit(std::istream& source, LoadOptions options = {});
CircuitDocument circuit_from_text(std::string_view text, LoadOptions options = {});

// Scenario documents (.minsc).
void save_scenario(const ScenarioDocument& doc, std::ostream& sink);
std::string scenario_to_text(const ScenarioDocument& doc);
ScenarioDocument load_scenario(std::istream& source);
ScenarioDocument scenario_from_text(std::string_view text);

void save_circuit_file(const CircuitDocument& doc, const std::string& path);
CircuitDocument load_circuit_file(const std::string& path, LoadOptions options = {});

} // namespace minforge
