#pragma once

#include "minforge/errors.hpp"
#include "minforge/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace minforge {

/// Message shown when a path names a wire that does not exist.
inline constexpr std::string_view invalid_path_message = "Invalid Path. Please check the input.";
/// Message shown when a fault names a component that does not exist.
inline constexpr std::string_view invalid_component_message =
    "Invalid Component number. Please check the input.";

/// Index list syntax. Text containing a comma is comma-separated decimal
/// integers; anything else is the legacy form where every character is one
/// digit. Throws ParseError.
std::vector<std::size_t> parse_indices(std::string_view input);

/// Inverse of parse_indices: legacy digits when every index is below 10,
/// otherwise the separated form.
std::string format_indices(const std::vector<std::size_t>& indices);

struct PathSpec {
    std::string raw;
    std::vector<WireId> wires;

    /// Throws ParseError, including on empty input.
    static PathSpec parse(std::string_view input);
    static PathSpec from_wires(std::vector<WireId> wires);

    friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

struct FaultSet {
    std::string raw;
    /// Distinct ids in first-appearance order.
    std::vector<ComponentId> components;

    /// Empty input is an empty set. Throws ParseError.
    static FaultSet parse(std::string_view input);
    static FaultSet from_components(std::vector<ComponentId> components);

    bool contains(ComponentId id) const;

    friend bool operator==(const FaultSet&, const FaultSet&) = default;
};

struct ValidationFlag {
    enum class Type {
        path_syntax,
        fault_syntax,
        invalid_path,
        invalid_component,
        non_contiguous,
        off_path_fault,
    };

    Type type;
    std::string message;
    /// non_contiguous: position of the first wire of the pair.
    /// off_path_fault: the faults that touch no path wire.
    std::vector<std::size_t> items;

    bool is_error() const;

    friend bool operator==(const ValidationFlag&, const ValidationFlag&) = default;
};

std::string_view flag_name(ValidationFlag::Type type);

struct ValidationReport {
    std::vector<ValidationFlag> flags;

    bool ok() const;
    std::vector<const ValidationFlag*> errors() const;
    std::vector<const ValidationFlag*> warnings() const;
    bool has(ValidationFlag::Type type) const;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Raised by operations that require a clean validation.
class ValidationFailed : public Error {
public:
    explicit ValidationFailed(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

ValidationReport validate(const Circuit& circuit, const PathSpec& path, const FaultSet& faults);

/// Total over arbitrary text: syntax problems become flags instead of throwing.
ValidationReport validate_text(const Circuit& circuit, std::string_view path_text,
                               std::string_view faults_text);

/// Endpoint components of the path's wires in first-touch order.
/// Throws InvalidPath.
std::vector<ComponentId> path_components(const Circuit& circuit, const PathSpec& path);

/// Components visited by walking a contiguous path from its free end; falls
/// back to first-touch order when the wires do not chain. Throws InvalidPath.
std::vector<ComponentId> path_walk(const Circuit& circuit, const PathSpec& path);

struct DisjointnessCheck {
    bool disjoint = true;
    std::optional<ComponentId> shared;
};

/// Throws InvalidPath, MismatchedEndpoints.
DisjointnessCheck are_disjoint(const Circuit& circuit, const std::vector<PathSpec>& paths);

/// Direction a packet travels along a wire: from its output-side port to its
/// input-side port, or a -> b when the ports do not decide it.
struct DirectedWire {
    ComponentId from;
    ComponentId to;
};
DirectedWire wire_direction(const Circuit& circuit, const Wire& wire);

struct PathSetResult {
    ComponentId source = 0;
    ComponentId dest = 0;
    /// Component sequences, source first and dest last.
    std::vector<std::vector<ComponentId>> paths;
    /// Wire sequences matching `paths`.
    std::vector<std::vector<WireId>> wires;
    std::size_t disjointness = 0;

    friend bool operator==(const PathSetResult&, const PathSetResult&) = default;
};

/// Up to k_limit internally node-disjoint directed paths via unit-capacity
/// flow over split nodes. Throws UnknownComponent, SameEndpoint, NoPath,
/// InvalidArgument.
PathSetResult max_disjoint_paths(const Circuit& circuit, ComponentId source, ComponentId dest,
                                 std::size_t k_limit);

} // namespace minforge
