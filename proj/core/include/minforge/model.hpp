#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minforge {

using ComponentId = std::size_t;
using WireId = std::size_t;
using PortIndex = std::size_t;

/// Integer pixel coordinate, x to the right and y down.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

enum class Kind {
    source_terminal,
    dest_terminal,
    switch_1x2,
    switch_2x1,
    switch_2x2,
    switch_3x3,
};

enum class Side { left, right, top, bottom };

/// Position of a port along one side of the bounding box, as an exact
/// fraction so anchors stay integer and reproducible.
struct PortSlot {
    Side side;
    int numerator;
    int denominator;
};

/// Port layout of a kind: switches list their M left ports, then their N
/// right ports, then one top and one bottom chaining port.
std::span<const PortSlot> port_layout(Kind kind);
std::size_t port_count(Kind kind);

std::string_view kind_name(Kind kind);
std::optional<Kind> kind_from_name(std::string_view name);

struct Size {
    int width;
    int height;
};

Size default_size(Kind kind);

struct Component {
    ComponentId id = 0;
    Kind kind = Kind::switch_2x2;
    Point centre;
    int width = 40;
    int height = 60;

    friend bool operator==(const Component&, const Component&) = default;
};

struct Endpoint {
    ComponentId comp = 0;
    PortIndex port = 0;

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Wire {
    WireId id = 0;
    Endpoint a;
    Endpoint b;
    Rgb color;
    int thickness = 1;
    bool bent = false;

    friend bool operator==(const Wire&, const Wire&) = default;
};

/// A drawable, simulatable document. Values are never mutated in place;
/// CircuitBuilder produces new ones.
class Circuit {
public:
    Circuit() = default;
    Circuit(std::string name, std::vector<Component> components, std::vector<Wire> wires);

    const std::string& name() const { return name_; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<Wire>& wires() const { return wires_; }

    std::size_t component_count() const { return components_.size(); }
    std::size_t wire_count() const { return wires_.size(); }

    /// Throws UnknownComponent.
    const Component& component(ComponentId id) const;
    /// Throws InvalidPath.
    const Wire& wire(WireId id) const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::string name_;
    std::vector<Component> components_;
    std::vector<Wire> wires_;
};

/// Assigns dense ids in insertion order.
class CircuitBuilder {
public:
    explicit CircuitBuilder(std::string name = {}) : name_(std::move(name)) {}

    ComponentId add(Kind kind, Point centre);
    ComponentId add(Kind kind, Point centre, int width, int height);
    WireId connect(Endpoint a, Endpoint b, bool bent = false, Rgb color = {}, int thickness = 1);

    std::size_t component_count() const { return components_.size(); }
    const Component& component(ComponentId id) const { return components_.at(id); }

    Circuit build() const { return Circuit(name_, components_, wires_); }

private:
    std::string name_;
    std::vector<Component> components_;
    std::vector<Wire> wires_;
};

/// Absolute pixel position of a port. Throws UnknownComponent, UnknownPort.
Point port_anchor(const Circuit& circuit, ComponentId comp, PortIndex port);
Point port_anchor(const Component& component, PortIndex port);

/// Throws UnknownPort.
bool port_is_top_bottom(Kind kind, PortIndex port);
Side port_side(Kind kind, PortIndex port);

struct Violation {
    enum class Type {
        dangling_endpoint,
        invalid_port,
        identical_endpoints,
        duplicate_wire,
        invalid_thickness,
        id_mismatch,
        invalid_dimension,
    };

    Type type;
    /// Set for wire violations.
    std::optional<WireId> wire;
    /// Set for component violations, and for wire violations naming a component.
    std::optional<ComponentId> component;

    std::string describe() const;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view violation_name(Violation::Type type);

/// Every structural violation: wire problems in wire id order, then
/// component problems in component id order.
std::vector<Violation> check_circuit(const Circuit& circuit);

constexpr int min_component_extent = 8;

} // namespace minforge
