#include "minforge/model.hpp"

#include "minforge/errors.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace minforge {

namespace {

constexpr std::array<PortSlot, 1> source_layout{{{Side::right, 1, 2}}};
constexpr std::array<PortSlot, 1> dest_layout{{{Side::left, 1, 2}}};

constexpr std::array<PortSlot, 5> layout_1x2{{
    {Side::left, 1, 2},
    {Side::right, 1, 4},
    {Side::right, 3, 4},
    {Side::top, 1, 2},
    {Side::bottom, 1, 2},
}};

constexpr std::array<PortSlot, 5> layout_2x1{{
    {Side::left, 1, 4},
    {Side::left, 3, 4},
    {Side::right, 1, 2},
    {Side::top, 1, 2},
    {Side::bottom, 1, 2},
}};

constexpr std::array<PortSlot, 6> layout_2x2{{
    {Side::left, 1, 4},
    {Side::left, 3, 4},
    {Side::right, 1, 4},
    {Side::right, 3, 4},
    {Side::top, 1, 2},
    {Side::bottom, 1, 2},
}};

constexpr std::array<PortSlot, 8> layout_3x3{{
    {Side::left, 1, 6},
    {Side::left, 3, 6},
    {Side::left, 5, 6},
    {Side::right, 1, 6},
    {Side::right, 3, 6},
    {Side::right, 5, 6},
    {Side::top, 1, 2},
    {Side::bottom, 1, 2},
}};

constexpr std::array<std::pair<Kind, std::string_view>, 6> kind_names{{
    {Kind::source_terminal, "source_terminal"},
    {Kind::dest_terminal, "dest_terminal"},
    {Kind::switch_1x2, "switch_1x2"},
    {Kind::switch_2x1, "switch_2x1"},
    {Kind::switch_2x2, "switch_2x2"},
    {Kind::switch_3x3, "switch_3x3"},
}};

// Rounds half up; operands are non-negative.
int scale(int length, int numerator, int denominator)
{
    return (2 * numerator * length + denominator) / (2 * denominator);
}

} // namespace

std::span<const PortSlot> port_layout(Kind kind)
{
    switch (kind) {
    case Kind::source_terminal: return source_layout;
    case Kind::dest_terminal: return dest_layout;
    case Kind::switch_1x2: return layout_1x2;
    case Kind::switch_2x1: return layout_2x1;
    case Kind::switch_2x2: return layout_2x2;
    case Kind::switch_3x3: return layout_3x3;
    }
    return {};
}

std::size_t port_count(Kind kind)
{
    return port_layout(kind).size();
}

std::string_view kind_name(Kind kind)
{
    for (const auto& [k, name] : kind_names) {
        if (k == kind)
            return name;
    }
    return "unknown";
}

std::optional<Kind> kind_from_name(std::string_view name)
{
    for (const auto& [k, n] : kind_names) {
        if (n == name)
            return k;
    }
    return std::nullopt;
}

Size default_size(Kind kind)
{
    switch (kind) {
    case Kind::source_terminal:
    case Kind::dest_terminal:
        return {24, 24};
    case Kind::switch_3x3:
        return {40, 90};
    default:
        return {40, 60};
    }
}

Circuit::Circuit(std::string name, std::vector<Component> components, std::vector<Wire> wires)
    : name_(std::move(name)), components_(std::move(components)), wires_(std::move(wires))
{
}

const Component& Circuit::component(ComponentId id) const
{
    if (id >= components_.size())
        throw UnknownComponent("unknown component " + std::to_string(id));
    return components_[id];
}

const Wire& Circuit::wire(WireId id) const
{
    if (id >= wires_.size())
        throw InvalidPath("unknown wire " + std::to_string(id));
    return wires_[id];
}

ComponentId CircuitBuilder::add(Kind kind, Point centre)
{
    const Size size = default_size(kind);
    return add(kind, centre, size.width, size.height);
}

ComponentId CircuitBuilder::add(Kind kind, Point centre, int width, int height)
{
    const ComponentId id = components_.size();
    components_.push_back(Component{id, kind, centre, width, height});
    return id;
}

WireId CircuitBuilder::connect(Endpoint a, Endpoint b, bool bent, Rgb color, int thickness)
{
    const WireId id = wires_.size();
    wires_.push_back(Wire{id, a, b, color, thickness, bent});
    return id;
}

Side port_side(Kind kind, PortIndex port)
{
    const auto layout = port_layout(kind);
    if (port >= layout.size()) {
        throw UnknownPort("port " + std::to_string(port) + " is not valid for " +
                          std::string(kind_name(kind)));
    }
    return layout[port].side;
}

bool port_is_top_bottom(Kind kind, PortIndex port)
{
    const Side side = port_side(kind, port);
    return side == Side::top || side == Side::bottom;
}

Point port_anchor(const Component& c, PortIndex port)
{
    const auto layout = port_layout(c.kind);
    if (port >= layout.size()) {
        throw UnknownPort("port " + std::to_string(port) + " is not valid for component " +
                          std::to_string(c.id));
    }
    const PortSlot& slot = layout[port];
    const int left = c.centre.x - c.width / 2;
    const int top = c.centre.y - c.height / 2;
    switch (slot.side) {
    case Side::left:
        return {left, top + scale(c.height, slot.numerator, slot.denominator)};
    case Side::right:
        return {left + c.width, top + scale(c.height, slot.numerator, slot.denominator)};
    case Side::top:
        return {left + scale(c.width, slot.numerator, slot.denominator), top};
    case Side::bottom:
        return {left + scale(c.width, slot.numerator, slot.denominator), top + c.height};
    }
    return c.centre;
}

Point port_anchor(const Circuit& circuit, ComponentId comp, PortIndex port)
{
    return port_anchor(circuit.component(comp), port);
}

std::string_view violation_name(Violation::Type type)
{
    switch (type) {
    case Violation::Type::dangling_endpoint: return "DanglingEndpoint";
    case Violation::Type::invalid_port: return "InvalidPort";
    case Violation::Type::identical_endpoints: return "IdenticalEndpoints";
    case Violation::Type::duplicate_wire: return "DuplicateWire";
    case Violation::Type::invalid_thickness: return "InvalidThickness";
    case Violation::Type::id_mismatch: return "IdMismatch";
    case Violation::Type::invalid_dimension: return "InvalidDimension";
    }
    return "Unknown";
}

std::string Violation::describe() const
{
    std::string out(violation_name(type));
    out += '{';
    if (wire)
        out += "wire:" + std::to_string(*wire);
    if (component) {
        if (wire)
            out += ',';
        out += "component:" + std::to_string(*component);
    }
    out += '}';
    return out;
}

std::vector<Violation> check_circuit(const Circuit& circuit)
{
    using Type = Violation::Type;
    std::vector<Violation> out;
    const auto& components = circuit.components();

    std::set<std::pair<std::pair<ComponentId, PortIndex>, std::pair<ComponentId, PortIndex>>> seen;
    for (std::size_t i = 0; i < circuit.wires().size(); ++i) {
        const Wire& w = circuit.wires()[i];
        if (w.id != i)
            out.push_back({Type::id_mismatch, i, std::nullopt});

        bool endpoints_ok = true;
        for (const Endpoint& e : {w.a, w.b}) {
            if (e.comp >= components.size()) {
                out.push_back({Type::dangling_endpoint, i, e.comp});
                endpoints_ok = false;
            } else if (e.port >= port_count(components[e.comp].kind)) {
                out.push_back({Type::invalid_port, i, e.comp});
                endpoints_ok = false;
            }
        }
        if (w.a == w.b)
            out.push_back({Type::identical_endpoints, i, w.a.comp});
        if (w.thickness < 1)
            out.push_back({Type::invalid_thickness, i, std::nullopt});

        if (endpoints_ok && w.a != w.b) {
            std::pair first{w.a.comp, w.a.port};
            std::pair second{w.b.comp, w.b.port};
            if (second < first)
                std::swap(first, second);
            if (!seen.insert({first, second}).second)
                out.push_back({Type::duplicate_wire, i, std::nullopt});
        }
    }

    for (std::size_t i = 0; i < components.size(); ++i) {
        const Component& c = components[i];
        if (c.id != i)
            out.push_back({Type::id_mismatch, std::nullopt, i});
        if (c.width < min_component_extent || c.height < min_component_extent)
            out.push_back({Type::invalid_dimension, std::nullopt, i});
    }
    return out;
}

} // namespace minforge
