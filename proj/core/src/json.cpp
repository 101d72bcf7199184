#include "minforge/json.hpp"

#include <cstdio>
#include <limits>

namespace minforge {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object())
        throw ParseError(std::string("expected an object holding '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t index_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_number_unsigned())
        throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

int int_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    const auto value = v.get<long long>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
        throw ParseError(std::string("field '") + key + "' is out of range");
    return static_cast<int>(value);
}

std::string string_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_string())
        throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool bool_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_boolean())
        throw ParseError(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

const json& array_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_array())
        throw ParseError(std::string("field '") + key + "' must be an array");
    return v;
}

int hex_digit(char ch)
{
    if (ch >= '0' && ch <= '9')
        return ch - '0';
    if (ch >= 'a' && ch <= 'f')
        return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F')
        return ch - 'A' + 10;
    return -1;
}

Endpoint endpoint_from_json(const json& j)
{
    return Endpoint{index_field(j, "comp"), index_field(j, "port")};
}

json endpoint_to_json(const Endpoint& e)
{
    return json{{"comp", e.comp}, {"port", e.port}};
}

} // namespace

void to_json(json& j, const Rgb& color)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", color.r, color.g, color.b);
    j = std::string(buf);
}

void from_json(const json& j, Rgb& color)
{
    if (!j.is_string())
        throw ParseError("color must be a string");
    const auto s = j.get<std::string>();
    if (s.size() != 7 || s[0] != '#')
        throw ParseError("color must look like #rrggbb");
    int channels[3];
    for (int i = 0; i < 3; ++i) {
        const int hi = hex_digit(s[1 + 2 * i]);
        const int lo = hex_digit(s[2 + 2 * i]);
        if (hi < 0 || lo < 0)
            throw ParseError("color must look like #rrggbb");
        channels[i] = hi * 16 + lo;
    }
    color = Rgb{static_cast<std::uint8_t>(channels[0]), static_cast<std::uint8_t>(channels[1]),
                static_cast<std::uint8_t>(channels[2])};
}

void to_json(json& j, const Circuit& circuit)
{
    json components = json::array();
    for (const auto& c : circuit.components()) {
        components.push_back({{"id", c.id},
                              {"kind", std::string(kind_name(c.kind))},
                              {"x", c.centre.x},
                              {"y", c.centre.y},
                              {"width", c.width},
                              {"height", c.height}});
    }
    json wires = json::array();
    for (const auto& w : circuit.wires()) {
        wires.push_back({{"id", w.id},
                         {"a", endpoint_to_json(w.a)},
                         {"b", endpoint_to_json(w.b)},
                         {"color", w.color},
                         {"thickness", w.thickness},
                         {"bent", w.bent}});
    }
    j = json{{"name", circuit.name()}, {"components", std::move(components)}, {"wires", std::move(wires)}};
}

Circuit circuit_from_json(const json& j)
{
    std::vector<Component> components;
    for (const auto& c : array_field(j, "components")) {
        const auto kind_text = string_field(c, "kind");
        const auto kind = kind_from_name(kind_text);
        if (!kind)
            throw ParseError("unknown component kind '" + kind_text + "'");
        components.push_back(Component{index_field(c, "id"), *kind, Point{int_field(c, "x"), int_field(c, "y")},
                                       int_field(c, "width"), int_field(c, "height")});
    }
    std::vector<Wire> wires;
    for (const auto& w : array_field(j, "wires")) {
        Rgb color;
        from_json(field(w, "color"), color);
        wires.push_back(Wire{index_field(w, "id"), endpoint_from_json(field(w, "a")),
                             endpoint_from_json(field(w, "b")), color, int_field(w, "thickness"),
                             bool_field(w, "bent")});
    }
    return Circuit(string_field(j, "name"), std::move(components), std::move(wires));
}

void to_json(json& j, const CircuitDocument& doc)
{
    to_json(j, doc.circuit);
    j["format_version"] = doc.format_version;
}

void to_json(json& j, const ScenarioDocument& doc)
{
    j = json{{"format_version", scenario_format_version},
             {"path", doc.path_input},
             {"faults", doc.faults_input},
             {"duration_ticks", doc.duration_ticks},
             {"drop_parity", std::string(parity_name(doc.drop_parity))}};
}

void to_json(json& j, const Violation& v)
{
    j = json{{"type", std::string(violation_name(v.type))}, {"detail", v.describe()}};
    if (v.wire)
        j["wire"] = *v.wire;
    if (v.component)
        j["component"] = *v.component;
}

void to_json(json& j, const ValidationFlag& flag)
{
    j = json{{"type", std::string(flag_name(flag.type))},
             {"severity", flag.is_error() ? "error" : "warning"},
             {"message", flag.message},
             {"items", flag.items}};
}

void to_json(json& j, const ValidationReport& report)
{
    j = json{{"ok", report.ok()}, {"flags", report.flags}};
}

void to_json(json& j, const PathSetResult& result)
{
    j = json{{"source", result.source},
             {"dest", result.dest},
             {"k", result.disjointness},
             {"paths", result.paths},
             {"wires", result.wires}};
}

void to_json(json& j, const SimConfig& config)
{
    j = json{{"duration_ticks", config.duration_ticks},
             {"drop_parity", std::string(parity_name(config.drop_parity))}};
}

void to_json(json& j, const SimEvent& event)
{
    j = json{{"tick", event.tick},
             {"packet_id", event.packet_id},
             {"outcome", std::string(outcome_name(event.outcome))}};
    j["drop_component"] = event.drop_component ? json(*event.drop_component) : json(nullptr);
}

void to_json(json& j, const SimulationReport& report)
{
    json states = json::array();
    for (const auto s : report.path_state_per_tick)
        states.push_back(std::string(state_name(s)));
    j = json{{"config", report.config},
             {"path", report.path_raw},
             {"delivered", report.delivered},
             {"dropped", report.dropped},
             {"partial", report.partial},
             {"events", report.events},
             {"path_state_per_tick", std::move(states)}};
}

std::string canonical_text(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace minforge
