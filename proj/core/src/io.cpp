#include "minforge/io.hpp"

#include "minforge/json.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace minforge {

namespace {

void require_valid(const Circuit& circuit)
{
    const auto violations = check_circuit(circuit);
    if (!violations.empty()) {
        std::string message = "circuit has structural violations:";
        for (const auto& v : violations)
            message += " " + v.describe();
        throw InvalidCircuit(message);
    }
}

json parse_text(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

void require_version(const json& j, int supported)
{
    if (!j.is_object())
        throw ParseError("document must be an object");
    const auto it = j.find("format_version");
    if (it == j.end() || !it->is_number_integer())
        throw ParseError("missing integer field 'format_version'");
    const auto version = it->get<long long>();
    if (version != supported)
        throw UnsupportedVersion("unsupported format_version " + std::to_string(version));
}

std::string slurp(std::istream& source)
{
    std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
    if (source.bad())
        throw ParseError("failed to read document");
    return text;
}

void write(std::ostream& sink, const std::string& text)
{
    sink << text;
    sink.flush();
    if (!sink)
        throw SinkError("failed to write document");
}

} // namespace

std::string circuit_to_text(const CircuitDocument& doc)
{
    require_valid(doc.circuit);
    return canonical_text(json(doc));
}

void save_circuit(const CircuitDocument& doc, std::ostream& sink)
{
    write(sink, circuit_to_text(doc));
}

CircuitDocument circuit_from_text(std::string_view text, LoadOptions options)
{
    const json j = parse_text(text);
    require_version(j, circuit_format_version);
    CircuitDocument doc{circuit_format_version, circuit_from_json(j)};
    if (options.strict_capacity && (doc.circuit.component_count() > legacy_capacity ||
                                    doc.circuit.wire_count() > legacy_capacity)) {
        throw InvalidCircuit("document exceeds " + std::to_string(legacy_capacity) +
                             " components or wires");
    }
    if (options.check_structure)
        require_valid(doc.circuit);
    return doc;
}

CircuitDocument load_circuit(std::istream& source, LoadOptions options)
{
    return circuit_from_text(slurp(source), options);
}

std::string scenario_to_text(const ScenarioDocument& doc)
{
    if (doc.duration_ticks < 1)
        throw InvalidArgument("duration_ticks must be at least 1");
    return canonical_text(json(doc));
}

void save_scenario(const ScenarioDocument& doc, std::ostream& sink)
{
    write(sink, scenario_to_text(doc));
}

ScenarioDocument scenario_from_text(std::string_view text)
{
    const json j = parse_text(text);
    require_version(j, scenario_format_version);

    ScenarioDocument doc;
    const auto text_of = [&](const char* key) {
        const auto it = j.find(key);
        if (it == j.end() || !it->is_string())
            throw ParseError(std::string("missing string field '") + key + "'");
        return it->get<std::string>();
    };
    doc.path_input = text_of("path");
    doc.faults_input = text_of("faults");

    const auto ticks = j.find("duration_ticks");
    if (ticks == j.end() || !ticks->is_number_integer())
        throw ParseError("missing integer field 'duration_ticks'");
    const auto value = ticks->get<long long>();
    if (value < 1 || value > std::numeric_limits<int>::max())
        throw ParseError("duration_ticks must be a positive integer");
    doc.duration_ticks = static_cast<int>(value);

    if (const auto parity = j.find("drop_parity"); parity != j.end()) {
        const auto p = parity->is_string() ? parity_from_name(parity->get<std::string>()) : std::nullopt;
        if (!p)
            throw ParseError("drop_parity must be drop_first or deliver_first");
        doc.drop_parity = *p;
    }
    return doc;
}

ScenarioDocument load_scenario(std::istream& source)
{
    return scenario_from_text(slurp(source));
}

void save_circuit_file(const CircuitDocument& doc, const std::string& path)
{
    const std::string text = circuit_to_text(doc);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw SinkError("cannot open " + path + " for writing");
    write(out, text);
}

CircuitDocument load_circuit_file(const std::string& path, LoadOptions options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    return load_circuit(in, options);
}

} // namespace minforge
