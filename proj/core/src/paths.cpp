#include "minforge/paths.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>

namespace minforge {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::size_t parse_token(std::string_view token)
{
    token = trim(token);
    if (token.empty())
        throw ParseError("empty index in list");
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("malformed index '" + std::string(token) + "'");
    return value;
}

} // namespace

std::vector<std::size_t> parse_indices(std::string_view input)
{
    std::vector<std::size_t> out;
    if (input.find(',') == std::string_view::npos) {
        // Legacy: one digit per character.
        out.reserve(input.size());
        for (const char ch : input) {
            if (ch < '0' || ch > '9')
                throw ParseError(std::string("'") + ch + "' is not a digit");
            out.push_back(static_cast<std::size_t>(ch - '0'));
        }
        return out;
    }

    // A single trailing comma is allowed so one index >= 10 can be written as "12,".
    std::string_view rest = trim(input);
    if (!rest.empty() && rest.back() == ',')
        rest.remove_suffix(1);
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_token(rest.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_indices(const std::vector<std::size_t>& indices)
{
    const bool legacy = std::all_of(indices.begin(), indices.end(), [](std::size_t i) { return i < 10; });
    std::string out;
    if (legacy) {
        for (const auto i : indices)
            out += static_cast<char>('0' + i);
        return out;
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(indices[i]);
    }
    if (indices.size() == 1)
        out += ',';
    return out;
}

PathSpec PathSpec::parse(std::string_view input)
{
    auto wires = parse_indices(input);
    if (wires.empty())
        throw ParseError("path is empty");
    return PathSpec{std::string(input), std::move(wires)};
}

PathSpec PathSpec::from_wires(std::vector<WireId> wires)
{
    std::string raw = format_indices(wires);
    return PathSpec{std::move(raw), std::move(wires)};
}

FaultSet FaultSet::parse(std::string_view input)
{
    FaultSet set = from_components(parse_indices(input));
    set.raw = std::string(input);
    return set;
}

FaultSet FaultSet::from_components(std::vector<ComponentId> components)
{
    FaultSet set;
    for (const auto c : components) {
        if (!set.contains(c))
            set.components.push_back(c);
    }
    set.raw = format_indices(set.components);
    return set;
}

bool FaultSet::contains(ComponentId id) const
{
    return std::find(components.begin(), components.end(), id) != components.end();
}

bool ValidationFlag::is_error() const
{
    return type != Type::non_contiguous && type != Type::off_path_fault;
}

std::string_view flag_name(ValidationFlag::Type type)
{
    using Type = ValidationFlag::Type;
    switch (type) {
    case Type::path_syntax: return "PathSyntax";
    case Type::fault_syntax: return "FaultSyntax";
    case Type::invalid_path: return "InvalidPath";
    case Type::invalid_component: return "InvalidComponent";
    case Type::non_contiguous: return "NonContiguous";
    case Type::off_path_fault: return "OffPathFault";
    }
    return "Unknown";
}

bool ValidationReport::ok() const
{
    return std::none_of(flags.begin(), flags.end(), [](const auto& f) { return f.is_error(); });
}

std::vector<const ValidationFlag*> ValidationReport::errors() const
{
    std::vector<const ValidationFlag*> out;
    for (const auto& f : flags) {
        if (f.is_error())
            out.push_back(&f);
    }
    return out;
}

std::vector<const ValidationFlag*> ValidationReport::warnings() const
{
    std::vector<const ValidationFlag*> out;
    for (const auto& f : flags) {
        if (!f.is_error())
            out.push_back(&f);
    }
    return out;
}

bool ValidationReport::has(ValidationFlag::Type type) const
{
    return std::any_of(flags.begin(), flags.end(), [type](const auto& f) { return f.type == type; });
}

namespace {

std::string first_error_message(const ValidationReport& report)
{
    const auto errors = report.errors();
    return errors.empty() ? std::string("validation failed") : errors.front()->message;
}

bool touches(const Wire& w, ComponentId c)
{
    return w.a.comp == c || w.b.comp == c;
}

bool share_component(const Wire& x, const Wire& y)
{
    return touches(y, x.a.comp) || touches(y, x.b.comp);
}

void check_indices(const Circuit& circuit, const PathSpec* path, const FaultSet* faults,
                   ValidationReport& report)
{
    using Type = ValidationFlag::Type;
    bool path_in_range = path != nullptr;
    if (path) {
        std::vector<std::size_t> bad;
        for (const auto w : path->wires) {
            // Valid ids are 0..wire_count-1.
            if (w >= circuit.wire_count())
                bad.push_back(w);
        }
        if (!bad.empty()) {
            report.flags.push_back({Type::invalid_path, std::string(invalid_path_message), bad});
            path_in_range = false;
        }
    }
    if (faults) {
        std::vector<std::size_t> bad;
        for (const auto c : faults->components) {
            if (c >= circuit.component_count())
                bad.push_back(c);
        }
        if (!bad.empty()) {
            report.flags.push_back(
                {Type::invalid_component, std::string(invalid_component_message), bad});
        }
    }
    if (!path_in_range)
        return;

    std::vector<std::size_t> gaps;
    for (std::size_t i = 0; i + 1 < path->wires.size(); ++i) {
        if (!share_component(circuit.wire(path->wires[i]), circuit.wire(path->wires[i + 1])))
            gaps.push_back(i);
    }
    if (!gaps.empty())
        report.flags.push_back({Type::non_contiguous, "Path wires are not contiguous.", gaps});

    if (faults) {
        const auto on_path = path_components(circuit, *path);
        std::vector<std::size_t> off;
        for (const auto c : faults->components) {
            if (c < circuit.component_count() &&
                std::find(on_path.begin(), on_path.end(), c) == on_path.end())
                off.push_back(c);
        }
        if (!off.empty()) {
            report.flags.push_back(
                {Type::off_path_fault, "Faulty components are not on the path.", off});
        }
    }
}

} // namespace

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error(first_error_message(report)), report_(std::move(report))
{
}

ValidationReport validate(const Circuit& circuit, const PathSpec& path, const FaultSet& faults)
{
    ValidationReport report;
    if (path.wires.empty())
        report.flags.push_back({ValidationFlag::Type::path_syntax, "path is empty", {}});
    check_indices(circuit, path.wires.empty() ? nullptr : &path, &faults, report);
    return report;
}

ValidationReport validate_text(const Circuit& circuit, std::string_view path_text,
                               std::string_view faults_text)
{
    ValidationReport report;
    std::optional<PathSpec> path;
    std::optional<FaultSet> faults;
    try {
        path = PathSpec::parse(path_text);
    } catch (const ParseError& e) {
        report.flags.push_back({ValidationFlag::Type::path_syntax, e.what(), {}});
    }
    try {
        faults = FaultSet::parse(faults_text);
    } catch (const ParseError& e) {
        report.flags.push_back({ValidationFlag::Type::fault_syntax, e.what(), {}});
    }
    check_indices(circuit, path ? &*path : nullptr, faults ? &*faults : nullptr, report);
    return report;
}

std::vector<ComponentId> path_components(const Circuit& circuit, const PathSpec& path)
{
    std::vector<ComponentId> out;
    for (const auto id : path.wires) {
        const Wire& w = circuit.wire(id);
        for (const auto c : {w.a.comp, w.b.comp}) {
            if (std::find(out.begin(), out.end(), c) == out.end())
                out.push_back(c);
        }
    }
    return out;
}

DirectedWire wire_direction(const Circuit& circuit, const Wire& wire)
{
    enum class Role { input, output, neutral };
    const auto role = [&](const Endpoint& e) {
        const Side side = port_side(circuit.component(e.comp).kind, e.port);
        if (side == Side::right)
            return Role::output;
        if (side == Side::left)
            return Role::input;
        return Role::neutral;
    };
    const Role a = role(wire.a);
    const Role b = role(wire.b);
    if (a == Role::output || b == Role::input)
        return {wire.a.comp, wire.b.comp};
    if (a == Role::input || b == Role::output)
        return {wire.b.comp, wire.a.comp};
    return {wire.a.comp, wire.b.comp};
}

std::vector<ComponentId> path_walk(const Circuit& circuit, const PathSpec& path)
{
    if (path.wires.empty())
        throw InvalidPath("path is empty");
    std::vector<const Wire*> wires;
    for (const auto id : path.wires)
        wires.push_back(&circuit.wire(id));

    const DirectedWire first = wire_direction(circuit, *wires.front());
    for (const auto& [start, end] : {std::pair{first.from, first.to}, std::pair{first.to, first.from}}) {
        std::vector<ComponentId> walk{start, end};
        bool chained = true;
        for (std::size_t i = 1; i < wires.size() && chained; ++i) {
            const Wire& w = *wires[i];
            const ComponentId at = walk.back();
            if (w.a.comp == at)
                walk.push_back(w.b.comp);
            else if (w.b.comp == at)
                walk.push_back(w.a.comp);
            else
                chained = false;
        }
        if (chained)
            return walk;
    }
    return path_components(circuit, path);
}

DisjointnessCheck are_disjoint(const Circuit& circuit, const std::vector<PathSpec>& paths)
{
    std::vector<std::vector<ComponentId>> walks;
    for (const auto& p : paths) {
        for (const auto w : p.wires) {
            if (w >= circuit.wire_count())
                throw InvalidPath(std::string(invalid_path_message));
        }
        walks.push_back(path_walk(circuit, p));
    }
    if (walks.empty())
        return {};

    const ComponentId source = walks.front().front();
    const ComponentId dest = walks.front().back();
    for (const auto& walk : walks) {
        if (walk.front() != source || walk.back() != dest)
            throw MismatchedEndpoints("paths do not share source and destination");
    }

    for (std::size_t i = 0; i < walks.size(); ++i) {
        const std::set<ComponentId> earlier(walks[i].begin() + 1, walks[i].end() - 1);
        for (std::size_t j = i + 1; j < walks.size(); ++j) {
            for (std::size_t k = 1; k + 1 < walks[j].size(); ++k) {
                if (earlier.count(walks[j][k]))
                    return {false, walks[j][k]};
            }
        }
    }
    return {};
}

namespace {

// Unit-capacity flow network with every component split into in/out halves.
class SplitFlow {
public:
    struct Edge {
        std::size_t to;
        int capacity;
        std::size_t reverse;
        std::optional<WireId> wire;
    };

    explicit SplitFlow(std::size_t nodes) : adjacency_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, int capacity, std::optional<WireId> wire)
    {
        adjacency_[from].push_back({to, capacity, adjacency_[to].size(), wire});
        adjacency_[to].push_back({from, 0, adjacency_[from].size() - 1, std::nullopt});
    }

    // Breadth-first augmenting path in adjacency order; returns false when
    // the sink is unreachable.
    bool augment(std::size_t source, std::size_t sink)
    {
        std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(adjacency_.size());
        std::vector<bool> seen(adjacency_.size(), false);
        std::queue<std::size_t> frontier;
        frontier.push(source);
        seen[source] = true;
        while (!frontier.empty() && !seen[sink]) {
            const std::size_t v = frontier.front();
            frontier.pop();
            for (std::size_t i = 0; i < adjacency_[v].size(); ++i) {
                const Edge& e = adjacency_[v][i];
                if (e.capacity > 0 && !seen[e.to]) {
                    seen[e.to] = true;
                    parent[e.to] = {v, i};
                    frontier.push(e.to);
                }
            }
        }
        if (!seen[sink])
            return false;
        for (std::size_t v = sink; v != source;) {
            const auto [u, i] = *parent[v];
            Edge& e = adjacency_[u][i];
            e.capacity -= 1;
            adjacency_[v][e.reverse].capacity += 1;
            v = u;
        }
        return true;
    }

    std::vector<Edge>& edges(std::size_t node) { return adjacency_[node]; }

private:
    std::vector<std::vector<Edge>> adjacency_;
};

constexpr std::size_t in_node(ComponentId c) { return 2 * c; }
constexpr std::size_t out_node(ComponentId c) { return 2 * c + 1; }
constexpr ComponentId component_of(std::size_t node) { return node / 2; }

} // namespace

PathSetResult max_disjoint_paths(const Circuit& circuit, ComponentId source, ComponentId dest,
                                 std::size_t k_limit)
{
    circuit.component(source);
    circuit.component(dest);
    if (source == dest)
        throw SameEndpoint("source and destination are the same component");
    if (k_limit == 0)
        throw InvalidArgument("k must be at least 1");

    const std::size_t n = circuit.component_count();
    SplitFlow flow(2 * n);
    for (ComponentId c = 0; c < n; ++c) {
        if (c != source && c != dest)
            flow.add_edge(in_node(c), out_node(c), 1, std::nullopt);
    }
    for (const Wire& w : circuit.wires()) {
        const DirectedWire d = wire_direction(circuit, w);
        if (d.to == source || d.from == dest || d.from == d.to)
            continue;
        flow.add_edge(out_node(d.from), in_node(d.to), 1, w.id);
    }

    std::size_t found = 0;
    while (found < k_limit && flow.augment(out_node(source), in_node(dest)))
        ++found;
    if (found == 0) {
        throw NoPath("no path from component " + std::to_string(source) + " to " +
                     std::to_string(dest));
    }

    PathSetResult result{source, dest, {}, {}, found};
    // A wire edge carries flow when its forward capacity dropped to zero.
    const auto carries = [](const SplitFlow::Edge& e) { return e.wire && e.capacity == 0; };
    for (std::size_t p = 0; p < found; ++p) {
        std::vector<ComponentId> comps{source};
        std::vector<WireId> wires;
        std::size_t at = out_node(source);
        while (true) {
            auto& edges = flow.edges(at);
            const auto it = std::find_if(edges.begin(), edges.end(), carries);
            wires.push_back(*it->wire);
            // Consume the unit so later walks take other wires.
            it->capacity = 1;
            const ComponentId next = component_of(it->to);
            comps.push_back(next);
            if (next == dest)
                break;
            at = out_node(next);
        }
        result.paths.push_back(std::move(comps));
        result.wires.push_back(std::move(wires));
    }
    return result;
}

} // namespace minforge
