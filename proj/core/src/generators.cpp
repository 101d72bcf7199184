#include "minforge/generators.hpp"

#include "minforge/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace minforge {

namespace {

constexpr PortIndex switch_input(std::size_t position) { return position % 2; }
constexpr PortIndex switch_output(std::size_t position) { return 2 + position % 2; }

std::size_t stage_bits(std::size_t n)
{
    if (n < 4 || !std::has_single_bit(n))
        throw InvalidSize("terminal count must be a power of two >= 4, got " + std::to_string(n));
    return static_cast<std::size_t>(std::countr_zero(n));
}

/// Perfect shuffle: rotate the position's bits left by one.
std::size_t shuffle(std::size_t position, std::size_t bits)
{
    const std::size_t mask = (std::size_t{1} << bits) - 1;
    return ((position << 1) | (position >> (bits - 1))) & mask;
}

Point grid(std::size_t column, int y)
{
    return {layout_origin.x + static_cast<int>(column) * column_pitch, y};
}

int terminal_row(std::size_t i)
{
    return layout_origin.y + static_cast<int>(i) * row_pitch;
}

// A switch sits between the two terminal rows it serves.
int switch_row(std::size_t r)
{
    return layout_origin.y + static_cast<int>(2 * r) * row_pitch + row_pitch / 2;
}

// Builds sources, `stages` columns of switches, and destinations. The first
// `straight_stages` switch columns are fed in order; the rest through shuffles.
Circuit build_shuffle_network(std::string name, std::size_t n, std::size_t stages, bool leading_straight)
{
    const std::size_t bits = stage_bits(n);
    const std::size_t half = n / 2;
    CircuitBuilder b(std::move(name));

    std::vector<ComponentId> sources;
    for (std::size_t i = 0; i < n; ++i)
        sources.push_back(b.add(Kind::source_terminal, grid(0, terminal_row(i))));

    std::vector<std::vector<ComponentId>> columns(stages);
    for (std::size_t s = 0; s < stages; ++s) {
        for (std::size_t r = 0; r < half; ++r)
            columns[s].push_back(b.add(Kind::switch_2x2, grid(s + 1, switch_row(r))));
    }

    std::vector<ComponentId> dests;
    for (std::size_t i = 0; i < n; ++i)
        dests.push_back(b.add(Kind::dest_terminal, grid(stages + 1, terminal_row(i))));

    for (std::size_t s = 0; s < stages; ++s) {
        const bool straight = leading_straight && s == 0;
        for (std::size_t p = 0; p < n; ++p) {
            const Endpoint from = s == 0 ? Endpoint{sources[p], 0}
                                         : Endpoint{columns[s - 1][p / 2], switch_output(p)};
            const std::size_t q = straight ? p : shuffle(p, bits);
            b.connect(from, Endpoint{columns[s][q / 2], switch_input(q)});
        }
    }
    for (std::size_t p = 0; p < n; ++p)
        b.connect(Endpoint{columns[stages - 1][p / 2], switch_output(p)}, Endpoint{dests[p], 0});

    return b.build();
}

bool is_terminal(Kind kind)
{
    return kind == Kind::source_terminal || kind == Kind::dest_terminal;
}

} // namespace

Circuit generate_omega(std::size_t n_terminals)
{
    const std::size_t bits = stage_bits(n_terminals);
    return build_shuffle_network("omega-" + std::to_string(n_terminals), n_terminals, bits, false);
}

Circuit generate_extra_stage(std::size_t n_terminals)
{
    const std::size_t bits = stage_bits(n_terminals);
    return build_shuffle_network("extra-stage-" + std::to_string(n_terminals), n_terminals, bits + 1, true);
}

Circuit generate_replicated(const Circuit& base, std::size_t copies)
{
    if (copies < 2)
        throw InvalidCircuit("replication needs at least 2 copies, got " + std::to_string(copies));
    if (!check_circuit(base).empty())
        throw InvalidCircuit("base circuit has structural violations");

    const auto& parts = base.components();
    const auto has = [&](Kind kind) {
        return std::any_of(parts.begin(), parts.end(), [kind](const Component& c) { return c.kind == kind; });
    };
    if (!has(Kind::source_terminal) || !has(Kind::dest_terminal))
        throw InvalidCircuit("base circuit needs source and destination terminals");

    int top = std::numeric_limits<int>::max();
    int bottom = std::numeric_limits<int>::min();
    for (const auto& c : parts) {
        top = std::min(top, c.centre.y);
        bottom = std::max(bottom, c.centre.y);
    }
    const int plane_height = bottom - top + row_pitch;
    const int terminal_shift = static_cast<int>(copies - 1) * plane_height / 2;

    CircuitBuilder b(base.name() + "-x" + std::to_string(copies));
    constexpr ComponentId unmapped = std::numeric_limits<ComponentId>::max();
    std::vector<ComponentId> terminal_map(parts.size(), unmapped);
    std::vector<std::vector<ComponentId>> plane_map(copies, std::vector<ComponentId>(parts.size(), unmapped));

    const auto add_terminals = [&](Kind kind) {
        for (const auto& c : parts) {
            if (c.kind == kind)
                terminal_map[c.id] = b.add(kind, {c.centre.x, c.centre.y + terminal_shift}, c.width, c.height);
        }
    };
    add_terminals(Kind::source_terminal);
    for (std::size_t p = 0; p < copies; ++p) {
        const int shift = static_cast<int>(p) * plane_height;
        for (const auto& c : parts) {
            if (!is_terminal(c.kind))
                plane_map[p][c.id] = b.add(c.kind, {c.centre.x, c.centre.y + shift}, c.width, c.height);
        }
    }
    add_terminals(Kind::dest_terminal);

    for (std::size_t p = 0; p < copies; ++p) {
        const auto map = [&](const Endpoint& e) {
            const ComponentId id = is_terminal(parts[e.comp].kind) ? terminal_map[e.comp] : plane_map[p][e.comp];
            return Endpoint{id, e.port};
        };
        for (const auto& w : base.wires()) {
            const bool terminal_to_terminal = is_terminal(parts[w.a.comp].kind) && is_terminal(parts[w.b.comp].kind);
            if (terminal_to_terminal && p > 0)
                continue;
            b.connect(map(w.a), map(w.b), w.bent, w.color, w.thickness);
        }
    }
    return b.build();
}

} // namespace minforge
