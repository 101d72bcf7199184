#pragma once

#include "minforge/model.hpp"

#include <random>

namespace minforge::testing {

/// source(100,100) -> switch_2x2(300,100) 40x60 -> dest(500,100).
inline Circuit tiny3()
{
    CircuitBuilder b("tiny3");
    b.add(Kind::source_terminal, {100, 100});
    b.add(Kind::switch_2x2, {300, 100}, 40, 60);
    b.add(Kind::dest_terminal, {500, 100});
    b.connect({0, 0}, {1, 0});
    b.connect({1, 2}, {2, 0});
    return b.build();
}

/// Random layered DAG: component 0 is a source terminal, the last one a
/// destination terminal, switch_3x3 in between. Every wire runs from a
/// right-side port of a lower id to a left-side port of a higher id.
inline Circuit random_dag(std::mt19937& rng, std::size_t components, double density = 0.45)
{
    CircuitBuilder b("random");
    for (std::size_t i = 0; i < components; ++i) {
        const Kind kind = i == 0 ? Kind::source_terminal
                        : i + 1 == components ? Kind::dest_terminal
                                              : Kind::switch_3x3;
        b.add(kind, {100 + static_cast<int>(i) * 160, 100 + static_cast<int>(i % 3) * 100});
    }
    std::bernoulli_distribution edge(density);
    std::uniform_int_distribution<int> port(0, 2);
    for (std::size_t i = 0; i + 1 < components; ++i) {
        for (std::size_t j = i + 1; j < components; ++j) {
            if (!edge(rng))
                continue;
            const PortIndex out = i == 0 ? 0 : 3 + port(rng);
            const PortIndex in = j + 1 == components ? 0 : port(rng);
            b.connect({i, out}, {j, in});
        }
    }
    return b.build();
}

} // namespace minforge::testing
