#pragma once

#include "minforge/model.hpp"
#include "minforge/paths.hpp"
#include "minforge/sim.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace minforge {

inline constexpr Rgb black{0, 0, 0};
inline constexpr Rgb highlight_green{0, 255, 0};
inline constexpr Rgb highlight_red{255, 0, 0};

/// Half-length of each diagonal of a fault cross.
constexpr int cross_arm = 40;
constexpr int highlight_thickness = 3;
/// Wire labels sit this far above the wire's first anchor.
constexpr int wire_label_rise = 2;
constexpr int canvas_margin = 50;

struct Glyph {
    ComponentId component;
    Kind kind;
    Point centre;
    int width;
    int height;

    friend bool operator==(const Glyph&, const Glyph&) = default;
};

struct Polyline {
    std::vector<Point> points;
    Rgb color;
    int thickness;

    friend bool operator==(const Polyline&, const Polyline&) = default;
};

struct Cross {
    Point centre;
    int arm;
    Rgb color = highlight_red;

    /// The two diagonals, each as {start, end}.
    std::array<std::array<Point, 2>, 2> segments() const;

    friend bool operator==(const Cross&, const Cross&) = default;
};

struct Label {
    std::string text;
    Point anchor;

    friend bool operator==(const Label&, const Label&) = default;
};

using RenderElement = std::variant<Glyph, Polyline, Cross, Label>;

/// Visible area in pixels; the origin may be negative when bent wires
/// detour left of the page.
struct Canvas {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct RenderPlan {
    Canvas canvas;
    /// Draw order.
    std::vector<RenderElement> elements;

    std::vector<Glyph> glyphs() const;
    std::vector<Polyline> polylines() const;
    std::vector<Cross> crosses() const;
    std::vector<Label> labels() const;

    friend bool operator==(const RenderPlan&, const RenderPlan&) = default;
};

struct RenderOptions {
    /// Reproduce the original redraw, which tests the first endpoint's port
    /// index against the second component when sizing the second detour.
    bool bug_compat = false;
};

/// Horizontal detour of a bent wire at one end: 2W for top/bottom ports,
/// 1.5W (truncated) otherwise, with W the component width.
int bent_offset(int width, bool top_or_bottom);

/// Corner points of a wire as drawn.
std::vector<Point> wire_points(const Circuit& circuit, const Wire& wire, RenderOptions options = {});

/// Throws InvalidCircuit.
RenderPlan plan_circuit(const Circuit& circuit, RenderOptions options = {});

/// Throws ValidationFailed (and InvalidCircuit).
RenderPlan plan_simulation_frame(const Circuit& circuit, const PathSpec& path, const FaultSet& faults,
                                 PathState state, RenderOptions options = {});

/// Canonical SVG 1.1. Throws SinkError.
void emit_svg(const RenderPlan& plan, std::ostream& sink);
std::string svg_text(const RenderPlan& plan);

} // namespace minforge
