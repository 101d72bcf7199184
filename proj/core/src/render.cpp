#include "minforge/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace minforge {

std::array<std::array<Point, 2>, 2> Cross::segments() const
{
    return {{
        {{{centre.x - arm, centre.y - arm}, {centre.x + arm, centre.y + arm}}},
        {{{centre.x - arm, centre.y + arm}, {centre.x + arm, centre.y - arm}}},
    }};
}

namespace {

template <typename T>
std::vector<T> collect(const std::vector<RenderElement>& elements)
{
    std::vector<T> out;
    for (const auto& e : elements) {
        if (const auto* item = std::get_if<T>(&e))
            out.push_back(*item);
    }
    return out;
}

class Bounds {
public:
    void add(Point p)
    {
        min_x_ = std::min(min_x_, p.x);
        min_y_ = std::min(min_y_, p.y);
        max_x_ = std::max(max_x_, p.x);
        max_y_ = std::max(max_y_, p.y);
        empty_ = false;
    }

    void add(const RenderElement& element)
    {
        std::visit([this](const auto& e) { add_item(e); }, element);
    }

    Canvas canvas() const
    {
        if (empty_)
            return {};
        const int x = std::min(0, min_x_ - canvas_margin);
        const int y = std::min(0, min_y_ - canvas_margin);
        return {x, y, max_x_ + canvas_margin - x, max_y_ + canvas_margin - y};
    }

private:
    void add_item(const Glyph& g)
    {
        const int left = g.centre.x - g.width / 2;
        const int top = g.centre.y - g.height / 2;
        add({left, top});
        add({left + g.width, top + g.height});
    }
    void add_item(const Polyline& p)
    {
        for (const auto& pt : p.points)
            add(pt);
    }
    void add_item(const Cross& c)
    {
        for (const auto& seg : c.segments()) {
            add(seg[0]);
            add(seg[1]);
        }
    }
    void add_item(const Label& l) { add(l.anchor); }

    int min_x_ = std::numeric_limits<int>::max();
    int min_y_ = std::numeric_limits<int>::max();
    int max_x_ = std::numeric_limits<int>::min();
    int max_y_ = std::numeric_limits<int>::min();
    bool empty_ = true;
};

void require_valid(const Circuit& circuit)
{
    if (!check_circuit(circuit).empty())
        throw InvalidCircuit("circuit has structural violations");
}

std::vector<RenderElement> base_layer(const Circuit& circuit, RenderOptions options)
{
    std::vector<RenderElement> elements;
    for (const auto& c : circuit.components()) {
        elements.emplace_back(Glyph{c.id, c.kind, c.centre, c.width, c.height});
        elements.emplace_back(Label{std::to_string(c.id), c.centre});
    }
    for (const auto& w : circuit.wires()) {
        auto points = wire_points(circuit, w, options);
        const Point first = points.front();
        elements.emplace_back(Polyline{std::move(points), w.color, w.thickness});
        elements.emplace_back(Label{std::to_string(w.id), {first.x, first.y - wire_label_rise}});
    }
    return elements;
}

Canvas fit(const std::vector<RenderElement>& elements, const std::vector<RenderElement>& extra = {})
{
    Bounds bounds;
    for (const auto& e : elements)
        bounds.add(e);
    for (const auto& e : extra)
        bounds.add(e);
    return bounds.canvas();
}

} // namespace

std::vector<Glyph> RenderPlan::glyphs() const { return collect<Glyph>(elements); }
std::vector<Polyline> RenderPlan::polylines() const { return collect<Polyline>(elements); }
std::vector<Cross> RenderPlan::crosses() const { return collect<Cross>(elements); }
std::vector<Label> RenderPlan::labels() const { return collect<Label>(elements); }

int bent_offset(int width, bool top_or_bottom)
{
    return top_or_bottom ? 2 * width : (3 * width) / 2;
}

std::vector<Point> wire_points(const Circuit& circuit, const Wire& wire, RenderOptions options)
{
    const Component& a = circuit.component(wire.a.comp);
    const Component& b = circuit.component(wire.b.comp);
    const Point p1 = port_anchor(a, wire.a.port);
    const Point p3 = port_anchor(b, wire.b.port);
    if (!wire.bent)
        return {p1, p3};

    const int out = bent_offset(a.width, port_is_top_bottom(a.kind, wire.a.port));
    bool far_vertical = false;
    if (!options.bug_compat)
        far_vertical = port_is_top_bottom(b.kind, wire.b.port);
    else if (wire.a.port < port_count(b.kind))
        far_vertical = port_is_top_bottom(b.kind, wire.a.port);
    const int in = bent_offset(b.width, far_vertical);

    const int sign = p1.x <= p3.x ? 1 : -1;
    return {p1, {p1.x + sign * out, p1.y}, {p3.x + sign * in, p3.y}, p3};
}

RenderPlan plan_circuit(const Circuit& circuit, RenderOptions options)
{
    require_valid(circuit);
    RenderPlan plan;
    plan.elements = base_layer(circuit, options);
    plan.canvas = fit(plan.elements);
    return plan;
}

RenderPlan plan_simulation_frame(const Circuit& circuit, const PathSpec& path, const FaultSet& faults,
                                 PathState state, RenderOptions options)
{
    require_valid(circuit);
    ValidationReport report = validate(circuit, path, faults);
    if (!report.ok())
        throw ValidationFailed(std::move(report));

    std::vector<RenderElement> crosses;
    for (const auto c : faults.components)
        crosses.emplace_back(Cross{circuit.component(c).centre, cross_arm, highlight_red});

    RenderPlan plan;
    plan.elements = base_layer(circuit, options);
    // Crosses count towards the canvas in both states so the base layer matches.
    plan.canvas = fit(plan.elements, crosses);

    const Rgb color = state == PathState::green ? highlight_green : highlight_red;
    for (const auto id : path.wires)
        plan.elements.emplace_back(Polyline{wire_points(circuit, circuit.wire(id), options), color, highlight_thickness});
    if (state == PathState::red)
        plan.elements.insert(plan.elements.end(), crosses.begin(), crosses.end());
    return plan;
}

namespace {

std::string hex(Rgb c)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

std::string escape_xml(std::string_view text)
{
    std::string out;
    for (const char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

void write_points(std::ostream& out, const std::vector<Point>& points)
{
    for (std::size_t i = 0; i < points.size(); ++i)
        out << (i ? " " : "") << points[i].x << ',' << points[i].y;
}

struct SvgWriter {
    std::ostream& out;

    void operator()(const Glyph& g) const
    {
        const int left = g.centre.x - g.width / 2;
        const int top = g.centre.y - g.height / 2;
        const int right = left + g.width;
        const int bottom = top + g.height;
        const char* stroke = R"( fill="none" stroke="#000000" stroke-width="1"/>)";
        switch (g.kind) {
        case Kind::source_terminal:
            out << "  <polygon points=\"";
            write_points(out, {{left, top}, {right, g.centre.y}, {left, bottom}});
            out << '"' << stroke << '\n';
            break;
        case Kind::dest_terminal:
            out << "  <polygon points=\"";
            write_points(out, {{right, top}, {left, g.centre.y}, {right, bottom}});
            out << '"' << stroke << '\n';
            break;
        default:
            out << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << g.width << "\" height=\""
                << g.height << '"' << stroke << '\n';
        }
    }

    void operator()(const Polyline& p) const
    {
        out << "  <polyline points=\"";
        write_points(out, p.points);
        out << "\" fill=\"none\" stroke=\"" << hex(p.color) << "\" stroke-width=\"" << p.thickness << "\"/>\n";
    }

    void operator()(const Cross& c) const
    {
        for (const auto& seg : c.segments()) {
            out << "  <line x1=\"" << seg[0].x << "\" y1=\"" << seg[0].y << "\" x2=\"" << seg[1].x << "\" y2=\""
                << seg[1].y << "\" stroke=\"" << hex(c.color) << "\" stroke-width=\"1\"/>\n";
        }
    }

    void operator()(const Label& l) const
    {
        out << "  <text x=\"" << l.anchor.x << "\" y=\"" << l.anchor.y
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_xml(l.text) << "</text>\n";
    }
};

} // namespace

void emit_svg(const RenderPlan& plan, std::ostream& sink)
{
    std::ostringstream out;
    out.imbue(std::locale::classic());
    const Canvas& c = plan.canvas;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << c.width << "\" height=\""
        << c.height << "\" viewBox=\"" << c.x << ' ' << c.y << ' ' << c.width << ' ' << c.height << "\">\n";
    const SvgWriter writer{out};
    for (const auto& e : plan.elements)
        std::visit(writer, e);
    out << "</svg>\n";

    sink << out.str();
    sink.flush();
    if (!sink)
        throw SinkError("failed to write SVG");
}

std::string svg_text(const RenderPlan& plan)
{
    std::ostringstream out;
    emit_svg(plan, out);
    return out.str();
}

} // namespace minforge
