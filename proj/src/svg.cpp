#include <algorithm>
#include <cstdio>
#include <ostream>

#include "imin/errors.hpp"
#include "imin/experiment.hpp"

namespace imin {

namespace {

std::string_view scheme_color(Scheme s) {
    switch (s) {
    case Scheme::GeometryDriven: return "#1f77b4";
    case Scheme::GlobalMinima: return "#ff7f0e";
    case Scheme::IMin: return "#2ca02c";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char ch : text) {
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

// Drawing in arena meters; the y axis is flipped so north is up.
class SvgWriter {
public:
    SvgWriter(const Network& network, std::ostream& out) : network_(network), out_(out) {
        const Arena& a = network.arena();
        const double longest = std::max(a.width, a.height);
        const double pixels = std::clamp(longest, 400.0, 1800.0);
        scale_ = pixels / longest;
        mark_ = longest / 250.0;
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(a.width * scale_)
             << "\" height=\"" << num(a.height * scale_) << "\" viewBox=\"0 0 " << num(a.width) << ' '
             << num(a.height) << "\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"" << num(a.width) << "\" height=\"" << num(a.height)
             << "\" fill=\"white\" stroke=\"#999999\" vector-effect=\"non-scaling-stroke\"/>\n"
             << "<g transform=\"translate(0," << num(a.height) << ") scale(1,-1)\">\n";
    }

    void nodes() {
        out_ << "<g id=\"nodes\" fill=\"#444444\">\n";
        for (const Node& n : network_.nodes())
            out_ << "<circle cx=\"" << num(n.position.x()) << "\" cy=\"" << num(n.position.y())
                 << "\" r=\"" << num(mark_) << "\"><title>node " << index(n.id) << "</title></circle>\n";
        out_ << "</g>\n";
    }

    void radius_circle(NodeId id) {
        const Point2d& p = network_.position(id);
        out_ << "<circle class=\"radius\" cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y()) << "\" r=\""
             << num(network_.radius())
             << "\" fill=\"none\" stroke=\"#666666\" stroke-dasharray=\"6,4\" vector-effect=\"non-scaling-stroke\"/>\n";
    }

    void leg(const RouteTrace& trace, std::string_view color, std::string_view label) {
        if (trace.hops.size() < 2)
            return;
        out_ << "<polyline class=\"leg\" fill=\"none\" stroke=\"" << escape(color)
             << "\" stroke-width=\"2\" stroke-opacity=\"0.8\" vector-effect=\"non-scaling-stroke\" points=\"";
        for (std::size_t i = 0; i < trace.hops.size(); ++i) {
            const Point2d& p = network_.position(trace.hops[i]);
            out_ << (i ? " " : "") << num(p.x()) << ',' << num(p.y());
        }
        out_ << "\"><title>" << escape(label) << ' ' << to_string(trace.status) << "</title></polyline>\n";
    }

    void cross(const Point2d& p, std::string_view color, std::string_view label) {
        const double s = 2.5 * mark_;
        out_ << "<g class=\"fermat\" stroke=\"" << color
             << "\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"><title>" << escape(label)
             << " Fermat point</title>"
             << "<line x1=\"" << num(p.x() - s) << "\" y1=\"" << num(p.y() - s) << "\" x2=\"" << num(p.x() + s)
             << "\" y2=\"" << num(p.y() + s) << "\" vector-effect=\"non-scaling-stroke\"/>"
             << "<line x1=\"" << num(p.x() - s) << "\" y1=\"" << num(p.y() + s) << "\" x2=\"" << num(p.x() + s)
             << "\" y2=\"" << num(p.y() - s) << "\" vector-effect=\"non-scaling-stroke\"/></g>\n";
    }

    void finish() {
        out_ << "</g>\n</svg>\n";
        if (!out_)
            throw Error("failed writing SVG");
    }

private:
    const Network& network_;
    std::ostream& out_;
    double scale_ = 1.0;
    double mark_ = 1.0;
};

} // namespace

void render_svg(const Network& network, std::span<const MulticastTrace> traces, std::ostream& out) {
    SvgWriter svg(network, out);
    if (!traces.empty())
        svg.radius_circle(traces.front().source_leg.hops.front());
    for (const MulticastTrace& t : traces) {
        const auto color = scheme_color(t.scheme);
        const auto label = to_string(t.scheme);
        svg.leg(t.source_leg, color, label);
        for (const RouteTrace& leg : t.destination_legs)
            svg.leg(leg, color, label);
    }
    svg.nodes();
    for (const MulticastTrace& t : traces)
        svg.cross(t.fermat.point, scheme_color(t.scheme), to_string(t.scheme));
    svg.finish();
}

void render_routes_svg(const Network& network, std::span<const LabeledRoute> routes, std::ostream& out) {
    SvgWriter svg(network, out);
    if (!routes.empty())
        svg.radius_circle(routes.front().trace.hops.front());
    for (const LabeledRoute& r : routes)
        svg.leg(r.trace, r.color, r.label);
    svg.nodes();
    svg.finish();
}

} // namespace imin
