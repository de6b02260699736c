#include "imin/forwarding.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "imin/errors.hpp"

namespace imin {

std::string_view to_string(RouteStatus s) {
    switch (s) {
    case RouteStatus::Delivered: return "Delivered";
    case RouteStatus::LoopDetected: return "LoopDetected";
    case RouteStatus::Void: return "Void";
    case RouteStatus::HopLimitExceeded: return "HopLimitExceeded";
    }
    return "?";
}

std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::GeometryDriven: return "GeometryDriven";
    case Scheme::GlobalMinima: return "GlobalMinima";
    case Scheme::IMin: return "IMin";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text) {
    for (Scheme s : {Scheme::GeometryDriven, Scheme::GlobalMinima, Scheme::IMin})
        if (text == to_string(s))
            return s;
    return std::nullopt;
}

std::optional<NodeId> greedy_next_hop(const Network& network, NodeId current, NodeId destination,
                                      GreedyRule rule) {
    const Point2d& here = network.position(current);
    const Point2d& target = network.position(destination);
    if (current == destination)
        throw InvalidArgument("greedy_next_hop called at the destination");

    std::optional<NodeId> best;
    if (rule == GreedyRule::MostForward) {
        const Point2d toward = target - here;
        const double len = toward.norm();
        if (len == 0.0)
            return std::nullopt; // coincident with the destination: no direction to progress in
        const Point2d unit = toward / len;
        double best_progress = 0.0;
        for (NodeId n : network.neighbor_ids(current)) {
            const double progress = (network.position(n) - here).dot(unit);
            if (progress > best_progress) {
                best_progress = progress;
                best = n;
            }
        }
    } else {
        double best_remaining = (target - here).norm();
        for (NodeId n : network.neighbor_ids(current)) {
            const double remaining = (target - network.position(n)).norm();
            if (remaining < best_remaining) {
                best_remaining = remaining;
                best = n;
            }
        }
    }
    return best;
}

namespace {

RouteTrace forward(const Network& network, NodeId source, NodeId destination, std::size_t hop_limit,
                   GreedyRule rule, bool destination_check) {
    network.node(source);
    network.node(destination);
    if (hop_limit < 1)
        throw InvalidArgument("hop limit must be at least 1");

    RouteTrace trace;
    trace.destination = destination;
    trace.hops.push_back(source);
    std::unordered_set<std::uint32_t> visited{index(source)};

    NodeId current = source;
    while (current != destination) {
        if (trace.transitions() >= hop_limit) {
            trace.status = RouteStatus::HopLimitExceeded;
            return trace;
        }
        std::optional<NodeId> next;
        if (destination_check && network.is_neighbor(current, destination))
            next = destination;
        else
            next = greedy_next_hop(network, current, destination, rule);
        if (!next) {
            trace.status = RouteStatus::Void;
            return trace;
        }
        trace.per_hop_distance.push_back(network.distance(current, *next));
        trace.hops.push_back(*next);
        current = *next;
        if (current != destination && !visited.insert(index(current)).second) {
            trace.status = RouteStatus::LoopDetected;
            return trace;
        }
    }
    trace.status = RouteStatus::Delivered;
    return trace;
}

} // namespace

RouteTrace greedy_route(const Network& network, NodeId source, NodeId destination,
                        std::size_t hop_limit, GreedyRule rule) {
    return forward(network, source, destination, hop_limit, rule, false);
}

RouteTrace imin_route(const Network& network, NodeId source, NodeId destination,
                      std::size_t hop_limit, GreedyRule rule) {
    return forward(network, source, destination, hop_limit, rule, true);
}

EnergyReport route_energy(const RadioParams& params, const RouteTrace& trace) {
    return route_energy(params, std::span<const double>(trace.per_hop_distance));
}

std::size_t default_hop_limit(const Network& network) {
    return std::max<std::size_t>(1, 10 * network.size());
}

bool MulticastTrace::delivered() const {
    return status() == RouteStatus::Delivered;
}

RouteStatus MulticastTrace::status() const {
    if (!source_leg.delivered())
        return source_leg.status;
    for (const RouteTrace& leg : destination_legs)
        if (!leg.delivered())
            return leg.status;
    return RouteStatus::Delivered;
}

namespace {

FermatResult<double> geometry_driven_point(const AnchorSet<double>& anchors) {
    const Point2d a = anchors.source(), b = anchors.destination(0), c = anchors.destination(1);
    const double eps = kCoincidenceEpsilon;
    // Two coincident anchors outweigh the third: the shared point is optimal.
    const auto coincident = [&](const Point2d& p) {
        FermatResult<double> r;
        r.point = p;
        r.total_distance = total_path_distance(anchors, p);
        r.method = FermatMethod::Torricelli;
        r.degenerate = true;
        return r;
    };
    if ((a - b).norm() <= eps || (a - c).norm() <= eps)
        return coincident(a);
    if ((b - c).norm() <= eps)
        return coincident(b);
    return torricelli_triangle(a, b, c);
}

} // namespace

MulticastTrace fermat_multicast_route(const Network& network, NodeId source,
                                      std::span<const GeocastRegion> regions, Scheme scheme,
                                      std::size_t hop_limit, const RadioParams& radio,
                                      const MulticastOptions& options) {
    if (regions.empty())
        throw InvalidArgument("multicast route needs at least one region");
    if (scheme == Scheme::GeometryDriven && regions.size() != 2)
        throw SchemeArityMismatch("GeometryDriven supports exactly 2 regions, got " +
                                  std::to_string(regions.size()));
    const Point2d& source_pos = network.position(source);

    std::vector<Point2d> centers;
    centers.reserve(regions.size());
    for (const GeocastRegion& r : regions)
        centers.push_back(r.center);
    const AnchorSet<double> anchors(source_pos, centers);

    MulticastTrace out;
    out.scheme = scheme;
    if (scheme == Scheme::GeometryDriven)
        out.fermat = geometry_driven_point(anchors);
    else
        out.fermat = minima_fermat_point(
            anchors, SearchBounds<double>::enclosing(anchors, options.grid_step), options.scope);

    out.relay_id = nearest_node(network, out.fermat.point).id;
    const auto route = [&](NodeId from, NodeId to) {
        return scheme == Scheme::IMin ? imin_route(network, from, to, hop_limit, options.rule)
                                      : greedy_route(network, from, to, hop_limit, options.rule);
    };

    out.source_leg = route(source, out.relay_id);
    for (const Point2d& c : centers) {
        const NodeId target = nearest_node(network, c).id;
        out.target_ids.push_back(target);
        out.destination_legs.push_back(route(out.relay_id, target));
    }

    const auto accumulate = [&](const RouteTrace& leg) {
        out.total_hops += leg.transitions();
        for (double d : leg.per_hop_distance)
            out.total_distance += d;
        out.total_energy += route_energy(radio, leg).total;
    };
    accumulate(out.source_leg);
    for (const RouteTrace& leg : out.destination_legs)
        accumulate(leg);
    return out;
}

void write_trace_csv(const Network& network, std::span<const RouteTrace> legs, std::ostream& out) {
    out << "leg,seq,node_id,x,y,hop_distance_m\n";
    for (std::size_t leg = 0; leg < legs.size(); ++leg) {
        const RouteTrace& t = legs[leg];
        for (std::size_t seq = 0; seq < t.hops.size(); ++seq) {
            const Point2d& p = network.position(t.hops[seq]);
            const double d = seq == 0 ? 0.0 : t.per_hop_distance[seq - 1];
            out << leg << ',' << seq << ',' << index(t.hops[seq]) << ',' << format_exact(p.x())
                << ',' << format_exact(p.y()) << ',' << format_exact(d) << '\n';
        }
    }
}

void write_trace_csv(const Network& network, const MulticastTrace& trace, std::ostream& out) {
    std::vector<RouteTrace> legs{trace.source_leg};
    legs.insert(legs.end(), trace.destination_legs.begin(), trace.destination_legs.end());
    write_trace_csv(network, legs, out);
}

} // namespace imin
