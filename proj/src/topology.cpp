#include "imin/topology.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "imin/errors.hpp"

namespace imin {

Network::Network(const std::vector<Point2d>& positions, double radius, Arena arena)
    : radius_(radius), arena_(arena) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("transmission radius must be positive");
    if (!(arena.width > 0.0) || !(arena.height > 0.0))
        throw InvalidArgument("arena dimensions must be positive");
    if (positions.size() > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("too many nodes");

    nodes_.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Point2d& p = positions[i];
        if (!is_finite(p) || !arena.contains(p))
            throw InvalidArgument("node " + std::to_string(i) + " lies outside the arena");
        nodes_.push_back({NodeId{static_cast<std::uint32_t>(i)}, p});
    }

    adjacency_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if ((nodes_[i].position - nodes_[j].position).norm() <= radius_) {
                adjacency_[i].push_back(nodes_[j].id);
                adjacency_[j].push_back(nodes_[i].id);
            }
    // j ascends in the inner loop and i < j is pushed in ascending i, so each list is sorted.
}

const Node& Network::node(NodeId id) const {
    if (!contains(id))
        throw UnknownNode("unknown node id " + to_string(id));
    return nodes_[index(id)];
}

std::span<const NodeId> Network::neighbor_ids(NodeId id) const {
    node(id);
    return adjacency_[index(id)];
}

bool Network::is_neighbor(NodeId a, NodeId b) const {
    const auto ids = neighbor_ids(a);
    return std::binary_search(ids.begin(), ids.end(), b);
}

double Network::distance(NodeId a, NodeId b) const {
    return (position(a) - position(b)).norm();
}

std::vector<Point2d> deploy_nodes(std::size_t count, const Arena& arena, std::uint64_t seed) {
    if (count < 1)
        throw InvalidArgument("deployment needs at least one node");
    if (!(arena.width > 0.0) || !(arena.height > 0.0))
        throw InvalidArgument("arena dimensions must be positive");

    std::mt19937_64 gen(seed);
    const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<Point2d> positions;
    positions.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = unit() * arena.width;
        const double y = unit() * arena.height;
        positions.emplace_back(x, y);
    }
    return positions;
}

std::vector<Node> neighbors(const Network& network, NodeId id) {
    std::vector<Node> out;
    for (NodeId n : network.neighbor_ids(id))
        out.push_back(network.node(n));
    return out;
}

const Node& nearest_node(const Network& network, const Point2d& point) {
    if (network.empty())
        throw EmptyNetwork("nearest_node on an empty network");
    const Node* best = &network.nodes().front();
    double best_dist = (best->position - point).squaredNorm();
    for (const Node& n : network.nodes()) {
        const double d = (n.position - point).squaredNorm();
        if (d < best_dist) {
            best_dist = d;
            best = &n;
        }
    }
    return *best;
}

std::string format_exact(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

void write_topology_csv(const Network& network, std::ostream& out) {
    out << "id,x,y\n";
    for (const Node& n : network.nodes())
        out << index(n.id) << ',' << format_exact(n.position.x()) << ','
            << format_exact(n.position.y()) << '\n';
}

std::vector<Point2d> read_topology_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "id,x,y")
        throw ParseError("expected header id,x,y", 1, "");
    std::vector<Point2d> positions;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string id_text, x_text, y_text;
        if (!std::getline(row, id_text, ',') || !std::getline(row, x_text, ',') ||
            !std::getline(row, y_text))
            throw ParseError("expected id,x,y", line_no, "");
        try {
            if (std::stoul(id_text) != positions.size())
                throw ParseError("node ids must be dense and in order", line_no, "id");
            positions.emplace_back(std::stod(x_text), std::stod(y_text));
        } catch (const std::logic_error&) {
            throw ParseError("malformed number", line_no, "");
        }
    }
    return positions;
}

} // namespace imin
