#ifndef IMIN_TOPOLOGY_HPP
#define IMIN_TOPOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "imin/geometry.hpp"

namespace imin {

// Dense node identifier, 0..count-1 within one Network.
enum class NodeId : std::uint32_t {};

constexpr std::uint32_t index(NodeId id) { return static_cast<std::uint32_t>(id); }
inline std::string to_string(NodeId id) { return std::to_string(index(id)); }

// Axis-aligned deployment rectangle [0, width] x [0, height], meters.
struct Arena {
    double width = 1800.0;
    double height = 1100.0;

    bool contains(const Point2d& p) const {
        return p.x() >= 0.0 && p.x() <= width && p.y() >= 0.0 && p.y() <= height;
    }
};

struct Node {
    NodeId id{};
    Point2d position = Point2d::Zero();
};

// A geocast destination area, represented by its center.
struct GeocastRegion {
    Point2d center = Point2d::Zero();
};

// Immutable set of positioned nodes sharing one transmission radius. Two
// nodes are linked iff their distance is <= radius. Neighbor lists are built
// once at construction.
class Network {
public:
    Network(const std::vector<Point2d>& positions, double radius, Arena arena);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    bool contains(NodeId id) const { return index(id) < nodes_.size(); }

    double radius() const { return radius_; }
    const Arena& arena() const { return arena_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    // Throw UnknownNode for ids outside the network.
    const Node& node(NodeId id) const;
    const Point2d& position(NodeId id) const { return node(id).position; }
    std::span<const NodeId> neighbor_ids(NodeId id) const;
    bool is_neighbor(NodeId a, NodeId b) const;
    double distance(NodeId a, NodeId b) const;

private:
    std::vector<Node> nodes_;
    double radius_;
    Arena arena_;
    std::vector<std::vector<NodeId>> adjacency_;
};

// `count` positions drawn i.i.d. uniform over the arena. The generator is
// std::mt19937_64 seeded with `seed`; each coordinate takes the top 53 bits
// of one draw as a fraction in [0, 1), x before y, node by node. The stream
// is fully specified, so positions are identical on every platform.
std::vector<Point2d> deploy_nodes(std::size_t count, const Arena& arena, std::uint64_t seed);

// Nodes within radius of `id`, excluding itself, by ascending id.
std::vector<Node> neighbors(const Network& network, NodeId id);

// Closest node to `point`; ties go to the lowest id. Throws EmptyNetwork.
const Node& nearest_node(const Network& network, const Point2d& point);

// `id,x,y` rows with shortest round-trip formatting.
void write_topology_csv(const Network& network, std::ostream& out);
// Positions in id order; ids must be 0..n-1 in sequence.
std::vector<Point2d> read_topology_csv(std::istream& in);

// Shortest decimal text that parses back to exactly `value`.
std::string format_exact(double value);

} // namespace imin

#endif // IMIN_TOPOLOGY_HPP
