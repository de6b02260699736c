#include <doctest.h>

#include <sstream>

#include "imin/topology.hpp"
#include "oracles.hpp"

using imin::Arena;
using imin::Network;
using imin::NodeId;
using imin::Point2d;

namespace {

std::vector<std::uint32_t> ids(const std::vector<imin::Node>& nodes) {
    std::vector<std::uint32_t> out;
    for (const auto& n : nodes)
        out.push_back(imin::index(n.id));
    return out;
}

} // namespace

TEST_CASE("deploy_nodes") {
    const Arena arena{1800, 1100};
    SUBCASE("count must be positive") {
        CHECK_THROWS_AS(imin::deploy_nodes(0, arena, 42), imin::InvalidArgument);
    }
    SUBCASE("same seed, same positions") {
        const auto a = imin::deploy_nodes(200, arena, 42);
        const auto b = imin::deploy_nodes(200, arena, 42);
        REQUIRE(a.size() == 200);
        CHECK(a == b);
        CHECK(a != imin::deploy_nodes(200, arena, 43));
    }
    SUBCASE("positions lie in the 1800 x 1100 arena") {
        for (const Point2d& p : imin::deploy_nodes(200, arena, 42)) {
            CHECK(p.x() >= 0.0);
            CHECK(p.x() <= 1800.0);
            CHECK(p.y() >= 0.0);
            CHECK(p.y() <= 1100.0);
        }
    }
    SUBCASE("generator stream is pinned") {
        // First draws of std::mt19937_64(42): top 53 bits as a unit fraction.
        std::mt19937_64 gen(42);
        const double fx = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double fy = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const auto p = imin::deploy_nodes(1, arena, 42).front();
        CHECK(p.x() == fx * 1800.0);
        CHECK(p.y() == fy * 1100.0);
    }
    SUBCASE("roughly uniform") {
        const auto pts = imin::deploy_nodes(20000, arena, 5);
        int left = 0, low = 0;
        for (const auto& p : pts) {
            left += p.x() < 900.0;
            low += p.y() < 550.0;
        }
        CHECK(std::abs(left - 10000) < 400);
        CHECK(std::abs(low - 10000) < 400);
    }
}

TEST_CASE("network construction") {
    CHECK_THROWS_AS(Network({{1, 1}}, 0.0, {10, 10}), imin::InvalidArgument);
    CHECK_THROWS_AS(Network({{11, 1}}, 1.0, {10, 10}), imin::InvalidArgument);
    CHECK_THROWS_AS(Network({{-0.5, 1}}, 1.0, {10, 10}), imin::InvalidArgument);
    const Network net({{1, 1}, {2, 2}}, 5.0, {10, 10});
    CHECK(net.size() == 2);
    CHECK(net.node(NodeId{1}).position == Point2d(2, 2));
    CHECK_THROWS_AS(net.node(NodeId{2}), imin::UnknownNode);
}

TEST_CASE("neighbors") {
    SUBCASE("5 m apart, radius 10") {
        const Network net({{0, 0}, {5, 0}}, 10.0, {20, 20});
        CHECK(ids(imin::neighbors(net, NodeId{0})) == std::vector<std::uint32_t>{1});
        CHECK(ids(imin::neighbors(net, NodeId{1})) == std::vector<std::uint32_t>{0});
    }
    SUBCASE("exactly at the radius counts as linked") {
        const Network net({{0, 0}, {10, 0}}, 10.0, {20, 20});
        CHECK(ids(imin::neighbors(net, NodeId{0})) == std::vector<std::uint32_t>{1});
        CHECK(ids(imin::neighbors(net, NodeId{1})) == std::vector<std::uint32_t>{0});
    }
    SUBCASE("just beyond the radius") {
        const Network net({{0, 0}, {10.000001, 0}}, 10.0, {20, 20});
        CHECK(imin::neighbors(net, NodeId{0}).empty());
    }
    SUBCASE("collinear 0, 8, 9.5 with radius 10") {
        const Network net({{0, 0}, {8, 0}, {9.5, 0}}, 10.0, {20, 1});
        CHECK(ids(imin::neighbors(net, NodeId{0})) == std::vector<std::uint32_t>{1, 2});
        CHECK(ids(imin::neighbors(net, NodeId{2})) == std::vector<std::uint32_t>{0, 1});
    }
    SUBCASE("unknown node") {
        const Network net({{0, 0}}, 10.0, {20, 20});
        CHECK_THROWS_AS(imin::neighbors(net, NodeId{3}), imin::UnknownNode);
    }
}

TEST_CASE("neighbor relation matches brute force and is symmetric") {
    const Arena arena{1800, 1100};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto pts = imin::deploy_nodes(150, arena, seed);
        const Network net(pts, 150.0, arena);
        for (std::uint32_t a = 0; a < pts.size(); ++a) {
            std::vector<std::uint32_t> expected;
            for (std::uint32_t b = 0; b < pts.size(); ++b)
                if (a != b && oracle::dist({pts[a].x(), pts[a].y()}, {pts[b].x(), pts[b].y()}) <= 150.0)
                    expected.push_back(b);
            CHECK(ids(imin::neighbors(net, NodeId{a})) == expected);
            for (std::uint32_t b : expected)
                CHECK(net.is_neighbor(NodeId{b}, NodeId{a}));
        }
    }
}

TEST_CASE("nearest_node") {
    SUBCASE("single node") {
        const Network net({{3, 3}}, 1.0, {10, 10});
        CHECK(imin::index(imin::nearest_node(net, {9, 9}).id) == 0);
    }
    SUBCASE("closer node wins") {
        const Network net({{0, 0}, {10, 0}}, 1.0, {10, 10});
        CHECK(imin::index(imin::nearest_node(net, {4, 0}).id) == 0);
        CHECK(imin::index(imin::nearest_node(net, {6, 0}).id) == 1);
    }
    SUBCASE("tie goes to the lowest id") {
        const Network net({{0, 0}, {10, 0}}, 1.0, {10, 10});
        CHECK(imin::index(imin::nearest_node(net, {5, 0}).id) == 0);
        const Network dup({{4, 4}, {4, 4}}, 1.0, {10, 10});
        CHECK(imin::index(imin::nearest_node(dup, {4, 4}).id) == 0);
    }
    SUBCASE("empty network") {
        const Network net({}, 1.0, {10, 10});
        CHECK_THROWS_AS(imin::nearest_node(net, {0, 0}), imin::EmptyNetwork);
    }
    SUBCASE("a node's own position maps back to it") {
        const Arena arena{1800, 1100};
        const Network net(imin::deploy_nodes(300, arena, 9), 100.0, arena);
        for (const auto& n : net.nodes())
            CHECK(imin::nearest_node(net, n.position).id == n.id);
    }
}

TEST_CASE("topology CSV") {
    const Arena arena{1800, 1100};
    const Network net(imin::deploy_nodes(25, arena, 4), 100.0, arena);
    std::stringstream buf;
    imin::write_topology_csv(net, buf);
    const std::string text = buf.str();
    CHECK(text.rfind("id,x,y\n0,", 0) == 0);
    std::istringstream in(text);
    const auto back = imin::read_topology_csv(in);
    REQUIRE(back.size() == 25);
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(back[i] == net.nodes()[i].position);

    std::istringstream bad("id,x,y\n1,2,3\n");
    CHECK_THROWS_AS(imin::read_topology_csv(bad), imin::ParseError);
}
