#ifndef IMIN_FORWARDING_HPP
#define IMIN_FORWARDING_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "imin/energy.hpp"
#include "imin/geometry.hpp"
#include "imin/topology.hpp"

namespace imin {

// Greedy neighbor selection rule.
//   MostForward           maximum scalar projection toward the destination
//                         (MFR); may overshoot an in-range destination.
//   NearestToDestination  minimum remaining distance, strictly closer than the
//                         current holder. Sensitivity variant only.
enum class GreedyRule { MostForward, NearestToDestination };

enum class RouteStatus { Delivered, LoopDetected, Void, HopLimitExceeded };

std::string_view to_string(RouteStatus s);

struct RouteTrace {
    NodeId destination{};
    std::vector<NodeId> hops;            // hops.front() is the source
    std::vector<double> per_hop_distance; // size() == hops.size() - 1
    RouteStatus status = RouteStatus::Void;

    std::size_t transitions() const { return per_hop_distance.size(); }
    bool delivered() const { return status == RouteStatus::Delivered; }
};

// Next holder under `rule`, or nullopt (Void) when no neighbor makes
// progress. Ties go to the lowest id.
std::optional<NodeId> greedy_next_hop(const Network& network, NodeId current, NodeId destination,
                                      GreedyRule rule = GreedyRule::MostForward);

// Flat greedy forwarding: always takes greedy_next_hop, even when the
// destination is already a neighbor. Stops on delivery, on the first
// repeated node (which is appended to the trace), on a void, or after
// `hop_limit` transitions.
RouteTrace greedy_route(const Network& network, NodeId source, NodeId destination,
                        std::size_t hop_limit, GreedyRule rule = GreedyRule::MostForward);

// Greedy forwarding with the I-Min check: before each selection, a holder
// that has the destination as a neighbor unicasts to it directly.
RouteTrace imin_route(const Network& network, NodeId source, NodeId destination,
                      std::size_t hop_limit, GreedyRule rule = GreedyRule::MostForward);

EnergyReport route_energy(const RadioParams& params, const RouteTrace& trace);

// 10 x node count.
std::size_t default_hop_limit(const Network& network);

enum class Scheme { GeometryDriven, GlobalMinima, IMin };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view text);

struct MulticastOptions {
    double grid_step = 1.0;
    AnchorScope scope = AnchorScope::WithSource;
    GreedyRule rule = GreedyRule::MostForward;
};

struct MulticastTrace {
    Scheme scheme = Scheme::IMin;
    FermatResult<double> fermat;
    NodeId relay_id{};
    RouteTrace source_leg;
    std::vector<NodeId> target_ids;          // nearest node of each region center
    std::vector<RouteTrace> destination_legs; // relay -> target_ids[k]
    std::size_t total_hops = 0;
    double total_distance = 0.0;
    double total_energy = 0.0;

    bool delivered() const;
    // Delivered, or the status of the first leg that was not.
    RouteStatus status() const;
};

// Route from `source` to every region via the relay node nearest the Fermat
// point of {source position} + region centers.
//   GeometryDriven  Torricelli construction (exactly two regions), flat greedy
//   GlobalMinima    grid-scan Fermat point, flat greedy
//   IMin            grid-scan Fermat point, I-Min forwarding
// Throws SchemeArityMismatch, UnknownNode, InvalidArgument.
MulticastTrace fermat_multicast_route(const Network& network, NodeId source,
                                      std::span<const GeocastRegion> regions, Scheme scheme,
                                      std::size_t hop_limit, const RadioParams& radio,
                                      const MulticastOptions& options = {});

// `leg,seq,node_id,x,y,hop_distance_m`; leg 0 is the source leg and leg k the
// relay leg toward region k. Row seq 0 of each leg has hop distance 0.
void write_trace_csv(const Network& network, std::span<const RouteTrace> legs, std::ostream& out);
void write_trace_csv(const Network& network, const MulticastTrace& trace, std::ostream& out);

} // namespace imin

#endif // IMIN_FORWARDING_HPP
