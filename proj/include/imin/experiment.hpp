#ifndef IMIN_EXPERIMENT_HPP
#define IMIN_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imin/energy.hpp"
#include "imin/forwarding.hpp"
#include "imin/topology.hpp"

namespace imin {

struct ExperimentConfig {
    Arena arena{};
    std::size_t node_count = 200;
    double radius = 150.0;
    std::uint64_t seed = 1;
    std::optional<std::size_t> seeds; // sweep seed..seed+seeds-1 when set
    Point2d source_point{100.0, 100.0};
    std::vector<GeocastRegion> regions;
    std::vector<Scheme> schemes{Scheme::GeometryDriven, Scheme::GlobalMinima, Scheme::IMin};
    double grid_step = 1.0;
    AnchorScope scope = AnchorScope::WithSource;
    GreedyRule rule = GreedyRule::MostForward;
    std::optional<std::size_t> hop_limit; // unset: 10 x node count
    RadioParams radio{};

    std::size_t seed_count() const { return seeds.value_or(1); }
    MulticastOptions multicast_options() const { return {grid_step, scope, rule}; }
};

struct ParseOptions {
    // Sweeps draw their own regions and may omit the key.
    bool require_regions = true;
};

// Line-oriented `key = value` document; `#` starts a comment. Keys:
//   arena.width, arena.height   meters (default 1800 x 1100); `arena = W H` also accepted
//   nodes.count, nodes.radius   (default 200, 150 m)
//   seed, seeds                 first seed (default 1), number of seeds (default 1)
//   source.x, source.y          source point (default 100, 100)
//   regions                     "x1,y1; x2,y2; ..."  (required)
//   schemes                     comma list of GeometryDriven, GlobalMinima, IMin (default all)
//   fermat.grid_step            meters (default 1)
//   fermat.include_source       true|false (default true)
//   forwarding.hop_limit        transitions per leg (default 10 x nodes.count)
//   forwarding.greedy_rule      mfr|nearest (default mfr)
//   energy.elec_nj_per_bit      default 50
//   energy.amp_pj_per_bit_m2    default 10
//   packet.bits                 default 1000
// Throws ParseError for malformed lines, unknown or repeated keys and bad
// values; ValidationError when the assembled config violates an invariant.
ExperimentConfig parse_config(std::string_view text, const ParseOptions& options = {});

void validate(const ExperimentConfig& config, const ParseOptions& options = {});

struct MetricsRow {
    Scheme scheme = Scheme::IMin;
    std::uint64_t seed = 0;
    std::size_t node_count = 0;
    std::size_t region_count = 0;
    double fermat_x = 0.0;
    double fermat_y = 0.0;
    std::int64_t relay_id = -1; // -1 when routing failed before a relay was chosen
    std::size_t total_hops = 0;
    double total_distance_m = 0.0;
    double total_energy_j = 0.0;
    std::string status;

    bool delivered() const { return status == "Delivered"; }
    friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

// One (seed, scheme) cell, with its route when routing succeeded.
struct ExperimentCell {
    MetricsRow row;
    std::optional<MulticastTrace> trace;
};

Network build_network(const ExperimentConfig& config, std::uint64_t seed);

// Rows ordered by seed, then by the configured scheme order. Routing
// failures are recorded in the row status rather than thrown.
std::vector<ExperimentCell> run_experiment_cells(const ExperimentConfig& config);
std::vector<MetricsRow> run_experiment(const ExperimentConfig& config);

// Floats use 6 significant digits.
void emit_csv(std::span<const MetricsRow> rows, std::ostream& out);
std::vector<MetricsRow> parse_metrics_csv(std::istream& in);

// parse_config + run_experiment + emit_csv.
std::string simulate_csv(std::string_view config_text);

// `count` region centers uniform over the arena, drawn from a generator
// seeded by (seed, count).
std::vector<GeocastRegion> draw_regions(std::size_t count, const Arena& arena, std::uint64_t seed);

struct SweepRow {
    std::size_t region_count = 0;
    Scheme scheme = Scheme::IMin;
    std::size_t runs = 0;
    std::size_t delivered = 0;
    // Means over delivered runs; NaN when none delivered.
    double mean_total_hops = 0.0;
    double mean_total_distance_m = 0.0;
    double mean_total_energy_j = 0.0;
};

// For k = 2..max_regions and every configured seed, draws k regions and runs
// all schemes. Raw rows are appended to `raw` when given.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::size_t max_regions,
                                std::vector<MetricsRow>* raw = nullptr);
void emit_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

// Standalone SVG: nodes as dots, the source's transmission radius dashed,
// legs as polylines colored by scheme and Fermat points as crosses.
void render_svg(const Network& network, std::span<const MulticastTrace> traces, std::ostream& out);

// Single routes with caller-chosen labels and colors.
struct LabeledRoute {
    std::string label;
    std::string color;
    RouteTrace trace;
};
void render_routes_svg(const Network& network, std::span<const LabeledRoute> routes,
                       std::ostream& out);

} // namespace imin

#endif // IMIN_EXPERIMENT_HPP
