#include "imin/experiment.hpp"

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "imin/errors.hpp"

namespace imin {

namespace {

std::string error_status(const std::exception& e) {
    if (dynamic_cast<const SchemeArityMismatch*>(&e))
        return "SchemeArityMismatch";
    if (dynamic_cast<const UnknownNode*>(&e))
        return "UnknownNode";
    if (dynamic_cast<const EmptyGrid*>(&e))
        return "EmptyGrid";
    if (dynamic_cast<const EmptyNetwork*>(&e))
        return "EmptyNetwork";
    if (dynamic_cast<const InvalidArgument*>(&e))
        return "InvalidArgument";
    return "Error";
}

MetricsRow make_row(const ExperimentConfig& config, Scheme scheme, std::uint64_t seed,
                    std::size_t region_count) {
    MetricsRow row;
    row.scheme = scheme;
    row.seed = seed;
    row.node_count = config.node_count;
    row.region_count = region_count;
    row.fermat_x = std::numeric_limits<double>::quiet_NaN();
    row.fermat_y = std::numeric_limits<double>::quiet_NaN();
    return row;
}

// Runs one seed's schemes on a shared topology and source.
std::vector<ExperimentCell> run_seed(const ExperimentConfig& config,
                                     std::span<const GeocastRegion> regions, std::uint64_t seed) {
    const Network network = build_network(config, seed);
    const NodeId source = nearest_node(network, config.source_point).id;
    const std::size_t hop_limit = config.hop_limit.value_or(default_hop_limit(network));

    std::vector<ExperimentCell> cells;
    for (Scheme scheme : config.schemes) {
        ExperimentCell cell{make_row(config, scheme, seed, regions.size()), std::nullopt};
        try {
            MulticastTrace trace = fermat_multicast_route(network, source, regions, scheme, hop_limit,
                                                          config.radio, config.multicast_options());
            cell.row.fermat_x = trace.fermat.point.x();
            cell.row.fermat_y = trace.fermat.point.y();
            cell.row.relay_id = index(trace.relay_id);
            cell.row.total_hops = trace.total_hops;
            cell.row.total_distance_m = trace.total_distance;
            cell.row.total_energy_j = trace.total_energy;
            cell.row.status = std::string(to_string(trace.status()));
            cell.trace = std::move(trace);
        } catch (const Error& e) {
            cell.row.status = error_status(e);
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

// Evaluates job(i) for i in [0, count) across threads; results keep index order.
template <typename Result, typename Job>
std::vector<Result> parallel_map(std::size_t count, const Job& job) {
    std::vector<Result> results(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            results[i] = job(i);
    };
    const std::size_t threads =
        std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    return results;
}

std::string format_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

Network build_network(const ExperimentConfig& config, std::uint64_t seed) {
    return Network(deploy_nodes(config.node_count, config.arena, seed), config.radius, config.arena);
}

std::vector<ExperimentCell> run_experiment_cells(const ExperimentConfig& config) {
    validate(config);
    const auto per_seed = parallel_map<std::vector<ExperimentCell>>(
        config.seed_count(), [&](std::size_t i) { return run_seed(config, config.regions, config.seed + i); });
    std::vector<ExperimentCell> cells;
    for (const auto& seed_cells : per_seed)
        cells.insert(cells.end(), seed_cells.begin(), seed_cells.end());
    return cells;
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& config) {
    std::vector<MetricsRow> rows;
    for (ExperimentCell& cell : run_experiment_cells(config))
        rows.push_back(std::move(cell.row));
    return rows;
}

namespace {
constexpr const char* kMetricsHeader = "scheme,seed,node_count,region_count,fermat_x,fermat_y,relay_id,"
                                       "total_hops,total_distance_m,total_energy_j,status";
}

void emit_csv(std::span<const MetricsRow> rows, std::ostream& out) {
    out << kMetricsHeader << '\n';
    for (const MetricsRow& r : rows) {
        out << to_string(r.scheme) << ',' << r.seed << ',' << r.node_count << ',' << r.region_count
            << ',' << format_sig6(r.fermat_x) << ',' << format_sig6(r.fermat_y) << ',' << r.relay_id
            << ',' << r.total_hops << ',' << format_sig6(r.total_distance_m) << ','
            << format_sig6(r.total_energy_j) << ',' << r.status << '\n';
    }
    if (!out)
        throw Error("failed writing metrics CSV");
}

std::vector<MetricsRow> parse_metrics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader)
        throw ParseError("unexpected metrics CSV header", 1, "");
    std::vector<MetricsRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');)
            f.push_back(cell);
        if (f.size() != 11)
            throw ParseError("expected 11 fields", line_no, "");
        MetricsRow r;
        const auto scheme = parse_scheme(f[0]);
        if (!scheme)
            throw ParseError("unknown scheme", line_no, "scheme");
        try {
            r.scheme = *scheme;
            r.seed = std::stoull(f[1]);
            r.node_count = std::stoull(f[2]);
            r.region_count = std::stoull(f[3]);
            r.fermat_x = std::stod(f[4]);
            r.fermat_y = std::stod(f[5]);
            r.relay_id = std::stoll(f[6]);
            r.total_hops = std::stoull(f[7]);
            r.total_distance_m = std::stod(f[8]);
            r.total_energy_j = std::stod(f[9]);
        } catch (const std::logic_error&) {
            throw ParseError("malformed number", line_no, "");
        }
        r.status = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string simulate_csv(std::string_view config_text) {
    const ExperimentConfig config = parse_config(config_text);
    const auto rows = run_experiment(config);
    std::ostringstream out;
    emit_csv(rows, out);
    return out.str();
}

std::vector<GeocastRegion> draw_regions(std::size_t count, const Arena& arena, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(count)};
    std::mt19937_64 gen(seq);
    const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<GeocastRegion> regions;
    for (std::size_t k = 0; k < count; ++k) {
        const double x = unit() * arena.width;
        const double y = unit() * arena.height;
        regions.push_back({Point2d(x, y)});
    }
    return regions;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::size_t max_regions,
                                std::vector<MetricsRow>* raw) {
    validate(config, ParseOptions{.require_regions = false});
    if (max_regions < 2)
        throw InvalidArgument("sweep needs max_regions >= 2");

    std::vector<SweepRow> out;
    for (std::size_t k = 2; k <= max_regions; ++k) {
        const auto per_seed = parallel_map<std::vector<ExperimentCell>>(config.seed_count(), [&](std::size_t i) {
            const std::uint64_t seed = config.seed + i;
            return run_seed(config, draw_regions(k, config.arena, seed), seed);
        });
        for (Scheme scheme : config.schemes) {
            SweepRow agg;
            agg.region_count = k;
            agg.scheme = scheme;
            double hops = 0.0, dist = 0.0, energy = 0.0;
            for (const auto& cells : per_seed)
                for (const ExperimentCell& cell : cells) {
                    if (cell.row.scheme != scheme)
                        continue;
                    ++agg.runs;
                    if (!cell.row.delivered())
                        continue;
                    ++agg.delivered;
                    hops += static_cast<double>(cell.row.total_hops);
                    dist += cell.row.total_distance_m;
                    energy += cell.row.total_energy_j;
                }
            const double n = agg.delivered ? static_cast<double>(agg.delivered)
                                           : std::numeric_limits<double>::quiet_NaN();
            agg.mean_total_hops = hops / n;
            agg.mean_total_distance_m = dist / n;
            agg.mean_total_energy_j = energy / n;
            out.push_back(agg);
        }
        if (raw)
            for (const auto& cells : per_seed)
                for (const ExperimentCell& cell : cells)
                    raw->push_back(cell.row);
    }
    return out;
}

void emit_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "region_count,scheme,runs,delivered,mean_total_hops,mean_total_distance_m,mean_total_energy_j\n";
    for (const SweepRow& r : rows)
        out << r.region_count << ',' << to_string(r.scheme) << ',' << r.runs << ',' << r.delivered << ','
            << format_sig6(r.mean_total_hops) << ',' << format_sig6(r.mean_total_distance_m) << ','
            << format_sig6(r.mean_total_energy_j) << '\n';
    if (!out)
        throw Error("failed writing sweep CSV");
}

} // namespace imin
