// imin: Fermat-point geocast routing simulator.
//
//   imin fermat   --source X,Y --dest X,Y [--dest X,Y ...]  -> per-method Fermat point CSV
//   imin route    --from ID --to ID --scheme greedy|imin      -> hop trace CSV
//   imin simulate --config FILE [--svg DIR]                   -> metrics CSV
//   imin sweep    --config FILE --max-regions N               -> aggregate CSV
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "imin/errors.hpp"
#include "imin/experiment.hpp"
#include "imin/forwarding.hpp"
#include "imin/geometry.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

// Thrown for bad user input detected outside CLI11's own checks.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

imin::Point2d parse_xy(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError("expected X,Y but got '" + text + "'");
    try {
        std::size_t used_x = 0, used_y = 0;
        const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
        const double x = std::stod(xs, &used_x);
        const double y = std::stod(ys, &used_y);
        if (used_x != xs.size() || used_y != ys.size())
            throw std::invalid_argument("trailing characters");
        return {x, y};
    } catch (const std::logic_error&) {
        throw UsageError("expected X,Y but got '" + text + "'");
    }
}

// Output stream: the named file, or stdout for "" and "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw UsageError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct FermatArgs {
    std::string source;
    std::vector<std::string> destinations;
    std::string anchors_file;
    double step = 1.0;
    double tolerance = 1e-6;
    std::size_t max_iterations = 1000;
    bool destinations_only = false;
    std::string out;
};

int run_fermat(const FermatArgs& a) {
    std::vector<imin::Point2d> points;
    if (!a.anchors_file.empty()) {
        std::istringstream in(read_file(a.anchors_file));
        for (std::string line; std::getline(in, line);)
            if (!line.empty() && line.front() != '#')
                points.push_back(parse_xy(line));
    } else {
        if (a.source.empty())
            throw UsageError("fermat needs --source and --dest, or --anchors");
        points.push_back(parse_xy(a.source));
        for (const auto& d : a.destinations)
            points.push_back(parse_xy(d));
    }
    if (points.size() < 2)
        throw UsageError("fermat needs a source and at least one destination");

    const imin::Point2d source = points.front();
    const std::vector<imin::Point2d> dests(points.begin() + 1, points.end());
    const imin::AnchorSet<double> anchors(source, dests);
    const auto scope = a.destinations_only ? imin::AnchorScope::DestinationsOnly : imin::AnchorScope::WithSource;

    Output out(a.out);
    auto& os = out.stream();
    os << "method,fermat_x,fermat_y,total_distance_m,degenerate,iterations,status\n";
    const auto emit = [&](const imin::FermatResult<double>& r) {
        os << imin::to_string(r.method) << ',' << imin::format_exact(r.point.x()) << ','
           << imin::format_exact(r.point.y()) << ',' << imin::format_exact(r.total_distance) << ','
           << (r.degenerate ? "true" : "false") << ',' << r.iterations << ",ok\n";
    };
    const auto failed = [&](std::string_view method, std::string_view status) {
        os << method << ",nan,nan,nan,false,0," << status << '\n';
    };

    emit(imin::minima_fermat_point(anchors, imin::SearchBounds<double>::enclosing(anchors, a.step), scope));
    try {
        emit(imin::weiszfeld_fermat_point(anchors, a.tolerance, a.max_iterations));
    } catch (const imin::NoConvergence&) {
        failed("Weiszfeld", "NoConvergence");
    }
    if (dests.size() == 2) {
        try {
            emit(imin::torricelli_triangle(source, dests[0], dests[1]));
        } catch (const imin::InvalidArgument&) {
            failed("Torricelli", "CoincidentVertices");
        }
    } else {
        failed("Torricelli", "NotATriangle");
    }
    return 0;
}

struct NetworkArgs {
    std::string config;
    std::string topology;
    std::size_t nodes = 200;
    double radius = 150.0;
    double width = 1800.0;
    double height = 1100.0;
    std::uint64_t seed = 1;
};

struct RouteArgs {
    NetworkArgs net;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::string scheme = "imin";
    std::string rule = "mfr";
    std::size_t hop_limit = 0;
    std::string out;
    std::string svg;
};

int run_route(const RouteArgs& a) {
    imin::Arena arena{a.net.width, a.net.height};
    double radius = a.net.radius;
    std::size_t count = a.net.nodes;
    std::uint64_t seed = a.net.seed;
    if (!a.net.config.empty()) {
        const auto cfg = imin::parse_config(read_file(a.net.config), {.require_regions = false});
        arena = cfg.arena;
        radius = cfg.radius;
        count = cfg.node_count;
        seed = cfg.seed;
    }
    std::vector<imin::Point2d> positions;
    if (!a.net.topology.empty()) {
        std::istringstream in(read_file(a.net.topology));
        positions = imin::read_topology_csv(in);
    } else {
        positions = imin::deploy_nodes(count, arena, seed);
    }
    const imin::Network network(positions, radius, arena);

    imin::GreedyRule rule;
    if (a.rule == "mfr")
        rule = imin::GreedyRule::MostForward;
    else if (a.rule == "nearest")
        rule = imin::GreedyRule::NearestToDestination;
    else
        throw UsageError("--rule must be mfr or nearest");

    const imin::NodeId from{a.from}, to{a.to};
    if (!network.contains(from) || !network.contains(to))
        throw UsageError("--from and --to must be node ids below " + std::to_string(network.size()));
    if (from == to)
        throw UsageError("--from and --to must differ");
    const std::size_t hop_limit = a.hop_limit ? a.hop_limit : imin::default_hop_limit(network);
    imin::RouteTrace trace;
    if (a.scheme == "greedy")
        trace = imin::greedy_route(network, from, to, hop_limit, rule);
    else if (a.scheme == "imin")
        trace = imin::imin_route(network, from, to, hop_limit, rule);
    else
        throw UsageError("--scheme must be greedy or imin");

    Output out(a.out);
    imin::write_trace_csv(network, std::span(&trace, 1), out.stream());
    std::cerr << "status=" << imin::to_string(trace.status) << " transitions=" << trace.transitions() << '\n';
    if (!a.svg.empty()) {
        Output svg(a.svg);
        const imin::LabeledRoute route{a.scheme, a.scheme == "imin" ? "#2ca02c" : "#ff7f0e", trace};
        imin::render_routes_svg(network, std::span(&route, 1), svg.stream());
    }
    return 0;
}

struct SimulateArgs {
    std::string config;
    std::string out;
    std::string svg_dir;
};

int run_simulate(const SimulateArgs& a) {
    const imin::ExperimentConfig cfg = imin::parse_config(read_file(a.config));
    const auto cells = imin::run_experiment_cells(cfg);
    std::vector<imin::MetricsRow> rows;
    for (const auto& c : cells)
        rows.push_back(c.row);
    Output out(a.out);
    imin::emit_csv(rows, out.stream());

    if (!a.svg_dir.empty()) {
        std::filesystem::create_directories(a.svg_dir);
        for (std::size_t i = 0; i < cfg.seed_count(); ++i) {
            const std::uint64_t seed = cfg.seed + i;
            std::vector<imin::MulticastTrace> traces;
            for (const auto& c : cells)
                if (c.row.seed == seed && c.trace)
                    traces.push_back(*c.trace);
            const auto network = imin::build_network(cfg, seed);
            const auto path = std::filesystem::path(a.svg_dir) / ("seed_" + std::to_string(seed) + ".svg");
            Output svg(path.string());
            imin::render_svg(network, traces, svg.stream());
        }
    }
    return 0;
}

struct SweepArgs {
    std::string config;
    std::size_t max_regions = 5;
    std::size_t seeds = 0;
    std::string out;
    std::string raw;
};

int run_sweep(const SweepArgs& a) {
    imin::ExperimentConfig cfg = imin::parse_config(read_file(a.config), {.require_regions = false});
    if (a.seeds)
        cfg.seeds = a.seeds;
    std::vector<imin::MetricsRow> raw;
    const auto rows = imin::run_sweep(cfg, a.max_regions, a.raw.empty() ? nullptr : &raw);
    Output out(a.out);
    imin::emit_sweep_csv(rows, out.stream());
    if (!a.raw.empty()) {
        Output raw_out(a.raw);
        imin::emit_csv(raw, raw_out.stream());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermat-point geocast routing simulator (GeometryDriven, GlobalMinima, I-Min)"};
    app.require_subcommand(1);

    FermatArgs fermat;
    auto* fermat_cmd = app.add_subcommand("fermat", "Locate the Fermat point of a source and destinations");
    fermat_cmd->add_option("--source", fermat.source, "Source as X,Y");
    fermat_cmd->add_option("--dest", fermat.destinations, "Destination as X,Y (repeatable)");
    fermat_cmd->add_option("--anchors", fermat.anchors_file, "File of X,Y lines, source first");
    fermat_cmd->add_option("--step", fermat.step, "Grid step in meters")->capture_default_str();
    fermat_cmd->add_option("--tolerance", fermat.tolerance, "Weiszfeld tolerance in meters")->capture_default_str();
    fermat_cmd->add_option("--max-iterations", fermat.max_iterations, "Weiszfeld iteration cap")->capture_default_str();
    fermat_cmd->add_flag("--destinations-only", fermat.destinations_only,
                         "Grid objective sums over destinations only");
    fermat_cmd->add_option("-o,--out", fermat.out, "Output CSV (default stdout)");

    RouteArgs route;
    auto* route_cmd = app.add_subcommand("route", "Route one packet between two nodes");
    route_cmd->add_option("--config", route.net.config, "Config file supplying arena, nodes, radius, seed");
    route_cmd->add_option("--topology", route.net.topology, "Topology CSV (id,x,y) instead of a seeded deployment");
    route_cmd->add_option("--nodes", route.net.nodes, "Node count")->capture_default_str();
    route_cmd->add_option("--radius", route.net.radius, "Transmission radius in meters")->capture_default_str();
    route_cmd->add_option("--width", route.net.width, "Arena width in meters")->capture_default_str();
    route_cmd->add_option("--height", route.net.height, "Arena height in meters")->capture_default_str();
    route_cmd->add_option("--seed", route.net.seed, "Deployment seed")->capture_default_str();
    route_cmd->add_option("--from", route.from, "Source node id")->required();
    route_cmd->add_option("--to", route.to, "Destination node id")->required();
    route_cmd->add_option("--scheme", route.scheme, "greedy or imin")->capture_default_str();
    route_cmd->add_option("--rule", route.rule, "Greedy rule: mfr or nearest")->capture_default_str();
    route_cmd->add_option("--hop-limit", route.hop_limit, "Transition cap (default 10 x nodes)");
    route_cmd->add_option("-o,--out", route.out, "Output CSV (default stdout)");
    route_cmd->add_option("--svg", route.svg, "Also render the route as SVG");

    SimulateArgs simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a configured scheme comparison");
    simulate_cmd->add_option("--config", simulate.config, "Config file")->required();
    simulate_cmd->add_option("-o,--out", simulate.out, "Output CSV (default stdout)");
    simulate_cmd->add_option("--svg", simulate.svg_dir, "Directory for per-seed SVG renders");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Vary the region count over seeds and aggregate");
    sweep_cmd->add_option("--config", sweep.config, "Config file (regions are drawn per seed)")->required();
    sweep_cmd->add_option("--max-regions", sweep.max_regions, "Largest region count")->capture_default_str();
    sweep_cmd->add_option("--seeds", sweep.seeds, "Seed count (overrides config)");
    sweep_cmd->add_option("-o,--out", sweep.out, "Output CSV (default stdout)");
    sweep_cmd->add_option("--raw", sweep.raw, "Also write per-run metrics CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*fermat_cmd)
            return run_fermat(fermat);
        if (*route_cmd)
            return run_route(route);
        if (*simulate_cmd)
            return run_simulate(simulate);
        if (*sweep_cmd)
            return run_sweep(sweep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const imin::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const imin::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}
