#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "imin/errors.hpp"
#include "imin/experiment.hpp"

namespace imin {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return trim(s.substr(1, s.size() - 2));
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    Reader(std::string key, const Entry& entry) : key_(std::move(key)), entry_(entry) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, entry_.line, key_); }

    double real(std::string_view text) const {
        text = trim(text);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
            fail("expected a number, got '" + std::string(text) + "'");
        return v;
    }
    double real() const { return real(entry_.value); }

    std::uint64_t integer() const {
        const std::string_view text = entry_.value;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            fail("expected a non-negative integer, got '" + entry_.value + "'");
        return v;
    }

    bool boolean() const {
        if (entry_.value == "true")
            return true;
        if (entry_.value == "false")
            return false;
        fail("expected true or false, got '" + entry_.value + "'");
    }

    const std::string& text() const { return entry_.value; }

private:
    std::string key_;
    const Entry& entry_;
};

} // namespace

void validate(const ExperimentConfig& c, const ParseOptions& options) {
    if (!(c.arena.width > 0.0) || !(c.arena.height > 0.0))
        throw ValidationError("arena dimensions must be positive");
    if (c.node_count < 1)
        throw ValidationError("nodes.count must be at least 1");
    if (!(c.radius > 0.0))
        throw ValidationError("nodes.radius must be positive");
    if (c.seeds && *c.seeds < 1)
        throw ValidationError("seeds must be at least 1");
    if (options.require_regions && c.regions.empty())
        throw ValidationError("regions is required and must list at least one region center");
    for (std::size_t k = 0; k < c.regions.size(); ++k)
        if (!c.arena.contains(c.regions[k].center))
            throw ValidationError("region " + std::to_string(k) + " center lies outside the arena");
    if (!c.arena.contains(c.source_point))
        throw ValidationError("source point lies outside the arena");
    if (c.schemes.empty())
        throw ValidationError("schemes must name at least one scheme");
    if (!(c.grid_step > 0.0))
        throw ValidationError("fermat.grid_step must be positive");
    if (c.hop_limit && *c.hop_limit < 1)
        throw ValidationError("forwarding.hop_limit must be at least 1");
    try {
        c.radio.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError(e.what());
    }
}

ExperimentConfig parse_config(std::string_view text, const ParseOptions& options) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_no, "");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = unquote(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ParseError("missing key", line_no, "");
        if (value.empty())
            throw ParseError("missing value", line_no, key);
        if (!entries.emplace(key, Entry{std::string(value), line_no}).second)
            throw ParseError("key given more than once", line_no, key);
    }

    ExperimentConfig c;
    for (const auto& [key, entry] : entries) {
        const Reader r(key, entry);
        if (key == "arena") {
            std::istringstream in(entry.value);
            std::string w, h, extra;
            if (!(in >> w >> h) || (in >> extra))
                r.fail("expected 'width height'");
            c.arena = {r.real(w), r.real(h)};
        } else if (key == "arena.width") {
            c.arena.width = r.real();
        } else if (key == "arena.height") {
            c.arena.height = r.real();
        } else if (key == "nodes.count") {
            c.node_count = r.integer();
        } else if (key == "nodes.radius") {
            c.radius = r.real();
        } else if (key == "seed") {
            c.seed = r.integer();
        } else if (key == "seeds") {
            c.seeds = r.integer();
        } else if (key == "source.x") {
            c.source_point.x() = r.real();
        } else if (key == "source.y") {
            c.source_point.y() = r.real();
        } else if (key == "regions") {
            for (std::string_view pair : split(entry.value, ';')) {
                if (pair.empty())
                    continue;
                const auto xy = split(pair, ',');
                if (xy.size() != 2)
                    r.fail("region must be 'x,y', got '" + std::string(pair) + "'");
                c.regions.push_back({Point2d(r.real(xy[0]), r.real(xy[1]))});
            }
        } else if (key == "schemes") {
            c.schemes.clear();
            for (std::string_view name : split(entry.value, ',')) {
                const auto s = parse_scheme(name);
                if (!s)
                    r.fail("unknown scheme '" + std::string(name) + "'");
                if (std::find(c.schemes.begin(), c.schemes.end(), *s) == c.schemes.end())
                    c.schemes.push_back(*s);
            }
        } else if (key == "fermat.grid_step") {
            c.grid_step = r.real();
        } else if (key == "fermat.include_source") {
            c.scope = r.boolean() ? AnchorScope::WithSource : AnchorScope::DestinationsOnly;
        } else if (key == "forwarding.hop_limit") {
            c.hop_limit = r.integer();
        } else if (key == "forwarding.greedy_rule") {
            if (entry.value == "mfr")
                c.rule = GreedyRule::MostForward;
            else if (entry.value == "nearest")
                c.rule = GreedyRule::NearestToDestination;
            else
                r.fail("expected mfr or nearest");
        } else if (key == "energy.elec_nj_per_bit") {
            c.radio.elec_nj_per_bit = r.real();
        } else if (key == "energy.amp_pj_per_bit_m2") {
            c.radio.amp_pj_per_bit_m2 = r.real();
        } else if (key == "packet.bits") {
            c.radio.packet_bits = r.integer();
        } else {
            r.fail("unknown key");
        }
    }
    if (entries.contains("arena") && (entries.contains("arena.width") || entries.contains("arena.height")))
        throw ParseError("arena given both as 'arena' and per-dimension keys", entries.at("arena").line,
                         "arena");

    validate(c, options);
    return c;
}

} // namespace imin
