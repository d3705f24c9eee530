#include "nds/paperbench.hpp"

#include <algorithm>
#include <cmath>

namespace nds {

namespace {

constexpr double kContinuityTolerance = 1e-12;

} // namespace

Example41Pieces example41_pieces() {
    Example41Pieces p;
    p.f1 = {
        {0.0, 0.25, 4.0, 0.0},
        {0.25, 1.0, -1.0, 1.25},
    };
    p.f2 = {
        {0.0, 0.25, -1.0, 0.25},
        {0.25, 0.5, 4.0, -1.0},
        {0.5, 1.0, -2.0, 2.0},
    };
    p.composition = {
        {0.0, 0.0625, -4.0, 0.25},
        {0.0625, 0.125, 16.0, -1.0},
        {0.125, 0.25, -8.0, 2.0},
        {0.25, 0.75, 2.0, -0.5},
        {0.75, 1.0, -4.0, 4.0},
    };
    return p;
}

ContinuityReport verify_continuity(const PieceTable& pieces) {
    ContinuityReport report;
    if (pieces.empty()) return report;
    report.breakpoint_values.push_back({pieces.front().lo, pieces.front()(pieces.front().lo)});
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const auto& left = pieces[i];
        const auto& right = pieces[i + 1];
        double at = left.hi;
        double mismatch = std::fabs(left(at) - right(at));
        if (left.hi != right.lo) mismatch = std::max(mismatch, std::fabs(left.hi - right.lo));
        report.breakpoint_values.push_back({at, left(at)});
        report.worst_mismatch = std::max(report.worst_mismatch, mismatch);
        if (mismatch > kContinuityTolerance && !report.offending) {
            report.continuous = false;
            report.offending = i + 1;
        }
    }
    report.breakpoint_values.push_back({pieces.back().hi, pieces.back()(pieces.back().hi)});
    return report;
}

PiecewiseLinear map_from_pieces(const PieceTable& pieces) {
    auto report = verify_continuity(pieces);
    if (!report.continuous)
        throw std::invalid_argument("piece table is discontinuous at breakpoint " +
                                    std::to_string(*report.offending));
    return PiecewiseLinear(std::move(report.breakpoint_values));
}

ContinuityReport verify_continuity(const NamedSystem& sys) {
    ContinuityReport merged;
    for (const auto& [name, table] : sys.formulas) {
        auto r = verify_continuity(table);
        merged.breakpoint_values.insert(merged.breakpoint_values.end(), r.breakpoint_values.begin(),
                                        r.breakpoint_values.end());
        merged.worst_mismatch = std::max(merged.worst_mismatch, r.worst_mismatch);
        if (!r.continuous && merged.continuous) {
            merged.continuous = false;
            merged.offending = r.offending;
        }
    }
    return merged;
}

std::int64_t shift_block_time(int r) {
    if (r < 1 || r > 60) throw std::invalid_argument("block index out of range");
    return (std::int64_t{1} << (r + 1)) + 2 * r - 3;
}

std::vector<Region> interval_ball_cover(int count) {
    std::vector<Region> out;
    for (int i = 0; i < count; ++i)
        out.push_back(Ball{interval((2.0 * i + 1.0) / (2.0 * count)), 1.0 / (2.0 * count)});
    return out;
}

std::vector<Region> circle_ball_cover(int count) {
    std::vector<Region> out;
    for (int i = 0; i < count; ++i)
        out.push_back(Ball{circle((2.0 * i + 1.0) / (2.0 * count)), 1.0 / (2.0 * count)});
    return out;
}

std::vector<Region> cylinder_cover(int lo, int hi, int margin, int radius) {
    if (hi < lo) throw std::invalid_argument("empty coordinate range");
    const int width = hi - lo + 1;
    if (width > 16) throw std::invalid_argument("cylinder cover limited to 16 coordinates");
    std::vector<Region> out;
    for (int pattern = 0; pattern < (1 << width); ++pattern) {
        Cylinder c;
        c.margin = margin;
        c.radius = radius;
        for (int b = 0; b < width; ++b) c.constraints[lo + b] = (pattern >> (width - 1 - b)) & 1;
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

const char* const kNames[] = {
    "example31",       "example41_f1",       "example41_f2",        "example41_composition",
    "example41_generated", "rotations_summable", "rotations_harmonic", "identity",
};

ProbeDefaults interval_defaults() {
    ProbeDefaults d;
    d.horizon = 500;
    d.cover = interval_ball_cover(16);
    return d;
}

NamedSystem make(std::string name, std::string description, MapSequence seq, ProbeDefaults defaults) {
    return NamedSystem{std::move(name), std::move(description), std::move(seq), {}, std::nullopt,
                       std::move(defaults)};
}

} // namespace

std::vector<std::pair<std::string, std::string>> registry() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const char* n : kNames) out.emplace_back(n, build(n).description);
    return out;
}

NamedSystem build(std::string_view name) { return build(name, example41_pieces()); }

NamedSystem build(std::string_view name, const Example41Pieces& pieces) {
    if (name == "example31") {
        ProbeDefaults d;
        d.horizon = 2000;
        d.cover = cylinder_cover(-2, 2);
        return make("example31",
                    "shift space; block r = 2^r identities, sigma^r, sigma^-r; "
                    "f_1^t = sigma^r at t_r = sum_{s<r}(2^s+2) + 2^r + 1",
                    MapSequence::shift_blocks(), std::move(d));
    }
    if (name == "example41_f1" || name == "example41_f2") {
        const bool first = name == "example41_f1";
        const PieceTable& table = first ? pieces.f1 : pieces.f2;
        // A discontinuous table is still registered so the transcription check can report it.
        MapSpec m = verify_continuity(table).continuous ? MapSpec(map_from_pieces(table)) : MapSpec(Identity{});
        auto sys = make(std::string(name),
                        first ? "interval; f1 alone: 4x on [0,1/4], 5/4-x on [1/4,1]"
                              : "interval; f2 alone: 1/4-x on [0,1/4], 4x-1 on [1/4,1/2], 2-2x on [1/2,1]",
                        MapSequence::constant(std::move(m)), interval_defaults());
        sys.formulas.emplace_back(first ? "f1" : "f2", table);
        return sys;
    }
    if (name == "example41_composition") {
        MapSpec m = verify_continuity(pieces.composition).continuous
                        ? MapSpec(map_from_pieces(pieces.composition))
                        : MapSpec(Identity{});
        auto sys = make("example41_composition", "interval; autonomous f2 o f1 from its five printed pieces",
                        MapSequence::constant(std::move(m)), interval_defaults());
        sys.formulas.emplace_back("f2_after_f1", pieces.composition);
        return sys;
    }
    if (name == "example41_generated") {
        auto to_map = [](const PieceTable& t) {
            return verify_continuity(t).continuous ? MapSpec(map_from_pieces(t)) : MapSpec(Identity{});
        };
        auto sys = make("example41_generated", "interval; f1, f2, f1, f2, ... generated by {f1, f2}",
                        generated_system({to_map(pieces.f1), to_map(pieces.f2)}), interval_defaults());
        sys.formulas.emplace_back("f1", pieces.f1);
        sys.formulas.emplace_back("f2", pieces.f2);
        return sys;
    }
    if (name == "rotations_summable") {
        ProbeDefaults d = interval_defaults();
        d.cover = circle_ball_cover(16);
        auto sys = make("rotations_summable", "circle; f_i = rotation(1/4 + 2^-i), limit rotation(1/4)",
                        MapSequence::rotation_series(0.25, SeriesKind::geometric), std::move(d));
        sys.limit = Rotation{0.25};
        return sys;
    }
    if (name == "rotations_harmonic") {
        ProbeDefaults d = interval_defaults();
        d.cover = circle_ball_cover(16);
        auto sys = make("rotations_harmonic", "circle; f_i = rotation(1/i), limit identity",
                        MapSequence::rotation_series(0.0, SeriesKind::harmonic), std::move(d));
        sys.limit = Rotation{0.0};
        return sys;
    }
    if (name == "identity") {
        auto sys = make("identity", "interval; every map is the identity", MapSequence::constant(Identity{}),
                        interval_defaults());
        sys.limit = Identity{};
        return sys;
    }
    throw UnknownSystem("unknown system: " + std::string(name));
}

} // namespace nds
