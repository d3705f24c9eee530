#include "nds/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nds {

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw std::invalid_argument("piecewise-linear map needs >= 2 knots");
    if (knots_.front().x != 0.0 || knots_.back().x != 1.0)
        throw std::invalid_argument("piecewise-linear knots must start at 0 and end at 1");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const auto& k = knots_[i];
        if (!(k.value >= 0.0 && k.value <= 1.0))
            throw std::invalid_argument("piecewise-linear value outside [0,1]");
        if (i > 0 && !(k.x > knots_[i - 1].x))
            throw std::invalid_argument("piecewise-linear knots must ascend strictly");
    }
    slopes_.reserve(knots_.size() - 1);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        slopes_.push_back((knots_[i + 1].value - knots_[i].value) /
                          (knots_[i + 1].x - knots_[i].x));
}

double PiecewiseLinear::operator()(double x) const {
    // First knot with knot.x >= x; x on a knot uses the piece to its left.
    auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                               [](const Knot& k, double v) { return k.x < v; });
    std::size_t piece = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    piece = std::min(piece, slopes_.size() - 1);
    double v = knots_[piece].value + (x - knots_[piece].x) * slopes_[piece];
    return std::clamp(v, 0.0, 1.0);
}

MapSpec::MapSpec(Shift m) : kind(m) {
    if (std::llabs(m.power) > kMaxShiftPower)
        throw std::invalid_argument("shift power exceeds bound " + std::to_string(kMaxShiftPower));
}

MapSpec::MapSpec(Composition m) {
    if (m.maps.empty()) throw std::invalid_argument("composition needs at least one map");
    std::optional<SpaceKind> space;
    for (const auto& f : m.maps) {
        auto s = f.space();
        if (s && space && *s != *space) throw SpaceMismatch("composition mixes spaces");
        if (s) space = s;
    }
    kind = std::move(m);
}

std::optional<SpaceKind> MapSpec::space() const {
    return std::visit(
        [](const auto& m) -> std::optional<SpaceKind> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Identity>) return std::nullopt;
            else if constexpr (std::is_same_v<M, Shift>) return SpaceKind::symbolic;
            else if constexpr (std::is_same_v<M, PiecewiseLinear>) return SpaceKind::interval;
            else if constexpr (std::is_same_v<M, Rotation>) return SpaceKind::circle;
            else {
                for (const auto& f : m.maps)
                    if (auto s = f.space()) return s;
                return std::nullopt;
            }
        },
        kind);
}

std::string MapSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Identity>) os << "I";
            else if constexpr (std::is_same_v<M, Shift>) os << "sigma^" << m.power;
            else if constexpr (std::is_same_v<M, PiecewiseLinear>) {
                os << "pl[";
                for (std::size_t i = 0; i < m.knots().size(); ++i)
                    os << (i ? " " : "") << '(' << m.knots()[i].x << ',' << m.knots()[i].value << ')';
                os << ']';
            } else if constexpr (std::is_same_v<M, Rotation>) os << "rot(" << m.offset << ')';
            else {
                os << "compose(";
                for (std::size_t i = 0; i < m.maps.size(); ++i)
                    os << (i ? " then " : "") << m.maps[i].describe();
                os << ')';
            }
        },
        kind);
    return os.str();
}

Point apply(const MapSpec& m, const Point& x) {
    if (x.is<ProductPoint>()) {
        const auto& p = x.as<ProductPoint>();
        return ProductPoint(apply(m, *p.left), apply(m, *p.right));
    }
    if (x.is<FiniteSubset>()) return induced_apply(m, x.as<FiniteSubset>());

    return std::visit(
        [&](const auto& f) -> Point {
            using M = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<M, Identity>) {
                return x;
            } else if constexpr (std::is_same_v<M, Shift>) {
                if (!x.is<SymbolicPoint>()) throw SpaceMismatch("shift needs a symbolic point");
                return x.as<SymbolicPoint>().shifted(f.power);
            } else if constexpr (std::is_same_v<M, PiecewiseLinear>) {
                if (!x.is<IntervalPoint>())
                    throw SpaceMismatch("piecewise-linear map needs an interval point");
                return interval(f(x.as<IntervalPoint>().value()));
            } else if constexpr (std::is_same_v<M, Rotation>) {
                if (!x.is<CirclePoint>()) throw SpaceMismatch("rotation needs a circle point");
                return circle(x.as<CirclePoint>().value() + f.offset);
            } else {
                Point y = x;
                for (const auto& g : f.maps) y = apply(g, y);
                return y;
            }
        },
        m.kind);
}

double apply_interval(const MapSpec& m, double x) {
    return apply(m, interval(x)).as<IntervalPoint>().value();
}

FiniteSubset induced_apply(const MapSpec& m, const FiniteSubset& a) {
    std::vector<Point> image;
    image.reserve(a.size());
    for (const auto& e : a.elements()) image.push_back(apply(m, e));
    return FiniteSubset(std::move(image));
}

std::vector<double> breakpoints(const MapSpec& m) {
    auto sorted_unique = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    return std::visit(
        [&](const auto& f) -> std::vector<double> {
            using M = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<M, Identity>) {
                return {0.0, 1.0};
            } else if constexpr (std::is_same_v<M, PiecewiseLinear>) {
                std::vector<double> out;
                for (const auto& k : f.knots()) out.push_back(k.x);
                return out;
            } else if constexpr (std::is_same_v<M, Composition>) {
                // h = maps[0..i) is linear between consecutive entries of `bps`;
                // pull back the breakpoints of the next map through each piece.
                std::vector<double> bps = breakpoints(f.maps.front());
                std::vector<MapSpec> prefix{f.maps.front()};
                for (std::size_t i = 1; i < f.maps.size(); ++i) {
                    const MapSpec h{Composition{prefix}};
                    const auto next = breakpoints(f.maps[i]);
                    std::vector<double> merged = bps;
                    for (std::size_t p = 0; p + 1 < bps.size(); ++p) {
                        double a = bps[p], b = bps[p + 1];
                        double ha = apply_interval(h, a), hb = apply_interval(h, b);
                        if (ha == hb) continue;
                        double lo = std::min(ha, hb), hi = std::max(ha, hb);
                        for (double y : next)
                            if (y >= lo && y <= hi)
                                merged.push_back(std::clamp(a + (y - ha) * (b - a) / (hb - ha), a, b));
                    }
                    bps = sorted_unique(std::move(merged));
                    prefix.push_back(f.maps[i]);
                }
                return bps;
            } else {
                throw Unsupported("breakpoints are defined for interval maps only");
            }
        },
        m.kind);
}

// ---------------------------------------------------------------------------

MapSequence::MapSequence(Rule rule, SpaceKind space) : rule_(std::move(rule)), space_(space) {
    auto check = [&](const MapSpec& m) {
        if (auto s = m.space(); s && *s != space_)
            throw SpaceMismatch("map " + m.describe() + " does not act on " + to_string(space_));
    };
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ExplicitList>) {
                for (const auto& m : r.maps) check(m);
                check(r.tail);
            } else if constexpr (std::is_same_v<R, Cyclic>) {
                if (r.family.empty()) throw std::invalid_argument("cyclic family is empty");
                for (const auto& m : r.family) check(m);
            } else if constexpr (std::is_same_v<R, ShiftBlocks>) {
                if (space_ != SpaceKind::symbolic) throw SpaceMismatch("shift blocks are symbolic");
            } else if constexpr (std::is_same_v<R, RotationSeries>) {
                if (space_ != SpaceKind::circle) throw SpaceMismatch("rotations act on the circle");
            } else {
                if (!r.inner || r.k < 1) throw std::invalid_argument("iterate needs k >= 1");
                if (r.inner->space() != space_) throw SpaceMismatch("iterate space differs");
            }
        },
        rule_);
}

namespace {

SpaceKind infer_space(const std::vector<MapSpec>& maps, SpaceKind fallback) {
    for (const auto& m : maps)
        if (auto s = m.space()) return *s;
    return fallback;
}

} // namespace

MapSequence MapSequence::explicit_list(std::vector<MapSpec> maps, MapSpec tail) {
    std::vector<MapSpec> all = maps;
    all.push_back(tail);
    SpaceKind space = infer_space(all, SpaceKind::interval);
    return MapSequence(ExplicitList{std::move(maps), std::move(tail)}, space);
}

MapSequence MapSequence::cyclic(std::vector<MapSpec> family) {
    SpaceKind space = infer_space(family, SpaceKind::interval);
    return MapSequence(Cyclic{std::move(family)}, space);
}

MapSequence MapSequence::constant(MapSpec map) { return cyclic({std::move(map)}); }

MapSequence MapSequence::shift_blocks() { return MapSequence(ShiftBlocks{}, SpaceKind::symbolic); }

MapSequence MapSequence::rotation_series(double base, SeriesKind kind) {
    return MapSequence(RotationSeries{base, kind}, SpaceKind::circle);
}

MapSpec MapSequence::at(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("map index must be >= 1");
    return std::visit(
        [&](const auto& r) -> MapSpec {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ExplicitList>) {
                auto i = static_cast<std::size_t>(n - 1);
                return i < r.maps.size() ? r.maps[i] : r.tail;
            } else if constexpr (std::is_same_v<R, Cyclic>) {
                return r.family[static_cast<std::size_t>((n - 1) % static_cast<std::int64_t>(r.family.size()))];
            } else if constexpr (std::is_same_v<R, ShiftBlocks>) {
                std::int64_t start = 1;
                for (std::int64_t block = 1; block < 62; ++block) {
                    const std::int64_t ids = std::int64_t{1} << block;
                    const std::int64_t offset = n - start;
                    if (offset < ids + 2) {
                        if (offset < ids) return Identity{};
                        return Shift{offset == ids ? block : -block};
                    }
                    start += ids + 2;
                }
                throw std::out_of_range("map index beyond representable blocks");
            } else if constexpr (std::is_same_v<R, RotationSeries>) {
                double term = r.kind == SeriesKind::geometric ? std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(n, 2000)))
                                                              : 1.0 / static_cast<double>(n);
                return Rotation{r.base + term};
            } else {
                std::vector<MapSpec> block;
                block.reserve(static_cast<std::size_t>(r.k));
                for (std::int64_t i = r.k * (n - 1) + 1; i <= r.k * n; ++i)
                    block.push_back(r.inner->at(i));
                return Composition{std::move(block)};
            }
        },
        rule_);
}

Point prefix_compose(const MapSequence& s, std::int64_t n, const Point& x) {
    if (n < 0) throw std::invalid_argument("prefix length must be >= 0");
    Point y = x;
    for (std::int64_t i = 1; i <= n; ++i) y = apply(s.at(i), y);
    return y;
}

MapSequence kth_iterate(const MapSequence& s, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("iterate order must be >= 1");
    if (k == 1) return s;
    return MapSequence(Iterate{std::make_shared<const MapSequence>(s), k}, s.space());
}

MapSequence generated_system(std::vector<MapSpec> family) {
    if (family.empty()) throw std::invalid_argument("generating family is empty");
    return MapSequence::cyclic(std::move(family));
}

namespace {

SpaceKind common_space(const MapSpec& f, const MapSpec& g) {
    auto fs = f.space(), gs = g.space();
    if (fs && gs && *fs != *gs) throw SpaceMismatch("maps act on different spaces");
    return fs ? *fs : (gs ? *gs : SpaceKind::interval);
}

} // namespace

double sup_metric(const MapSpec& f, const MapSpec& g, int resolution) {
    if (resolution < 100) throw std::invalid_argument("sup metric resolution must be >= 100");
    const SpaceKind space = common_space(f, g);
    double worst = 0.0;
    if (space == SpaceKind::interval) {
        std::vector<double> grid;
        for (int i = 0; i <= resolution; ++i) grid.push_back(static_cast<double>(i) / resolution);
        for (double b : breakpoints(f)) grid.push_back(b);
        for (double b : breakpoints(g)) grid.push_back(b);
        for (double x : grid) {
            Point p = interval(x);
            worst = std::max(worst, distance(apply(f, p), apply(g, p)));
        }
    } else if (space == SpaceKind::circle) {
        for (int i = 0; i < resolution; ++i) {
            Point p = circle(static_cast<double>(i) / resolution);
            worst = std::max(worst, distance(apply(f, p), apply(g, p)));
        }
    } else {
        throw Unsupported("sup metric is evaluated on interval and circle maps only");
    }
    return worst;
}

PerturbationReport tail_sum(const MapSequence& s, const MapSpec& f, std::int64_t n_terms,
                            int resolution, double tolerance) {
    if (n_terms < 1) throw std::invalid_argument("tail sum needs N >= 1");
    PerturbationReport report;
    report.tolerance = tolerance;
    double sum = 0.0;
    for (std::int64_t i = 1; i <= n_terms; ++i) {
        double d = sup_metric(s.at(i), f, resolution);
        sum += d;
        report.distances.push_back(d);
        report.partial_sums.push_back(sum);
    }
    const std::int64_t half = n_terms / 2;
    const double earlier = half == 0 ? 0.0 : report.partial_sums[static_cast<std::size_t>(half - 1)];
    report.converged = report.partial_sums.back() - earlier < tolerance;
    return report;
}

bool feeble_open_probe(const MapSpec& m, const Region& region, int resolution) {
    if (auto s = m.space(); s && *s != SpaceKind::interval)
        throw Unsupported("feeble-open probe needs an interval map");
    const auto* ball = std::get_if<Ball>(&region);
    if (!ball || !ball->center.is<IntervalPoint>())
        throw Unsupported("feeble-open probe needs an interval ball");
    if (resolution < 1) throw std::invalid_argument("resolution must be positive");
    const double c = ball->center.as<IntervalPoint>().value();
    const double lo = std::max(0.0, c - ball->radius), hi = std::min(1.0, c + ball->radius);
    double ymin = std::min(apply_interval(m, lo), apply_interval(m, hi));
    double ymax = std::max(apply_interval(m, lo), apply_interval(m, hi));
    for (double b : breakpoints(m)) {
        if (b > lo && b < hi) {
            double y = apply_interval(m, b);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    return ymax - ymin >= 1.0 / resolution;
}

CommutationError::CommutationError(std::int64_t index, Point witness, double defect)
    : Error("map " + std::to_string(index) + " does not commute with the limit map at " +
            to_string(witness) + " (defect " + std::to_string(defect) + ")"),
      index_(index), witness_(std::move(witness)), defect_(defect) {}

ShadowBound shadow_bound_check(const MapSequence& s, const MapSpec& f, const Point& x,
                               std::int64_t n, std::int64_t k, int resolution) {
    if (n < 0 || k < 1) throw std::invalid_argument("shadow bound needs n >= 0 and k >= 1");
    constexpr double kCommuteTolerance = 1e-9;

    std::vector<Point> grid;
    switch (s.space()) {
    case SpaceKind::interval:
        for (int i = 0; i <= 100; ++i) grid.push_back(interval(i / 100.0));
        break;
    case SpaceKind::circle:
        for (int i = 0; i < 100; ++i) grid.push_back(circle(i / 100.0));
        break;
    default:
        grid.push_back(x);
        break;
    }
    const std::int64_t last = std::max(n + k, k + 1);
    for (std::int64_t i = 1; i <= last; ++i) {
        const MapSpec fi = s.at(i);
        for (const auto& p : grid) {
            double defect = distance(apply(fi, apply(f, p)), apply(f, apply(fi, p)));
            if (defect > kCommuteTolerance) throw CommutationError(i, p, defect);
        }
    }

    ShadowBound out;
    Point shadow = prefix_compose(s, n, x);
    Point actual = shadow;
    for (std::int64_t i = n + 1; i <= n + k; ++i) actual = apply(s.at(i), actual);
    for (std::int64_t i = 0; i < k; ++i) shadow = apply(f, shadow);
    out.lhs = distance(actual, shadow);
    for (std::int64_t i = 1; i <= k; ++i) out.rhs += sup_metric(s.at(i + 1), f, resolution);
    out.ok = out.lhs <= out.rhs + kCommuteTolerance;
    return out;
}

} // namespace nds
