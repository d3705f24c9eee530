#include "nds/spaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace nds {

std::string to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::interval: return "interval";
    case SpaceKind::circle: return "circle";
    case SpaceKind::symbolic: return "symbolic";
    case SpaceKind::product: return "product";
    case SpaceKind::hyperspace: return "hyperspace";
    }
    return "unknown";
}

IntervalPoint::IntervalPoint(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument("interval point outside [0,1]: " + std::to_string(value));
}

CirclePoint::CirclePoint(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("circle point must be finite");
    double r = value - std::floor(value);
    value_ = r >= 1.0 ? 0.0 : r;
}

// ---------------------------------------------------------------------------
// SymbolicPoint

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::uint64_t reverse_bits(std::uint64_t w) {
    w = ((w >> 1) & 0x5555555555555555ULL) | ((w & 0x5555555555555555ULL) << 1);
    w = ((w >> 2) & 0x3333333333333333ULL) | ((w & 0x3333333333333333ULL) << 2);
    w = ((w >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((w & 0x0F0F0F0F0F0F0F0FULL) << 4);
    w = ((w >> 8) & 0x00FF00FF00FF00FFULL) | ((w & 0x00FF00FF00FF00FFULL) << 8);
    w = ((w >> 16) & 0x0000FFFF0000FFFFULL) | ((w & 0x0000FFFF0000FFFFULL) << 16);
    return (w >> 32) | (w << 32);
}

// w / 2^64 with a single rounding.
double word_fraction(std::uint64_t w) {
    return std::ldexp(static_cast<double>(w >> 32), -32) +
           std::ldexp(static_cast<double>(w & 0xFFFFFFFFULL), -64);
}

} // namespace

SymbolicPoint::SymbolicPoint(std::span<const std::uint8_t> symbols, std::int64_t origin,
                             int radius)
    : size_(static_cast<std::int64_t>(symbols.size())), origin_(origin), radius_(radius) {
    if (radius < 1) throw std::invalid_argument("symbolic radius must be >= 1");
    if (symbols.empty() || origin < 0 || origin >= size_)
        throw std::invalid_argument("symbolic origin must address a stored symbol");
    std::vector<std::uint64_t> words((symbols.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] > 1) throw std::invalid_argument("symbols must be 0 or 1");
        if (symbols[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    words_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(words));
}

SymbolicPoint SymbolicPoint::zeros(int radius) { return from_coordinates({}, radius); }

SymbolicPoint SymbolicPoint::from_coordinates(const std::map<std::int64_t, int>& coords,
                                              int radius) {
    if (radius < 1) throw std::invalid_argument("symbolic radius must be >= 1");
    std::int64_t lo = -radius, hi = radius;
    if (!coords.empty()) {
        lo = std::min(lo, coords.begin()->first);
        hi = std::max(hi, coords.rbegin()->first);
    }
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(hi - lo + 1), 0);
    for (auto [j, s] : coords) {
        if (s != 0 && s != 1) throw std::invalid_argument("symbols must be 0 or 1");
        symbols[static_cast<std::size_t>(j - lo)] = static_cast<std::uint8_t>(s);
    }
    return SymbolicPoint(symbols, -lo, radius);
}

std::uint64_t SymbolicPoint::raw_word(std::int64_t index) const {
    if (index < 0 || index >= static_cast<std::int64_t>(words_->size())) return 0;
    return (*words_)[static_cast<std::size_t>(index)];
}

int SymbolicPoint::at(std::int64_t j) const {
    std::int64_t p = origin_ + j;
    if (p < 0 || p >= size_) return 0;
    return static_cast<int>(((*words_)[static_cast<std::size_t>(p / 64)] >> (p % 64)) & 1U);
}

std::uint64_t SymbolicPoint::word_at(std::int64_t first) const {
    std::int64_t p = origin_ + first;
    if (p >= size_ || p + 64 <= 0) return 0;
    std::int64_t wi = floor_div(p, 64);
    int off = static_cast<int>(p - wi * 64);
    std::uint64_t lo = raw_word(wi) >> off;
    std::uint64_t hi = off == 0 ? 0 : raw_word(wi + 1) << (64 - off);
    return lo | hi;
}

SymbolicPoint SymbolicPoint::shifted(std::int64_t k) const {
    SymbolicPoint out = *this;
    out.origin_ = origin_ + k;
    return out;
}

SymbolicPoint SymbolicPoint::with_radius(int radius) const {
    if (radius < 1) throw std::invalid_argument("symbolic radius must be >= 1");
    SymbolicPoint out = *this;
    out.radius_ = radius;
    return out;
}

SymbolicPoint SymbolicPoint::flipped(std::int64_t j) const {
    std::int64_t p = origin_ + j;
    if (p < 0 || p >= size_) throw std::out_of_range("flip outside stored symbols");
    auto words = std::make_shared<std::vector<std::uint64_t>>(*words_);
    (*words)[static_cast<std::size_t>(p / 64)] ^= std::uint64_t{1} << (p % 64);
    SymbolicPoint out = *this;
    out.words_ = std::move(words);
    return out;
}

double symbolic_truncation_bound(int radius) { return std::ldexp(1.0, 1 - radius); }

// ---------------------------------------------------------------------------

ProductPoint::ProductPoint(Point l, Point r)
    : left(std::make_shared<const Point>(std::move(l))),
      right(std::make_shared<const Point>(std::move(r))) {}

FiniteSubset::FiniteSubset(std::vector<Point> elements, double tolerance) {
    if (elements.empty()) throw std::invalid_argument("finite subset must be nonempty");
    elements_.reserve(elements.size());
    for (auto& e : elements) {
        if (!elements_.empty() && !same_space(e, elements_.front()))
            throw SpaceMismatch("finite subset mixes spaces");
        bool dup = std::any_of(elements_.begin(), elements_.end(), [&](const Point& kept) {
            return distance(kept, e) <= tolerance;
        });
        if (!dup) elements_.push_back(std::move(e));
    }
}

SpaceKind Point::kind() const {
    return static_cast<SpaceKind>(value.index());
}

Point interval(double value) { return Point(IntervalPoint(value)); }
Point circle(double value) { return Point(CirclePoint(value)); }

double dist_interval(const IntervalPoint& a, const IntervalPoint& b) {
    return std::fabs(a.value() - b.value());
}

double dist_circle(const CirclePoint& a, const CirclePoint& b) {
    double d = std::fabs(a.value() - b.value());
    return std::min(d, 1.0 - d);
}

double dist_symbolic(const SymbolicPoint& x, const SymbolicPoint& y) {
    if (x.radius() != y.radius())
        throw SpaceMismatch("symbolic windows differ: " + std::to_string(x.radius()) + " vs " +
                            std::to_string(y.radius()));
    const std::int64_t w = x.radius();
    const std::int64_t chunks = (w + 63) / 64;
    double total = 0.0;
    // Far chunks first so the small terms are not swamped.
    for (std::int64_t c = chunks - 1; c >= 0; --c) {
        const std::int64_t count = std::min<std::int64_t>(64, w - 64 * c);
        std::uint64_t pos = x.word_at(64 * c + 1) ^ y.word_at(64 * c + 1);
        std::uint64_t neg = x.word_at(-(64 * c + 64)) ^ y.word_at(-(64 * c + 64));
        if (count < 64) {
            pos &= (std::uint64_t{1} << count) - 1;
            neg &= ~((std::uint64_t{1} << (64 - count)) - 1);
        }
        // pos: bit t is coordinate 64c+t+1, weight 2^-(64c+t+1) -> reversed word / 2^64.
        // neg: bit t is coordinate -(64c+64-t), weight 2^(t-64-64c) -> word / 2^64.
        double chunk = word_fraction(reverse_bits(pos)) + word_fraction(neg);
        total += std::ldexp(chunk, static_cast<int>(-64 * c));
    }
    return total + (x.at(0) != y.at(0) ? 1.0 : 0.0);
}

double dist_product(const ProductPoint& p, const ProductPoint& q) {
    return distance(*p.left, *q.left) + distance(*p.right, *q.right);
}

double hausdorff(const FiniteSubset& a, const FiniteSubset& b) {
    auto directed = [](const FiniteSubset& from, const FiniteSubset& to) {
        double worst = 0.0;
        for (const auto& p : from.elements()) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to.elements()) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (!same_space(a.elements().front(), b.elements().front()))
        throw SpaceMismatch("hausdorff distance across spaces");
    return std::max(directed(a, b), directed(b, a));
}

double distance(const Point& a, const Point& b) {
    return std::visit(
        [](const auto& x, const auto& y) -> double {
            using X = std::decay_t<decltype(x)>;
            using Y = std::decay_t<decltype(y)>;
            if constexpr (!std::is_same_v<X, Y>) {
                throw SpaceMismatch("distance between points of different spaces");
            } else if constexpr (std::is_same_v<X, IntervalPoint>) {
                return dist_interval(x, y);
            } else if constexpr (std::is_same_v<X, CirclePoint>) {
                return dist_circle(x, y);
            } else if constexpr (std::is_same_v<X, SymbolicPoint>) {
                return dist_symbolic(x, y);
            } else if constexpr (std::is_same_v<X, ProductPoint>) {
                return dist_product(x, y);
            } else {
                return hausdorff(x, y);
            }
        },
        a.value, b.value);
}

bool same_space(const Point& a, const Point& b) {
    if (a.kind() != b.kind()) return false;
    if (a.is<SymbolicPoint>()) return a.as<SymbolicPoint>().radius() == b.as<SymbolicPoint>().radius();
    if (a.is<ProductPoint>()) {
        const auto& p = a.as<ProductPoint>();
        const auto& q = b.as<ProductPoint>();
        return same_space(*p.left, *q.left) && same_space(*p.right, *q.right);
    }
    if (a.is<FiniteSubset>())
        return same_space(a.as<FiniteSubset>().elements().front(),
                          b.as<FiniteSubset>().elements().front());
    return true;
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& x) {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, IntervalPoint> || std::is_same_v<X, CirclePoint>) {
                os << x.value();
            } else if constexpr (std::is_same_v<X, SymbolicPoint>) {
                const int shown = std::min(x.radius(), 8);
                for (int j = -shown; j <= shown; ++j) {
                    if (j == 0) os << '[';
                    os << x.at(j);
                    if (j == 0) os << ']';
                }
            } else if constexpr (std::is_same_v<X, ProductPoint>) {
                os << '(' << to_string(*x.left) << ", " << to_string(*x.right) << ')';
            } else {
                os << '{';
                for (std::size_t i = 0; i < x.size(); ++i)
                    os << (i ? ", " : "") << to_string(x.elements()[i]);
                os << '}';
            }
        },
        p.value);
    return os.str();
}

// ---------------------------------------------------------------------------
// Regions

bool contains(const Region& region, const Point& p) {
    return std::visit(
        [&](const auto& r) -> bool {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Ball>) {
                return distance(r.center, p) < r.radius;
            } else if constexpr (std::is_same_v<R, Cylinder>) {
                if (!p.is<SymbolicPoint>()) throw SpaceMismatch("cylinder needs a symbolic point");
                const auto& x = p.as<SymbolicPoint>();
                return std::all_of(r.constraints.begin(), r.constraints.end(),
                                   [&](const auto& c) { return x.at(c.first) == c.second; });
            } else if constexpr (std::is_same_v<R, HausdorffBall>) {
                if (!p.is<FiniteSubset>()) throw SpaceMismatch("hausdorff ball needs a subset");
                return hausdorff(r.center, p.as<FiniteSubset>()) < r.radius;
            } else {
                if (!p.is<ProductPoint>()) throw SpaceMismatch("separated region needs a pair");
                const auto& q = p.as<ProductPoint>();
                return distance(*q.left, *q.right) > r.delta;
            }
        },
        region);
}

Point region_center(const Region& region) {
    return std::visit(
        [](const auto& r) -> Point {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Ball>) {
                return r.center;
            } else if constexpr (std::is_same_v<R, Cylinder>) {
                return SymbolicPoint::from_coordinates(r.constraints, r.radius);
            } else if constexpr (std::is_same_v<R, HausdorffBall>) {
                return r.center;
            } else {
                throw Unsupported("separated region has no center");
            }
        },
        region);
}

std::string describe(const Region& region) {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Ball>) {
                os << "ball(" << to_string(r.center) << ", " << r.radius << ")";
            } else if constexpr (std::is_same_v<R, Cylinder>) {
                os << "cylinder(";
                bool first = true;
                for (auto [j, s] : r.constraints) {
                    os << (first ? "" : ",") << "x" << j << "=" << s;
                    first = false;
                }
                os << "; margin " << r.margin << ")";
            } else if constexpr (std::is_same_v<R, HausdorffBall>) {
                os << "hausdorff_ball(" << to_string(Point(r.center)) << ", " << r.radius << ")";
            } else {
                os << "separated(" << r.delta << ")";
            }
        },
        region);
    return os.str();
}

namespace {

void check_radius(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("region radius must be > 0");
}

// Evenly spaced offsets in [lo, hi] with the center swapped in exactly.
std::vector<double> even_grid(double lo, double hi, double center, int resolution) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(resolution) + 1);
    bool have_center = false;
    for (int i = 0; i < resolution; ++i) {
        double v = lo + (hi - lo) * i / (resolution - 1);
        if (std::fabs(v - center) <= kDedupTolerance) {
            v = center;
            have_center = true;
        }
        values.push_back(v);
    }
    if (!have_center) values.push_back(center);
    return values;
}

// Coordinates ordered 1, -1, 2, -2, ... up to `reach`, skipping `skip`.
std::vector<std::int64_t> flip_order(std::int64_t reach,
                                     const std::map<std::int64_t, int>& skip,
                                     bool include_zero) {
    std::vector<std::int64_t> out;
    if (include_zero && !skip.count(0)) out.push_back(0);
    for (std::int64_t m = 1; m <= reach; ++m)
        for (std::int64_t j : {m, -m})
            if (!skip.count(j)) out.push_back(j);
    return out;
}

std::vector<Point> sample_ball(const Ball& ball, int resolution) {
    check_radius(ball.radius);
    std::vector<Point> out;
    if (ball.center.is<IntervalPoint>()) {
        double c = ball.center.as<IntervalPoint>().value();
        double lo = std::max(0.0, c - ball.radius);
        double hi = std::min(1.0, c + ball.radius);
        if (lo > hi) throw std::invalid_argument("ball is empty after clipping");
        auto values = even_grid(lo, hi, c, resolution);
        std::sort(values.begin(), values.end());
        for (double v : values) out.push_back(interval(v));
    } else if (ball.center.is<CirclePoint>()) {
        double c = ball.center.as<CirclePoint>().value();
        double r = std::min(ball.radius, 0.5);
        auto values = even_grid(c - r, c + r, c, resolution);
        for (double& v : values) v = CirclePoint(v).value();
        std::sort(values.begin(), values.end());
        for (double v : values) out.push_back(circle(v));
    } else if (ball.center.is<SymbolicPoint>()) {
        const auto& x = ball.center.as<SymbolicPoint>();
        out.push_back(x);
        for (std::int64_t j : flip_order(x.radius(), {}, true)) {
            if (static_cast<int>(out.size()) >= resolution) break;
            if (std::ldexp(1.0, -static_cast<int>(std::llabs(j))) < ball.radius)
                out.push_back(x.flipped(j));
        }
    } else {
        throw Unsupported("ball sampling is defined for interval, circle and symbolic centers");
    }
    return out;
}

std::vector<Point> sample_cylinder(const Cylinder& cyl, int resolution) {
    SymbolicPoint center = SymbolicPoint::from_coordinates(cyl.constraints, cyl.radius);
    std::int64_t reach = 0;
    for (const auto& c : cyl.constraints) reach = std::max<std::int64_t>(reach, std::llabs(c.first));
    reach = std::min<std::int64_t>(reach + cyl.margin, cyl.radius);
    std::vector<Point> out{center};
    for (std::int64_t j : flip_order(reach, cyl.constraints, true)) {
        if (static_cast<int>(out.size()) >= resolution) break;
        out.push_back(center.flipped(j));
    }
    return out;
}

std::vector<Point> sample_hausdorff_ball(const HausdorffBall& hb, int resolution) {
    check_radius(hb.radius);
    const auto& elems = hb.center.elements();
    std::vector<std::vector<Point>> grids;
    for (const auto& e : elems) grids.push_back(sample_ball(Ball{e, hb.radius}, resolution));

    std::vector<Point> out{Point(hb.center)};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : grids[i]) {
            std::vector<Point> members = elems;
            members[i] = g;
            out.push_back(FiniteSubset(std::move(members)));
        }
    }
    std::size_t common = grids.front().size();
    for (const auto& g : grids) common = std::min(common, g.size());
    for (std::size_t t = 0; t < common; ++t) {
        std::vector<Point> members;
        for (const auto& g : grids) members.push_back(g[t]);
        out.push_back(FiniteSubset(std::move(members)));
    }
    return out;
}

} // namespace

FiniteSubset sample_region(const Region& region, int resolution) {
    if (resolution < 2) throw std::invalid_argument("sample resolution must be >= 2");
    std::vector<Point> points = std::visit(
        [&](const auto& r) -> std::vector<Point> {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Ball>) {
                return sample_ball(r, resolution);
            } else if constexpr (std::is_same_v<R, Cylinder>) {
                return sample_cylinder(r, resolution);
            } else if constexpr (std::is_same_v<R, HausdorffBall>) {
                return sample_hausdorff_ball(r, resolution);
            } else {
                throw Unsupported("separated regions are predicates only");
            }
        },
        region);
    if (points.empty()) throw std::invalid_argument("region sample is empty");
    return FiniteSubset(std::move(points));
}

} // namespace nds
