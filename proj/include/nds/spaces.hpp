#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nds {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two values were combined that live in different spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// Operation is not defined for the given space or map kind.
class Unsupported : public Error {
public:
    using Error::Error;
};

inline constexpr double kDedupTolerance = 1e-12;
inline constexpr int kDefaultSymbolicRadius = 64;
inline constexpr int kDefaultCylinderMargin = 8;

enum class SpaceKind { interval, circle, symbolic, product, hyperspace };

std::string to_string(SpaceKind kind);

/// A point of [0, 1] with the metric |a - b|.
class IntervalPoint {
public:
    explicit IntervalPoint(double value);
    double value() const { return value_; }

private:
    double value_;
};

/// A point of [0, 1) taken mod 1, with the arc-length metric min(|a-b|, 1-|a-b|).
class CirclePoint {
public:
    explicit CirclePoint(double value);
    double value() const { return value_; }

private:
    double value_;
};

/// A point of the two-sided shift space over {0, 1}.
///
/// Symbols live in a packed array; `origin` is the array index of coordinate 0.
/// Coordinates outside the stored array read as 0. Shifting only moves the
/// origin, so the array is shared between a point and all its shifts. The
/// metric is evaluated on the window |j| <= radius.
class SymbolicPoint {
public:
    /// symbols[i] is coordinate i - origin.
    SymbolicPoint(std::span<const std::uint8_t> symbols, std::int64_t origin,
                  int radius = kDefaultSymbolicRadius);

    static SymbolicPoint zeros(int radius = kDefaultSymbolicRadius);
    /// Array covering [-radius, radius] (and any listed coordinate), zero except `coords`.
    static SymbolicPoint from_coordinates(const std::map<std::int64_t, int>& coords,
                                          int radius = kDefaultSymbolicRadius);

    int at(std::int64_t j) const;
    int radius() const { return radius_; }

    /// Coordinate j of the result is coordinate j + k of this point.
    SymbolicPoint shifted(std::int64_t k) const;
    SymbolicPoint with_radius(int radius) const;
    /// Copy with coordinate j flipped; j must lie in the stored array.
    SymbolicPoint flipped(std::int64_t j) const;

    /// 64 symbols starting at coordinate `first`: bit t holds coordinate first + t.
    std::uint64_t word_at(std::int64_t first) const;

    /// Lowest and highest coordinate backed by the stored array.
    std::int64_t stored_min() const { return -origin_; }
    std::int64_t stored_max() const { return size_ - 1 - origin_; }

private:
    SymbolicPoint() = default;
    std::uint64_t raw_word(std::int64_t index) const;

    std::shared_ptr<const std::vector<std::uint64_t>> words_;
    std::int64_t size_ = 0;
    std::int64_t origin_ = 0;
    int radius_ = kDefaultSymbolicRadius;
};

/// Bound on the metric mass beyond the window |j| <= radius.
double symbolic_truncation_bound(int radius);

struct Point;

/// Point of X x Y with d = d_X + d_Y.
struct ProductPoint {
    std::shared_ptr<const Point> left;
    std::shared_ptr<const Point> right;

    ProductPoint(Point left, Point right);
};

/// Nonempty finite subset of one space, deduplicated at kDedupTolerance.
/// It is itself a point of the hyperspace under the Hausdorff metric.
class FiniteSubset {
public:
    explicit FiniteSubset(std::vector<Point> elements, double tolerance = kDedupTolerance);

    const std::vector<Point>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

private:
    std::vector<Point> elements_;
};

struct Point {
    std::variant<IntervalPoint, CirclePoint, SymbolicPoint, ProductPoint, FiniteSubset> value;

    Point(IntervalPoint p) : value(std::move(p)) {}
    Point(CirclePoint p) : value(std::move(p)) {}
    Point(SymbolicPoint p) : value(std::move(p)) {}
    Point(ProductPoint p) : value(std::move(p)) {}
    Point(FiniteSubset p) : value(std::move(p)) {}

    SpaceKind kind() const;
    template <class T> bool is() const { return std::holds_alternative<T>(value); }
    template <class T> const T& as() const { return std::get<T>(value); }
};

Point interval(double value);
Point circle(double value);

double dist_interval(const IntervalPoint& a, const IntervalPoint& b);
double dist_circle(const CirclePoint& a, const CirclePoint& b);
/// Sum over |j| <= W of |x_j - y_j| / 2^|j|. Radii must agree.
double dist_symbolic(const SymbolicPoint& x, const SymbolicPoint& y);
double dist_product(const ProductPoint& p, const ProductPoint& q);
double hausdorff(const FiniteSubset& a, const FiniteSubset& b);

/// Metric of whichever space both points live in; throws SpaceMismatch otherwise.
double distance(const Point& a, const Point& b);

/// True when both points are in the same space (recursively for products and subsets).
bool same_space(const Point& a, const Point& b);

std::string to_string(const Point& p);

// ---------------------------------------------------------------------------
// Regions: finite stand-ins for the open sets the sensitivity notions quantify over.

struct Ball {
    Point center;
    double radius;
};

/// Cylinder of the shift space: fixed symbols at a few coordinates.
struct Cylinder {
    std::map<std::int64_t, int> constraints;
    int margin = kDefaultCylinderMargin;
    int radius = kDefaultSymbolicRadius;
};

struct HausdorffBall {
    FiniteSubset center;
    double radius;
};

/// Pairs (x, y) of X x X with d(x, y) > delta. Predicate only; not sampled.
struct Separated {
    double delta;
};

using Region = std::variant<Ball, Cylinder, HausdorffBall, Separated>;

bool contains(const Region& region, const Point& p);
Point region_center(const Region& region);
std::string describe(const Region& region);

/// Deterministic finite sample of a region; always contains the center.
///
/// Interval balls: `resolution` evenly spaced points over the ball clipped to
/// [0, 1]. Circle balls: same, wrapped mod 1. Symbolic balls and cylinders:
/// the center plus single-coordinate flips ordered by |j|, capped at
/// `resolution` points. Hausdorff balls: the center set with each element in
/// turn replaced by its ball samples, plus all elements moved together.
FiniteSubset sample_region(const Region& region, int resolution);

} // namespace nds
