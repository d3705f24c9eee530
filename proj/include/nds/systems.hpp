#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nds/spaces.hpp"

namespace nds {

inline constexpr std::int64_t kMaxShiftPower = 4096;

struct MapSpec;

struct Identity {};

/// Power of the shift on the symbolic space: (sigma^k x)_j = x_{j+k}.
struct Shift {
    std::int64_t power = 1;
};

struct Knot {
    double x;
    double value;
};

/// Continuous piecewise-linear self map of [0, 1] given by its knots.
class PiecewiseLinear {
public:
    /// Knots must ascend strictly in x, start at 0, end at 1, and take values in [0, 1].
    explicit PiecewiseLinear(std::vector<Knot> knots);

    const std::vector<Knot>& knots() const { return knots_; }
    /// Breakpoint ties resolve to the left piece.
    double operator()(double x) const;

private:
    std::vector<Knot> knots_;
    std::vector<double> slopes_;
};

/// x -> x + offset mod 1 on the circle.
struct Rotation {
    double offset = 0.0;
};

/// Apply maps[0] first, then maps[1], and so on.
struct Composition {
    std::vector<MapSpec> maps;
};

struct MapSpec {
    std::variant<Identity, Shift, PiecewiseLinear, Rotation, Composition> kind;

    MapSpec() : kind(Identity{}) {}
    MapSpec(Identity m) : kind(m) {}
    MapSpec(Shift m);
    MapSpec(PiecewiseLinear m) : kind(std::move(m)) {}
    MapSpec(Rotation m) : kind(m) {}
    MapSpec(Composition m);

    /// Base space the map acts on; nullopt for maps acting on every space (identity).
    std::optional<SpaceKind> space() const;
    std::string describe() const;
};

/// Evaluate a map. Product points are mapped componentwise and finite subsets
/// elementwise, so every map lifts to X x X and to the hyperspace.
Point apply(const MapSpec& m, const Point& x);
double apply_interval(const MapSpec& m, double x);

FiniteSubset induced_apply(const MapSpec& m, const FiniteSubset& a);

/// Sorted breakpoints of an interval map on [0, 1], including both endpoints.
std::vector<double> breakpoints(const MapSpec& m);

// ---------------------------------------------------------------------------

enum class SeriesKind { geometric, harmonic };

/// f_n = rotation(base + 2^-n) or rotation(base + 1/n).
struct RotationSeries {
    double base = 0.0;
    SeriesKind kind = SeriesKind::geometric;
};

/// Map n is maps[n-1] while the list lasts, then `tail` forever.
struct ExplicitList {
    std::vector<MapSpec> maps;
    MapSpec tail;
};

struct Cyclic {
    std::vector<MapSpec> family;
};

/// Block r >= 1 is 2^r identities, then sigma^r, then sigma^-r.
struct ShiftBlocks {};

class MapSequence;

/// Map n is the composition of maps k(n-1)+1 .. kn of `inner`.
struct Iterate {
    std::shared_ptr<const MapSequence> inner;
    std::int64_t k;
};

/// A non-autonomous sequence f_1, f_2, ... of self maps of one space.
class MapSequence {
public:
    using Rule = std::variant<ExplicitList, Cyclic, ShiftBlocks, RotationSeries, Iterate>;

    MapSequence(Rule rule, SpaceKind space);

    static MapSequence explicit_list(std::vector<MapSpec> maps, MapSpec tail);
    static MapSequence cyclic(std::vector<MapSpec> family);
    static MapSequence constant(MapSpec map);
    static MapSequence shift_blocks();
    static MapSequence rotation_series(double base, SeriesKind kind);

    /// f_n for n >= 1.
    MapSpec at(std::int64_t n) const;
    SpaceKind space() const { return space_; }
    const Rule& rule() const { return rule_; }

private:
    Rule rule_;
    SpaceKind space_;
};

/// f_n o ... o f_1 (x); n = 0 returns x.
Point prefix_compose(const MapSequence& s, std::int64_t n, const Point& x);

MapSequence kth_iterate(const MapSequence& s, std::int64_t k);

/// The cyclic system f_1, ..., f_k, f_1, ... generated by a finite family.
MapSequence generated_system(std::vector<MapSpec> family);

/// Largest d(f(x), g(x)) over an even grid of `resolution` + 1 points joined
/// with the breakpoints of both maps. Exact for piecewise-linear maps.
double sup_metric(const MapSpec& f, const MapSpec& g, int resolution);

struct PerturbationReport {
    std::vector<double> distances;     ///< D(f_i, f), i = 1..N
    std::vector<double> partial_sums;  ///< S_1 .. S_N
    double tolerance = 0.0;
    bool converged = false;            ///< S_N - S_{N/2} < tolerance
};

PerturbationReport tail_sum(const MapSequence& s, const MapSpec& f, std::int64_t n_terms,
                            int resolution, double tolerance = 1e-6);

/// True iff the image of the ball under an interval map contains an interval
/// of length >= 1/resolution. Images are computed from breakpoints, not sampled.
bool feeble_open_probe(const MapSpec& m, const Region& region, int resolution);

struct ShadowBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

/// Raised when a map of the sequence does not commute with the limit map.
class CommutationError : public Error {
public:
    CommutationError(std::int64_t index, Point witness, double defect);

    std::int64_t index() const { return index_; }
    const Point& witness() const { return witness_; }
    double defect() const { return defect_; }

private:
    std::int64_t index_;
    Point witness_;
    double defect_;
};

/// lhs = d(f_1^{n+k}(x), f^k(f_1^n(x))), rhs = sum_{i=1}^{k} D(f_{i+1}, f).
/// The sum on the right starts at f_2.
ShadowBound shadow_bound_check(const MapSequence& s, const MapSpec& f, const Point& x,
                               std::int64_t n, std::int64_t k, int resolution = 1000);

} // namespace nds
