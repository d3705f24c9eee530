#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nds/families.hpp"
#include "nds/spaces.hpp"
#include "nds/systems.hpp"

namespace nds {

class UnknownSystem : public Error {
public:
    using Error::Error;
};

/// y = slope * x + intercept on [lo, hi].
struct LinearPiece {
    double lo;
    double hi;
    double slope;
    double intercept;

    double operator()(double x) const { return slope * x + intercept; }
};

using PieceTable = std::vector<LinearPiece>;

/// Piece tables of the two interval maps and their printed composition.
struct Example41Pieces {
    PieceTable f1;
    PieceTable f2;
    PieceTable composition;
};

Example41Pieces example41_pieces();

struct ContinuityReport {
    bool continuous = true;
    std::vector<Knot> breakpoint_values;  ///< value of the left piece at every breakpoint
    std::optional<std::size_t> offending;  ///< first breakpoint where neighbours disagree
    double worst_mismatch = 0.0;
};

/// Adjacent pieces must agree at shared breakpoints within 1e-12.
ContinuityReport verify_continuity(const PieceTable& pieces);

/// Knot form of a continuous piece table; throws if the table is not continuous.
PiecewiseLinear map_from_pieces(const PieceTable& pieces);

struct ProbeDefaults {
    int horizon = 500;
    int resolution = 64;
    std::vector<double> deltas{0.5, 0.25, 0.1};
    FamilySpec family = InfiniteFamily{};
    std::vector<Region> cover;
};

struct NamedSystem {
    std::string name;
    std::string description;
    MapSequence sequence;
    std::vector<std::pair<std::string, PieceTable>> formulas;  ///< interval maps as transcribed
    std::optional<MapSpec> limit;                              ///< uniform limit, when there is one
    ProbeDefaults defaults;

    SpaceKind space() const { return sequence.space(); }
};

/// Continuity of every transcribed formula of a system (trivially true when there are none).
ContinuityReport verify_continuity(const NamedSystem& sys);

NamedSystem build(std::string_view name);
NamedSystem build(std::string_view name, const Example41Pieces& pieces);

/// (name, description) of every registered system, in registry order.
std::vector<std::pair<std::string, std::string>> registry();

/// Time t_r at which the shift-block sequence has composed to sigma^r:
/// t_r = sum_{s<r} (2^s + 2) + 2^r + 1 = 2^{r+1} + 2r - 3.
std::int64_t shift_block_time(int r);

/// `count` balls of radius 1/(2 count) centred at (2i+1)/(2 count).
std::vector<Region> interval_ball_cover(int count);
std::vector<Region> circle_ball_cover(int count);
/// One cylinder per symbol pattern on coordinates lo..hi.
std::vector<Region> cylinder_cover(int lo, int hi, int margin = kDefaultCylinderMargin,
                                   int radius = kDefaultSymbolicRadius);

} // namespace nds
