#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nds/families.hpp"
#include "nds/paperbench.hpp"
#include "nds/sensitivity.hpp"
#include "nds/spaces.hpp"
#include "nds/systems.hpp"

namespace nds {

using Json = nlohmann::ordered_json;

/// Malformed or out-of-range JSON input.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr int kReportSchema = 1;

SpaceKind parse_space(const std::string& name);

Json to_json(const Point& p);
/// A bare number is read as a point of `hint` (interval or circle).
Point point_from_json(const Json& j, std::optional<SpaceKind> hint = std::nullopt);

Json to_json(const MapSpec& m);
MapSpec map_from_json(const Json& j);

Json to_json(const MapSequence& s);
MapSequence sequence_from_json(const Json& j);

Json to_json(const FamilySpec& f);
/// Objects such as {"kind": "infinite", "min_count": 10}, or a bare kind name with default parameters.
FamilySpec family_from_json(const Json& j);

Json to_json(const Region& r);
Region region_from_json(const Json& j, std::optional<SpaceKind> hint = std::nullopt);

Json to_json(const WindowedIndexSet& s);
Json to_json(const PairWitness& w);
Json to_json(const RegionRecord& r);
Json to_json(const SensitivityReport& r);

/// Piece tables {"f1": [[lo, hi, slope, intercept], ...], "f2": ..., "composition": ...}.
Json to_json(const Example41Pieces& p);
Example41Pieces pieces_from_json(const Json& j);

} // namespace nds
