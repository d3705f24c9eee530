#include "nds/serialize.hpp"

#include <type_traits>

namespace nds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ConfigError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t integer(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string text(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw ConfigError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

template <class T>
T value_or(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

// Wraps library validation errors so callers see a single error type for bad input.
template <class Fn>
auto checked(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

SpaceKind parse_space(const std::string& name) {
    for (auto k : {SpaceKind::interval, SpaceKind::circle, SpaceKind::symbolic, SpaceKind::product,
                   SpaceKind::hyperspace})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown space: " + name);
}

// ---------------------------------------------------------------------------
// Points

Json to_json(const Point& p) {
    return std::visit(
        overloaded{
            [](const IntervalPoint& q) { return Json{{"space", "interval"}, {"value", q.value()}}; },
            [](const CirclePoint& q) { return Json{{"space", "circle"}, {"value", q.value()}}; },
            [](const SymbolicPoint& q) {
                Json coords = Json::array();
                for (std::int64_t c = q.stored_min(); c <= q.stored_max(); ++c)
                    if (q.at(c)) coords.push_back(c);
                return Json{{"space", "symbolic"}, {"radius", q.radius()}, {"ones", coords}};
            },
            [](const ProductPoint& q) {
                return Json{{"space", "product"}, {"left", to_json(*q.left)}, {"right", to_json(*q.right)}};
            },
            [](const FiniteSubset& q) {
                Json elems = Json::array();
                for (const auto& e : q.elements()) elems.push_back(to_json(e));
                return Json{{"space", "hyperspace"}, {"elements", elems}};
            },
        },
        p.value);
}

Point point_from_json(const Json& j, std::optional<SpaceKind> hint) {
    return checked([&]() -> Point {
        if (j.is_number()) {
            double v = j.get<double>();
            if (hint == SpaceKind::circle) return circle(v);
            if (!hint || hint == SpaceKind::interval) return interval(v);
            throw ConfigError("a bare number is not a point of the " + to_string(*hint) + " space");
        }
        if (j.is_array()) {
            std::vector<Point> elems;
            for (const auto& e : j) elems.push_back(point_from_json(e, hint));
            if (elems.empty()) throw ConfigError("finite subsets must be nonempty");
            return FiniteSubset(std::move(elems));
        }
        SpaceKind kind = parse_space(text(j, "space"));
        switch (kind) {
        case SpaceKind::interval: return interval(number(j, "value"));
        case SpaceKind::circle: return circle(number(j, "value"));
        case SpaceKind::symbolic: {
            std::map<std::int64_t, int> coords;
            if (auto it = j.find("ones"); it != j.end()) {
                if (!it->is_array()) throw ConfigError("'ones' must be a list of coordinates");
                for (const auto& c : *it) {
                    if (!c.is_number_integer()) throw ConfigError("symbolic coordinates must be integers");
                    coords[c.get<std::int64_t>()] = 1;
                }
            }
            return SymbolicPoint::from_coordinates(coords, value_or<int>(j, "radius", kDefaultSymbolicRadius));
        }
        case SpaceKind::product:
            return ProductPoint(point_from_json(field(j, "left")), point_from_json(field(j, "right")));
        case SpaceKind::hyperspace: {
            const Json& elems = field(j, "elements");
            if (!elems.is_array() || elems.empty()) throw ConfigError("'elements' must be a nonempty list");
            std::vector<Point> pts;
            for (const auto& e : elems) pts.push_back(point_from_json(e, hint));
            return FiniteSubset(std::move(pts));
        }
        }
        throw ConfigError("unreachable space kind");
    });
}

// ---------------------------------------------------------------------------
// Maps and sequences

Json to_json(const MapSpec& m) {
    return std::visit(
        overloaded{
            [](const Identity&) { return Json{{"kind", "identity"}}; },
            [](const Shift& s) { return Json{{"kind", "shift"}, {"power", s.power}}; },
            [](const PiecewiseLinear& p) {
                Json knots = Json::array();
                for (const auto& k : p.knots()) knots.push_back(Json::array({k.x, k.value}));
                return Json{{"kind", "piecewise_linear"}, {"knots", knots}};
            },
            [](const Rotation& r) { return Json{{"kind", "rotation"}, {"offset", r.offset}}; },
            [](const Composition& c) {
                Json maps = Json::array();
                for (const auto& sub : c.maps) maps.push_back(to_json(sub));
                return Json{{"kind", "composition"}, {"maps", maps}};
            },
        },
        m.kind);
}

MapSpec map_from_json(const Json& j) {
    return checked([&]() -> MapSpec {
        const std::string kind = text(j, "kind");
        if (kind == "identity") return Identity{};
        if (kind == "shift") return Shift{integer(j, "power")};
        if (kind == "rotation") return Rotation{number(j, "offset")};
        if (kind == "piecewise_linear") {
            const Json& knots = field(j, "knots");
            if (!knots.is_array()) throw ConfigError("'knots' must be a list of [x, value] pairs");
            std::vector<Knot> out;
            for (const auto& k : knots) {
                if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
                    throw ConfigError("each knot must be [x, value]");
                out.push_back({k[0].get<double>(), k[1].get<double>()});
            }
            return PiecewiseLinear(std::move(out));
        }
        if (kind == "composition") {
            const Json& maps = field(j, "maps");
            if (!maps.is_array()) throw ConfigError("'maps' must be a list");
            Composition c;
            for (const auto& sub : maps) c.maps.push_back(map_from_json(sub));
            return c;
        }
        throw ConfigError("unknown map kind: " + kind);
    });
}

namespace {

std::string series_name(SeriesKind k) { return k == SeriesKind::geometric ? "geometric" : "harmonic"; }

Json maps_json(const std::vector<MapSpec>& maps) {
    Json out = Json::array();
    for (const auto& m : maps) out.push_back(to_json(m));
    return out;
}

std::vector<MapSpec> maps_from(const Json& j, const char* key) {
    const Json& list = field(j, key);
    if (!list.is_array() || list.empty()) throw ConfigError(std::string("'") + key + "' must be a nonempty list");
    std::vector<MapSpec> out;
    for (const auto& m : list) out.push_back(map_from_json(m));
    return out;
}

} // namespace

Json to_json(const MapSequence& s) {
    Json out = std::visit(
        overloaded{
            [](const ExplicitList& r) {
                return Json{{"rule", "explicit"}, {"maps", maps_json(r.maps)}, {"tail", to_json(r.tail)}};
            },
            [](const Cyclic& r) { return Json{{"rule", "cyclic"}, {"family", maps_json(r.family)}}; },
            [](const ShiftBlocks&) { return Json{{"rule", "shift_blocks"}}; },
            [](const RotationSeries& r) {
                return Json{{"rule", "rotation_series"}, {"base", r.base}, {"series", series_name(r.kind)}};
            },
            [](const Iterate& r) { return Json{{"rule", "iterate"}, {"k", r.k}, {"inner", to_json(*r.inner)}}; },
        },
        s.rule());
    out["space"] = to_string(s.space());
    return out;
}

MapSequence sequence_from_json(const Json& j) {
    return checked([&]() -> MapSequence {
        const std::string rule = text(j, "rule");
        std::optional<SpaceKind> space;
        if (j.contains("space")) space = parse_space(text(j, "space"));
        auto finish = [&](MapSequence s) {
            if (space && *space != s.space()) return MapSequence(s.rule(), *space);
            return s;
        };
        if (rule == "explicit") {
            MapSpec tail = j.contains("tail") ? map_from_json(j["tail"]) : MapSpec(Identity{});
            return finish(MapSequence::explicit_list(maps_from(j, "maps"), std::move(tail)));
        }
        if (rule == "cyclic") return finish(MapSequence::cyclic(maps_from(j, "family")));
        if (rule == "constant") return finish(MapSequence::constant(map_from_json(field(j, "map"))));
        if (rule == "shift_blocks") return MapSequence::shift_blocks();
        if (rule == "rotation_series") {
            const std::string series = value_or<std::string>(j, "series", "geometric");
            SeriesKind kind;
            if (series == "geometric") kind = SeriesKind::geometric;
            else if (series == "harmonic") kind = SeriesKind::harmonic;
            else throw ConfigError("unknown rotation series: " + series);
            return MapSequence::rotation_series(value_or<double>(j, "base", 0.0), kind);
        }
        if (rule == "iterate") return kth_iterate(sequence_from_json(field(j, "inner")), integer(j, "k"));
        throw ConfigError("unknown sequence rule: " + rule);
    });
}

// ---------------------------------------------------------------------------
// Families

Json to_json(const FamilySpec& f) {
    return std::visit(
        overloaded{
            [](const NonemptyFamily&) { return Json{{"kind", "nonempty"}}; },
            [](const InfiniteFamily& x) {
                return Json{{"kind", "infinite"}, {"min_count", x.min_count}, {"tail_fraction", x.tail_fraction}};
            },
            [](const CofiniteFamily& x) { return Json{{"kind", "cofinite"}, {"max_missing", x.max_missing}}; },
            [](const SyndeticFamily& x) { return Json{{"kind", "syndetic"}, {"max_gap", x.max_gap}}; },
            [](const DualFamily& x) { return Json{{"kind", "dual"}, {"of", to_json(*x.of)}}; },
        },
        f.kind);
}

FamilySpec family_from_json(const Json& j) {
    return checked([&]() -> FamilySpec {
        const std::string kind = j.is_string() ? j.get<std::string>() : text(j, "kind");
        const Json empty = Json::object();
        const Json& body = j.is_string() ? empty : j;
        if (kind == "nonempty") return NonemptyFamily{};
        if (kind == "infinite") {
            InfiniteFamily d;
            return InfiniteFamily{value_or<int>(body, "min_count", d.min_count),
                                  value_or<double>(body, "tail_fraction", d.tail_fraction)};
        }
        if (kind == "cofinite") return CofiniteFamily{value_or<int>(body, "max_missing", CofiniteFamily{}.max_missing)};
        if (kind == "syndetic") return SyndeticFamily{value_or<int>(body, "max_gap", SyndeticFamily{}.max_gap)};
        if (kind == "dual") return dual(family_from_json(field(body, "of")));
        throw ConfigError("unknown family: " + kind);
    });
}

// ---------------------------------------------------------------------------
// Regions

Json to_json(const Region& r) {
    return std::visit(
        overloaded{
            [](const Ball& b) { return Json{{"kind", "ball"}, {"center", to_json(b.center)}, {"radius", b.radius}}; },
            [](const Cylinder& c) {
                Json fixed = Json::array();
                for (const auto& [j, v] : c.constraints) fixed.push_back(Json::array({j, v}));
                return Json{{"kind", "cylinder"}, {"fixed", fixed}, {"margin", c.margin}, {"radius", c.radius}};
            },
            [](const HausdorffBall& h) {
                return Json{{"kind", "hausdorff_ball"}, {"center", to_json(Point(h.center))}, {"radius", h.radius}};
            },
            [](const Separated& s) { return Json{{"kind", "separated"}, {"delta", s.delta}}; },
        },
        r);
}

Region region_from_json(const Json& j, std::optional<SpaceKind> hint) {
    return checked([&]() -> Region {
        const std::string kind = text(j, "kind");
        if (kind == "ball") return Ball{point_from_json(field(j, "center"), hint), number(j, "radius")};
        if (kind == "cylinder") {
            Cylinder c;
            const Json& fixed = field(j, "fixed");
            if (!fixed.is_array()) throw ConfigError("'fixed' must be a list of [coordinate, symbol] pairs");
            for (const auto& e : fixed) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                    throw ConfigError("each cylinder constraint must be [coordinate, symbol]");
                int sym = e[1].get<int>();
                if (sym != 0 && sym != 1) throw ConfigError("cylinder symbols must be 0 or 1");
                c.constraints[e[0].get<std::int64_t>()] = sym;
            }
            c.margin = value_or<int>(j, "margin", kDefaultCylinderMargin);
            c.radius = value_or<int>(j, "radius", kDefaultSymbolicRadius);
            return c;
        }
        if (kind == "hausdorff_ball") {
            Point center = point_from_json(field(j, "center"), hint);
            if (!center.is<FiniteSubset>()) center = FiniteSubset({center});
            return HausdorffBall{center.as<FiniteSubset>(), number(j, "radius")};
        }
        if (kind == "separated") return Separated{number(j, "delta")};
        throw ConfigError("unknown region kind: " + kind);
    });
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const WindowedIndexSet& s) { return Json{{"horizon", s.horizon()}, {"indices", s.indices()}}; }

Json to_json(const PairWitness& w) { return Json{{"i", w.i}, {"j", w.j}, {"separation", w.separation}}; }

Json to_json(const RegionRecord& r) {
    Json out{{"label", r.label},
             {"region", r.region},
             {"passed", r.passed},
             {"sample_size", r.sample_size},
             {"hit_count", r.hits.size()},
             {"max_gap", r.max_gap},
             {"first_witness", r.first_witness ? to_json(*r.first_witness) : Json(nullptr)},
             {"hits", r.hits.indices()}};
    if (r.pairs_tried) out["pairs_tried"] = r.pairs_tried;
    return out;
}

Json to_json(const SensitivityReport& r) {
    Json regions = Json::array();
    for (const auto& rec : r.regions) regions.push_back(to_json(rec));
    return Json{{"mode", to_string(r.mode)},
                {"family", to_json(r.family)},
                {"family_name", r.family.describe()},
                {"delta", r.delta},
                {"horizon", r.horizon},
                {"resolution", r.resolution},
                {"verdict", r.verdict()},
                {"failing_region", r.failing_region ? Json(r.regions[*r.failing_region].label) : Json(nullptr)},
                {"truncation_bound", r.truncation_bound ? Json(*r.truncation_bound) : Json(nullptr)},
                {"regions", regions}};
}

// ---------------------------------------------------------------------------
// Piece tables

namespace {

Json table_json(const PieceTable& t) {
    Json out = Json::array();
    for (const auto& p : t) out.push_back(Json::array({p.lo, p.hi, p.slope, p.intercept}));
    return out;
}

PieceTable table_from(const Json& j, const char* key) {
    const Json& list = field(j, key);
    if (!list.is_array() || list.empty()) throw ConfigError(std::string("'") + key + "' must be a nonempty list");
    PieceTable out;
    for (const auto& p : list) {
        if (!p.is_array() || p.size() != 4) throw ConfigError("each piece must be [lo, hi, slope, intercept]");
        for (const auto& v : p)
            if (!v.is_number()) throw ConfigError("piece entries must be numbers");
        out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>()});
    }
    return out;
}

} // namespace

Json to_json(const Example41Pieces& p) {
    return Json{{"f1", table_json(p.f1)}, {"f2", table_json(p.f2)}, {"composition", table_json(p.composition)}};
}

Example41Pieces pieces_from_json(const Json& j) {
    Example41Pieces base = example41_pieces();
    if (!j.is_object()) throw ConfigError("piece tables must be a JSON object");
    if (j.contains("f1")) base.f1 = table_from(j, "f1");
    if (j.contains("f2")) base.f2 = table_from(j, "f2");
    if (j.contains("composition")) base.composition = table_from(j, "composition");
    return base;
}

} // namespace nds
