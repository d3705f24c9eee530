#include "nds/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nds {

namespace {

std::vector<Region> cover_from_json(const Json& j, const NamedSystem& sys) {
    if (j.is_string()) {
        if (j.get<std::string>() == "default") return sys.defaults.cover;
        throw ConfigError("unknown cover shorthand: " + j.get<std::string>());
    }
    if (j.is_array()) {
        std::vector<Region> out;
        for (const auto& r : j) out.push_back(region_from_json(r, sys.space()));
        return out;
    }
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("cover must be \"default\", a list, or an object");
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    try {
        if (kind == "balls") {
            int count = j.value("count", 16);
            if (count < 1) throw ConfigError("ball count must be >= 1");
            if (sys.space() == SpaceKind::circle) return circle_ball_cover(count);
            if (sys.space() == SpaceKind::interval) return interval_ball_cover(count);
            throw ConfigError("ball covers need an interval or circle system");
        }
        if (kind == "cylinders") {
            if (sys.space() != SpaceKind::symbolic) throw ConfigError("cylinder covers need a symbolic system");
            return cylinder_cover(j.value("lo", -2), j.value("hi", 2), j.value("margin", kDefaultCylinderMargin),
                                  j.value("radius", kDefaultSymbolicRadius));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad cover: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad cover: ") + e.what());
    }
    throw ConfigError("unknown cover kind: " + kind);
}

NamedSystem system_from_json(const Json& j) {
    if (j.is_string()) return build(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("'system' must be a registry name or an object");
    if (j.contains("sequence")) {
        MapSequence seq = sequence_from_json(j["sequence"]);
        NamedSystem sys{j.value("name", std::string("custom")), j.value("description", std::string("inline sequence")),
                        seq, {}, std::nullopt, ProbeDefaults{}};
        switch (seq.space()) {
        case SpaceKind::interval: sys.defaults.cover = interval_ball_cover(16); break;
        case SpaceKind::circle: sys.defaults.cover = circle_ball_cover(16); break;
        case SpaceKind::symbolic:
            sys.defaults.horizon = 2000;
            sys.defaults.cover = cylinder_cover(-2, 2);
            break;
        default: break;
        }
        return sys;
    }
    if (j.contains("name") && j["name"].is_string()) return build(j["name"].get<std::string>());
    throw ConfigError("'system' object needs a 'name' or a 'sequence'");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("system")) throw ConfigError("missing field 'system'");
    ExperimentConfig cfg{system_from_json(j["system"]), InfiniteFamily{}, {}, 0, 0, {}, {}, "out", std::nullopt, std::nullopt};
    const ProbeDefaults& d = cfg.system.defaults;

    try {
        cfg.family = j.contains("family") ? family_from_json(j["family"]) : d.family;

        if (j.contains("deltas")) {
            if (!j["deltas"].is_array()) throw ConfigError("'deltas' must be a list");
            for (const auto& v : j["deltas"]) {
                if (!v.is_number()) throw ConfigError("deltas must be numbers");
                cfg.deltas.push_back(v.get<double>());
            }
        } else if (j.contains("delta")) {
            if (!j["delta"].is_number()) throw ConfigError("'delta' must be a number");
            cfg.deltas.push_back(j["delta"].get<double>());
        } else {
            cfg.deltas = d.deltas;
        }
        if (cfg.deltas.empty()) throw ConfigError("at least one delta is required");
        for (double v : cfg.deltas)
            if (!(v > 0.0)) throw ConfigError("every delta must be > 0");

        cfg.horizon = j.contains("horizon") ? j["horizon"].get<int>() : d.horizon;
        if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
        cfg.resolution = j.contains("resolution") ? j["resolution"].get<int>() : d.resolution;
        if (cfg.resolution < 2) throw ConfigError("resolution must be >= 2");

        cfg.cover = j.contains("cover") ? cover_from_json(j["cover"], cfg.system) : d.cover;
        if (cfg.cover.empty()) throw ConfigError("cover must be nonempty");

        if (j.contains("modes")) {
            if (!j["modes"].is_array()) throw ConfigError("'modes' must be a list");
            for (const auto& m : j["modes"]) {
                if (!m.is_string()) throw ConfigError("modes must be strings");
                try {
                    cfg.modes.push_back(parse_probe_mode(m.get<std::string>()));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else {
            cfg.modes = {ProbeMode::f_sensitive};
        }
        if (cfg.modes.empty()) throw ConfigError("at least one mode is required");

        if (j.contains("output")) cfg.output_dir = j["output"].get<std::string>();
        if (j.contains("deterministic") && !j["deterministic"].get<bool>())
            throw ConfigError("runs are always deterministic; 'deterministic' cannot be false");

        if (j.contains("attaching")) {
            const Json& a = j["attaching"];
            AttachingSpec spec{region_from_json(a.at("target"), cfg.system.space()), {}};
            for (const auto& p : a.at("probe_points")) spec.probe_points.push_back(point_from_json(p, cfg.system.space()));
            if (spec.probe_points.empty()) throw ConfigError("attaching probe_points must be nonempty");
            cfg.attaching = std::move(spec);
        }
        if (j.contains("hyperspace")) {
            const Json& h = j["hyperspace"];
            HyperspaceSpec spec;
            spec.radius = h.at("radius").get<double>();
            spec.max_cardinality = h.value("max_cardinality", kMaxHyperspaceCardinality);
            for (const auto& c : h.at("centers")) {
                Point p = point_from_json(c, cfg.system.space());
                if (!p.is<FiniteSubset>()) p = FiniteSubset({p});
                spec.centers.push_back(p.as<FiniteSubset>());
            }
            if (spec.centers.empty()) throw ConfigError("hyperspace centers must be nonempty");
            cfg.hyperspace = std::move(spec);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

FamilySpec family_for(ProbeMode mode, const FamilySpec& configured) {
    switch (mode) {
    case ProbeMode::sensitive: return NonemptyFamily{};
    case ProbeMode::cofinite:
        if (std::holds_alternative<CofiniteFamily>(configured.kind)) return configured;
        return CofiniteFamily{};
    case ProbeMode::syndetic:
        if (std::holds_alternative<SyndeticFamily>(configured.kind)) return configured;
        return SyndeticFamily{};
    case ProbeMode::f_sensitive:
    case ProbeMode::weakly_f_sensitive: return configured;
    }
    return configured;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const bool any_weak =
        std::find(cfg.modes.begin(), cfg.modes.end(), ProbeMode::weakly_f_sensitive) != cfg.modes.end();

    // Orbits are shared by every delta and mode; the pair table only when a weak probe needs it.
    std::vector<RegionOrbits> prepared;
    prepared.reserve(cfg.cover.size());
    for (const auto& r : cfg.cover)
        prepared.push_back(prepare_region(cfg.system.sequence, r, cfg.horizon, cfg.resolution, any_weak));

    Json reports = Json::array();
    Json implications = Json::array();
    for (double delta : cfg.deltas) {
        std::optional<bool> strong, weak;
        for (ProbeMode mode : cfg.modes) {
            SensitivityReport rep = probe_prepared(prepared, cfg.cover, mode, delta, family_for(mode, cfg.family),
                                                   cfg.horizon, cfg.resolution);
            if (mode == ProbeMode::f_sensitive) strong = rep.holds;
            if (mode == ProbeMode::weakly_f_sensitive) weak = rep.holds;
            reports.push_back(to_json(rep));
        }
        if (strong && weak)
            implications.push_back(Json{{"delta", delta},
                                        {"family", cfg.family.describe()},
                                        {"F-sensitive", *strong},
                                        {"weakly-F-sensitive", *weak},
                                        {"consistent", !*strong || *weak}});
    }

    Json parameters{{"family", to_json(cfg.family)},
                    {"deltas", cfg.deltas},
                    {"horizon", cfg.horizon},
                    {"resolution", cfg.resolution},
                    {"modes", Json::array()},
                    {"cover", Json::array()},
                    {"deterministic", true}};
    for (auto m : cfg.modes) parameters["modes"].push_back(to_string(m));
    for (const auto& r : cfg.cover) parameters["cover"].push_back(to_json(r));

    Json report{{"schema", kReportSchema},
                {"system",
                 {{"name", cfg.system.name},
                  {"description", cfg.system.description},
                  {"space", to_string(cfg.system.space())},
                  {"sequence", to_json(cfg.system.sequence)}}},
                {"parameters", parameters},
                {"reports", reports}};
    if (!implications.empty()) report["implication_checks"] = implications;

    if (cfg.attaching) {
        AttachingEstimate est = attaching_estimate(cfg.system.sequence, cfg.attaching->target, cfg.family,
                                                   FiniteSubset(cfg.attaching->probe_points), cfg.horizon);
        report["attaching"] = Json{{"target", to_json(cfg.attaching->target)},
                                   {"probe_points", cfg.attaching->probe_points.size()},
                                   {"attached", est.attached},
                                   {"attached_fraction", est.fraction}};
    }
    if (cfg.hyperspace) {
        Json hs = Json::array();
        for (double delta : cfg.deltas) {
            try {
                hs.push_back(to_json(hyperspace_probe(cfg.system.sequence, delta, cfg.family, cfg.hyperspace->centers,
                                                      cfg.hyperspace->radius, cfg.horizon, cfg.resolution,
                                                      cfg.hyperspace->max_cardinality)));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        report["hyperspace"] = hs;
    }

    ExperimentResult result;
    result.report = report;
    result.files.push_back({"report.json", report.dump(2) + "\n"});

    const auto labels = region_labels(cfg.cover.size());
    for (std::size_t r = 0; r < prepared.size(); ++r) {
        std::ostringstream csv;
        csv << "n,max_separation,witness_i,witness_j\n";
        const auto& prof = prepared[r].profile.by_time;
        for (std::size_t k = 0; k < prof.size(); ++k)
            csv << (k + 1) << ',' << format_double(prof[k].separation) << ',' << prof[k].i << ',' << prof[k].j << '\n';
        result.files.push_back({"hits_" + labels[r] + ".csv", csv.str()});
    }

    std::ostringstream tsv;
    tsv << "n";
    for (const auto& l : labels) tsv << '\t' << l;
    tsv << '\n';
    for (int n = 1; n <= cfg.horizon; ++n) {
        tsv << n;
        for (const auto& p : prepared) tsv << '\t' << format_double(p.profile.by_time[static_cast<std::size_t>(n - 1)].separation);
        tsv << '\n';
    }
    result.files.push_back({"plotdata.tsv", tsv.str()});
    return result;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : result.files) {
        const auto target = dir / f.name;
        const auto tmp = dir / (f.name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + tmp.string());
            out << f.content;
            if (!out.flush()) throw Error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, target);
    }
}

} // namespace nds
