#include "nds/sensitivity.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "nds/parallel.hpp"

namespace nds {

OrbitTable OrbitTable::compute(const MapSequence& s, const std::vector<Point>& sample, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    OrbitTable table;
    table.points.reserve(static_cast<std::size_t>(horizon) + 1);
    table.points.push_back(sample);
    for (int n = 1; n <= horizon; ++n) {
        const MapSpec f = s.at(n);
        std::vector<Point> next;
        next.reserve(sample.size());
        for (const auto& p : table.points.back()) next.push_back(apply(f, p));
        table.points.push_back(std::move(next));
    }
    return table;
}

SeparationProfile SeparationProfile::compute(const OrbitTable& orbits) {
    SeparationProfile profile;
    const std::size_t width = orbits.width();
    for (int n = 1; n <= orbits.horizon(); ++n) {
        const auto& row = orbits.points[static_cast<std::size_t>(n)];
        PairWitness best{0, 1, -1.0};
        for (std::size_t i = 0; i < width; ++i)
            for (std::size_t j = i + 1; j < width; ++j) {
                double d = distance(row[i], row[j]);
                if (d > best.separation) best = {i, j, d};
            }
        profile.by_time.push_back(best);
    }
    return profile;
}

PairDistances PairDistances::compute(const OrbitTable& orbits) {
    PairDistances out;
    out.width = orbits.width();
    out.horizon = orbits.horizon();
    const auto h = static_cast<std::size_t>(out.horizon);
    out.values.resize(out.pair_count() * h);
    for (int n = 1; n <= out.horizon; ++n) {
        const auto& row = orbits.points[static_cast<std::size_t>(n)];
        std::size_t p = 0;
        for (std::size_t i = 0; i < out.width; ++i)
            for (std::size_t j = i + 1; j < out.width; ++j, ++p)
                out.values[p * h + static_cast<std::size_t>(n - 1)] = distance(row[i], row[j]);
    }
    return out;
}

std::pair<std::size_t, std::size_t> PairDistances::pair(std::size_t p) const {
    std::size_t i = 0;
    while (p >= width - 1 - i) {
        p -= width - 1 - i;
        ++i;
    }
    return {i, i + 1 + p};
}

SeparationProfile SeparationProfile::compute(const PairDistances& d) {
    SeparationProfile profile;
    profile.by_time.assign(static_cast<std::size_t>(d.horizon), PairWitness{0, 1, -1.0});
    std::size_t p = 0;
    for (std::size_t i = 0; i < d.width; ++i)
        for (std::size_t j = i + 1; j < d.width; ++j, ++p)
            for (int n = 1; n <= d.horizon; ++n) {
                auto& best = profile.by_time[static_cast<std::size_t>(n - 1)];
                double v = d.at(p, n);
                if (v > best.separation) best = {i, j, v};
            }
    return profile;
}

const PairWitness& HitTimeSet::witness(int n) const {
    auto it = std::lower_bound(witnesses.begin(), witnesses.end(), n,
                               [](const auto& w, int v) { return w.first < v; });
    if (it == witnesses.end() || it->first != n) throw std::out_of_range("no witness at that time");
    return it->second;
}

HitTimeSet hit_times_from(const SeparationProfile& profile, const FiniteSubset& sample, HitParams params) {
    if (!(params.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    std::vector<int> times;
    std::vector<std::pair<int, PairWitness>> witnesses;
    for (std::size_t k = 0; k < profile.by_time.size(); ++k) {
        const auto& w = profile.by_time[k];
        // Separation must be strictly larger than delta.
        if (w.separation > params.delta) {
            times.push_back(static_cast<int>(k) + 1);
            witnesses.emplace_back(static_cast<int>(k) + 1, w);
        }
    }
    params.horizon = static_cast<int>(profile.by_time.size());
    return HitTimeSet{WindowedIndexSet(params.horizon, std::move(times)), std::move(witnesses),
                      profile.by_time, sample, std::move(params)};
}

RegionOrbits prepare_region(const MapSequence& s, const Region& region, int horizon, int resolution,
                            bool keep_pair_distances) {
    FiniteSubset sample = sample_region(region, resolution);
    if (sample.size() < 2) throw std::invalid_argument("region sample degenerates to a single point");
    OrbitTable orbits = OrbitTable::compute(s, sample.elements(), horizon);
    if (!keep_pair_distances) {
        SeparationProfile profile = SeparationProfile::compute(orbits);
        return RegionOrbits{std::move(sample), std::move(orbits), std::nullopt, std::move(profile)};
    }
    PairDistances distances = PairDistances::compute(orbits);
    SeparationProfile profile = SeparationProfile::compute(distances);
    return RegionOrbits{std::move(sample), std::move(orbits), std::move(distances), std::move(profile)};
}

HitTimeSet hit_times(const MapSequence& s, const Region& region, double delta, int horizon,
                     int resolution) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    RegionOrbits r = prepare_region(s, region, horizon, resolution, false);
    return hit_times_from(r.profile, r.sample, HitParams{describe(region), delta, horizon, resolution});
}

namespace {

WindowedIndexSet separation_from_orbits(const OrbitTable& orbits, std::size_t i, std::size_t j,
                                        double delta) {
    std::vector<int> times;
    for (int n = 1; n <= orbits.horizon(); ++n) {
        const auto& row = orbits.points[static_cast<std::size_t>(n)];
        if (distance(row[i], row[j]) > delta) times.push_back(n);
    }
    return WindowedIndexSet(orbits.horizon(), std::move(times));
}

} // namespace

WindowedIndexSet pair_separation_times(const MapSequence& s, const Point& x, const Point& y,
                                       double delta, int horizon) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    OrbitTable orbits = OrbitTable::compute(s, {x, y}, horizon);
    return separation_from_orbits(orbits, 0, 1, delta);
}

AsymptoticVerdict asym_pair_test(const MapSequence& s, const Point& x, const Point& y, double delta,
                                 const FamilySpec& fam, int horizon) {
    WindowedIndexSet separated = pair_separation_times(s, x, y, delta, horizon);
    WindowedIndexSet stay = separated.complement();
    bool asym = member(dual(fam), stay);
    return AsymptoticVerdict{delta, std::move(stay), std::move(separated), fam, asym};
}

std::string to_string(ProbeMode mode) {
    switch (mode) {
    case ProbeMode::sensitive: return "sensitive";
    case ProbeMode::cofinite: return "cofinite";
    case ProbeMode::syndetic: return "syndetic";
    case ProbeMode::f_sensitive: return "F-sensitive";
    case ProbeMode::weakly_f_sensitive: return "weakly-F-sensitive";
    }
    return "unknown";
}

ProbeMode parse_probe_mode(const std::string& name) {
    for (auto m : {ProbeMode::sensitive, ProbeMode::cofinite, ProbeMode::syndetic,
                   ProbeMode::f_sensitive, ProbeMode::weakly_f_sensitive})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown probe mode: " + name);
}

std::vector<std::string> region_labels(std::size_t count, const std::string& prefix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%02zu", i);
        out.push_back(prefix + "_" + buf);
    }
    return out;
}

namespace {

RegionRecord strong_record(const RegionOrbits& r, const FamilySpec& fam, double delta) {
    HitTimeSet hits = hit_times_from(r.profile, r.sample, HitParams{"", delta, 0, 0});
    RegionRecord rec;
    rec.passed = member(fam, hits.times);
    rec.max_gap = hits.times.max_gap();
    if (!hits.witnesses.empty()) rec.first_witness = hits.witnesses.front().second;
    rec.hits = std::move(hits.times);
    rec.sample_size = r.sample.size();
    return rec;
}

RegionRecord weak_record(const RegionOrbits& r, const FamilySpec& fam, double delta) {
    RegionRecord rec;
    rec.sample_size = r.sample.size();
    std::optional<PairDistances> local;
    if (!r.distances) local = PairDistances::compute(r.orbits);
    const PairDistances& d = r.distances ? *r.distances : *local;
    rec.hits = WindowedIndexSet(d.horizon);
    std::vector<int> times;
    for (std::size_t p = 0; p < d.pair_count(); ++p) {
        ++rec.pairs_tried;
        times.clear();
        double peak = 0.0;
        for (int n = 1; n <= d.horizon; ++n) {
            double v = d.at(p, n);
            if (v > delta) {
                times.push_back(n);
                peak = std::max(peak, v);
            }
        }
        WindowedIndexSet sep(d.horizon, times);
        if (member(fam, sep)) {
            auto [i, j] = d.pair(p);
            rec.passed = true;
            rec.first_witness = PairWitness{i, j, peak};
            rec.hits = std::move(sep);
            break;
        }
    }
    rec.max_gap = rec.hits.max_gap();
    return rec;
}

std::optional<double> truncation_for(const std::vector<RegionOrbits>& prepared) {
    if (prepared.empty()) return std::nullopt;
    const Point& p = prepared.front().sample.elements().front();
    if (p.is<SymbolicPoint>()) return symbolic_truncation_bound(p.as<SymbolicPoint>().radius());
    return std::nullopt;
}

std::vector<RegionOrbits> prepare_all(const MapSequence& s, const std::vector<Region>& cover,
                                      int horizon, int resolution, bool keep_pairs) {
    if (cover.empty()) throw std::invalid_argument("cover must be nonempty");
    std::vector<std::optional<RegionOrbits>> slots(cover.size());
    parallel_for(cover.size(), [&](std::size_t i) {
        slots[i] = prepare_region(s, cover[i], horizon, resolution, keep_pairs);
    });
    std::vector<RegionOrbits> out;
    out.reserve(cover.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

} // namespace

SensitivityReport probe_prepared(const std::vector<RegionOrbits>& prepared, const std::vector<Region>& cover,
                                 ProbeMode mode, double delta, const FamilySpec& fam, int horizon,
                                 int resolution) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (prepared.size() != cover.size()) throw std::invalid_argument("prepared regions do not match cover");
    SensitivityReport report;
    report.mode = mode;
    report.family = fam;
    report.delta = delta;
    report.horizon = horizon;
    report.resolution = resolution;
    report.truncation_bound = truncation_for(prepared);

    std::vector<std::optional<RegionRecord>> slots(prepared.size());
    parallel_for(prepared.size(), [&](std::size_t i) {
        slots[i] = mode == ProbeMode::weakly_f_sensitive ? weak_record(prepared[i], fam, delta)
                                                          : strong_record(prepared[i], fam, delta);
    });
    const auto labels = region_labels(cover.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        RegionRecord rec = std::move(*slots[i]);
        rec.label = labels[i];
        rec.region = describe(cover[i]);
        if (!rec.passed && !report.failing_region) report.failing_region = i;
        report.regions.push_back(std::move(rec));
    }
    report.holds = !report.failing_region.has_value();
    return report;
}

SensitivityReport sensitivity_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                    const std::vector<Region>& cover, int horizon, int resolution,
                                    ProbeMode mode) {
    if (mode == ProbeMode::weakly_f_sensitive)
        return weak_sensitivity_probe(s, delta, fam, cover, horizon, resolution);
    auto prepared = prepare_all(s, cover, horizon, resolution, false);
    return probe_prepared(prepared, cover, mode, delta, fam, horizon, resolution);
}

SensitivityReport weak_sensitivity_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                         const std::vector<Region>& cover, int horizon, int resolution) {
    auto prepared = prepare_all(s, cover, horizon, resolution, false);
    return probe_prepared(prepared, cover, ProbeMode::weakly_f_sensitive, delta, fam, horizon, resolution);
}

AttachingEstimate attaching_estimate(const MapSequence& s, const Region& target, const FamilySpec& fam,
                                     const FiniteSubset& probe_points, int horizon) {
    OrbitTable orbits = OrbitTable::compute(s, probe_points.elements(), horizon);
    AttachingEstimate out;
    for (std::size_t i = 0; i < orbits.width(); ++i) {
        std::vector<int> visits;
        for (int n = 1; n <= horizon; ++n)
            if (contains(target, orbits.points[static_cast<std::size_t>(n)][i])) visits.push_back(n);
        WindowedIndexSet set(horizon, std::move(visits));
        if (member(fam, set)) out.attached.push_back(i);
        out.visits.push_back(std::move(set));
    }
    out.fraction = static_cast<double>(out.attached.size()) / static_cast<double>(orbits.width());
    return out;
}

SensitivityReport hyperspace_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                   const std::vector<FiniteSubset>& centers, double radius, int horizon,
                                   int resolution, std::size_t max_cardinality) {
    std::vector<Region> cover;
    for (const auto& c : centers) {
        if (c.size() > max_cardinality)
            throw std::invalid_argument("hyperspace center has " + std::to_string(c.size()) +
                                        " elements; bound is " + std::to_string(max_cardinality));
        cover.push_back(HausdorffBall{c, radius});
    }
    return sensitivity_probe(s, delta, fam, cover, horizon, resolution);
}

} // namespace nds
