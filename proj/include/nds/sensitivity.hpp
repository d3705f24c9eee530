#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nds/families.hpp"
#include "nds/spaces.hpp"
#include "nds/systems.hpp"

namespace nds {

/// Orbits of a finite sample under f_1, f_2, ...: points[n][i] = f_1^n(sample_i).
struct OrbitTable {
    std::vector<std::vector<Point>> points;

    static OrbitTable compute(const MapSequence& s, const std::vector<Point>& sample, int horizon);
    int horizon() const { return static_cast<int>(points.size()) - 1; }
    std::size_t width() const { return points.empty() ? 0 : points.front().size(); }
};

struct PairWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    double separation = 0.0;
};

/// d(f_1^n x_i, f_1^n x_j) for every sample pair i < j and every n in [1, horizon].
struct PairDistances {
    std::size_t width = 0;
    int horizon = 0;
    std::vector<double> values;  ///< pair-major, lexicographic pair order

    static PairDistances compute(const OrbitTable& orbits);
    std::size_t pair_count() const { return width * (width - 1) / 2; }
    std::pair<std::size_t, std::size_t> pair(std::size_t p) const;
    double at(std::size_t p, int n) const { return values[p * static_cast<std::size_t>(horizon) + (n - 1)]; }
};

/// Largest pairwise separation of the sample at each time, with the pair attaining it.
struct SeparationProfile {
    std::vector<PairWitness> by_time;  ///< entry n-1 for time n

    static SeparationProfile compute(const OrbitTable& orbits);
    static SeparationProfile compute(const PairDistances& distances);
};

struct HitParams {
    std::string region;
    double delta = 0.0;
    int horizon = 0;
    int resolution = 0;
};

/// N(U, delta) on a window, with the separating pair for every member.
struct HitTimeSet {
    WindowedIndexSet times;
    std::vector<std::pair<int, PairWitness>> witnesses;  ///< sorted by time
    std::vector<PairWitness> profile;                    ///< max separation at every time
    FiniteSubset sample;
    HitParams params;

    const PairWitness& witness(int n) const;
};

HitTimeSet hit_times_from(const SeparationProfile& profile, const FiniteSubset& sample,
                          HitParams params);

HitTimeSet hit_times(const MapSequence& s, const Region& region, double delta, int horizon,
                     int resolution);

/// {n <= horizon : d(f_1^n x, f_1^n y) > delta}.
WindowedIndexSet pair_separation_times(const MapSequence& s, const Point& x, const Point& y,
                                       double delta, int horizon);

struct AsymptoticVerdict {
    double delta = 0.0;
    WindowedIndexSet stay_close;  ///< times with d <= delta
    WindowedIndexSet separated;   ///< times with d > delta
    FamilySpec family;
    bool is_asymptotic = false;   ///< stay_close belongs to k(F)
};

AsymptoticVerdict asym_pair_test(const MapSequence& s, const Point& x, const Point& y,
                                 double delta, const FamilySpec& fam, int horizon);

enum class ProbeMode { sensitive, cofinite, syndetic, f_sensitive, weakly_f_sensitive };

std::string to_string(ProbeMode mode);
ProbeMode parse_probe_mode(const std::string& name);

struct RegionRecord {
    std::string label;
    std::string region;
    bool passed = false;
    WindowedIndexSet hits{1};   ///< N(U, delta), or the witness pair's separation set in weak mode
    int max_gap = 0;
    std::optional<PairWitness> first_witness;
    std::size_t sample_size = 0;
    std::size_t pairs_tried = 0;  ///< weak mode only
};

struct SensitivityReport {
    ProbeMode mode = ProbeMode::f_sensitive;
    FamilySpec family = NonemptyFamily{};
    double delta = 0.0;
    int horizon = 0;
    int resolution = 0;
    bool holds = false;  ///< holds-at-horizon
    std::vector<RegionRecord> regions;
    std::optional<std::size_t> failing_region;
    std::optional<double> truncation_bound;  ///< symbolic runs only

    std::string verdict() const { return holds ? "holds-at-horizon" : "fails-at-horizon"; }
};

/// Labels of the form <prefix>_00, <prefix>_01, ...
std::vector<std::string> region_labels(std::size_t count, const std::string& prefix = "region");

/// Holds iff N(U, delta) belongs to `fam` for every U in the cover.
SensitivityReport sensitivity_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                    const std::vector<Region>& cover, int horizon, int resolution,
                                    ProbeMode mode = ProbeMode::f_sensitive);

/// Holds iff every U in the cover has one sampled pair whose separation times belong to `fam`.
SensitivityReport weak_sensitivity_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                         const std::vector<Region>& cover, int horizon, int resolution);

/// Probe runs sharing orbits across delta values and modes.
struct RegionOrbits {
    FiniteSubset sample;
    OrbitTable orbits;
    std::optional<PairDistances> distances;  ///< kept only when asked for; weak probes rebuild it otherwise
    SeparationProfile profile;
};

RegionOrbits prepare_region(const MapSequence& s, const Region& region, int horizon, int resolution,
                            bool keep_pair_distances = true);

SensitivityReport probe_prepared(const std::vector<RegionOrbits>& prepared,
                                 const std::vector<Region>& cover, ProbeMode mode, double delta,
                                 const FamilySpec& fam, int horizon, int resolution);

struct AttachingEstimate {
    std::vector<std::size_t> attached;  ///< indices into the probe points
    std::vector<WindowedIndexSet> visits;
    double fraction = 0.0;
};

/// Probe points whose visit times {n : f_1^n(x) in A} belong to `fam`.
AttachingEstimate attaching_estimate(const MapSequence& s, const Region& target, const FamilySpec& fam,
                                     const FiniteSubset& probe_points, int horizon);

inline constexpr std::size_t kMaxHyperspaceCardinality = 3;

/// Sensitivity of the induced system on finite subsets, over Hausdorff balls.
SensitivityReport hyperspace_probe(const MapSequence& s, double delta, const FamilySpec& fam,
                                   const std::vector<FiniteSubset>& centers, double radius, int horizon,
                                   int resolution, std::size_t max_cardinality = kMaxHyperspaceCardinality);

} // namespace nds
