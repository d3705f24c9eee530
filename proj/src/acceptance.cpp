#include "nds/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nds/families.hpp"
#include "nds/sensitivity.hpp"
#include "nds/systems.hpp"

namespace nds {

namespace {

constexpr std::uint64_t kSeed = 20240611;

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string join(const std::vector<int>& v, std::size_t limit = 16) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) out << (i ? "," : "") << v[i];
    if (v.size() > limit) out << ",... (" << v.size() << " total)";
    out << '}';
    return out.str();
}

bool inside(const Region& r, double lo, double hi) {
    const auto* b = std::get_if<Ball>(&r);
    if (!b || !b->center.is<IntervalPoint>()) return false;
    double c = b->center.as<IntervalPoint>().value();
    return c - b->radius >= lo && c + b->radius <= hi;
}

// ---------------------------------------------------------------------------

CriterionResult transcription(const AcceptanceOptions& opt) {
    CriterionResult res{"transcription", criterion_title("transcription"), true, {}};
    const auto& p = opt.pieces;
    const std::pair<const char*, const PieceTable*> tables[] = {
        {"f1", &p.f1}, {"f2", &p.f2}, {"f2 o f1", &p.composition}};
    for (const auto& [name, table] : tables) {
        auto rep = verify_continuity(*table);
        std::ostringstream vals;
        for (const auto& k : rep.breakpoint_values) vals << " (" << k.x << ", " << k.value << ")";
        res.details.push_back(fmt("%s continuity: %s, worst mismatch %.3g; breakpoints%s", name,
                                  rep.continuous ? "ok" : "FAILED", rep.worst_mismatch, vals.str().c_str()));
        if (!rep.continuous) {
            res.passed = false;
            res.details.push_back(fmt("  offending breakpoint index %zu", *rep.offending));
        }
    }
    if (!res.passed) return res;

    const PiecewiseLinear f1 = map_from_pieces(p.f1);
    const PiecewiseLinear f2 = map_from_pieces(p.f2);
    const PiecewiseLinear comp = map_from_pieces(p.composition);
    constexpr int kGrid = 10000;

    // Every piece whose closed domain holds x must give the same value.
    std::size_t piece_checks = 0;
    double piece_worst = 0.0;
    for (const auto& [name, table] : tables) {
        std::vector<double> xs;
        for (int i = 0; i < kGrid; ++i) xs.push_back(static_cast<double>(i) / (kGrid - 1));
        for (const auto& pc : *table) xs.push_back(pc.lo), xs.push_back(pc.hi);
        for (double x : xs) {
            std::vector<double> values;
            for (const auto& pc : *table)
                if (pc.lo <= x && x <= pc.hi) values.push_back(pc(x));
            for (double v : values) piece_worst = std::max(piece_worst, std::fabs(v - values.front()));
            ++piece_checks;
        }
    }
    bool ok = piece_worst <= 1e-12;
    res.details.push_back(fmt("piece agreement on %zu grid points: worst %.3g", piece_checks, piece_worst));
    res.passed &= ok;

    double comp_worst = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        double x = static_cast<double>(i) / (kGrid - 1);
        comp_worst = std::max(comp_worst, std::fabs(f2(f1(x)) - comp(x)));
    }
    ok = comp_worst <= 1e-12;
    res.details.push_back(fmt("f2(f1(x)) vs printed composition on %d points: worst %.3g", kGrid, comp_worst));
    res.passed &= ok;

    int escapes1 = 0, escapes2 = 0;
    for (int i = 0; i < kGrid; ++i) {
        double t = static_cast<double>(i) / (kGrid - 1);
        double x1 = 0.25 + 0.75 * t;
        double y1 = f1(x1);
        if (y1 < 0.25 || y1 > 1.0) ++escapes1;
        double x2 = 0.25 * t;
        double y2 = f2(x2);
        if (y2 < 0.0 || y2 > 0.25) ++escapes2;
    }
    res.details.push_back(fmt("f1([1/4,1]) in [1/4,1]: %d escapes of %d", escapes1, kGrid));
    res.details.push_back(fmt("f2([0,1/4]) in [0,1/4]: %d escapes of %d", escapes2, kGrid));
    res.passed &= escapes1 == 0 && escapes2 == 0;
    return res;
}

CriterionResult ex41(const AcceptanceOptions& opt) {
    CriterionResult res{"ex41", criterion_title("ex41"), true, {}};
    const FamilySpec fam = InfiniteFamily{10, 0.25};
    const auto cover = interval_ball_cover(16);
    struct Case {
        const char* name;
        bool expect_holds;
        double lo, hi;
    };
    const Case cases[] = {
        {"example41_composition", true, 0, 0},
        {"example41_f1", false, 0.25, 1.0},
        {"example41_f2", false, 0.0, 0.25},
    };
    for (const auto& c : cases) {
        NamedSystem sys = build(c.name, opt.pieces);
        auto rep = sensitivity_probe(sys.sequence, 0.2, fam, cover, 200, 64);
        bool ok = rep.holds == c.expect_holds;
        std::string where;
        if (rep.failing_region) {
            const Region& r = cover[*rep.failing_region];
            where = ", failing " + rep.regions[*rep.failing_region].label + " " + describe(r);
            if (!c.expect_holds) {
                bool in = inside(r, c.lo, c.hi);
                ok &= in;
                where += in ? fmt(" (inside [%g,%g])", c.lo, c.hi) : fmt(" (NOT inside [%g,%g])", c.lo, c.hi);
            }
        }
        res.details.push_back(fmt("%s: %s%s", c.name, rep.verdict().c_str(), where.c_str()));
        res.passed &= ok;
    }
    return res;
}

CriterionResult ex31(const AcceptanceOptions&) {
    CriterionResult res{"ex31", criterion_title("ex31"), true, {}};
    NamedSystem sys = build("example31");
    const auto cover = cylinder_cover(-2, 2);
    std::vector<RegionOrbits> prepared;
    for (const auto& r : cover) prepared.push_back(prepare_region(sys.sequence, r, 2000, 64, false));

    auto probe = [&](const FamilySpec& f) {
        return probe_prepared(prepared, cover, ProbeMode::f_sensitive, 0.5, f, 2000, 64);
    };
    auto inf = probe(InfiniteFamily{10, 0.25});
    auto cof = probe(CofiniteFamily{20});
    auto syn = probe(SyndeticFamily{64});

    std::size_t fewest = 0;
    for (std::size_t i = 1; i < inf.regions.size(); ++i)
        if (inf.regions[i].hits.size() < inf.regions[fewest].hits.size()) fewest = i;
    int widest = 0;
    for (const auto& r : syn.regions) widest = std::max(widest, r.max_gap);

    res.details.push_back("infinite(10, 0.25): " + inf.verdict() +
                          (inf.failing_region ? " at " + inf.regions[*inf.failing_region].label : ""));
    res.details.push_back(fmt("  sparsest region %s hits %s", inf.regions[fewest].label.c_str(),
                              join(inf.regions[fewest].hits.indices()).c_str()));
    std::vector<int> times;
    for (int r = 1; shift_block_time(r) <= 2000; ++r) times.push_back(static_cast<int>(shift_block_time(r)));
    res.details.push_back("  composed-shift times t_r within the window: " + join(times));
    res.details.push_back("cofinite(20): " + cof.verdict());
    res.details.push_back("syndetic(64): " + syn.verdict() + fmt(", widest gap %d (need >= 256)", widest));

    res.passed = inf.holds && !cof.holds && !syn.holds && widest >= 256;
    return res;
}

struct EmbeddingTally {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::string first_violation;
};

// For every witnessed hit m of the fast system, time k*m of the base system must
// separate the same sample pair and be a base hit.
void check_embedding(const MapSequence& fast, const MapSequence& base, int k, const Region& region,
                     double delta, int fast_horizon, int resolution, EmbeddingTally& tally) {
    RegionOrbits f = prepare_region(fast, region, fast_horizon, resolution, false);
    RegionOrbits b = prepare_region(base, region, fast_horizon * k, resolution, false);
    HitTimeSet hf = hit_times_from(f.profile, f.sample, HitParams{describe(region), delta, fast_horizon, resolution});
    HitTimeSet hb = hit_times_from(b.profile, b.sample, HitParams{describe(region), delta, fast_horizon * k, resolution});
    for (const auto& [m, w] : hf.witnesses) {
        ++tally.checked;
        const auto& row = b.orbits.points[static_cast<std::size_t>(k * m)];
        double d = distance(row[w.i], row[w.j]);
        if (!(d > delta) || !hb.times.contains(k * m)) {
            if (!tally.violations)
                tally.first_violation = fmt("%s m=%d pair (%zu,%zu): base distance %.6g at %d",
                                            describe(region).c_str(), m, w.i, w.j, d, k * m);
            ++tally.violations;
        }
    }
}

CriterionResult thm44(const AcceptanceOptions& opt) {
    CriterionResult res{"thm44", criterion_title("thm44"), true, {}};
    NamedSystem gen = build("example41_generated", opt.pieces);
    MapSpec f1 = map_from_pieces(opt.pieces.f1);
    MapSpec f2 = map_from_pieces(opt.pieces.f2);
    MapSequence comp = MapSequence::cyclic({Composition{{f1, f2}}});
    EmbeddingTally tally;
    for (const auto& r : interval_ball_cover(16)) check_embedding(comp, gen.sequence, 2, r, 0.2, 200, 64, tally);
    res.details.push_back(fmt("%zu witnessed hit times m of the composition system over 16 balls", tally.checked));
    res.details.push_back(fmt("violations of 2m in N(U, 0.2) for the generated system: %zu", tally.violations));
    if (tally.violations) res.details.push_back("first: " + tally.first_violation);
    res.passed = tally.violations == 0 && tally.checked > 0;
    return res;
}

CriterionResult thm43(const AcceptanceOptions& opt) {
    CriterionResult res{"thm43", criterion_title("thm43"), true, {}};
    struct Case {
        const char* name;
        double delta;
        int base_horizon;
        std::vector<Region> cover;
    };
    const Case cases[] = {
        {"example41_generated", 0.2, 600, interval_ball_cover(16)},
        {"example31", 0.5, 2000, cylinder_cover(-2, 2)},
    };
    std::size_t total = 0;
    for (const auto& c : cases) {
        NamedSystem sys = build(c.name, opt.pieces);
        for (int k : {2, 3}) {
            MapSequence iter = kth_iterate(sys.sequence, k);
            EmbeddingTally tally;
            for (const auto& r : c.cover)
                check_embedding(iter, sys.sequence, k, r, c.delta, c.base_horizon / k, 64, tally);
            res.details.push_back(fmt("%s k=%d: %zu witnessed iterate hits, %zu violations", c.name, k,
                                      tally.checked, tally.violations));
            if (tally.violations) res.details.push_back("  first: " + tally.first_violation);
            res.passed &= tally.violations == 0;
            total += tally.checked;
        }
    }
    res.passed &= total > 0;
    return res;
}

CriterionResult thm41(const AcceptanceOptions& opt) {
    CriterionResult res{"thm41", criterion_title("thm41"), true, {}};
    const FamilySpec fam = InfiniteFamily{10, 0.25};
    const auto cover = interval_ball_cover(16);

    for (const char* name : {"example41_generated", "example41_composition"}) {
        NamedSystem sys = build(name, opt.pieces);
        auto base = sensitivity_probe(sys.sequence, 0.2, fam, cover, 200, 64);
        std::vector<FiniteSubset> singletons;
        for (const auto& r : cover) singletons.push_back(FiniteSubset({std::get<Ball>(r).center}));
        auto hyper = hyperspace_probe(sys.sequence, 0.2, fam, singletons, std::get<Ball>(cover[0]).radius, 200, 64);
        std::size_t mismatched = 0;
        for (std::size_t i = 0; i < cover.size(); ++i)
            if (!(base.regions[i].hits == hyper.regions[i].hits)) ++mismatched;
        res.details.push_back(fmt("%s singletons: %zu of %zu hit sets differ from the base", name, mismatched,
                                  cover.size()));
        res.passed &= mismatched == 0;
    }

    NamedSystem gen = build("example41_generated", opt.pieces);
    auto base = sensitivity_probe(gen.sequence, 0.2, fam, cover, 200, 64);
    std::vector<FiniteSubset> pairs;
    for (int i = 0; i < 8; ++i)
        pairs.push_back(FiniteSubset({interval((2.0 * i + 1) / 32.0), interval((2.0 * (i + 8) + 1) / 32.0)}));
    auto hyper = hyperspace_probe(gen.sequence, 0.2, fam, pairs, 1.0 / 32.0, 200, 64);
    res.details.push_back("example41_generated base: " + base.verdict() + "; cardinality-2 hyperspace: " +
                          hyper.verdict());
    res.passed &= base.holds == hyper.holds;
    return res;
}

CriterionResult thm31(const AcceptanceOptions& opt) {
    CriterionResult res{"thm31", criterion_title("thm31"), true, {}};
    const std::vector<FamilySpec> families{NonemptyFamily{}, InfiniteFamily{10, 0.25}, CofiniteFamily{20},
                                           SyndeticFamily{64}};
    std::size_t runs = 0, counterexamples = 0, infinite_disagreements = 0;
    for (const auto& [name, desc] : registry()) {
        NamedSystem sys = build(name, opt.pieces);
        const auto& d = sys.defaults;
        std::vector<RegionOrbits> prepared;
        for (const auto& r : d.cover) prepared.push_back(prepare_region(sys.sequence, r, d.horizon, d.resolution));
        for (double delta : d.deltas)
            for (const auto& f : families) {
                auto strong = probe_prepared(prepared, d.cover, ProbeMode::f_sensitive, delta, f, d.horizon, d.resolution);
                auto weak = probe_prepared(prepared, d.cover, ProbeMode::weakly_f_sensitive, delta, f, d.horizon,
                                           d.resolution);
                ++runs;
                if (strong.holds && !weak.holds) {
                    ++counterexamples;
                    std::string where = weak.failing_region ? weak.regions[*weak.failing_region].label : "";
                    res.details.push_back(fmt("counterexample: %s delta=%g %s (F-sensitive holds, weak fails at %s)",
                                              name.c_str(), delta, f.describe().c_str(), where.c_str()));
                }
                if (std::holds_alternative<InfiniteFamily>(f.kind) && strong.holds != weak.holds) {
                    ++infinite_disagreements;
                    res.details.push_back(fmt("infinite disagreement: %s delta=%g strong=%d weak=%d", name.c_str(),
                                              delta, strong.holds, weak.holds));
                }
            }
    }
    res.details.insert(res.details.begin(),
                       fmt("%zu probe pairs over 8 systems x 3 deltas x 4 families: %zu counterexamples, "
                           "%zu disagreements with fam = infinite",
                           runs, counterexamples, infinite_disagreements));
    res.passed = counterexamples == 0 && infinite_disagreements == 0;
    return res;
}

// ---------------------------------------------------------------------------
// Families: brute force over bit masks, bit n-1 standing for index n.

WindowedIndexSet from_mask(std::uint32_t mask, int horizon) {
    std::vector<int> idx;
    for (int n = 1; n <= horizon; ++n)
        if (mask >> (n - 1) & 1u) idx.push_back(n);
    return WindowedIndexSet(horizon, std::move(idx));
}

using MaskPredicate = std::function<bool(std::uint32_t)>;

MaskPredicate brute_infinite(int h, int m, double tf) {
    return [=](std::uint32_t s) {
        if (std::popcount(s) < m) return false;
        for (int n = 1; n <= h; ++n)
            if ((s >> (n - 1) & 1u) && n > (1.0 - tf) * h) return true;
        return false;
    };
}

MaskPredicate brute_cofinite(int h, int missing) {
    return [=](std::uint32_t s) {
        if (h - std::popcount(s) > missing) return false;
        for (int n = std::max(1, h - missing + 1); n <= h; ++n)
            if (!(s >> (n - 1) & 1u)) return false;
        return true;
    };
}

MaskPredicate brute_syndetic(int h, int gap) {
    return [=](std::uint32_t s) {
        int run = 0;
        for (int n = 1; n <= h; ++n) {
            run = (s >> (n - 1) & 1u) ? 0 : run + 1;
            if (run >= gap) return false;
        }
        return true;
    };
}

// S is in k(F) iff S meets every member of F: no member fits inside the complement of S.
std::vector<bool> brute_dual(const MaskPredicate& in_family, int h) {
    const std::uint32_t full = (1u << h) - 1;
    std::vector<bool> has_member_below(std::size_t{1} << h);
    for (std::uint32_t t = 0; t <= full; ++t) has_member_below[t] = in_family(t);
    for (int b = 0; b < h; ++b)
        for (std::uint32_t t = 0; t <= full; ++t)
            if (t >> b & 1u) has_member_below[t] = has_member_below[t] || has_member_below[t ^ (1u << b)];
    std::vector<bool> out(std::size_t{1} << h);
    for (std::uint32_t s = 0; s <= full; ++s) out[s] = !has_member_below[full & ~s];
    return out;
}

CriterionResult families(const AcceptanceOptions&) {
    CriterionResult res{"families", criterion_title("families"), true, {}};

    constexpr int H = 16;
    const std::uint32_t full = (1u << H) - 1;
    std::vector<WindowedIndexSet> all;
    all.reserve(std::size_t{1} << H);
    for (std::uint32_t s = 0; s <= full; ++s) all.push_back(from_mask(s, H));

    struct Case {
        FamilySpec fam;
        MaskPredicate brute;
    };
    std::vector<Case> cases{
        {InfiniteFamily{10, 0.25}, brute_infinite(H, 10, 0.25)},
        {InfiniteFamily{3, 0.5}, brute_infinite(H, 3, 0.5)},
        {CofiniteFamily{3}, brute_cofinite(H, 3)},
        {CofiniteFamily{0}, brute_cofinite(H, 0)},
        {SyndeticFamily{4}, brute_syndetic(H, 4)},
        {SyndeticFamily{1}, brute_syndetic(H, 1)},
    };
    std::size_t total_mismatch = 0;
    for (const auto& c : cases) {
        std::size_t mismatch = 0, dual_mismatch = 0, members = 0;
        const FamilySpec k = dual(c.fam);
        const auto brute_k = brute_dual(c.brute, H);
        for (std::uint32_t s = 0; s <= full; ++s) {
            bool b = c.brute(s);
            members += b;
            if (member(c.fam, all[s]) != b) ++mismatch;
            if (member(k, all[s]) != brute_k[s]) ++dual_mismatch;
        }
        res.details.push_back(fmt("H=16 %s: %zu members, %zu mismatches; dual: %zu mismatches",
                                  c.fam.describe().c_str(), members, mismatch, dual_mismatch));
        total_mismatch += mismatch + dual_mismatch;
    }
    res.passed &= total_mismatch == 0;

    // Upward closure on sampled pairs S within T at H = 200.
    {
        constexpr int H2 = 200;
        constexpr int kPairs = 100000;
        std::mt19937_64 rng(kSeed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::vector<FamilySpec> fams{NonemptyFamily{},           InfiniteFamily{10, 0.25},
                                           CofiniteFamily{20},         SyndeticFamily{64},
                                           dual(InfiniteFamily{10, 0.25}), dual(CofiniteFamily{20}),
                                           dual(SyndeticFamily{64})};
        std::size_t violations = 0, antecedents = 0;
        for (int t = 0; t < kPairs; ++t) {
            double density = unit(rng);
            double extra = unit(rng) * (1.0 - density);
            std::vector<int> small, big;
            for (int n = 1; n <= H2; ++n) {
                double u = unit(rng);
                if (u < density) small.push_back(n), big.push_back(n);
                else if (u < density + extra) big.push_back(n);
            }
            WindowedIndexSet s(H2, small), b(H2, big);
            const FamilySpec& f = fams[static_cast<std::size_t>(t) % fams.size()];
            if (member(f, s)) {
                ++antecedents;
                if (!member(f, b)) ++violations;
            }
        }
        res.details.push_back(fmt("upward closure at H=200: %d sampled pairs, %zu with S in F, %zu violations",
                                  kPairs, antecedents, violations));
        res.passed &= violations == 0 && antecedents > 0;
    }

    // Dual intersections, exhaustively at H = 10.
    {
        constexpr int H3 = 10;
        std::vector<WindowedIndexSet> small;
        for (std::uint32_t s = 0; s < (1u << H3); ++s) small.push_back(from_mask(s, H3));
        auto inf = filterdual_probe(InfiniteFamily{1, 0.25}, small);
        auto cof = filterdual_probe(CofiniteFamily{2}, small);
        res.details.push_back(fmt("filterdual infinite(1, 0.25) at H=10: %zu dual members, %zu pairs, %zu counterexamples",
                                  inf.dual_members, inf.pairs_checked, inf.counterexamples.size()));
        std::string first;
        if (!cof.counterexamples.empty()) {
            const auto& [a, b] = cof.counterexamples.front();
            first = " e.g. " + join(small[a].indices()) + " and " + join(small[b].indices());
        }
        res.details.push_back(fmt("filterdual cofinite(2) at H=10: %zu counterexamples%s", cof.counterexamples.size(),
                                  first.c_str()));
        res.passed &= inf.passed() && inf.pairs_checked > 0 && !cof.passed();
    }
    return res;
}

CriterionResult lemma22(const AcceptanceOptions&) {
    CriterionResult res{"lemma22", criterion_title("lemma22"), true, {}};
    NamedSystem summable = build("rotations_summable");
    NamedSystem harmonic = build("rotations_harmonic");
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick_n(1, 50), pick_k(1, 20);
    std::size_t ok = 0;
    double worst_slack = 1e300;
    std::string first_bad;
    constexpr int kTuples = 1000;
    for (int t = 0; t < kTuples; ++t) {
        double x = unit(rng);
        int n = pick_n(rng), k = pick_k(rng);
        ShadowBound b = shadow_bound_check(summable.sequence, *summable.limit, circle(x), n, k);
        worst_slack = std::min(worst_slack, b.rhs - b.lhs);
        if (b.ok) ++ok;
        else if (first_bad.empty()) first_bad = fmt("x=%.6f n=%d k=%d lhs=%.6g rhs=%.6g", x, n, k, b.lhs, b.rhs);
    }
    res.details.push_back(fmt("shadow bound: %zu of %d tuples ok, smallest rhs - lhs %.3g", ok, kTuples, worst_slack));
    if (!first_bad.empty()) res.details.push_back("first failure: " + first_bad);
    res.passed &= ok == static_cast<std::size_t>(kTuples);

    auto s = tail_sum(summable.sequence, *summable.limit, 1000, 1000);
    double sn = s.partial_sums.back();
    bool s_ok = s.converged && std::fabs(sn - 1.0) <= 1e-6;
    res.details.push_back(fmt("rotations_summable: S_1000 = %.15f, converged %s", sn, s.converged ? "yes" : "no"));
    auto h = tail_sum(harmonic.sequence, *harmonic.limit, 1000, 1000);
    res.details.push_back(fmt("rotations_harmonic: S_1000 = %.6f, S_1000 - S_500 = %.6f, converged %s",
                              h.partial_sums.back(), h.partial_sums.back() - h.partial_sums[499],
                              h.converged ? "yes" : "no"));
    res.passed &= s_ok && !h.converged;
    return res;
}

// ---------------------------------------------------------------------------
// Metric axioms

struct AxiomTally {
    std::size_t instances = 0;
    std::size_t failures = 0;
};

void check_axioms(const Point& x, const Point& y, const Point& z, bool distinct_xy, AxiomTally& t) {
    ++t.instances;
    double dxy = distance(x, y), dyx = distance(y, x), dxz = distance(x, z), dyz = distance(y, z);
    bool ok = distance(x, x) == 0.0 && dxy == dyx && dxy >= 0.0 && dxz <= dxy + dyz + 1e-12;
    if (distinct_xy) ok &= dxy > 0.0;
    if (!ok) ++t.failures;
}

SymbolicPoint random_symbolic(std::mt19937_64& rng, int extent, int radius) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(2 * extent + 1));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return SymbolicPoint(bits, extent, radius);
}

bool covered(const FiniteSubset& a, const FiniteSubset& b, double eps) {
    for (const auto& p : a.elements()) {
        bool hit = false;
        for (const auto& q : b.elements()) hit |= distance(p, q) <= eps;
        if (!hit) return false;
    }
    return true;
}

CriterionResult metrics(const AcceptanceOptions&) {
    CriterionResult res{"metrics", criterion_title("metrics"), true, {}};
    constexpr int kInstances = 10000;
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> card(1, 5);

    auto random_subset = [&](bool on_circle) {
        std::vector<Point> pts;
        int n = card(rng);
        for (int i = 0; i < n; ++i) pts.push_back(on_circle ? circle(unit(rng)) : interval(unit(rng)));
        return FiniteSubset(std::move(pts));
    };

    auto run = [&](const char* name, auto make) {
        AxiomTally t;
        for (int i = 0; i < kInstances; ++i) {
            Point x = make(), y = make(), z = make();
            check_axioms(x, y, z, true, t);
        }
        res.details.push_back(fmt("%s: %zu instances, %zu axiom failures", name, t.instances, t.failures));
        res.passed &= t.failures == 0;
    };
    run("interval", [&] { return interval(unit(rng)); });
    run("circle", [&] { return circle(unit(rng)); });
    run("symbolic", [&] { return Point(random_symbolic(rng, 32, 32)); });
    run("product", [&] { return Point(ProductPoint(interval(unit(rng)), circle(unit(rng)))); });
    run("hyperspace", [&] { return Point(random_subset(false)); });

    // d_H(A, B) <= eps exactly when each set lies in the closed eps-neighbourhood of the other.
    std::size_t cover_checks = 0, cover_failures = 0;
    for (int i = 0; i < kInstances; ++i) {
        bool on_circle = i % 2;
        FiniteSubset a = random_subset(on_circle), b = random_subset(on_circle);
        double h = hausdorff(a, b);
        for (double eps : {h, std::nextafter(h, -1.0), unit(rng)}) {
            if (eps < 0.0) continue;
            ++cover_checks;
            bool mutual = covered(a, b, eps) && covered(b, a, eps);
            if (mutual != (h <= eps)) ++cover_failures;
        }
    }
    res.details.push_back(fmt("mutual eps-covering: %zu checks, %zu disagreements", cover_checks, cover_failures));
    res.passed &= cover_failures == 0;

    // Enlarging the window from W to W' changes the distance by at most 2^(1-W).
    std::size_t stab_checks = 0, stab_failures = 0;
    double worst_ratio = 0.0;
    for (int i = 0; i < kInstances; ++i) {
        SymbolicPoint x = random_symbolic(rng, 160, 8), y = random_symbolic(rng, 160, 8);
        for (int w : {2, 4, 8, 16, 31}) {
            double dw = dist_symbolic(x.with_radius(w), y.with_radius(w));
            for (int w2 : {w + 1, 2 * w, 64, 150}) {
                ++stab_checks;
                double dw2 = dist_symbolic(x.with_radius(w2), y.with_radius(w2));
                double bound = symbolic_truncation_bound(w);
                worst_ratio = std::max(worst_ratio, (dw2 - dw) / bound);
                if (dw2 < dw - 1e-15 || dw2 - dw > bound + 1e-15) ++stab_failures;
            }
        }
    }
    res.details.push_back(fmt("symbolic window stability: %zu checks, %zu failures, worst change %.4f of 2^(1-W)",
                              stab_checks, stab_failures, worst_ratio));
    res.passed &= stab_failures == 0;
    return res;
}

using Runner = CriterionResult (*)(const AcceptanceOptions&);

struct Entry {
    const char* name;
    const char* title;
    Runner run;
};

const Entry kEntries[] = {
    {"transcription", "piecewise formulas: continuity, composition, invariant intervals", transcription},
    {"ex41", "f2 o f1 is F-sensitive while f1 and f2 are not", ex41},
    {"ex31", "shift blocks: F-sensitive, not cofinitely or syndetically sensitive", ex31},
    {"thm44", "hits of the composition system embed at even times of the generated system", thm44},
    {"thm43", "hits of the k-th iterate embed at multiples of k", thm43},
    {"thm41", "hyperspace probes match the base system", thm41},
    {"thm31", "F-sensitive implies weakly F-sensitive; equal verdicts for fam = infinite", thm31},
    {"families", "windowed family classifiers against brute force", families},
    {"lemma22", "shadow bound for summable rotation perturbations", lemma22},
    {"metrics", "metric axioms, Hausdorff covering, symbolic truncation", metrics},
};

const Entry& entry(const std::string& name) {
    for (const auto& e : kEntries)
        if (name == e.name) return e;
    throw std::invalid_argument("unknown criterion: " + name);
}

} // namespace

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : kEntries) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

std::string criterion_title(const std::string& name) { return entry(name).title; }

CriterionResult run_criterion(const std::string& name, const AcceptanceOptions& options) {
    const Entry& e = entry(name);
    try {
        return e.run(options);
    } catch (const std::exception& ex) {
        return CriterionResult{e.name, e.title, false, {std::string("error: ") + ex.what()}};
    }
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream out;
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  " << r.title << '\n';
    for (const auto& d : r.details) out << "      " << d << '\n';
    return out.str();
}

int run_verify(const std::vector<std::string>& only, const AcceptanceOptions& options, std::ostream& out) {
    const std::vector<std::string>& names = only.empty() ? criterion_names() : only;
    std::size_t passed = 0;
    for (const auto& n : names) {
        CriterionResult r = run_criterion(n, options);
        out << format_result(r) << std::flush;
        passed += r.passed;
    }
    out << passed << '/' << names.size() << " criteria passed\n";
    return passed == names.size() ? 0 : 1;
}

} // namespace nds
