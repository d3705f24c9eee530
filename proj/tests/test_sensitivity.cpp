#include <doctest.h>

#include <cmath>

#include "nds/paperbench.hpp"
#include "nds/sensitivity.hpp"
#include "oracles.hpp"

using namespace nds;

namespace {

// N(U, delta) recomputed pair by pair from scratch
std::vector<int> naive_hits(const MapSequence& s, const FiniteSubset& sample, double delta, int horizon) {
    std::vector<int> out;
    const auto& pts = sample.elements();
    for (int n = 1; n <= horizon; ++n) {
        bool hit = false;
        for (std::size_t i = 0; i < pts.size() && !hit; ++i)
            for (std::size_t j = i + 1; j < pts.size() && !hit; ++j)
                hit = distance(prefix_compose(s, n, pts[i]), prefix_compose(s, n, pts[j])) > delta;
        if (hit) out.push_back(n);
    }
    return out;
}

} // namespace

TEST_SUITE("sensitivity") {

TEST_CASE("identity never separates") {
    auto h = hit_times(MapSequence::constant(Identity{}), Ball{interval(0.5), 0.1}, 0.25, 100, 16);
    CHECK(h.times.empty());
    auto r = sensitivity_probe(MapSequence::constant(Identity{}), 0.3, NonemptyFamily{},
                               interval_ball_cover(4), 50, 8);
    CHECK_FALSE(r.holds);
    REQUIRE(r.failing_region);
    CHECK(*r.failing_region == 0);
}

TEST_CASE("hit times match pairwise recomputation") {
    auto g = build("example41_generated").sequence;
    for (double c : {0.1, 0.3, 0.5, 0.9}) {
        Region u = Ball{interval(c), 0.05};
        auto h = hit_times(g, u, 0.2, 60, 9);
        CHECK(h.times.indices() == naive_hits(g, sample_region(u, 9), 0.2, 60));
        for (const auto& [n, w] : h.witnesses) CHECK(w.separation > 0.2);
    }
}

TEST_CASE("composition probe finds separation") {
    auto c = build("example41_composition").sequence;
    auto h = hit_times(c, Ball{interval(0.5), 0.05}, 0.2, 200, 64);
    CHECK_FALSE(h.times.empty());
}

TEST_CASE("shift blocks: cylinder on one coordinate") {
    auto s = build("example31").sequence;
    auto h = hit_times(s, Cylinder{{{0, 0}}, 8, 64}, 0.5, 10, 64);
    CHECK(h.times.contains(3));
}

TEST_CASE("shift blocks: separation at the block times") {
    auto s = MapSequence::shift_blocks();
    auto x = SymbolicPoint::zeros(16);
    for (int r = 1; r <= 6; ++r) {
        auto y = x.flipped(r);
        auto t = pair_separation_times(s, x, y, 0.5, 200);
        CHECK(t.contains(static_cast<int>(shift_block_time(r))));
        // oracle: separated exactly when the composed power is r
        auto powers = oracle::block_powers(200);
        for (int n = 1; n <= 200; ++n) CHECK(t.contains(n) == (powers[n - 1] == r));
    }
}

TEST_CASE("block times") {
    auto powers = oracle::block_powers(5000);
    for (int r = 1; r <= 11; ++r) {
        std::int64_t first = 0;
        for (std::size_t n = 0; n < powers.size(); ++n)
            if (powers[n] == r) {
                first = static_cast<std::int64_t>(n) + 1;
                break;
            }
        CHECK(shift_block_time(r) == first);
    }
}

TEST_CASE("asymptotic pair test") {
    auto id = MapSequence::constant(Identity{});
    auto v = asym_pair_test(id, interval(0.1), interval(0.12), 0.05, InfiniteFamily{}, 100);
    CHECK(v.separated.empty());
    CHECK(v.is_asymptotic);
    auto far = asym_pair_test(id, interval(0.1), interval(0.9), 0.05, InfiniteFamily{}, 100);
    CHECK_FALSE(far.is_asymptotic);
    CHECK(far.separated.size() == 100);
}

TEST_CASE("attaching estimate") {
    auto half = MapSequence::constant(Rotation{0.5});
    FiniteSubset probe({circle(0.25), circle(0.5)});
    auto a = attaching_estimate(half, Ball{circle(0.25), 0.1}, SyndeticFamily{2}, probe, 100);
    REQUIRE(a.attached.size() == 1);
    CHECK(a.attached[0] == 0);
    CHECK(a.fraction == doctest::Approx(0.5));
    CHECK(a.visits[0].max_gap() == 2);
}

TEST_CASE("monotone in delta") {
    auto g = build("example41_generated").sequence;
    Region u = Ball{interval(0.4), 0.05};
    auto loose = hit_times(g, u, 0.1, 150, 16);
    auto tight = hit_times(g, u, 0.3, 150, 16);
    CHECK(tight.times.subset_of(loose.times));
}

TEST_CASE("monotone in resolution") {
    auto g = build("example41_generated").sequence;
    Region u = Ball{interval(0.6), 0.05};
    auto coarse = hit_times(g, u, 0.2, 150, 5);
    auto fine = hit_times(g, u, 0.2, 150, 9);
    CHECK(coarse.times.subset_of(fine.times));
}

TEST_CASE("report records one entry per region") {
    auto s = build("example41_generated");
    auto cover = interval_ball_cover(8);
    auto r = sensitivity_probe(s.sequence, 0.25, InfiniteFamily{}, cover, 200, 16);
    CHECK(r.regions.size() == cover.size());
    bool all = true;
    for (const auto& rec : r.regions) all = all && rec.passed;
    CHECK(r.holds == all);
    CHECK(r.failing_region.has_value() == !all);
    CHECK(region_labels(3) == std::vector<std::string>{"region_00", "region_01", "region_02"});
}

TEST_CASE("weak holds wherever strong holds with a single pair") {
    auto s = build("example41_composition");
    auto cover = interval_ball_cover(8);
    auto strong = sensitivity_probe(s.sequence, 0.25, InfiniteFamily{}, cover, 200, 16);
    auto weak = weak_sensitivity_probe(s.sequence, 0.25, InfiniteFamily{}, cover, 200, 16);
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (!strong.regions[i].passed) continue;
        // a single pair witnessing every hit makes its separation set equal N(U, delta)
        auto h = hit_times(s.sequence, cover[i], 0.25, 200, 16);
        bool one_pair = true;
        for (const auto& [n, w] : h.witnesses)
            one_pair = one_pair && w.i == h.witnesses.front().second.i && w.j == h.witnesses.front().second.j;
        if (one_pair) CHECK(weak.regions[i].passed);
    }
}

TEST_CASE("union of hit sets can beat every single pair") {
    // cofinite N(U, delta) assembled from several pairs while no pair alone is cofinite
    auto s = build("example41_composition");
    auto cover = s.defaults.cover;
    auto strong = sensitivity_probe(s.sequence, 0.25, CofiniteFamily{20}, cover, s.defaults.horizon, s.defaults.resolution);
    auto weak = weak_sensitivity_probe(s.sequence, 0.25, CofiniteFamily{20}, cover, s.defaults.horizon, s.defaults.resolution);
    CHECK(strong.holds);
    CHECK_FALSE(weak.holds);
}

TEST_CASE("hyperspace cardinality bound") {
    auto id = MapSequence::constant(Identity{});
    FiniteSubset big({interval(0.1), interval(0.2), interval(0.3), interval(0.4)});
    CHECK_THROWS(hyperspace_probe(id, 0.1, NonemptyFamily{}, {big}, 0.05, 10, 3));
    FiniteSubset small({interval(0.1), interval(0.6)});
    auto r = hyperspace_probe(id, 0.3, InfiniteFamily{}, {small}, 0.05, 50, 3);
    CHECK_FALSE(r.holds);
}

}
