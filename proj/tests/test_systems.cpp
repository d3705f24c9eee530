#include <doctest.h>

#include <cmath>
#include <random>

#include "nds/paperbench.hpp"
#include "nds/systems.hpp"
#include "oracles.hpp"

using namespace nds;

namespace {

double iv(const Point& p) { return p.as<IntervalPoint>().value(); }

MapSpec f1() { return map_from_pieces(example41_pieces().f1); }
MapSpec f2() { return map_from_pieces(example41_pieces().f2); }

} // namespace

TEST_SUITE("systems") {

TEST_CASE("interval maps match their formulas") {
    CHECK(apply_interval(f1(), 0.125) == doctest::Approx(0.5));
    CHECK(apply_interval(f2(), 1.0) == doctest::Approx(0.0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        double x = u(rng);
        CHECK(apply_interval(f1(), x) == doctest::Approx(oracle::f1(x)));
        CHECK(apply_interval(f2(), x) == doctest::Approx(oracle::f2(x)));
    }
}

TEST_CASE("piecewise linear validation") {
    CHECK_THROWS(PiecewiseLinear({{0.0, 0.0}, {0.5, 1.0}}));
    CHECK_THROWS(PiecewiseLinear({{0.0, 0.0}, {0.6, 1.0}, {0.5, 0.0}, {1.0, 0.0}}));
    CHECK_THROWS(PiecewiseLinear({{0.0, 0.0}, {1.0, 2.0}}));
}

TEST_CASE("shift blocks prefix") {
    auto s = MapSequence::shift_blocks();
    auto x = SymbolicPoint::from_coordinates({{1, 1}}, 16);
    auto at3 = prefix_compose(s, 3, x).as<SymbolicPoint>();
    CHECK(at3.at(0) == 1);
    auto at4 = prefix_compose(s, 4, x).as<SymbolicPoint>();
    CHECK(at4.at(1) == 1);
    CHECK(at4.at(0) == 0);
}

TEST_CASE("shift blocks agree with block simulation") {
    auto s = MapSequence::shift_blocks();
    auto powers = oracle::block_powers(300);
    auto x = SymbolicPoint::from_coordinates({{0, 1}}, 16);
    Point cur = x;
    for (std::int64_t n = 1; n <= 300; ++n) {
        cur = apply(s.at(n), cur);
        auto expect = x.shifted(powers[n - 1]);
        CHECK(distance(cur, expect) == 0.0);
    }
}

TEST_CASE("cyclic and generated systems") {
    auto c = MapSequence::cyclic({f1(), f2()});
    CHECK(iv(prefix_compose(c, 2, interval(0.5))) == doctest::Approx(0.5));
    auto g = generated_system({f1(), f2()});
    for (int n = 1; n <= 6; ++n)
        CHECK(apply_interval(g.at(n), 0.3) == doctest::Approx(apply_interval(n % 2 ? f1() : f2(), 0.3)));
}

TEST_CASE("kth iterate composes consecutive blocks") {
    auto g = generated_system({f1(), f2()});
    auto k2 = kth_iterate(g, 2);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        double x = u(rng);
        for (int m = 0; m <= 5; ++m)
            CHECK(iv(prefix_compose(k2, m, interval(x))) == doctest::Approx(iv(prefix_compose(g, 2 * m, interval(x)))));
        CHECK(apply_interval(k2.at(1), x) == doctest::Approx(oracle::f2_after_f1(x)));
    }
    auto s3 = kth_iterate(MapSequence::shift_blocks(), 3);
    auto y = SymbolicPoint::from_coordinates({{2, 1}, {-1, 1}}, 16);
    for (int m = 0; m <= 10; ++m)
        CHECK(distance(prefix_compose(s3, m, y), prefix_compose(MapSequence::shift_blocks(), 3 * m, y)) == 0.0);
}

TEST_CASE("induced map on finite subsets") {
    FiniteSubset a({interval(0.0), interval(0.125)});
    auto img = induced_apply(f1(), a);
    REQUIRE(img.size() == 2);
    CHECK(iv(img.elements()[0]) == doctest::Approx(0.0));
    CHECK(iv(img.elements()[1]) == doctest::Approx(0.5));
    FiniteSubset b({interval(0.2), interval(0.3)});
    CHECK(induced_apply(f2(), FiniteSubset({interval(0.25), interval(0.25)})).size() == 1);
    CHECK(induced_apply(f1(), b).size() == 2);
}

TEST_CASE("uniform distance between maps") {
    CHECK(sup_metric(f1(), Identity{}, 1000) == doctest::Approx(0.75));
    CHECK(sup_metric(Rotation{0.1}, Rotation{0.3}, 100) == doctest::Approx(0.2));
    CHECK(sup_metric(Rotation{0.0}, Rotation{0.9}, 100) == doctest::Approx(0.1));
}

TEST_CASE("tail sums") {
    auto geo = MapSequence::rotation_series(0.0, SeriesKind::geometric);
    auto r = tail_sum(geo, Identity{}, 60, 100);
    for (std::size_t n = 1; n <= 60; ++n)
        CHECK(r.partial_sums[n - 1] == doctest::Approx(1.0 - std::ldexp(1.0, -static_cast<int>(n))));
    CHECK(r.converged);
    auto harm = tail_sum(MapSequence::rotation_series(0.0, SeriesKind::harmonic), Identity{}, 1000, 100);
    CHECK_FALSE(harm.converged);
}

TEST_CASE("feeble open probe") {
    CHECK(feeble_open_probe(f1(), Ball{interval(0.5), 0.1}, 100));
    CHECK_FALSE(feeble_open_probe(MapSpec(PiecewiseLinear({{0.0, 0.5}, {1.0, 0.5}})), Ball{interval(0.5), 0.1}, 100));
    CHECK(feeble_open_probe(Identity{}, Ball{interval(0.2), 0.01}, 100));
    CHECK_FALSE(feeble_open_probe(Identity{}, Ball{interval(0.2), 0.001}, 100));
}

TEST_CASE("shadow bound") {
    auto geo = MapSequence::rotation_series(0.0, SeriesKind::geometric);
    auto a = shadow_bound_check(geo, Identity{}, circle(0.0), 0, 3);
    CHECK(a.ok);
    auto b = shadow_bound_check(geo, Identity{}, circle(0.0), 2, 2);
    CHECK(b.lhs == doctest::Approx(0.1875));
    CHECK(b.rhs == doctest::Approx(0.375));
    CHECK(b.ok);
    // with the sum starting at f_2 the bound misses f_1's own displacement
    auto c = shadow_bound_check(geo, Identity{}, circle(0.0), 0, 1);
    CHECK(c.lhs == doctest::Approx(0.5));
    CHECK(c.rhs == doctest::Approx(0.25));
    CHECK_FALSE(c.ok);
}

TEST_CASE("non commuting limit is reported") {
    auto g = generated_system({f1(), f2()});
    CHECK_THROWS_AS(shadow_bound_check(g, f1(), interval(0.3), 1, 2), CommutationError);
}

}
