#include <doctest.h>

#include <cmath>
#include <random>

#include "nds/spaces.hpp"
#include "oracles.hpp"

using namespace nds;

namespace {

std::vector<double> values_of(const FiniteSubset& s) {
    std::vector<double> out;
    for (const auto& p : s.elements()) out.push_back(p.as<IntervalPoint>().value());
    return out;
}

FiniteSubset interval_set(std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back(interval(x));
    return FiniteSubset(pts);
}

} // namespace

TEST_SUITE("spaces") {

TEST_CASE("interval metric") {
    CHECK(dist_interval(IntervalPoint(0.2), IntervalPoint(0.7)) == doctest::Approx(0.5));
    CHECK(dist_interval(IntervalPoint(0.0), IntervalPoint(1.0)) == 1.0);
    CHECK(distance(interval(0.3), interval(0.3)) == 0.0);
    CHECK_THROWS(IntervalPoint(1.5));
    CHECK_THROWS(IntervalPoint(-0.1));
}

TEST_CASE("circle metric wraps") {
    CHECK(dist_circle(CirclePoint(0.1), CirclePoint(0.9)) == doctest::Approx(0.2));
    CHECK(dist_circle(CirclePoint(0.0), CirclePoint(0.5)) == doctest::Approx(0.5));
    CHECK(CirclePoint(1.25).value() == doctest::Approx(0.25));
}

TEST_CASE("symbolic metric: single coordinate") {
    auto x = SymbolicPoint::zeros();
    CHECK(dist_symbolic(x, x.flipped(0)) == 1.0);
    CHECK(dist_symbolic(x, x.flipped(3)) == doctest::Approx(0.125));
    CHECK(dist_symbolic(x, x.flipped(-2)) == doctest::Approx(0.25));
}

TEST_CASE("symbolic metric: zeros against ones") {
    for (int w : {4, 16, 64}) {
        std::map<std::int64_t, int> ones;
        for (int j = -w; j <= w; ++j) ones[j] = 1;
        double d = dist_symbolic(SymbolicPoint::zeros(w), SymbolicPoint::from_coordinates(ones, w));
        CHECK(d >= 3.0 - std::ldexp(1.0, 1 - w) - 1e-12);
        CHECK(d <= 3.0);
        CHECK(d + symbolic_truncation_bound(w) == doctest::Approx(3.0));
    }
}

TEST_CASE("symbolic metric agrees with a direct sum") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-20, 20), bit(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<std::int64_t, int> a, b;
        for (int t = 0; t < 12; ++t) {
            a[coord(rng)] = bit(rng);
            b[coord(rng)] = bit(rng);
        }
        const int w = 16;
        double got = dist_symbolic(SymbolicPoint::from_coordinates(a, w), SymbolicPoint::from_coordinates(b, w));
        CHECK(got == doctest::Approx(oracle::symbolic(a, b, w)).epsilon(1e-14));
    }
}

TEST_CASE("shift moves coordinates") {
    auto x = SymbolicPoint::from_coordinates({{5, 1}}, 16);
    CHECK(x.shifted(5).at(0) == 1);
    CHECK(x.shifted(5).at(5) == 0);
    CHECK(x.shifted(-3).at(8) == 1);
    CHECK(x.at(100) == 0);
}

TEST_CASE("radius mismatch is rejected") {
    CHECK_THROWS_AS(dist_symbolic(SymbolicPoint::zeros(8), SymbolicPoint::zeros(16)), SpaceMismatch);
}

TEST_CASE("product metric is the sum") {
    ProductPoint p(interval(0.1), interval(0.2));
    ProductPoint q(interval(0.2), interval(0.3));
    CHECK(dist_product(p, q) == doctest::Approx(0.2));
    ProductPoint r(interval(0.0), SymbolicPoint::zeros(8));
    ProductPoint s(interval(0.5), SymbolicPoint::zeros(8));
    CHECK(dist_product(r, s) == doctest::Approx(0.5));
}

TEST_CASE("hausdorff distance") {
    CHECK(hausdorff(interval_set({0.0, 1.0}), interval_set({0.5})) == doctest::Approx(0.5));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(1 + trial % 5), b(1 + trial % 3);
        for (auto& v : a) v = u(rng);
        for (auto& v : b) v = u(rng);
        CHECK(hausdorff(interval_set(a), interval_set(b)) == doctest::Approx(oracle::hausdorff(a, b)));
    }
}

TEST_CASE("finite subsets deduplicate and reject mixed spaces") {
    CHECK(interval_set({0.5, 0.5, 0.5 + 1e-15}).size() == 1);
    CHECK_THROWS_AS(FiniteSubset({interval(0.1), circle(0.1)}), SpaceMismatch);
    CHECK_THROWS_AS(distance(interval(0.1), circle(0.1)), SpaceMismatch);
}

TEST_CASE("metric axioms on random triples") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        double a = u(rng), b = u(rng), c = u(rng);
        for (auto make : {interval, circle}) {
            Point x = make(a), y = make(b), z = make(c);
            CHECK(distance(x, y) == doctest::Approx(distance(y, x)));
            CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-12);
            CHECK(distance(x, x) == 0.0);
        }
    }
}

TEST_CASE("ball samples on the interval") {
    auto s = values_of(sample_region(Ball{interval(0.5), 0.1}, 3));
    REQUIRE(s.size() == 3);
    CHECK(s[0] == doctest::Approx(0.4));
    CHECK(s[1] == doctest::Approx(0.5));
    CHECK(s[2] == doctest::Approx(0.6));

    auto clipped = values_of(sample_region(Ball{interval(0.0), 0.2}, 3));
    REQUIRE(clipped.size() == 3);
    CHECK(clipped[0] == doctest::Approx(0.0));
    CHECK(clipped[1] == doctest::Approx(0.1));
    CHECK(clipped[2] == doctest::Approx(0.2));
}

TEST_CASE("samples contain the center and are deterministic") {
    Region b = Ball{interval(0.3), 0.05};
    auto a1 = sample_region(b, 8);
    auto a2 = sample_region(b, 8);
    CHECK(values_of(a1) == values_of(a2));
    bool has_center = false;
    for (double v : values_of(a1)) has_center |= std::fabs(v - 0.3) < 1e-12;
    CHECK(has_center);
}

TEST_CASE("cylinder sample flips free coordinates near the constraint") {
    Cylinder c{{{0, 0}}, 1, 16};
    auto s = sample_region(c, 16);
    CHECK(s.size() == 3);
    for (const auto& p : s.elements()) {
        CHECK(p.as<SymbolicPoint>().at(0) == 0);
        CHECK(contains(c, p));
    }
    Cylinder wider{{{0, 1}, {2, 1}}, 8, 16};
    auto w = sample_region(wider, 64);
    for (const auto& p : w.elements()) {
        CHECK(p.as<SymbolicPoint>().at(0) == 1);
        CHECK(p.as<SymbolicPoint>().at(2) == 1);
    }
    CHECK(w.size() > 3);
}

TEST_CASE("hausdorff ball samples stay within the radius") {
    HausdorffBall hb{interval_set({0.2, 0.7}), 0.05};
    auto s = sample_region(hb, 5);
    CHECK(s.size() > 1);
    for (const auto& p : s.elements()) CHECK(distance(p, Point(hb.center)) <= hb.radius + 1e-12);
}

}
