#include <doctest.h>

#include <cmath>

#include "nds/paperbench.hpp"
#include "oracles.hpp"

using namespace nds;

TEST_SUITE("paperbench") {

TEST_CASE("piece tables are continuous and match the formulas") {
    auto p = example41_pieces();
    for (const auto* t : {&p.f1, &p.f2, &p.composition}) CHECK(verify_continuity(*t).continuous);
    auto f1 = map_from_pieces(p.f1), f2 = map_from_pieces(p.f2), c = map_from_pieces(p.composition);
    CHECK(f1(0.25) == doctest::Approx(1.0));
    CHECK(c(1.0 / 16) == doctest::Approx(0.0));
    CHECK(c(0.75) == doctest::Approx(1.0));
    for (int i = 0; i <= 10000; ++i) {
        double x = i / 10000.0;
        CHECK(f1(x) == doctest::Approx(oracle::f1(x)));
        CHECK(f2(x) == doctest::Approx(oracle::f2(x)));
        CHECK(c(x) == doctest::Approx(oracle::f2_after_f1(x)));
        CHECK(c(x) == doctest::Approx(oracle::f2(oracle::f1(x))));
    }
}

TEST_CASE("breakpoint values of f2") {
    auto r = verify_continuity(example41_pieces().f2);
    REQUIRE(r.breakpoint_values.size() == 4);
    std::vector<double> expect{0.25, 0.0, 1.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.breakpoint_values[i].value == doctest::Approx(expect[i]));
}

TEST_CASE("perturbed table is caught") {
    auto p = example41_pieces();
    p.f2[1].intercept += 0.01;
    auto r = verify_continuity(p.f2);
    CHECK_FALSE(r.continuous);
    REQUIRE(r.offending);
    CHECK(r.worst_mismatch == doctest::Approx(0.01));
    CHECK_THROWS_AS(map_from_pieces(p.f2), std::invalid_argument);
    CHECK_FALSE(verify_continuity(build("example41_f2", p)).continuous);
}

TEST_CASE("block times") {
    std::vector<std::int64_t> expect{3, 9, 19, 37, 71, 137, 267, 525, 1039};
    for (int r = 1; r <= 9; ++r) {
        CHECK(shift_block_time(r) == expect[r - 1]);
        std::int64_t sum = 0;
        for (int s = 1; s < r; ++s) sum += (std::int64_t{1} << s) + 2;
        CHECK(shift_block_time(r) == sum + (std::int64_t{1} << r) + 1);
    }
}

TEST_CASE("shift block map at index 9") {
    auto s = build("example31").sequence;
    auto x = SymbolicPoint::from_coordinates({{2, 1}}, 16);
    CHECK(apply(s.at(9), x).as<SymbolicPoint>().at(0) == 1);
    CHECK(apply(s.at(10), x).as<SymbolicPoint>().at(4) == 1);
    CHECK(apply(s.at(5), x).as<SymbolicPoint>().at(2) == 1);
}

TEST_CASE("registry") {
    auto reg = registry();
    CHECK(reg.size() == 8);
    for (const auto& [name, desc] : reg) {
        CHECK_FALSE(desc.empty());
        CHECK(build(name).name == name);
    }
    CHECK_THROWS_AS(build("no_such_system"), UnknownSystem);
}

TEST_CASE("covers") {
    auto c = interval_ball_cover(4);
    REQUIRE(c.size() == 4);
    CHECK(std::get<Ball>(c[1]).center.as<IntervalPoint>().value() == doctest::Approx(0.375));
    CHECK(std::get<Ball>(c[1]).radius == doctest::Approx(0.125));
    auto cyl = cylinder_cover(-1, 1);
    CHECK(cyl.size() == 8);
    CHECK(std::get<Cylinder>(cyl[1]).constraints.at(1) == 1);
}

}
