#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nds/experiment.hpp"
#include "nds/serialize.hpp"

using namespace nds;

TEST_SUITE("serialize") {

TEST_CASE("points round trip") {
    std::vector<Point> pts{interval(0.3), circle(0.7), SymbolicPoint::from_coordinates({{1, 1}, {-2, 1}}, 8),
                           ProductPoint(interval(0.1), interval(0.9)),
                           FiniteSubset({interval(0.1), interval(0.2)})};
    for (const auto& p : pts) {
        auto back = point_from_json(to_json(p));
        CHECK(same_space(p, back));
        CHECK(distance(p, back) == 0.0);
    }
    CHECK(point_from_json(Json(0.5), SpaceKind::interval).as<IntervalPoint>().value() == 0.5);
}

TEST_CASE("maps and sequences round trip") {
    auto sys = build("example41_generated");
    auto j = to_json(sys.sequence);
    auto back = sequence_from_json(j);
    CHECK(to_json(back) == j);
    for (int n = 1; n <= 4; ++n)
        CHECK(apply_interval(back.at(n), 0.37) == apply_interval(sys.sequence.at(n), 0.37));
    auto it = kth_iterate(MapSequence::shift_blocks(), 2);
    CHECK(to_json(sequence_from_json(to_json(it))) == to_json(it));
    CHECK_THROWS_AS(map_from_json(Json{{"kind", "warp"}}), ConfigError);
}

TEST_CASE("families") {
    for (FamilySpec f : {FamilySpec(NonemptyFamily{}), FamilySpec(InfiniteFamily{3, 0.5}),
                         FamilySpec(CofiniteFamily{7}), FamilySpec(SyndeticFamily{5}),
                         dual(CofiniteFamily{2})})
        CHECK(family_from_json(to_json(f)) == f);
    CHECK(family_from_json(Json("syndetic")) == FamilySpec(SyndeticFamily{}));
    CHECK_THROWS_AS(family_from_json(Json("often")), ConfigError);
}

TEST_CASE("regions round trip") {
    std::vector<Region> rs{Ball{interval(0.5), 0.1}, Cylinder{{{0, 1}, {3, 0}}, 4, 16},
                           HausdorffBall{FiniteSubset({interval(0.2)}), 0.05}, Separated{0.3}};
    for (const auto& r : rs) CHECK(to_json(region_from_json(to_json(r))) == to_json(r));
}

TEST_CASE("config parsing") {
    auto cfg = parse_config(Json::parse(R"({"system": "example41_composition", "deltas": [0.2],
        "horizon": 50, "modes": ["F-sensitive", "weakly-F-sensitive"]})"));
    CHECK(cfg.horizon == 50);
    CHECK(cfg.resolution == 64);
    CHECK(cfg.cover.size() == 16);
    CHECK(cfg.modes.size() == 2);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"system": "nope"})")), UnknownSystem);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"system": "identity", "horizon": -1})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"system": "identity", "deterministic": false})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"horizon": 5})")), ConfigError);
}

TEST_CASE("experiment output is deterministic and complete") {
    auto cfg = parse_config(Json::parse(R"({"system": "example41_generated", "deltas": [0.25],
        "horizon": 40, "resolution": 8, "cover": {"kind": "balls", "count": 4},
        "modes": ["F-sensitive", "weakly-F-sensitive"]})"));
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(a.files[i].content == b.files[i].content);
    CHECK(a.files.front().name == "report.json");
    CHECK(a.files.back().name == "plotdata.tsv");
    CHECK(a.files.size() == 1 + 4 + 1);
    CHECK(a.report["schema"] == kReportSchema);
    CHECK(a.report.contains("implication_checks"));
    // one CSV row per time step plus the header
    const auto& csv = a.files[1].content;
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
    CHECK(csv.rfind("n,max_separation,witness_i,witness_j\n", 0) == 0);

    auto dir = std::filesystem::temp_directory_path() / "nds_serialize_test";
    std::filesystem::remove_all(dir);
    write_outputs(a, dir);
    std::ifstream in(dir / "report.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == a.files.front().content);
    std::filesystem::remove_all(dir);
}

}
