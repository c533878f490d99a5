#include <doctest.h>

#include <sstream>

#include "kdnls/jobs.hpp"

using namespace kdnls;

TEST_CASE("grid syntax") {
    const Grid2D g = parse_grid("-4:4:401,-2:2:201");
    CHECK(g == Grid2D::make(-4, 4, 401, -2, 2, 201));
    CHECK(format_grid(g) == "-4:4:401,-2:2:201");
    for (const char* bad : {"", "-4:4", "-4:4:401", "4:-4:10,0:1:10", "a:b:c,0:1:10", "0:1:1,0:1:10", "0:1:10,0:1:10,0:1:10"})
        CHECK_THROWS_AS(parse_grid(bad), Error);
}

TEST_CASE("number formatting") {
    CHECK(fmt_num(0.1) == "0.10000000000000001");
    CHECK(fmt_num(1e-20) == "9.9999999999999995e-21");
    CHECK(fmt_num(-4) == "-4");
}

TEST_CASE("CSV layout") {
    const SolutionSource s = build_solution("rogue1", {});
    const Grid2D g = Grid2D::make(-4, 4, 5, -1, 1, 3);
    const std::string csv = to_csv(sample(s.field, g));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,t,intensity,re,im");
    std::getline(in, line);
    CHECK(line.rfind("-4,-1,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("-2,-1,", 0) == 0);
    std::size_t rows = 2;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == g.size());
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv == to_csv(sample(build_solution("rogue1", {}).field, g)));
}

TEST_CASE("PGM layout") {
    const SolutionSource s = build_solution("rogue1", {});
    const std::string pgm = to_pgm(sample(s.field, Grid2D::make(-4, 4, 7, -4, 4, 5)));
    CHECK(pgm.rfind("P5\n7 5\n255\n", 0) == 0);
    CHECK(pgm.size() == std::string("P5\n7 5\n255\n").size() + 35);
}

TEST_CASE("solution parameters") {
    CHECK_THROWS_AS(build_solution("nope", {}), Error);
    CHECK_THROWS_AS(build_solution("rogue1", {{"zz", 1.0}}), Error);
    CHECK_THROWS_AS(build_solution("soliton1", {{"m1", NAN}}), Error);
    const SolutionSource s = build_solution("soliton1", {{"m1", 1.5}});
    CHECK(s.params.at("m1") == 1.5);
    CHECK(s.params.count("n1") == 1);
    for (const std::string& n : solution_names()) CHECK_NOTHROW(param_schema(n));
}

TEST_CASE("engine and closed form agree for rogue2") {
    const SolutionSource c = build_solution("rogue2", {});
    const SolutionSource e = build_solution("rogue2", {{"engine", 1.0}});
    CHECK_FALSE(c.engine);
    CHECK(e.engine);
    CHECK(std::norm(e.field(0, 0)) == doctest::Approx(25.0).epsilon(0.05));
}

TEST_CASE("figure map") {
    CHECK(figures().size() == 10);
    const std::string cmd = figure_command(figures()[6]);
    CHECK(cmd.find("--solution rogue2") != std::string::npos);
    CHECK(cmd.find("--param S1=500") != std::string::npos);
}

TEST_CASE("sidecar lists the effective configuration") {
    const SolutionSource s = build_solution("rogue1", {});
    const std::string m = meta_json(s, Grid2D::make(-1, 1, 3, -1, 1, 3), "csv");
    for (const char* key : {"\"tool\"", "\"version\"", "\"params\"", "\"grid\"", "\"convention_variant\""})
        CHECK(m.find(key) != std::string::npos);
}
