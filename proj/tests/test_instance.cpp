#include <doctest.h>

#include <cstdlib>
#include <set>

#include "helpers.hpp"

using namespace macc;
using namespace macc::testing;

TEST_CASE("parse_instance accepts the smallest nontrivial instance") {
    Instance e1 = make_e1();
    CHECK(e1.dims.x == 3);
    CHECK(e1.dims.y == 3);
    CHECK(e1.dims.z == 2);
    CHECK(e1.agent_limit == 1);
    CHECK(e1.target_at(1, 1) == 1);
    CHECK(e1.target_at(0, 0) == 0);
}

TEST_CASE("parse_instance accepts the ramp instance") {
    Instance e2 = make_e2();
    CHECK(e2.target_at(1, 1) == 2);
    CHECK(e2.target_at(1, 2) == 1);
    CHECK(e2.agent_limit == 2);
}

TEST_CASE("parse_instance rejects invalid inputs") {
    CHECK_THROWS_WITH_AS(
        parse_instance(R"({"x":3,"y":3,"z":2,"agent_limit":1,
            "heightmap":[[1,0,0],[0,0,0],[0,0,0]]})"),
        doctest::Contains("border target"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"x":2,"y":3,"z":2,"agent_limit":1,
            "heightmap":[[0,0],[0,0],[0,0]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"x":3,"y":3,"z":2,"agent_limit":1,
            "heightmap":[[0,0,0],[0,2,0],[0,0,0]]})"),
                    ParseError);  // height above z-1
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"x":3,"y":3,"z":2,"agent_limit":0,
            "heightmap":[[0,0,0],[0,0,0],[0,0,0]]})"),
                    ParseError);
}

TEST_CASE("border_cells returns the perimeter ring at z=0") {
    Instance e1 = make_e1();
    auto cells = border_cells(e1);
    CHECK(cells.size() == 8);  // 2*3 + 2*3 - 4
    for (const Position& p : cells) {
        CHECK(p.z == 0);
        CHECK(e1.is_border(p.x, p.y));
    }
    CHECK(border_cells(make_e2()).size() == 12);  // 2*4 + 2*4 - 4
}

TEST_CASE("neighbors clips to the grid") {
    Instance e1 = make_e1();
    auto corner = neighbors(e1, 0, 0);
    CHECK(corner.size() == 2);
    std::set<std::pair<int, int>> corner_set(corner.begin(), corner.end());
    CHECK(corner_set == std::set<std::pair<int, int>>{{1, 0}, {0, 1}});

    CHECK(neighbors(e1, 1, 1).size() == 4);

    auto edge = neighbors(e1, 0, 1);
    std::set<std::pair<int, int>> edge_set(edge.begin(), edge.end());
    CHECK(edge_set == std::set<std::pair<int, int>>{{0, 0}, {0, 2}, {1, 1}});
}

TEST_CASE("neighbors is symmetric") {
    Instance inst = parse_instance(R"({"x":5,"y":4,"z":2,"agent_limit":1,
        "heightmap":[[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]]})");
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 5; ++x)
            for (auto [nx, ny] : neighbors(inst, x, y)) {
                auto back = neighbors(inst, nx, ny);
                bool found = false;
                for (auto [bx, by] : back) found |= bx == x && by == y;
                CHECK(found);
            }
}

TEST_CASE("min_border_distance") {
    Instance e1 = make_e1();
    CHECK(min_border_distance(e1, 1, 1) == 0);  // neighbor (0,1) is border

    Instance five = parse_instance(R"({"x":5,"y":5,"z":2,"agent_limit":1,
        "heightmap":[[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]]})");
    CHECK(min_border_distance(five, 2, 2) == 1);
    CHECK(min_border_distance(five, 1, 1) == 0);

    // independent check: distance is 0 exactly when a neighbor lies on the ring
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            bool adjacent = false;
            for (auto [nx, ny] : neighbors(five, x, y))
                adjacent |= five.is_border(nx, ny);
            CHECK((min_border_distance(five, x, y) == 0) == adjacent);
        }
}
