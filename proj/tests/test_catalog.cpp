#include <doctest.h>

#include <map>
#include <set>
#include <tuple>

#include "helpers.hpp"

using namespace macc;
using namespace macc::testing;

namespace {

int type_count(const Catalog& cat, ActionType t) {
    return static_cast<int>(cat.by_type[static_cast<int>(t)].size());
}

}  // namespace

TEST_CASE("the published start-time windows on E1 at T=4") {
    Catalog cat = build_catalog(make_e1(), unit_sd(), 4);
    // 8 border cells x 2 carry flags x t_s in {0}
    CHECK(type_count(cat, ActionType::Entry) == 16);
    for (int idx : cat.by_type[static_cast<int>(ActionType::Leave)])
        CHECK(cat.actions[idx].tpl.t_s == 2);  // {2..T-2} with T=4
    for (int idx : cat.by_type[static_cast<int>(ActionType::PickUp)]) {
        CHECK(cat.actions[idx].tpl.carry == 0);
        CHECK(cat.actions[idx].tpl.kind == Kind::P);
    }
    CHECK_THROWS_AS(build_catalog(make_e1(), unit_sd(), 3), std::invalid_argument);
}

TEST_CASE("materialized actions respect the horizon") {
    for (int T : {4, 5, 6, 8}) {
        Catalog cat = build_catalog(make_e2(), termes_sd(), T);
        for (const Action& a : cat.actions) {
            CHECK(a.tpl.t_s >= 0);
            CHECK(a.duration() >= 1);
            CHECK(a.t_e <= T - 1);
        }
    }
}

TEST_CASE("actions that cannot finish are dropped") {
    // TERMES deliver lasts 3: from t_s=1 it ends at 4, beyond T-1=3
    Catalog t4 = build_catalog(make_e1(), termes_sd(), 4);
    CHECK(type_count(t4, ActionType::Deliver) == 0);
    Catalog t5 = build_catalog(make_e1(), termes_sd(), 5);
    CHECK(type_count(t5, ActionType::Deliver) > 0);
    for (int idx : t5.by_type[static_cast<int>(ActionType::Deliver)])
        CHECK(t5.actions[idx].t_e == 4);
}

TEST_CASE("unit durations keep every template") {
    Instance e1 = make_e1();
    ScaledDurations sd = unit_sd();
    Catalog templates = enumerate_templates(e1, sd, 6);
    Catalog cat = build_catalog(e1, sd, 6);
    CHECK(cat.actions.size() == templates.actions.size());
}

TEST_CASE("the seven action sets are pairwise disjoint") {
    Catalog cat = build_catalog(make_e2(), one_two_sd(), 8);
    std::set<std::tuple<int, Position, int, int, Position>> seen;
    for (const Action& a : cat.actions) {
        auto key = std::tuple(a.tpl.t_s, a.tpl.start, a.tpl.carry,
                              static_cast<int>(a.tpl.kind), a.tpl.end);
        CHECK(seen.insert(key).second);
    }
}

TEST_CASE("block-action enumeration covers the clipped transitions") {
    Instance e1 = make_e1();
    auto blocks = enumerate_block_actions(e1, 4);
    CHECK(blocks.size() == 144);  // 4 (z,z') pairs x 9 columns x 4 timesteps
    for (const BlockAction& b : blocks) {
        CHECK(b.z2 >= 0);
        CHECK(b.z2 <= e1.dims.z - 1);
        CHECK(std::abs(b.z2 - b.z) <= 1);
        if (b.z == 0) CHECK(b.z2 <= 1);
        if (b.z == e1.dims.z - 1) CHECK(b.z2 >= e1.dims.z - 2);
    }
}

TEST_CASE("wildcard indexes agree with brute-force filtering") {
    Instance e1 = make_e1();
    Catalog cat = build_catalog(e1, one_two_sd(), 6);
    for (int t = 0; t < 6; ++t)
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                for (int z = 0; z < 2; ++z)
                    for (int c = 0; c <= 1; ++c)
                        for (Kind k : {Kind::M, Kind::P, Kind::D}) {
                            Position p = Position::grid(x, y, z);
                            std::set<int> want_start, want_end, want_end_start;
                            for (int i = 0; i < static_cast<int>(cat.actions.size()); ++i) {
                                const Action& a = cat.actions[i];
                                if (a.tpl.carry != c || a.tpl.kind != k) continue;
                                if (a.tpl.t_s == t && a.tpl.start == p) want_start.insert(i);
                                if (a.t_e == t && a.tpl.end == p) want_end.insert(i);
                                if (a.t_e == t && a.tpl.start == p) want_end_start.insert(i);
                            }
                            auto as_set = [](const std::vector<int>& v) {
                                return std::set<int>(v.begin(), v.end());
                            };
                            CHECK(as_set(cat.starting_at(t, p, c, k)) == want_start);
                            CHECK(as_set(cat.ending_with_end_at(t, p, c, k)) == want_end);
                            CHECK(as_set(cat.ending_with_start_at(t, p, c, k)) ==
                                  want_end_start);
                        }
}

TEST_CASE("catalog size grows linearly with the horizon") {
    Instance e1 = make_e1();
    ScaledDurations sd = unit_sd();
    std::size_t n8 = build_catalog(e1, sd, 8).actions.size();
    std::size_t n12 = build_catalog(e1, sd, 12).actions.size();
    std::size_t n16 = build_catalog(e1, sd, 16).actions.size();
    CHECK(n16 - n12 == n12 - n8);  // constant per-timestep increment
}
