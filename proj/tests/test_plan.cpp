#include <doctest.h>

#include "helpers.hpp"

using namespace macc;
using namespace macc::testing;

TEST_CASE("itinerary extraction on the hand-built E1 plan") {
    Plan plan = e1_unit_plan();
    auto its = extract_itineraries(plan);
    REQUIRE(its.size() == 1);
    REQUIRE(its[0].size() == 3);
    CHECK(plan.actions[its[0][0]].tpl.type == ActionType::Entry);
    CHECK(plan.actions[its[0][1]].tpl.type == ActionType::Deliver);
    CHECK(plan.actions[its[0][2]].tpl.type == ActionType::Leave);
}

TEST_CASE("empty plan has no itineraries") {
    Plan plan;
    plan.makespan = 4;
    CHECK(extract_itineraries(plan).empty());
}

TEST_CASE("itinerary count equals entry count") {
    Plan plan = e1_unit_plan();
    CHECK(extract_itineraries(plan).size() ==
          static_cast<std::size_t>(plan.count_of(ActionType::Entry)));
}

TEST_CASE("broken chains are reported as flow imbalance") {
    Plan plan = e1_unit_plan();
    std::erase_if(plan.actions, [](const Action& a) { return a.tpl.kind == Kind::D; });
    plan.sum_of_costs = plan.recompute_sum_of_costs();
    CHECK_THROWS_WITH_AS(extract_itineraries(plan), doctest::Contains("flow imbalance"),
                         std::runtime_error);
}

TEST_CASE("plan files round-trip byte-identically") {
    Plan plan = e1_unit_plan();
    std::string once = serialize_plan(plan);
    Plan parsed = parse_plan(once);
    std::string twice = serialize_plan(parsed);
    CHECK(once == twice);
    CHECK(parsed.makespan == plan.makespan);
    CHECK(parsed.sum_of_costs == plan.sum_of_costs);
    CHECK(parsed.actions == plan.actions);
    CHECK(parsed.block_actions == plan.block_actions);
}

TEST_CASE("the worked deliver example serializes with its exact fields") {
    // an agent at (1,2,0) delivering to (2,2,0) over [5,7)
    Plan plan;
    plan.makespan = 9;
    plan.actions = {make_action(ActionType::Deliver, 5, Position::grid(1, 2, 0), 1,
                                Position::grid(2, 2, 0), 7)};
    plan.block_actions = {BlockAction{6, 2, 2, 0, 1}};
    plan.sum_of_costs = 2;
    std::string text = serialize_plan(plan);
    Plan parsed = parse_plan(text);
    REQUIRE(parsed.actions.size() == 1);
    CHECK(parsed.actions[0].tpl.t_s == 5);
    CHECK(parsed.actions[0].t_e == 7);
    CHECK(parsed.actions[0].tpl.kind == Kind::D);
    CHECK(parsed.actions[0].tpl.type == ActionType::Deliver);
    CHECK(parsed.actions[0].tpl.end == Position::grid(2, 2, 0));
}

TEST_CASE("sentinel coordinates encode as S and E strings") {
    Plan plan = e1_unit_plan();
    std::string text = serialize_plan(plan);
    CHECK(text.find("\"S\"") != std::string::npos);
    CHECK(text.find("\"E\"") != std::string::npos);
}

TEST_CASE("parse_plan rejects inconsistent files") {
    Plan plan = e1_unit_plan();
    std::string text = serialize_plan(plan);
    // corrupt the recorded sum of costs
    std::string bad = text;
    auto pos = bad.find("\"sum_of_costs\": 3");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 17, "\"sum_of_costs\": 4");
    CHECK_THROWS_AS(parse_plan(bad), ParseError);
    CHECK_THROWS_AS(parse_plan("{"), ParseError);
}

TEST_CASE("agents_used reports the peak concurrency") {
    Plan plan = e1_unit_plan();
    CHECK(plan.agents_used() == 1);
    Plan empty;
    CHECK(empty.agents_used() == 0);
}
