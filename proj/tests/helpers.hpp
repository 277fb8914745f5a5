#pragma once

#include <string>

#include "macc/catalog.hpp"
#include "macc/durations.hpp"
#include "macc/instance.hpp"
#include "macc/plan.hpp"

namespace macc::testing {

inline Instance make_e1() {
    return parse_instance(R"({
        "x": 3, "y": 3, "z": 2, "agent_limit": 1,
        "heightmap": [[0,0,0],[0,1,0],[0,0,0]]
    })");
}

inline Instance make_e2() {
    return parse_instance(R"({
        "x": 4, "y": 4, "z": 3, "agent_limit": 2,
        "heightmap": [[0,0,0,0],[0,2,0,0],[0,1,0,0],[0,0,0,0]]
    })");
}

inline Instance make_empty3() {
    return parse_instance(R"({
        "x": 3, "y": 3, "z": 2, "agent_limit": 1,
        "heightmap": [[0,0,0],[0,0,0],[0,0,0]]
    })");
}

inline DurationSpec spec_of(std::int64_t entry, std::int64_t leave, std::int64_t move_block,
                            std::int64_t move_empty, std::int64_t pick_up,
                            std::int64_t deliver) {
    return DurationSpec::per_type_spec({{ActionType::Entry, Rational(entry)},
                                        {ActionType::Leave, Rational(leave)},
                                        {ActionType::MoveBlock, Rational(move_block)},
                                        {ActionType::MoveEmpty, Rational(move_empty)},
                                        {ActionType::PickUp, Rational(pick_up)},
                                        {ActionType::Deliver, Rational(deliver)}});
}

inline ScaledDurations unit_sd() { return scale(DurationSpec::unit()); }
inline ScaledDurations one_two_sd() { return scale(spec_of(2, 1, 1, 1, 2, 2)); }
inline ScaledDurations one_two_three_sd() { return scale(spec_of(3, 2, 3, 1, 3, 3)); }
inline ScaledDurations termes_sd() { return scale(spec_of(3, 3, 3, 2, 2, 3)); }

inline Action make_action(ActionType type, int t_s, Position start, int carry, Position end,
                          int t_e) {
    return Action{ActionTemplate{type, t_s, start, carry, kind_of(type), end}, t_e};
}

/// Minimal hand-built optimal plan for E1 under unit durations: enter at
/// (0,1) carrying, deliver to (1,1), leave.
inline Plan e1_unit_plan() {
    Plan plan;
    plan.makespan = 4;
    plan.actions = {
        make_action(ActionType::Entry, 0, Position::start(), 1, Position::grid(0, 1, 0), 1),
        make_action(ActionType::Deliver, 1, Position::grid(0, 1, 0), 1, Position::grid(1, 1, 0),
                    2),
        make_action(ActionType::Leave, 2, Position::grid(0, 1, 0), 0, Position::end(), 3),
    };
    plan.block_actions = {BlockAction{1, 1, 1, 0, 1}};
    normalize_plan(plan);
    plan.itineraries = extract_itineraries(plan);
    return plan;
}

}  // namespace macc::testing
