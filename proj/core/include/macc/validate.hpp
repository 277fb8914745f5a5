#pragma once

#include <string>
#include <vector>

#include "macc/durations.hpp"
#include "macc/instance.hpp"
#include "macc/plan.hpp"

namespace macc {

struct Violation {
    std::string rule;  // gravity/exclusion/agent-cap/flow/height-flow/completion/border/support
    int t = -1;
    int x = -1;
    int y = -1;
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_text() const;
    std::string to_json() const;
};

/// Replays a plan against the world rules: empty start, target structure at
/// the final timestep, block-free borders, height changes only through
/// pick_up/deliver completions, column exclusion zones, the agent cap,
/// standing on column tops, action chaining with the carry-flag automaton,
/// and single-step moves. Written against the prose semantics, independent
/// of the MILP machinery.
ViolationReport validate_plan(const Instance& inst, const ScaledDurations& sd, const Plan& plan);

/// Re-times a unit-duration plan to the target durations with a global
/// barrier per unit timestep: agents wait until every action scheduled in the
/// same unit step has finished. The result is executable (validates) and its
/// makespan equals the wait-padding upper bound.
Plan pad_with_waits(const Plan& unit_plan, const ScaledDurations& sd_target);

}  // namespace macc
