#pragma once

#include <cstdint>
#include <optional>

#include "macc/durations.hpp"
#include "macc/instance.hpp"
#include "macc/plan.hpp"

namespace macc {

struct OracleResult {
    int makespan = 0;
    std::int64_t sum_of_costs = 0;
    Plan witness;
};

/// Exhaustive lexicographically optimal planner for tiny instances: iterates
/// the horizon upward from the relaxation lower bound and, per horizon, runs
/// a depth-first search over all legal action interleavings (the validator's
/// world rules plus the published start-time windows), with state dominance
/// and admissible completion bounds for pruning. Returns the first-feasible
/// horizon with the minimum sum of costs, or nullopt if no plan exists within
/// max_horizon.
///
/// Guard: at most 16 columns, total target height at most 3, at most 2
/// agents, and max_horizon at most 12 unit-equivalents (scaled by the longest
/// action duration). Throws std::invalid_argument when exceeded.
std::optional<OracleResult> brute_force_plan(const Instance& inst, const ScaledDurations& sd,
                                             int max_horizon);

}  // namespace macc
