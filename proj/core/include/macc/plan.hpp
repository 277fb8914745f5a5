#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macc/catalog.hpp"

namespace macc {

/// A solved construction plan: the selected timed actions, the height
/// transitions they caused, and the per-agent decomposition.
struct Plan {
    int makespan = 0;  // plan horizon T
    std::int64_t sum_of_costs = 0;
    std::vector<Action> actions;             // canonical order
    std::vector<BlockAction> block_actions;  // height changes only (z != z')
    std::vector<std::vector<int>> itineraries;  // indices into actions

    std::int64_t recompute_sum_of_costs() const {
        std::int64_t total = 0;
        for (const Action& a : actions) total += a.duration();
        return total;
    }
    /// Maximum number of simultaneously active agents.
    int agents_used() const;
    int count_of(ActionType t) const;
};

/// Orders actions canonically and recomputes derived fields. Itineraries are
/// not touched.
void normalize_plan(Plan& plan);

/// Splits the selected actions into per-agent chains from an entry to a
/// leave by pairing arrivals with departures at every flow node
/// (t, position, carry) in sorted order. Throws on flow imbalance.
std::vector<std::vector<int>> extract_itineraries(const Plan& plan);

/// UTF-8 JSON plan file; sentinel coordinates encode as "S"/"E".
std::string serialize_plan(const Plan& plan);
Plan parse_plan(const std::string& text);
Plan load_plan(const std::string& path);

}  // namespace macc
