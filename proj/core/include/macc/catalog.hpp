#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "macc/durations.hpp"
#include "macc/instance.hpp"

namespace macc {

/// Un-timed action tuple (t_s, x, y, z, c, k, x', y', z'). For pick_up and
/// deliver the end position names the affected block column; the agent stays
/// at the start position.
struct ActionTemplate {
    ActionType type = ActionType::Wait;
    int t_s = 0;
    Position start;
    int carry = 0;
    Kind kind = Kind::M;
    Position end;

    friend bool operator==(const ActionTemplate&, const ActionTemplate&) = default;
};

/// Timed action: t_e = t_s + f_d(template).
struct Action {
    ActionTemplate tpl;
    int t_e = 0;

    int duration() const { return t_e - tpl.t_s; }
    /// Agent position when the action completes (pick_up/deliver keep the
    /// agent at the start cell; leave goes off-grid).
    Position agent_pos_after() const {
        if (tpl.kind == Kind::M) return tpl.end;
        return tpl.start;
    }
    int carry_after() const {
        if (tpl.kind == Kind::P) return 1;
        if (tpl.kind == Kind::D) return 0;
        return tpl.carry;
    }

    friend bool operator==(const Action&, const Action&) = default;
};

/// Column height bookkeeping tuple (t, x, y, z, z'); lasts one timestep.
struct BlockAction {
    int t = 0;
    int x = 0;
    int y = 0;
    int z = 0;
    int z2 = 0;

    friend bool operator==(const BlockAction&, const BlockAction&) = default;
    friend auto operator<=>(const BlockAction&, const BlockAction&) = default;
};

/// Time-expanded action universe for one horizon: the seven R_a sets plus the
/// block-action set H, with the start/end-anchored lookups the constraint
/// families need.
class Catalog {
  public:
    int horizon = 0;
    std::vector<Action> actions;       // canonical order, all seven types
    std::vector<BlockAction> blocks;   // canonical order

    std::vector<std::vector<int>> by_type;  // indexed by ActionType

    /// Wildcard lookups. Keys pack (t, x, y, z, c, k); sentinel coordinates
    /// never appear (off-grid positions generate no flow/collision rows).
    const std::vector<int>& starting_at(int t_s, const Position& p, int c, Kind k) const;
    const std::vector<int>& ending_with_end_at(int t_e, const Position& p, int c, Kind k) const;
    const std::vector<int>& ending_with_start_at(int t_e, const Position& p, int c, Kind k) const;

    int block_index(int t, int x, int y, int z, int z2) const;  // -1 if absent
    const std::vector<int>& blocks_at(int t, int x, int y) const;

    std::string describe_counts() const;

    friend Catalog enumerate_templates(const Instance& inst, const ScaledDurations& sd,
                                       int horizon);
    friend void materialize(Catalog& cat, const ScaledDurations& sd);

  private:
    bool materialized_ = false;
    std::map<std::uint64_t, std::vector<int>> start_index_;
    std::map<std::uint64_t, std::vector<int>> end_index_;        // keyed on end position
    std::map<std::uint64_t, std::vector<int>> end_start_index_;  // keyed on start position
    std::map<std::uint64_t, int> block_index_;
    std::map<std::uint64_t, std::vector<int>> blocks_by_cell_;

    void build_indexes();
};

/// Emits the seven Q_a template sets for the given horizon with the published
/// start-time windows. Throws if horizon < 4. Durations are not consulted at
/// this stage; actions are timed by materialize().
Catalog enumerate_templates(const Instance& inst, const ScaledDurations& sd, int horizon);

/// Assigns t_e = t_s + f_d(v) to every template and drops actions that would
/// run past the fixed final timestep (t_e > horizon - 1). Builds the lookup
/// indexes.
void materialize(Catalog& cat, const ScaledDurations& sd);

/// Convenience: enumerate + materialize.
Catalog build_catalog(const Instance& inst, const ScaledDurations& sd, int horizon);

/// All block-action tuples for the instance and horizon.
std::vector<BlockAction> enumerate_block_actions(const Instance& inst, int horizon);

}  // namespace macc
