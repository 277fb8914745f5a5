#include "macc/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "macc/bounds.hpp"

namespace macc {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr int kMaxAgents = 4;  // capacity; the guard admits at most 2

struct FreeAgent {
    std::int8_t x, y, z, carry;
};

struct InFlight {
    int t_e;
    std::int8_t kind;  // ActionType
    std::int8_t x, y, z, carry;  // agent node when the action completes
    bool leaving;
    std::int8_t col1, col2;      // reserved columns, -1 if unused
    std::int8_t delta_col, dz;   // pending height change at t_e, -1/0 if none
};

struct StateKey {
    std::uint64_t a, b, c;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull;
        h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= k.c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

class Search {
  public:
    Search(const Instance& inst, const ScaledDurations& sd, int horizon)
        : inst_(inst), sd_(sd), T_(horizon) {
        X_ = inst.dims.x;
        Y_ = inst.dims.y;
        Z_ = inst.dims.z;
        cols_ = inst.column_count();
        borders_ = border_cells(inst);
        d_entry_min_ = sd.min_duration(ActionType::Entry);
        d_leave_min_ = sd.min_duration(ActionType::Leave);
        d_deliver_min_ = sd.min_duration(ActionType::Deliver);
        d_pick_min_ = sd.min_duration(ActionType::PickUp);
    }

    std::optional<std::pair<std::int64_t, std::vector<Action>>> run() {
        std::vector<std::int8_t> heights(cols_, 0);
        std::vector<InFlight> inflight;
        std::vector<FreeAgent> free;
        path_.clear();
        best_cost_ = kInf;
        memo_.clear();
        dfs(0, heights, inflight, free, 0);
        if (best_cost_ >= kInf) return std::nullopt;
        return std::make_pair(best_cost_, best_witness_);
    }

  private:
    const Instance& inst_;
    const ScaledDurations& sd_;
    int T_, X_, Y_, Z_, cols_;
    std::vector<Position> borders_;
    int d_entry_min_, d_leave_min_, d_deliver_min_, d_pick_min_;

    std::vector<Action> path_;
    std::vector<Action> best_witness_;
    std::int64_t best_cost_ = kInf;
    std::unordered_map<StateKey, std::int64_t, StateKeyHash> memo_;

    int col_id(int x, int y) const { return y * X_ + x; }

    // Exact (injective) encoding: 16 column heights in key.a, the two agent
    // slots in key.b and key.c alongside the timestep. The guard admits at
    // most two agents, so this is lossless.
    StateKey encode(int t, const std::vector<std::int8_t>& heights,
                    const std::vector<InFlight>& inflight,
                    const std::vector<FreeAgent>& free) const {
        StateKey key{0, 0, 0};
        for (int c = 0; c < cols_; ++c)
            key.a |= static_cast<std::uint64_t>(heights[c] & 0xf) << (4 * c);
        std::array<std::uint64_t, kMaxAgents> words{};
        int n = 0;
        for (const InFlight& r : inflight) {
            std::uint64_t w = 1;  // in-flight marker
            w = (w << 7) | static_cast<std::uint64_t>(r.t_e);
            w = (w << 1) | (r.leaving ? 1 : 0);
            w = (w << 4) | (r.x & 0xf);
            w = (w << 4) | (r.y & 0xf);
            w = (w << 4) | (r.z & 0xf);
            w = (w << 1) | (r.carry & 1);
            w = (w << 5) | ((r.col1 + 1) & 0x1f);
            w = (w << 5) | ((r.col2 + 1) & 0x1f);
            w = (w << 5) | ((r.delta_col + 1) & 0x1f);
            w = (w << 2) | ((r.dz + 1) & 0x3);
            words[n++] = w;
        }
        for (const FreeAgent& f : free) {
            std::uint64_t w = 2;  // free marker
            w = (w << 4) | (f.x & 0xf);
            w = (w << 4) | (f.y & 0xf);
            w = (w << 4) | (f.z & 0xf);
            w = (w << 1) | (f.carry & 1);
            words[n++] = w;
        }
        std::sort(words.begin(), words.begin() + n);
        key.b = words[0];
        key.c = (words[1] << 8) | static_cast<std::uint64_t>(t & 0xff);
        return key;
    }

    bool prune(int t, const std::vector<std::int8_t>& heights,
               const std::vector<InFlight>& inflight, const std::vector<FreeAgent>& free,
               std::int64_t cost) {
        // effective heights include committed pick/deliver completions
        std::array<int, 64> eff{};
        for (int c = 0; c < cols_; ++c) eff[c] = heights[c];
        for (const InFlight& r : inflight)
            if (r.delta_col >= 0) eff[r.delta_col] += r.dz;

        std::int64_t deficit = 0, excess = 0;
        int max_work = 0;
        for (int c = 0; c < cols_; ++c) {
            int diff = inst_.target[c] - eff[c];
            if (diff > 0) {
                deficit += diff;
                max_work = std::max(max_work, diff * d_deliver_min_);
            } else if (diff < 0) {
                excess -= diff;
                max_work = std::max(max_work, -diff * d_pick_min_);
            }
        }

        int carriers = 0;
        for (const InFlight& r : inflight) carriers += !r.leaving && r.carry;
        for (const FreeAgent& f : free) carriers += f.carry;

        // time to completion
        int rem = 0;
        if (max_work > 0) rem = std::max(rem, max_work + d_leave_min_);
        for (const InFlight& r : inflight)
            rem = std::max(rem, (r.t_e - t) + (r.leaving ? 0 : d_leave_min_));
        if (!free.empty()) rem = std::max(rem, d_leave_min_);
        std::int64_t extra_entries = deficit - carriers - excess;
        if (extra_entries > 0) {
            if (t > T_ - 4) return true;  // no further entries admitted
            rem = std::max(rem, d_entry_min_ + d_deliver_min_ + d_leave_min_);
        }
        if (t + rem > T_ - 1) return true;

        // cost bound
        std::int64_t lb = cost;
        lb += deficit * d_deliver_min_ + excess * d_pick_min_;
        for (const InFlight& r : inflight) lb += r.leaving ? 0 : d_leave_min_;
        lb += static_cast<std::int64_t>(free.size()) * d_leave_min_;
        if (extra_entries > 0) lb += extra_entries * (d_entry_min_ + d_leave_min_);
        return lb >= best_cost_;
    }

    bool done(const std::vector<std::int8_t>& heights, const std::vector<InFlight>& inflight,
              const std::vector<FreeAgent>& free) const {
        if (!inflight.empty() || !free.empty()) return false;
        for (int c = 0; c < cols_; ++c)
            if (heights[c] != inst_.target[c]) return false;
        return true;
    }

    void dfs(int t, std::vector<std::int8_t>& heights, std::vector<InFlight>& inflight,
             std::vector<FreeAgent>& free, std::int64_t cost) {
        if (done(heights, inflight, free)) {
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_witness_ = path_;
            }
            return;
        }
        if (t >= T_ - 1) return;
        if (prune(t, heights, inflight, free, cost)) return;

        StateKey key = encode(t, heights, inflight, free);
        auto [it, inserted] = memo_.try_emplace(key, cost);
        if (!inserted) {
            if (it->second <= cost) return;
            it->second = cost;
        }

        std::uint32_t held = 0;
        for (const InFlight& r : inflight) {
            if (r.col1 >= 0) held |= 1u << r.col1;
            if (r.col2 >= 0) held |= 1u << r.col2;
        }
        std::vector<Action> started;
        assign_agents(0, t, heights, inflight, free, held, started, cost);
    }

    // joint choice: every freed agent starts an action, then optional entries
    void assign_agents(std::size_t k, int t, std::vector<std::int8_t>& heights,
                       std::vector<InFlight>& inflight, std::vector<FreeAgent>& free,
                       std::uint32_t held, std::vector<Action>& started, std::int64_t cost) {
        if (k == free.size()) {
            choose_entries(0, t, heights, inflight, free, held, started, cost);
            return;
        }
        const FreeAgent agent = free[k];
        Position at = Position::grid(agent.x, agent.y, agent.z);
        const bool move_window = t >= 1 && t <= T_ - 3;

        auto try_action = [&](ActionType type, Position end, int carry) {
            ActionTemplate tpl{type, t, type == ActionType::Entry ? Position::start() : at,
                               carry, kind_of(type), end};
            int d = sd_.duration_of(tpl);
            if (t + d > T_ - 1) return;
            std::uint32_t zone = 0;
            if (tpl.start.on_grid()) zone |= 1u << col_id(tpl.start.x, tpl.start.y);
            if (tpl.end.on_grid()) zone |= 1u << col_id(tpl.end.x, tpl.end.y);
            if (zone & held) return;
            Action a{tpl, t + d};
            started.push_back(a);
            path_.push_back(a);
            assign_agents(k + 1, t, heights, inflight, free, held | zone, started, cost + d);
            path_.pop_back();
            started.pop_back();
        };

        // deliver: place onto a neighbor column at the agent's level
        if (agent.carry == 1 && move_window && agent.z <= Z_ - 2)
            for (auto [nx, ny] : neighbors(inst_, agent.x, agent.y))
                if (!inst_.is_border(nx, ny) && heights[col_id(nx, ny)] == agent.z)
                    try_action(ActionType::Deliver, Position::grid(nx, ny, agent.z), 1);

        // pick_up: take the top block of a neighbor column one above the agent
        if (agent.carry == 0 && move_window && agent.z <= Z_ - 2)
            for (auto [nx, ny] : neighbors(inst_, agent.x, agent.y))
                if (heights[col_id(nx, ny)] == agent.z + 1)
                    try_action(ActionType::PickUp, Position::grid(nx, ny, agent.z), 0);

        // moves: climb at most one level, landing on the neighbor's top
        if (move_window)
            for (auto [nx, ny] : neighbors(inst_, agent.x, agent.y)) {
                int z2 = heights[col_id(nx, ny)];
                if (std::abs(z2 - agent.z) > 1) continue;
                try_action(agent.carry ? ActionType::MoveBlock : ActionType::MoveEmpty,
                           Position::grid(nx, ny, z2), agent.carry);
            }

        // leave from a border ground cell
        if (agent.z == 0 && inst_.is_border(agent.x, agent.y) && t >= 2 && t <= T_ - 2)
            try_action(ActionType::Leave, Position::end(), agent.carry);

        if (move_window) try_action(ActionType::Wait, at, agent.carry);
    }

    void choose_entries(std::size_t border_idx, int t, std::vector<std::int8_t>& heights,
                        std::vector<InFlight>& inflight, std::vector<FreeAgent>& free,
                        std::uint32_t held, std::vector<Action>& started, std::int64_t cost) {
        advance(t, heights, inflight, started, cost);

        if (t > T_ - 4) return;
        // `started` holds one action per freed agent plus entries chosen so
        // far; agents active during [t, t+1) are exactly inflight + started.
        if (static_cast<int>(inflight.size() + started.size()) >= inst_.agent_limit) return;

        for (std::size_t j = border_idx; j < borders_.size(); ++j) {
            const Position& b = borders_[j];
            std::uint32_t zone = 1u << col_id(b.x, b.y);
            if (zone & held) continue;
            for (int carry : {1, 0}) {
                ActionTemplate tpl{ActionType::Entry, t, Position::start(), carry, Kind::M, b};
                int d = sd_.duration_of(tpl);
                if (t + d > T_ - 1) continue;
                Action a{tpl, t + d};
                started.push_back(a);
                path_.push_back(a);
                choose_entries(j + 1, t, heights, inflight, free, held | zone, started,
                               cost + d);
                path_.pop_back();
                started.pop_back();
            }
        }
    }

    void advance(int t, const std::vector<std::int8_t>& heights,
                 const std::vector<InFlight>& inflight, const std::vector<Action>& started,
                 std::int64_t cost) {
        std::vector<InFlight> next_inflight;
        next_inflight.reserve(inflight.size() + started.size());
        std::vector<FreeAgent> next_free;
        std::vector<std::int8_t> next_heights = heights;

        auto settle = [&](const InFlight& r) {
            if (r.t_e > t + 1) {
                next_inflight.push_back(r);
                return;
            }
            if (r.delta_col >= 0) next_heights[r.delta_col] += r.dz;
            if (!r.leaving) next_free.push_back(FreeAgent{r.x, r.y, r.z, r.carry});
        };

        for (const InFlight& r : inflight) settle(r);
        for (const Action& a : started) {
            InFlight r;
            r.t_e = a.t_e;
            r.kind = static_cast<std::int8_t>(a.tpl.type);
            Position after = a.agent_pos_after();
            r.leaving = a.tpl.type == ActionType::Leave;
            r.x = static_cast<std::int8_t>(r.leaving ? 0 : after.x);
            r.y = static_cast<std::int8_t>(r.leaving ? 0 : after.y);
            r.z = static_cast<std::int8_t>(r.leaving ? 0 : after.z);
            r.carry = static_cast<std::int8_t>(a.carry_after());
            r.col1 = a.tpl.start.on_grid()
                         ? static_cast<std::int8_t>(col_id(a.tpl.start.x, a.tpl.start.y))
                         : -1;
            int end_col = a.tpl.end.on_grid() ? col_id(a.tpl.end.x, a.tpl.end.y) : -1;
            r.col2 = static_cast<std::int8_t>(end_col == r.col1 ? -1 : end_col);
            if (a.tpl.kind == Kind::M) {
                r.delta_col = -1;
                r.dz = 0;
            } else {
                r.delta_col = static_cast<std::int8_t>(end_col);
                r.dz = a.tpl.kind == Kind::D ? 1 : -1;
            }
            settle(r);
        }

        dfs(t + 1, next_heights, next_inflight, next_free, cost);
    }
};

}  // namespace

std::optional<OracleResult> brute_force_plan(const Instance& inst, const ScaledDurations& sd,
                                             int max_horizon) {
    if (inst.column_count() > 16)
        throw std::invalid_argument("oracle: guard exceeded: more than 16 columns");
    std::int64_t total_height = 0;
    for (int h : inst.target) total_height += h;
    if (total_height > 3)
        throw std::invalid_argument("oracle: guard exceeded: total target height above 3");
    if (inst.agent_limit > 2)
        throw std::invalid_argument("oracle: guard exceeded: more than 2 agents");
    int unit_equivalent = 12 * sd.max_duration_overall(inst.dims.z);
    if (max_horizon > unit_equivalent)
        throw std::invalid_argument("oracle: guard exceeded: horizon above " +
                                    std::to_string(unit_equivalent));

    int start = std::max(lower_bound_lr(inst, sd), 4);
    for (int T = start; T <= max_horizon; ++T) {
        Search search(inst, sd, T);
        auto found = search.run();
        if (!found) continue;
        OracleResult result;
        result.makespan = T;
        result.sum_of_costs = found->first;
        result.witness.makespan = T;
        result.witness.actions = found->second;
        for (const Action& a : result.witness.actions) {
            if (a.tpl.kind == Kind::M) continue;
            int dz = a.tpl.kind == Kind::D ? 1 : -1;
            result.witness.block_actions.push_back(
                BlockAction{a.t_e - 1, a.tpl.end.x, a.tpl.end.y, a.tpl.end.z + (dz < 0 ? 1 : 0),
                            a.tpl.end.z + (dz > 0 ? 1 : 0)});
        }
        normalize_plan(result.witness);
        result.witness.itineraries = extract_itineraries(result.witness);
        return result;
    }
    return std::nullopt;
}

}  // namespace macc
