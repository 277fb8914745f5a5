#include "macc/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace macc {

namespace {

std::string pos_str(const Position& p) {
    auto c = [](int v) {
        if (v == Position::kStart) return std::string("S");
        if (v == Position::kEnd) return std::string("E");
        return std::to_string(v);
    };
    return "(" + c(p.x) + "," + c(p.y) + "," + c(p.z) + ")";
}

struct Checker {
    const Instance& inst;
    const ScaledDurations& sd;
    const Plan& plan;
    ViolationReport report;

    void flag(const std::string& rule, int t, int x, int y, const std::string& detail) {
        report.violations.push_back(Violation{rule, t, x, y, detail});
    }

    bool structure_ok(const Action& a) {
        const ActionTemplate& tpl = a.tpl;
        int t = tpl.t_s;
        bool ok = true;
        auto bad = [&](const std::string& rule, const std::string& detail) {
            flag(rule, t, tpl.start.on_grid() ? tpl.start.x : -1,
                 tpl.start.on_grid() ? tpl.start.y : -1, detail);
            ok = false;
        };

        if (a.t_e <= tpl.t_s) bad("flow", "nonpositive duration");
        if (tpl.t_s < 0 || a.t_e > plan.makespan - 1)
            bad("flow", "action runs outside [0, T-1]");

        auto grid_ok = [this](const Position& p) {
            return p.on_grid() && inst.in_grid(p.x, p.y) && p.z >= 0 && p.z < inst.dims.z;
        };

        switch (tpl.type) {
            case ActionType::Entry:
                if (!tpl.start.is_start()) bad("flow", "entry must start off-grid");
                if (!grid_ok(tpl.end) || !inst.is_border(tpl.end.x, tpl.end.y) || tpl.end.z != 0)
                    bad("border", "entry must end at a border ground cell");
                break;
            case ActionType::Leave:
                if (!tpl.end.is_end()) bad("flow", "leave must end off-grid");
                if (!grid_ok(tpl.start) || !inst.is_border(tpl.start.x, tpl.start.y) ||
                    tpl.start.z != 0)
                    bad("border", "leave must start at a border ground cell");
                break;
            case ActionType::MoveBlock:
            case ActionType::MoveEmpty: {
                if (!grid_ok(tpl.start) || !grid_ok(tpl.end)) {
                    bad("gravity", "move endpoints outside the grid");
                    break;
                }
                int manhattan =
                    std::abs(tpl.end.x - tpl.start.x) + std::abs(tpl.end.y - tpl.start.y);
                if (manhattan != 1) bad("gravity", "move must go to a 4-neighbor column");
                if (std::abs(tpl.end.z - tpl.start.z) > 1)
                    bad("gravity", "move may climb or descend at most one level");
                if (tpl.carry != (tpl.type == ActionType::MoveBlock ? 1 : 0))
                    bad("flow", "move carry flag inconsistent with action type");
                break;
            }
            case ActionType::Wait:
                if (!grid_ok(tpl.start) || !(tpl.start == tpl.end))
                    bad("gravity", "wait must stay in place on the grid");
                break;
            case ActionType::PickUp:
            case ActionType::Deliver: {
                if (!grid_ok(tpl.start) || !grid_ok(tpl.end)) {
                    bad("gravity", "pick_up/deliver endpoints outside the grid");
                    break;
                }
                int manhattan =
                    std::abs(tpl.end.x - tpl.start.x) + std::abs(tpl.end.y - tpl.start.y);
                if (manhattan != 1) bad("gravity", "affected column must be a 4-neighbor");
                if (tpl.end.z != tpl.start.z)
                    bad("gravity", "agent and affected block level must match");
                if (tpl.start.z > inst.dims.z - 2)
                    bad("gravity", "block level outside [0, Z-2]");
                if (tpl.carry != (tpl.type == ActionType::Deliver ? 1 : 0))
                    bad("flow", "pick_up requires empty hands, deliver a carried block");
                break;
            }
        }
        if (tpl.kind != kind_of(tpl.type)) bad("flow", "kind letter inconsistent with type");
        if (ok && a.duration() != sd.duration_of(tpl))
            bad("flow", std::string("duration mismatch for ") + to_string(tpl.type) +
                            ": got " + std::to_string(a.duration()) + ", expected " +
                            std::to_string(sd.duration_of(tpl)));
        return ok;
    }

    void run() {
        const int T = plan.makespan;
        bool structural = true;
        for (const Action& a : plan.actions) structural &= structure_ok(a);
        if (!structural) return;  // replay needs well-formed actions

        // heights from completions
        const int cols = inst.column_count();
        std::vector<std::vector<int>> deltas(T, std::vector<int>(cols, 0));
        std::vector<std::pair<BlockAction, int>> derived;  // transition, block time
        for (const Action& a : plan.actions) {
            if (a.tpl.kind == Kind::M) continue;
            int b = a.t_e - 1;
            int col = inst.column_id(a.tpl.end.x, a.tpl.end.y);
            int dz = a.tpl.kind == Kind::D ? 1 : -1;
            deltas[b][col] += dz;
            derived.push_back({BlockAction{b, a.tpl.end.x, a.tpl.end.y,
                                           a.tpl.end.z + (dz < 0 ? 1 : 0),
                                           a.tpl.end.z + (dz > 0 ? 1 : 0)},
                               b});
            if (inst.is_border(a.tpl.end.x, a.tpl.end.y))
                flag("border", b, a.tpl.end.x, a.tpl.end.y,
                     "block placed on or removed from a border cell");
        }

        std::vector<std::vector<int>> H(T, std::vector<int>(cols, 0));
        for (int t = 1; t < T; ++t)
            for (int c = 0; c < cols; ++c) {
                H[t][c] = H[t - 1][c] + deltas[t - 1][c];
                if (H[t][c] < 0 || H[t][c] > inst.dims.z - 1)
                    flag("height-flow", t, c % inst.dims.x, c / inst.dims.x,
                         "column height leaves [0, Z-1]");
            }

        // pick_up/deliver level consistency against the replayed world
        for (const Action& a : plan.actions) {
            if (a.tpl.kind == Kind::M) continue;
            int b = a.t_e - 1;
            int col = inst.column_id(a.tpl.end.x, a.tpl.end.y);
            int before = H[b][col];
            int expected = a.tpl.kind == Kind::D ? a.tpl.end.z : a.tpl.end.z + 1;
            if (before != expected)
                flag("height-flow", b, a.tpl.end.x, a.tpl.end.y,
                     std::string(to_string(a.tpl.type)) + " at level " +
                         std::to_string(a.tpl.end.z) + " but column height is " +
                         std::to_string(before));
        }

        // final world
        for (int c = 0; c < cols; ++c)
            if (H[T - 1][c] != inst.target[c])
                flag("height-flow", T - 1, c % inst.dims.x, c / inst.dims.x,
                     "final height " + std::to_string(H[T - 1][c]) + " != target " +
                         std::to_string(inst.target[c]));

        // supplied block actions must be exactly the derived transitions
        {
            std::multiset<BlockAction> supplied(plan.block_actions.begin(),
                                                plan.block_actions.end());
            for (const auto& [b, t] : derived) {
                auto it = supplied.find(b);
                if (it != supplied.end())
                    supplied.erase(it);
                else
                    flag("completion", t, b.x, b.y,
                         "height transition has no matching block action record");
            }
            for (const BlockAction& b : supplied)
                flag("completion", b.t, b.x, b.y,
                     "recorded block action has no matching pick_up/deliver completion");
        }

        // support: the start cell is the top of its column for the whole action
        for (const Action& a : plan.actions) {
            if (!a.tpl.start.on_grid()) continue;
            int col = inst.column_id(a.tpl.start.x, a.tpl.start.y);
            for (int t = a.tpl.t_s; t < a.t_e; ++t)
                if (H[t][col] != a.tpl.start.z) {
                    flag("support", t, a.tpl.start.x, a.tpl.start.y,
                         std::string(to_string(a.tpl.type)) + " stands at level " +
                             std::to_string(a.tpl.start.z) + " but column height is " +
                             std::to_string(H[t][col]));
                    break;
                }
        }

        // exclusion zones: at most one active action touches a column
        {
            std::vector<std::vector<int>> occupancy(T, std::vector<int>(cols, 0));
            for (const Action& a : plan.actions) {
                std::vector<int> zone;
                if (a.tpl.start.on_grid())
                    zone.push_back(inst.column_id(a.tpl.start.x, a.tpl.start.y));
                if (a.tpl.end.on_grid()) {
                    int col = inst.column_id(a.tpl.end.x, a.tpl.end.y);
                    if (zone.empty() || zone[0] != col) zone.push_back(col);
                }
                for (int t = a.tpl.t_s; t < a.t_e; ++t)
                    for (int col : zone) ++occupancy[t][col];
            }
            for (int t = 0; t < T; ++t)
                for (int c = 0; c < cols; ++c)
                    if (occupancy[t][c] > 1)
                        flag("exclusion", t, c % inst.dims.x, c / inst.dims.x,
                             std::to_string(occupancy[t][c]) +
                                 " actions hold the same column");
        }

        // agent cap
        {
            std::vector<int> active(T, 0);
            for (const Action& a : plan.actions)
                for (int t = a.tpl.t_s; t < a.t_e; ++t) ++active[t];
            for (int t = 0; t < T; ++t)
                if (active[t] > inst.agent_limit)
                    flag("agent-cap", t, -1, -1,
                         std::to_string(active[t]) + " agents active, limit " +
                             std::to_string(inst.agent_limit));
        }

        // chaining: arrivals and departures balance at every flow node; the
        // node key carries the carry flag, so this is also the carry automaton
        {
            std::map<std::tuple<int, Position, int>, std::pair<int, int>> nodes;
            for (const Action& a : plan.actions) {
                if (a.tpl.type != ActionType::Entry)
                    nodes[{a.tpl.t_s, a.tpl.start, a.tpl.carry}].second++;
                if (a.tpl.type != ActionType::Leave)
                    nodes[{a.t_e, a.agent_pos_after(), a.carry_after()}].first++;
            }
            for (const auto& [key, counts] : nodes) {
                if (counts.first == counts.second) continue;
                const auto& [t, pos, carry] = key;
                flag("flow", t, pos.x, pos.y,
                     "node " + pos_str(pos) + " carry=" + std::to_string(carry) + " has " +
                         std::to_string(counts.first) + " arrivals vs " +
                         std::to_string(counts.second) + " departures");
            }
        }
    }
};

}  // namespace

ViolationReport validate_plan(const Instance& inst, const ScaledDurations& sd,
                              const Plan& plan) {
    Checker checker{inst, sd, plan, {}};
    if (plan.makespan < 4) {
        checker.flag("flow", -1, -1, -1, "makespan below the structural minimum of 4");
        return checker.report;
    }
    checker.run();
    return checker.report;
}

Plan pad_with_waits(const Plan& unit_plan, const ScaledDurations& sd_target) {
    const int T = unit_plan.makespan;
    for (const Action& a : unit_plan.actions)
        if (a.duration() != 1)
            throw std::invalid_argument("pad_with_waits: input plan is not unit-duration");

    // stretch[n]: longest target duration among actions starting at unit
    // step n; steps with no starting action keep the unit tick of 1
    std::vector<int> stretch(T, 1);
    for (const Action& a : unit_plan.actions)
        stretch[a.tpl.t_s] =
            std::max(stretch[a.tpl.t_s], sd_target.duration_of(a.tpl));

    std::vector<int> offset(T + 1, 0);
    for (int n = 0; n < T; ++n) offset[n + 1] = offset[n] + stretch[n];

    Plan padded;
    padded.makespan = offset[T];
    for (const Action& a : unit_plan.actions) {
        Action re = a;
        re.tpl.t_s = offset[a.tpl.t_s];
        re.t_e = re.tpl.t_s + sd_target.duration_of(a.tpl);
        padded.actions.push_back(re);

        // fill the rest of the barrier window with unit waits
        int barrier = offset[a.tpl.t_s + 1];
        if (a.tpl.type == ActionType::Leave || re.t_e == barrier) continue;
        Position at = re.agent_pos_after();
        int carry = re.carry_after();
        for (int t = re.t_e; t < barrier; ++t) {
            Action wait;
            wait.tpl = ActionTemplate{ActionType::Wait, t, at, carry, Kind::M, at};
            wait.t_e = t + 1;
            padded.actions.push_back(wait);
        }
    }

    for (const Action& a : padded.actions) {
        if (a.tpl.kind == Kind::M) continue;
        int dz = a.tpl.kind == Kind::D ? 1 : -1;
        padded.block_actions.push_back(BlockAction{a.t_e - 1, a.tpl.end.x, a.tpl.end.y,
                                                   a.tpl.end.z + (dz < 0 ? 1 : 0),
                                                   a.tpl.end.z + (dz > 0 ? 1 : 0)});
    }
    normalize_plan(padded);
    padded.itineraries = extract_itineraries(padded);
    return padded;
}

std::string ViolationReport::to_text() const {
    if (ok()) return "plan valid\n";
    std::ostringstream out;
    out << violations.size() << " violation(s)\n";
    for (const Violation& v : violations) {
        out << "  [" << v.rule << "] t=" << v.t;
        if (v.x >= 0) out << " at (" << v.x << "," << v.y << ")";
        out << ": " << v.detail << "\n";
    }
    return out.str();
}

std::string ViolationReport::to_json() const {
    nlohmann::json doc;
    doc["valid"] = ok();
    nlohmann::json list = nlohmann::json::array();
    for (const Violation& v : violations) {
        nlohmann::json e;
        e["rule"] = v.rule;
        e["t"] = v.t;
        e["x"] = v.x;
        e["y"] = v.y;
        e["detail"] = v.detail;
        list.push_back(std::move(e));
    }
    doc["violations"] = std::move(list);
    return doc.dump(2) + "\n";
}

}  // namespace macc
