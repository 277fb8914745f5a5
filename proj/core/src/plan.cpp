#include "macc/plan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace macc {

using nlohmann::json;

namespace {

auto action_key(const Action& a) {
    return std::tuple(a.tpl.t_s, static_cast<int>(a.tpl.type), a.tpl.start, a.tpl.end,
                      a.tpl.carry, a.t_e);
}

json coord_json(int v) {
    if (v == Position::kStart) return "S";
    if (v == Position::kEnd) return "E";
    return v;
}

int coord_parse(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "S") return Position::kStart;
        if (s == "E") return Position::kEnd;
        throw ParseError("plan: bad coordinate '" + s + "'");
    }
    return j.get<int>();
}

ActionType classify(const Position& start, const Position& end, int carry, Kind kind) {
    if (start.is_start()) return ActionType::Entry;
    if (end.is_end()) return ActionType::Leave;
    if (kind == Kind::P) return ActionType::PickUp;
    if (kind == Kind::D) return ActionType::Deliver;
    if (start == end) return ActionType::Wait;
    return carry ? ActionType::MoveBlock : ActionType::MoveEmpty;
}

}  // namespace

int Plan::agents_used() const {
    if (actions.empty()) return 0;
    int max_t = 0;
    for (const Action& a : actions) max_t = std::max(max_t, a.t_e);
    std::vector<int> active(max_t + 1, 0);
    for (const Action& a : actions)
        for (int t = a.tpl.t_s; t < a.t_e; ++t) ++active[t];
    return *std::max_element(active.begin(), active.end());
}

int Plan::count_of(ActionType t) const {
    int n = 0;
    for (const Action& a : actions) n += a.tpl.type == t;
    return n;
}

void normalize_plan(Plan& plan) {
    std::sort(plan.actions.begin(), plan.actions.end(),
              [](const Action& a, const Action& b) { return action_key(a) < action_key(b); });
    std::sort(plan.block_actions.begin(), plan.block_actions.end());
    plan.sum_of_costs = plan.recompute_sum_of_costs();
}

std::vector<std::vector<int>> extract_itineraries(const Plan& plan) {
    // Flow node: (t, agent position, carry). Arrivals at a node are paired
    // with departures in sorted order; agents are interchangeable, so any
    // pairing is valid and this one is reproducible.
    struct Node {
        std::vector<int> arrivals;
        std::vector<int> departures;
    };
    std::map<std::tuple<int, Position, int>, Node> nodes;
    std::vector<int> entries;

    for (int i = 0; i < static_cast<int>(plan.actions.size()); ++i) {
        const Action& a = plan.actions[i];
        if (a.tpl.type == ActionType::Entry)
            entries.push_back(i);
        else
            nodes[{a.tpl.t_s, a.tpl.start, a.tpl.carry}].departures.push_back(i);
        if (a.tpl.type != ActionType::Leave)
            nodes[{a.t_e, a.agent_pos_after(), a.carry_after()}].arrivals.push_back(i);
    }

    std::vector<int> next(plan.actions.size(), -1);
    auto by_key = [&plan](int a, int b) {
        return action_key(plan.actions[a]) < action_key(plan.actions[b]);
    };
    for (auto& [key, node] : nodes) {
        std::sort(node.arrivals.begin(), node.arrivals.end(), by_key);
        std::sort(node.departures.begin(), node.departures.end(), by_key);
        if (node.arrivals.size() != node.departures.size()) {
            const auto& [t, pos, carry] = key;
            throw std::runtime_error(
                "plan: flow imbalance at t=" + std::to_string(t) + " (" + std::to_string(pos.x) +
                "," + std::to_string(pos.y) + "," + std::to_string(pos.z) + ") carry=" +
                std::to_string(carry) + ": " + std::to_string(node.arrivals.size()) +
                " arrivals vs " + std::to_string(node.departures.size()) + " departures");
        }
        for (std::size_t k = 0; k < node.arrivals.size(); ++k)
            next[node.arrivals[k]] = node.departures[k];
    }

    // Agent ids follow entry time, then the canonical action order.
    std::sort(entries.begin(), entries.end(), [&plan](int a, int b) {
        return action_key(plan.actions[a]) < action_key(plan.actions[b]);
    });

    std::vector<std::vector<int>> itineraries;
    std::size_t consumed = 0;
    for (int entry : entries) {
        std::vector<int> chain;
        for (int i = entry; i != -1; i = next[i]) {
            chain.push_back(i);
            ++consumed;
            if (plan.actions[i].tpl.type == ActionType::Leave) break;
        }
        if (plan.actions[chain.back()].tpl.type != ActionType::Leave)
            throw std::runtime_error("plan: itinerary does not terminate in a leave action");
        itineraries.push_back(std::move(chain));
    }
    if (consumed != plan.actions.size())
        throw std::runtime_error("plan: " + std::to_string(plan.actions.size() - consumed) +
                                 " actions not reachable from any entry");
    return itineraries;
}

std::string serialize_plan(const Plan& plan) {
    json doc;
    doc["makespan"] = plan.makespan;
    doc["sum_of_costs"] = plan.sum_of_costs;
    json actions = json::array();
    for (const Action& a : plan.actions) {
        json e;
        e["ts"] = a.tpl.t_s;
        e["te"] = a.t_e;
        e["x"] = coord_json(a.tpl.start.x);
        e["y"] = coord_json(a.tpl.start.y);
        e["z"] = coord_json(a.tpl.start.z);
        e["c"] = a.tpl.carry;
        e["k"] = std::string(1, kind_letter(a.tpl.kind));
        e["x2"] = coord_json(a.tpl.end.x);
        e["y2"] = coord_json(a.tpl.end.y);
        e["z2"] = coord_json(a.tpl.end.z);
        actions.push_back(std::move(e));
    }
    doc["actions"] = std::move(actions);
    json its = json::array();
    for (const auto& chain : plan.itineraries) its.push_back(chain);
    doc["itineraries"] = std::move(its);
    json blocks = json::array();
    for (const BlockAction& b : plan.block_actions) {
        json e;
        e["t"] = b.t;
        e["x"] = b.x;
        e["y"] = b.y;
        e["z"] = b.z;
        e["z2"] = b.z2;
        blocks.push_back(std::move(e));
    }
    doc["block_actions"] = std::move(blocks);
    return doc.dump(2) + "\n";
}

Plan parse_plan(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("plan: invalid JSON: ") + e.what());
    }
    Plan plan;
    try {
        plan.makespan = doc.at("makespan").get<int>();
        plan.sum_of_costs = doc.at("sum_of_costs").get<std::int64_t>();
        for (const json& e : doc.at("actions")) {
            Action a;
            a.tpl.t_s = e.at("ts").get<int>();
            a.t_e = e.at("te").get<int>();
            a.tpl.start = {coord_parse(e.at("x")), coord_parse(e.at("y")),
                           coord_parse(e.at("z"))};
            a.tpl.carry = e.at("c").get<int>();
            std::string k = e.at("k").get<std::string>();
            a.tpl.kind = k == "P" ? Kind::P : k == "D" ? Kind::D : Kind::M;
            a.tpl.end = {coord_parse(e.at("x2")), coord_parse(e.at("y2")),
                         coord_parse(e.at("z2"))};
            a.tpl.type = classify(a.tpl.start, a.tpl.end, a.tpl.carry, a.tpl.kind);
            plan.actions.push_back(a);
        }
        for (const json& chain : doc.at("itineraries"))
            plan.itineraries.push_back(chain.get<std::vector<int>>());
        for (const json& e : doc.at("block_actions"))
            plan.block_actions.push_back(BlockAction{e.at("t").get<int>(), e.at("x").get<int>(),
                                                     e.at("y").get<int>(), e.at("z").get<int>(),
                                                     e.at("z2").get<int>()});
    } catch (const json::exception& e) {
        throw ParseError(std::string("plan: missing or malformed field: ") + e.what());
    }
    if (plan.sum_of_costs != plan.recompute_sum_of_costs())
        throw ParseError("plan: sum_of_costs does not match the recomputed action total");
    for (const auto& chain : plan.itineraries)
        for (int idx : chain)
            if (idx < 0 || idx >= static_cast<int>(plan.actions.size()))
                throw ParseError("plan: itinerary references action " + std::to_string(idx) +
                                 " out of range");
    return plan;
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("plan: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str());
}

}  // namespace macc
