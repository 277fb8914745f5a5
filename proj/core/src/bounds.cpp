#include "macc/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace macc {

int lower_bound_lr(const Instance& inst, const ScaledDurations& sd) {
    int d_entry = sd.min_duration(ActionType::Entry);
    int d_leave = sd.min_duration(ActionType::Leave);
    int d_deliver = sd.min_duration(ActionType::Deliver);
    int d_move = std::min(sd.min_duration(ActionType::MoveBlock),
                          sd.min_duration(ActionType::MoveEmpty));

    int best = 0;
    for (int y = 0; y < inst.dims.y; ++y)
        for (int x = 0; x < inst.dims.x; ++x) {
            int zt = inst.target_at(x, y);
            if (zt == 0) continue;
            int s = min_border_distance(inst, x, y);
            int column_time = d_entry + s * d_move + zt * d_deliver + s * d_move + d_leave;
            best = std::max(best, column_time);
        }
    return best == 0 ? 4 : best;  // structural minimum horizon for empty targets
}

Rational compute_alpha(const Catalog& cat) {
    Rational sum{0};
    for (ActionType t : kAllActionTypes) {
        const auto& set = cat.by_type[static_cast<int>(t)];
        if (set.empty())
            throw std::runtime_error(std::string("alpha: no actions of type ") + to_string(t) +
                                     " at horizon " + std::to_string(cat.horizon));
        std::int64_t total = 0;
        for (int idx : set) total += cat.actions[idx].duration();
        sum = sum + Rational(total, static_cast<std::int64_t>(set.size()));
    }
    return sum / kActionTypeCount;
}

int estimate_Th(int l_r, int u_f, const Rational& alpha, int T_b) {
    std::int64_t scaled = (alpha * Rational(T_b)).ceil();
    std::int64_t inner = std::min<std::int64_t>(u_f, scaled);
    return static_cast<int>(std::max<std::int64_t>(l_r, inner));
}

int upper_bound_uf(const Plan& unit_plan, const ScaledDurations& sd_target) {
    for (const Action& a : unit_plan.actions)
        if (a.duration() != 1)
            throw std::invalid_argument("u_f: plan is not unit-duration");
    std::vector<int> step_max(unit_plan.makespan, 1);
    for (const Action& a : unit_plan.actions)
        step_max[a.tpl.t_s] = std::max(step_max[a.tpl.t_s], sd_target.duration_of(a.tpl));
    int total = 0;
    for (int m : step_max) total += m;
    return total;
}

int upper_bound_uc(int coarse_makespan, const ScaledDurations& sd, const Instance& inst) {
    return coarse_makespan * sd.max_duration_overall(inst.dims.z);
}

bool duration_dominance_holds(const ScaledDurations& coarse, const ScaledDurations& target,
                              const Instance& inst) {
    for (ActionType t : kAllActionTypes)
        if (coarse.max_duration(t, inst.dims.z) > target.min_duration(t)) return false;
    return true;
}

int lower_bound_lf(int coarse_makespan, const ScaledDurations& coarse,
                   const ScaledDurations& target, const Instance& inst) {
    if (!duration_dominance_holds(coarse, target, inst))
        throw std::invalid_argument(
            "l_f: coarse mapping is not dominated by the target mapping");
    return coarse_makespan;
}

std::string BoundReport::to_text() const {
    std::ostringstream out;
    auto opt = [](const std::optional<int>& v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    out << "l_r=" << l_r << " alpha=" << alpha.str() << " l_f=" << opt(l_f)
        << " T_b=" << opt(T_b) << " T_h=" << opt(T_h) << " u_f=" << opt(u_f)
        << " u_c=" << opt(u_c);
    return out.str();
}

std::string BoundReport::to_json() const {
    nlohmann::json doc;
    doc["l_r"] = l_r;
    doc["alpha"] = alpha.str();
    auto set = [&doc](const char* key, const std::optional<int>& v) {
        if (v) doc[key] = *v;
    };
    set("l_f", l_f);
    set("T_b", T_b);
    set("T_h", T_h);
    set("u_f", u_f);
    set("u_c", u_c);
    return doc.dump();
}

}  // namespace macc
