#include "macc/durations.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "macc/catalog.hpp"

namespace macc {

using nlohmann::json;

Kind kind_of(ActionType t) {
    switch (t) {
        case ActionType::PickUp: return Kind::P;
        case ActionType::Deliver: return Kind::D;
        default: return Kind::M;
    }
}

const char* to_string(ActionType t) {
    switch (t) {
        case ActionType::Entry: return "entry";
        case ActionType::Leave: return "leave";
        case ActionType::MoveBlock: return "move_block";
        case ActionType::MoveEmpty: return "move_empty";
        case ActionType::PickUp: return "pick_up";
        case ActionType::Deliver: return "deliver";
        case ActionType::Wait: return "wait";
    }
    return "?";
}

char kind_letter(Kind k) {
    switch (k) {
        case Kind::M: return 'M';
        case Kind::P: return 'P';
        case Kind::D: return 'D';
    }
    return '?';
}

ActionType action_type_from_string(const std::string& name) {
    for (ActionType t : kAllActionTypes)
        if (name == to_string(t)) return t;
    if (name == "enter") return ActionType::Entry;  // Table-style alias
    throw ParseError("durations: unknown action type '" + name + "'");
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(text));
        }
        std::int64_t p = std::stoll(text.substr(0, slash));
        std::int64_t q = std::stoll(text.substr(slash + 1));
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw ParseError("durations: bad rational '" + text + "'");
    }
}

DurationSpec DurationSpec::unit() {
    DurationSpec spec;
    for (ActionType t : kNonWaitTypes) spec.per_type[t] = Rational(1);
    return spec;
}

DurationSpec DurationSpec::per_type_spec(std::map<ActionType, Rational> values) {
    DurationSpec spec;
    spec.per_type = std::move(values);
    spec.validate();
    return spec;
}

DurationSpec DurationSpec::height_linear() {
    DurationSpec spec;
    spec.mode = Mode::HeightLinear;
    return spec;
}

void DurationSpec::validate() const {
    if (mode == Mode::HeightLinear) return;
    for (ActionType t : kNonWaitTypes) {
        auto it = per_type.find(t);
        if (it == per_type.end())
            throw ParseError(std::string("durations: missing duration for ") + to_string(t));
        if (!it->second.positive())
            throw ParseError(std::string("durations: duration for ") + to_string(t) +
                             " must be positive");
    }
    if (per_type.count(ActionType::Wait))
        throw ParseError("durations: wait duration is fixed at 1 and not configurable");
}

DurationSpec DurationSpec::parse(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("durations: invalid JSON: ") + e.what());
    }
    std::string mode = doc.value("mode", "per_type");
    if (mode == "height_linear") return height_linear();
    if (mode != "per_type") throw ParseError("durations: unknown mode '" + mode + "'");

    DurationSpec spec;
    for (auto& [key, value] : doc.at("durations").items()) {
        ActionType t = action_type_from_string(key);
        if (t == ActionType::Wait)
            throw ParseError("durations: wait duration is fixed at 1 and not configurable");
        spec.per_type[t] = Rational::parse(value.get<std::string>());
    }
    spec.validate();
    return spec;
}

DurationSpec DurationSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("durations: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string DurationSpec::to_json() const {
    json doc;
    if (mode == Mode::HeightLinear) {
        doc["mode"] = "height_linear";
    } else {
        doc["mode"] = "per_type";
        json values;
        for (ActionType t : kNonWaitTypes) values[to_string(t)] = per_type.at(t).str();
        doc["durations"] = values;
    }
    return doc.dump(2);
}

namespace {

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    std::int64_t result;
    if (__builtin_mul_overflow(a / g, b, &result))
        throw std::overflow_error("durations: LCM of denominators overflows 64-bit");
    return result;
}

int height_linear_duration(ActionType type, int end_z) {
    switch (type) {
        case ActionType::Entry:
        case ActionType::Leave: return 3;
        case ActionType::MoveEmpty: return 2 + end_z;
        case ActionType::MoveBlock: return 3 + end_z;
        case ActionType::PickUp: return 2 + 2 * end_z;
        case ActionType::Deliver: return 3 + 2 * end_z;
        case ActionType::Wait: return 1;
    }
    return 1;
}

}  // namespace

ScaledDurations scale(const DurationSpec& spec) {
    spec.validate();
    ScaledDurations sd;
    sd.mode = spec.mode;
    if (spec.mode == DurationSpec::Mode::HeightLinear) return sd;

    // Wait is excluded from the LCM: its duration stays 1 because the minimum
    // waiting time of an agent is not limited by hardware.
    std::int64_t m = 1;
    for (ActionType t : kNonWaitTypes) m = checked_lcm(m, spec.per_type.at(t).den);
    sd.multiple = m;
    for (ActionType t : kNonWaitTypes) {
        const Rational& q = spec.per_type.at(t);
        std::int64_t value;
        if (__builtin_mul_overflow(m / q.den, q.num, &value))
            throw std::overflow_error("durations: scaled duration overflows 64-bit");
        sd.per_type[static_cast<int>(t)] = value;
    }
    sd.per_type[static_cast<int>(ActionType::Wait)] = 1;
    return sd;
}

int ScaledDurations::duration_of(const ActionTemplate& tpl) const {
    if (mode == DurationSpec::Mode::HeightLinear)
        return height_linear_duration(tpl.type, tpl.end.on_grid() ? tpl.end.z : 0);
    return static_cast<int>(per_type[static_cast<int>(tpl.type)]);
}

int ScaledDurations::min_duration(ActionType t) const {
    if (mode == DurationSpec::Mode::HeightLinear) return height_linear_duration(t, 0);
    return static_cast<int>(per_type[static_cast<int>(t)]);
}

int ScaledDurations::max_duration(ActionType t, int levels) const {
    if (mode == DurationSpec::Mode::PerType)
        return static_cast<int>(per_type[static_cast<int>(t)]);
    // pick_up/deliver block levels top out at levels-2; moves can end on the
    // travel layer at levels-1.
    switch (t) {
        case ActionType::MoveBlock:
        case ActionType::MoveEmpty:
            return height_linear_duration(t, levels - 1);
        case ActionType::PickUp:
        case ActionType::Deliver:
            return height_linear_duration(t, levels >= 2 ? levels - 2 : 0);
        default:
            return height_linear_duration(t, 0);
    }
}

int ScaledDurations::max_duration_overall(int levels) const {
    int best = 1;
    for (ActionType t : kAllActionTypes) best = std::max(best, max_duration(t, levels));
    return best;
}

bool ScaledDurations::is_unit() const {
    if (mode == DurationSpec::Mode::HeightLinear) return false;
    for (ActionType t : kAllActionTypes)
        if (per_type[static_cast<int>(t)] != 1) return false;
    return true;
}

}  // namespace macc
