#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "macc/rational.hpp"

namespace macc {

enum class ActionType : std::uint8_t {
    Entry = 0,
    Leave = 1,
    MoveBlock = 2,
    MoveEmpty = 3,
    PickUp = 4,
    Deliver = 5,
    Wait = 6,
};

inline constexpr int kActionTypeCount = 7;
inline constexpr std::array<ActionType, 7> kAllActionTypes = {
    ActionType::Entry,   ActionType::Leave,  ActionType::MoveBlock,
    ActionType::MoveEmpty, ActionType::PickUp, ActionType::Deliver,
    ActionType::Wait,
};
inline constexpr std::array<ActionType, 6> kNonWaitTypes = {
    ActionType::Entry,     ActionType::Leave,  ActionType::MoveBlock,
    ActionType::MoveEmpty, ActionType::PickUp, ActionType::Deliver,
};

/// Action distinguisher: P for pick_up, D for deliver, M for everything else.
enum class Kind : std::uint8_t { M = 0, P = 1, D = 2 };

Kind kind_of(ActionType t);
const char* to_string(ActionType t);
char kind_letter(Kind k);

/// Parses an action type name; "enter" is accepted as an alias for "entry".
ActionType action_type_from_string(const std::string& name);

struct ActionTemplate;  // catalog.hpp

/// User-facing duration assignment: either a fixed rational per action type,
/// or the built-in height-linear rule where durations grow with the vertical
/// end position. Wait is always 1 timestep and is not configurable.
struct DurationSpec {
    enum class Mode { PerType, HeightLinear };

    Mode mode = Mode::PerType;
    std::map<ActionType, Rational> per_type;  // the six non-wait types

    static DurationSpec unit();
    static DurationSpec per_type_spec(std::map<ActionType, Rational> values);
    static DurationSpec height_linear();

    static DurationSpec parse(const std::string& json_text);
    static DurationSpec load(const std::string& path);
    std::string to_json() const;

    void validate() const;
};

/// Integer durations after LCM scaling. For PerType, every non-wait duration
/// is multiple * f_q; wait stays 1. HeightLinear values are already integral.
struct ScaledDurations {
    DurationSpec::Mode mode = DurationSpec::Mode::PerType;
    std::int64_t multiple = 1;
    std::array<std::int64_t, kActionTypeCount> per_type{1, 1, 1, 1, 1, 1, 1};

    int duration_of(const ActionTemplate& tpl) const;

    /// Minimum duration of any action of the given type (z' = 0 for the
    /// height-linear rule).
    int min_duration(ActionType t) const;
    /// Maximum duration over all templates of the given type on a grid with
    /// `levels` traversable levels.
    int max_duration(ActionType t, int levels) const;
    /// max over the whole template universe, used by the naive upper bound.
    int max_duration_overall(int levels) const;

    bool is_unit() const;
};

/// LCM scaling of a duration spec. Throws on spec violations and on integer
/// overflow of the multiple.
ScaledDurations scale(const DurationSpec& spec);

}  // namespace macc
