#include <doctest.h>

#include "helpers.hpp"

using namespace macc;
using namespace macc::testing;

TEST_CASE("scale multiplies by the LCM of denominators") {
    // TERMES hardware measurements: pick-up 15 s, placement 24 s, one
    // timestep = 10 s -> 3/2 and 12/5
    DurationSpec spec = DurationSpec::per_type_spec({
        {ActionType::Entry, Rational(1)},
        {ActionType::Leave, Rational(1)},
        {ActionType::MoveBlock, Rational(1)},
        {ActionType::MoveEmpty, Rational(1)},
        {ActionType::PickUp, Rational(3, 2)},
        {ActionType::Deliver, Rational(12, 5)},
    });
    ScaledDurations sd = scale(spec);
    CHECK(sd.multiple == 10);
    CHECK(sd.per_type[static_cast<int>(ActionType::PickUp)] == 15);
    CHECK(sd.per_type[static_cast<int>(ActionType::Deliver)] == 24);
    CHECK(sd.per_type[static_cast<int>(ActionType::Entry)] == 10);
    CHECK(sd.per_type[static_cast<int>(ActionType::Wait)] == 1);
}

TEST_CASE("scale is the identity on integral specs") {
    ScaledDurations sd = unit_sd();
    CHECK(sd.multiple == 1);
    for (ActionType t : kAllActionTypes) CHECK(sd.per_type[static_cast<int>(t)] == 1);

    ScaledDurations termes = termes_sd();
    CHECK(termes.multiple == 1);
    CHECK(termes.per_type[static_cast<int>(ActionType::Entry)] == 3);
    CHECK(termes.per_type[static_cast<int>(ActionType::MoveEmpty)] == 2);
    CHECK(termes.per_type[static_cast<int>(ActionType::PickUp)] == 2);
    CHECK(termes.per_type[static_cast<int>(ActionType::Deliver)] == 3);
}

TEST_CASE("scaling preserves duration ratios exactly") {
    std::uint64_t state = 12345;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::int64_t>((state >> 33) % 9 + 1);
    };
    for (int round = 0; round < 50; ++round) {
        std::map<ActionType, Rational> values;
        for (ActionType t : kNonWaitTypes) values[t] = Rational(next(), next());
        DurationSpec spec = DurationSpec::per_type_spec(values);
        ScaledDurations sd = scale(spec);
        for (ActionType a : kNonWaitTypes)
            for (ActionType b : kNonWaitTypes) {
                // f_d(a)/f_d(b) == f_q(a)/f_q(b), cross-multiplied
                std::int64_t da = sd.per_type[static_cast<int>(a)];
                std::int64_t db = sd.per_type[static_cast<int>(b)];
                const Rational& qa = values[a];
                const Rational& qb = values[b];
                CHECK(da * qb.num * qa.den == db * qa.num * qb.den);
            }
    }
}

TEST_CASE("scale reports LCM overflow instead of wrapping") {
    DurationSpec spec = DurationSpec::per_type_spec({
        {ActionType::Entry, Rational(1, 2147483647)},
        {ActionType::Leave, Rational(1, 2147483629)},
        {ActionType::MoveBlock, Rational(1, 2147483587)},
        {ActionType::MoveEmpty, Rational(1, 2147483579)},
        {ActionType::PickUp, Rational(1, 2147483563)},
        {ActionType::Deliver, Rational(1, 2147483549)},
    });
    CHECK_THROWS_AS(scale(spec), std::overflow_error);
}

TEST_CASE("duration_of per type and height-linear") {
    ScaledDurations termes = termes_sd();
    ActionTemplate deliver{ActionType::Deliver, 1, Position::grid(1, 1, 0), 1, Kind::D,
                           Position::grid(1, 2, 0)};
    CHECK(termes.duration_of(deliver) == 3);

    ScaledDurations hl = scale(DurationSpec::height_linear());
    ActionTemplate climb{ActionType::MoveBlock, 1, Position::grid(1, 1, 1), 1, Kind::M,
                         Position::grid(1, 2, 2)};
    CHECK(hl.duration_of(climb) == 5);  // 3 + z' with z' = 2
    ActionTemplate wait{ActionType::Wait, 1, Position::grid(1, 1, 2), 0, Kind::M,
                        Position::grid(1, 1, 2)};
    CHECK(hl.duration_of(wait) == 1);
    ActionTemplate entry{ActionType::Entry, 0, Position::start(), 1, Kind::M,
                         Position::grid(0, 1, 0)};
    CHECK(hl.duration_of(entry) == 3);
}

TEST_CASE("duration spec parsing") {
    DurationSpec spec = DurationSpec::parse(R"({
        "mode": "per_type",
        "durations": {"enter": "3", "leave": "3", "move_block": "3",
                       "move_empty": "2", "pick_up": "3/2", "deliver": "12/5"}
    })");
    CHECK(spec.per_type.at(ActionType::Entry) == Rational(3));
    CHECK(spec.per_type.at(ActionType::PickUp) == Rational(3, 2));

    CHECK(DurationSpec::parse(R"({"mode":"height_linear"})").mode ==
          DurationSpec::Mode::HeightLinear);

    CHECK_THROWS_AS(DurationSpec::parse(R"({"mode":"per_type","durations":{"wait":"2",
        "entry":"1","leave":"1","move_block":"1","move_empty":"1","pick_up":"1",
        "deliver":"1"}})"),
                    ParseError);
    CHECK_THROWS_AS(DurationSpec::parse(R"({"mode":"per_type","durations":{"entry":"1"}})"),
                    ParseError);
    CHECK_FALSE(Rational::parse("0/3").positive());  // rejected by spec validation
    CHECK_THROWS_AS(DurationSpec::parse(R"({"mode":"per_type","durations":{"entry":"0",
        "leave":"1","move_block":"1","move_empty":"1","pick_up":"1","deliver":"1"}})"),
                    ParseError);
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(17, 7).str() == "17/7");
    CHECK(Rational(4).str() == "4");
    CHECK(Rational(17, 7).ceil() == 3);
    CHECK(Rational(14, 7).ceil() == 2);
}
