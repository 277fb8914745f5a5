#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macc/catalog.hpp"

namespace macc {

/// Reference to a decision variable: r (agent action) or h (block action),
/// indexing into the catalog.
struct VarRef {
    enum class Kind : std::uint8_t { R, H };
    Kind kind = Kind::R;
    int idx = 0;

    friend bool operator==(const VarRef&, const VarRef&) = default;
    friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

struct LinearConstraint {
    std::string name;  // family tag plus coordinates, e.g. c9_3_1_2
    char sense = 'E';  // 'E' ==, 'L' <=, 'G' >=
    std::int64_t rhs = 0;
    std::vector<std::pair<VarRef, int>> terms;  // canonical: sorted, merged, no zeros
};

/// Solver-agnostic MILP: binary r/h variables, sum-of-costs objective,
/// constraint families c2..c16.
struct MilpModel {
    int horizon = 0;
    int num_r = 0;
    int num_h = 0;
    std::vector<std::pair<VarRef, std::int64_t>> objective;  // minimize
    std::vector<LinearConstraint> constraints;

    int variable_count() const { return num_r + num_h; }
};

/// Assembles objective (1) and constraints (2)-(16) for the materialized
/// catalog. Trivial 0=0 rows (no terms) are not emitted.
MilpModel build_model(const Instance& inst, const Catalog& cat);

/// Stable variable names used in the exchange file:
///   r_<ts>_<te>_<x>_<y>_<z>_<c>_<k>_<x'>_<y'>_<z'>   (S/E for sentinels)
///   h_<t>_<x>_<y>_<z>_<z'>
std::string variable_name(const Catalog& cat, VarRef v);

/// Deterministic free-format MPS serialization; byte-identical for identical
/// inputs. All variables are declared binary.
std::string export_model(const MilpModel& model, const Catalog& cat);

/// Evaluates every constraint row under a 0/1 assignment (indexed r then h,
/// catalog order). Returns the name of the first violated row, if any.
std::optional<std::string> first_violated_row(const MilpModel& model,
                                              const std::vector<int>& r_values,
                                              const std::vector<int>& h_values);

std::int64_t objective_value(const MilpModel& model, const std::vector<int>& r_values,
                             const std::vector<int>& h_values);

}  // namespace macc
