#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macc/bounds.hpp"
#include "macc/model.hpp"
#include "macc/plan.hpp"

namespace macc {

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// External MILP solver driven by subprocess + file exchange. The command is
/// a template; {model}, {solution}, {time_limit} and {threads} are replaced
/// before invocation.
struct SolverConfig {
    std::string command;  // empty: MACC_SOLVER_CMD env var, then built-in default
    double time_limit_s = 600.0;
    int threads = 1;
    double rounding_threshold = 0.5;  // |v - 1| < threshold rounds to 1
    std::string workdir;              // keep exchange files here; empty: fresh temp dir
    int iteration_cap = 64;           // fallback horizon budget when u_c is unknown

    std::string resolved_command() const;
};

enum class SolveStatus { Optimal, Infeasible, Timeout };

const char* to_string(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::int64_t objective = 0;
    std::vector<int> actions;  // selected indices into the catalog
    std::vector<int> blocks;
};

/// Parses a solver solution file. Understands the HiGHS raw layout
/// ("Model status" header with a "# Columns" section) and the CBC layout
/// ("<status> - objective value ..." header with index/name/value lines).
/// Variables missing from the file are zero.
std::pair<std::string, std::map<std::string, double>> parse_solution_file(
    const std::string& text);

/// Builds catalog + model for the horizon, runs the solver, rounds the
/// variable values to binary and re-verifies every constraint row exactly.
Solution solve_fixed_T(const Instance& inst, const ScaledDurations& sd, int horizon,
                       const SolverConfig& cfg);

/// Same, against a prebuilt catalog/model (avoids duplicate construction).
Solution solve_model(const MilpModel& model, const Catalog& cat, const SolverConfig& cfg,
                     const std::string& label);

/// Converts selected variables into a normalized plan with itineraries.
Plan plan_from_solution(const Catalog& cat, const Solution& sol);

struct PlanOutcome {
    Plan plan;
    BoundReport bounds;
    std::vector<std::pair<int, SolveStatus>> attempts;  // horizons tried, in order
    std::optional<Plan> unit_plan;  // companion run when the target is not unit
};

/// The lexicographic outer loop: horizons from max(l_r, 4) upward until the
/// solver proves feasibility; the model objective then minimizes sum-of-costs
/// at that horizon. Non-unit targets first run a unit-duration companion to
/// obtain T_b, u_f, u_c, l_f and the alpha estimate.
PlanOutcome plan_lexicographic(const Instance& inst, const ScaledDurations& sd,
                               const SolverConfig& cfg);

/// Same loop, reusing an already-solved unit-duration plan for the bound
/// computations (the sweep shares one companion across all cells).
PlanOutcome plan_lexicographic_with_unit(const Instance& inst, const ScaledDurations& sd,
                                         const SolverConfig& cfg, const Plan& unit_plan);

}  // namespace macc
