#pragma once

#include <optional>
#include <string>

#include "macc/catalog.hpp"
#include "macc/plan.hpp"
#include "macc/rational.hpp"

namespace macc {

/// Makespan bounds and estimates. All entries count plan-horizon timesteps.
struct BoundReport {
    int l_r = 0;
    Rational alpha{1};
    std::optional<int> l_f;   // coarse-model lower bound
    std::optional<int> T_b;   // unit-duration makespan
    std::optional<int> T_h;   // clamped heuristic estimate
    std::optional<int> u_f;   // wait-padding upper bound
    std::optional<int> u_c;   // naive upper bound

    std::string to_text() const;
    std::string to_json() const;
};

/// Relaxation lower bound: the longest single-column build sequence
///   d_entry + s*d_move + z̄*d_deliver + s*d_move + d_leave
/// over columns with z̄ > 0, using per-type minimum durations. Instances with
/// no blocks fall back to the structural minimum horizon of 4.
int lower_bound_lr(const Instance& inst, const ScaledDurations& sd);

/// Mean of the seven per-type average durations over the materialized action
/// sets. Throws if any set is empty at this horizon.
Rational compute_alpha(const Catalog& cat);

/// T_h = max(l_r, min(u_f, ceil(alpha * T_b))).
int estimate_Th(int l_r, int u_f, const Rational& alpha, int T_b);

/// Wait-padding upper bound: sum over unit steps of the longest target
/// duration starting there; steps with no starting action contribute the
/// unit tick of 1.
int upper_bound_uf(const Plan& unit_plan, const ScaledDurations& sd_target);

/// Naive upper bound: coarse makespan times the longest action duration.
int upper_bound_uc(int coarse_makespan, const ScaledDurations& sd, const Instance& inst);

/// Coarse-model lower bound l_f = T'. The coarse mapping must be dominated by
/// the target mapping per type: max coarse duration <= min target duration.
bool duration_dominance_holds(const ScaledDurations& coarse, const ScaledDurations& target,
                              const Instance& inst);
int lower_bound_lf(int coarse_makespan, const ScaledDurations& coarse,
                   const ScaledDurations& target, const Instance& inst);

}  // namespace macc
