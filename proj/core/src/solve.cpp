#include "macc/solve.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace macc {

namespace fs = std::filesystem;

namespace {

std::string replace_all(std::string text, const std::string& what, const std::string& with) {
    for (std::size_t pos = 0; (pos = text.find(what, pos)) != std::string::npos;
         pos += with.size())
        text.replace(pos, what.size(), with);
    return text;
}

fs::path unique_workdir() {
    static std::atomic<int> counter{0};
    fs::path dir = fs::temp_directory_path() /
                   ("macc-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)));
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string tail_of(const std::string& text, std::size_t max_chars = 800) {
    if (text.size() <= max_chars) return text;
    return "..." + text.substr(text.size() - max_chars);
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Timeout: return "timeout";
    }
    return "?";
}

std::string SolverConfig::resolved_command() const {
    if (!command.empty()) return command;
    if (const char* env = std::getenv("MACC_SOLVER_CMD"); env && *env) return env;
#ifdef MACC_DEFAULT_SOLVER_COMMAND
    return MACC_DEFAULT_SOLVER_COMMAND;
#else
    throw SolverError(
        "no solver command configured: pass --solver-cmd or set MACC_SOLVER_CMD");
#endif
}

std::pair<std::string, std::map<std::string, double>> parse_solution_file(
    const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, double> values;

    if (!std::getline(in, line)) throw SolverError("solution file is empty");

    if (line.rfind("Model status", 0) == 0) {
        // HiGHS raw layout: status on the following line, then sections with
        // "# Columns <n>" listing "name value" pairs.
        std::string status;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            status = line;
            break;
        }
        while (std::getline(in, line)) {
            if (line.rfind("# Columns", 0) != 0) continue;
            long n = std::stol(line.substr(9));
            for (long i = 0; i < n && std::getline(in, line); ++i) {
                std::istringstream row(line);
                std::string name;
                double value;
                if (row >> name >> value) values[name] = value;
            }
            break;
        }
        return {status, values};
    }

    auto dash = line.find(" - ");
    if (dash != std::string::npos || line.rfind("Optimal", 0) == 0 ||
        line.rfind("Infeasible", 0) == 0 || line.rfind("Stopped", 0) == 0) {
        // CBC layout: "<status> - objective value <v>" then "idx name value rc"
        std::string status = dash == std::string::npos ? line : line.substr(0, dash);
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string first, name;
            double value;
            if (!(row >> first)) continue;
            if (first == "**") {
                if (!(row >> first)) continue;  // infeasibility marker prefix
            }
            if (!(row >> name >> value)) continue;
            values[name] = value;
        }
        if (status == "Stopped") status = "Time limit reached";
        return {status, values};
    }

    throw SolverError("unrecognized solution file layout: '" + line + "'");
}

Solution solve_model(const MilpModel& model, const Catalog& cat, const SolverConfig& cfg,
                     const std::string& label) {
    fs::path dir = cfg.workdir.empty() ? unique_workdir() : fs::path(cfg.workdir);
    fs::create_directories(dir);
    fs::path model_path = dir / (label + ".mps");
    fs::path solution_path = dir / (label + ".sol");
    fs::path log_path = dir / (label + ".log");

    {
        std::ofstream out(model_path, std::ios::binary);
        out << export_model(model, cat);
        if (!out) throw SolverError("cannot write model file " + model_path.string());
    }
    fs::remove(solution_path);

    std::string cmd = cfg.resolved_command();
    cmd = replace_all(cmd, "{model}", model_path.string());
    cmd = replace_all(cmd, "{solution}", solution_path.string());
    cmd = replace_all(cmd, "{time_limit}", std::to_string(cfg.time_limit_s));
    cmd = replace_all(cmd, "{threads}", std::to_string(cfg.threads));
    cmd += " > " + log_path.string() + " 2>&1";

    int rc = std::system(cmd.c_str());
    if (!fs::exists(solution_path))
        throw SolverError("solver produced no solution file (exit " + std::to_string(rc) +
                          "); log: " + tail_of(read_file(log_path)));

    auto [status, values] = parse_solution_file(read_file(solution_path));

    Solution sol;
    if (status == "Infeasible") {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    if (status.rfind("Time limit", 0) == 0) {
        sol.status = SolveStatus::Timeout;
        return sol;
    }
    if (status != "Optimal")
        throw SolverError("solver finished with status '" + status +
                          "'; log: " + tail_of(read_file(log_path)));

    // round to binary, then trust nothing: re-verify every row exactly
    std::vector<int> r_values(model.num_r, 0);
    std::vector<int> h_values(model.num_h, 0);
    for (int i = 0; i < model.num_r; ++i) {
        auto it = values.find(variable_name(cat, {VarRef::Kind::R, i}));
        if (it != values.end() && it->second > cfg.rounding_threshold) r_values[i] = 1;
    }
    for (int i = 0; i < model.num_h; ++i) {
        auto it = values.find(variable_name(cat, {VarRef::Kind::H, i}));
        if (it != values.end() && it->second > cfg.rounding_threshold) h_values[i] = 1;
    }
    if (auto row = first_violated_row(model, r_values, h_values))
        throw SolverError("solver-integrality failure: rounded solution violates row " + *row +
                          " (" + label + ")");

    sol.status = SolveStatus::Optimal;
    sol.objective = objective_value(model, r_values, h_values);
    for (int i = 0; i < model.num_r; ++i)
        if (r_values[i]) sol.actions.push_back(i);
    for (int i = 0; i < model.num_h; ++i)
        if (h_values[i]) sol.blocks.push_back(i);
    return sol;
}

Solution solve_fixed_T(const Instance& inst, const ScaledDurations& sd, int horizon,
                       const SolverConfig& cfg) {
    Catalog cat = build_catalog(inst, sd, horizon);
    MilpModel model = build_model(inst, cat);
    return solve_model(model, cat, cfg, "model_T" + std::to_string(horizon));
}

Plan plan_from_solution(const Catalog& cat, const Solution& sol) {
    Plan plan;
    plan.makespan = cat.horizon;
    for (int idx : sol.actions) plan.actions.push_back(cat.actions[idx]);
    for (int idx : sol.blocks) {
        const BlockAction& b = cat.blocks[idx];
        if (b.z != b.z2) plan.block_actions.push_back(b);
    }
    normalize_plan(plan);
    plan.itineraries = extract_itineraries(plan);
    return plan;
}

namespace {

struct LoopResult {
    Plan plan;
    std::vector<std::pair<int, SolveStatus>> attempts;
};

LoopResult makespan_loop(const Instance& inst, const ScaledDurations& sd,
                         const SolverConfig& cfg, int start, int cap) {
    LoopResult result;
    for (int T = start; T <= cap; ++T) {
        Catalog cat = build_catalog(inst, sd, T);
        MilpModel model = build_model(inst, cat);
        Solution sol = solve_model(model, cat, cfg, "model_T" + std::to_string(T));
        result.attempts.emplace_back(T, sol.status);
        if (sol.status == SolveStatus::Timeout)
            throw SolverError("solver hit the time limit at horizon " + std::to_string(T) +
                              "; result would not be proven optimal");
        if (sol.status == SolveStatus::Optimal) {
            result.plan = plan_from_solution(cat, sol);
            return result;
        }
    }
    throw SolverError("no feasible horizon found up to " + std::to_string(cap));
}

}  // namespace

PlanOutcome plan_lexicographic_with_unit(const Instance& inst, const ScaledDurations& sd,
                                         const SolverConfig& cfg, const Plan& unit_plan) {
    PlanOutcome out;
    out.bounds.l_r = lower_bound_lr(inst, sd);
    int start = std::max(out.bounds.l_r, 4);

    // alpha comes from a catalog horizon at which every action type exists
    int alpha_horizon = start + sd.max_duration_overall(inst.dims.z);
    out.bounds.alpha = compute_alpha(build_catalog(inst, sd, alpha_horizon));

    ScaledDurations sd_unit = scale(DurationSpec::unit());
    int T_b = unit_plan.makespan;
    out.bounds.T_b = T_b;
    out.bounds.u_f = upper_bound_uf(unit_plan, sd);
    out.bounds.u_c = upper_bound_uc(T_b, sd, inst);
    out.bounds.l_f = lower_bound_lf(T_b, sd_unit, sd, inst);
    out.bounds.T_h = estimate_Th(out.bounds.l_r, *out.bounds.u_f, out.bounds.alpha, T_b);

    // a wait-padded plan exists by u_f <= u_c, so u_c + 1 always terminates
    int cap = *out.bounds.u_c + 1;
    LoopResult run = makespan_loop(inst, sd, cfg, start, cap);
    out.plan = std::move(run.plan);
    out.attempts = std::move(run.attempts);
    return out;
}

PlanOutcome plan_lexicographic(const Instance& inst, const ScaledDurations& sd,
                               const SolverConfig& cfg) {
    if (!sd.is_unit()) {
        ScaledDurations sd_unit = scale(DurationSpec::unit());
        SolverConfig unit_cfg = cfg;
        if (!cfg.workdir.empty()) unit_cfg.workdir = cfg.workdir + "/unit";
        int unit_start = std::max(lower_bound_lr(inst, sd_unit), 4);
        LoopResult unit_run = makespan_loop(inst, sd_unit, unit_cfg, unit_start,
                                            unit_start + unit_cfg.iteration_cap);
        PlanOutcome out = plan_lexicographic_with_unit(inst, sd, cfg, unit_run.plan);
        out.unit_plan = std::move(unit_run.plan);
        return out;
    }

    PlanOutcome out;
    out.bounds.l_r = lower_bound_lr(inst, sd);
    int start = std::max(out.bounds.l_r, 4);
    int alpha_horizon = start + sd.max_duration_overall(inst.dims.z);
    out.bounds.alpha = compute_alpha(build_catalog(inst, sd, alpha_horizon));

    LoopResult run = makespan_loop(inst, sd, cfg, start, start + cfg.iteration_cap);
    out.plan = std::move(run.plan);
    out.attempts = std::move(run.attempts);

    int T = out.plan.makespan;
    out.bounds.T_b = T;
    out.bounds.u_f = upper_bound_uf(out.plan, sd);
    out.bounds.u_c = upper_bound_uc(T, sd, inst);
    out.bounds.l_f = T;
    out.bounds.T_h = estimate_Th(out.bounds.l_r, *out.bounds.u_f, out.bounds.alpha, T);
    return out;
}

}  // namespace macc
