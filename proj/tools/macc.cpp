#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "macc/bounds.hpp"
#include "macc/oracle.hpp"
#include "macc/solve.hpp"
#include "macc/validate.hpp"

using namespace macc;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string instance_path;
    std::string durations_path;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool durations_required = true) {
    cmd->add_option("--instance", args.instance_path, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    auto* opt = cmd->add_option("--durations", args.durations_path,
                                "duration spec JSON file (default: unit durations)");
    if (durations_required) opt->check(CLI::ExistingFile);
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
}

ScaledDurations load_durations(const CommonArgs& args) {
    if (args.durations_path.empty()) return scale(DurationSpec::unit());
    return scale(DurationSpec::load(args.durations_path));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::string table_row(const PlanOutcome& outcome) {
    std::ostringstream out;
    const BoundReport& b = outcome.bounds;
    out << "lower-bound  makespan (u_f; u_c)  sum-of-costs  robots\n";
    out << b.l_r << "  " << outcome.plan.makespan << " (" << (b.u_f ? std::to_string(*b.u_f) : "-")
        << "; " << (b.u_c ? std::to_string(*b.u_c) : "-") << ")  " << outcome.plan.sum_of_costs
        << "  " << outcome.plan.agents_used() << "\n";
    return out.str();
}

json outcome_json(const PlanOutcome& outcome) {
    json doc;
    doc["bounds"] = json::parse(outcome.bounds.to_json());
    doc["makespan"] = outcome.plan.makespan;
    doc["sum_of_costs"] = outcome.plan.sum_of_costs;
    doc["robots"] = outcome.plan.agents_used();
    json attempts = json::array();
    for (auto [T, status] : outcome.attempts) {
        json a;
        a["horizon"] = T;
        a["status"] = to_string(status);
        attempts.push_back(std::move(a));
    }
    doc["attempts"] = std::move(attempts);
    return doc;
}

std::string render_timeline(const Plan& plan) {
    std::ostringstream out;
    out << "t        ";
    for (int t = 0; t < plan.makespan; ++t) out << t % 10;
    out << "\n";
    auto symbol = [](ActionType type) {
        switch (type) {
            case ActionType::Entry: return 'E';
            case ActionType::Leave: return 'L';
            case ActionType::MoveBlock: return 'B';
            case ActionType::MoveEmpty: return 'M';
            case ActionType::PickUp: return 'P';
            case ActionType::Deliver: return 'D';
            case ActionType::Wait: return '.';
        }
        return '?';
    };
    for (std::size_t agent = 0; agent < plan.itineraries.size(); ++agent) {
        std::string lane(plan.makespan, ' ');
        for (int idx : plan.itineraries[agent]) {
            const Action& a = plan.actions[idx];
            for (int t = a.tpl.t_s; t < a.t_e; ++t) lane[t] = symbol(a.tpl.type);
        }
        out << "agent " << agent << (agent < 10 ? "  " : " ") << lane << "\n";
    }
    return out.str();
}

struct SweepCell {
    std::map<ActionType, Rational> durations;
    BoundReport bounds;
    int makespan = 0;
    std::int64_t sum_of_costs = 0;
    std::string error;
};

int run_sweep(const Instance& inst, const json& grid, const SolverConfig& base_cfg, int jobs,
              const std::string& format, std::ostream& os) {
    // expand the per-type value lists into the cell grid, entry-major
    std::vector<std::pair<ActionType, std::vector<std::string>>> axes;
    for (ActionType t : kNonWaitTypes) {
        std::vector<std::string> values;
        std::string key = to_string(t);
        if (grid.contains(key))
            for (const json& v : grid.at(key))
                values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        else
            values = {"1", "2"};
        axes.emplace_back(t, values);
    }
    std::vector<SweepCell> cells;
    std::vector<std::map<ActionType, Rational>> stack{{}};
    for (auto& [type, values] : axes) {
        std::vector<std::map<ActionType, Rational>> next;
        for (const auto& partial : stack)
            for (const std::string& v : values) {
                auto combo = partial;
                combo[type] = Rational::parse(v);
                next.push_back(std::move(combo));
            }
        stack = std::move(next);
    }
    for (auto& combo : stack) cells.push_back(SweepCell{std::move(combo), {}, 0, 0, ""});

    // one shared unit-duration companion run
    ScaledDurations sd_unit = scale(DurationSpec::unit());
    SolverConfig unit_cfg = base_cfg;
    if (!base_cfg.workdir.empty()) unit_cfg.workdir = base_cfg.workdir + "/unit";
    PlanOutcome unit_outcome = plan_lexicographic(inst, sd_unit, unit_cfg);
    const Plan& unit_plan = unit_outcome.plan;

    auto run_cell = [&](int i) {
        SweepCell& cell = cells[i];
        try {
            ScaledDurations sd = scale(DurationSpec::per_type_spec(cell.durations));
            SolverConfig cfg = base_cfg;
            if (!base_cfg.workdir.empty())
                cfg.workdir = base_cfg.workdir + "/cell_" + std::to_string(i);
            PlanOutcome outcome = sd.is_unit()
                                      ? plan_lexicographic(inst, sd, cfg)
                                      : plan_lexicographic_with_unit(inst, sd, cfg, unit_plan);
            cell.bounds = outcome.bounds;
            cell.makespan = outcome.plan.makespan;
            cell.sum_of_costs = outcome.plan.sum_of_costs;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    for (std::size_t base = 0; base < cells.size(); base += jobs) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = base; i < std::min(base + jobs, cells.size()); ++i)
            batch.push_back(std::async(std::launch::async, run_cell, static_cast<int>(i)));
        for (auto& f : batch) f.get();
    }

    double sq_sum = 0;
    double max_rel = 0;
    int solved = 0;
    for (const SweepCell& cell : cells) {
        if (!cell.error.empty() || !cell.bounds.T_h) continue;
        double err = static_cast<double>(*cell.bounds.T_h - cell.makespan);
        sq_sum += err * err;
        max_rel = std::max(max_rel, std::abs(err) / cell.makespan);
        ++solved;
    }
    double rmse = solved ? std::sqrt(sq_sum / solved) : 0.0;

    if (format == "json") {
        json doc;
        json rows = json::array();
        for (const SweepCell& cell : cells) {
            json row;
            json durations;
            for (const auto& [type, value] : cell.durations)
                durations[to_string(type)] = value.str();
            row["durations"] = std::move(durations);
            if (cell.error.empty()) {
                row["bounds"] = json::parse(cell.bounds.to_json());
                row["makespan"] = cell.makespan;
                row["sum_of_costs"] = cell.sum_of_costs;
                if (cell.bounds.T_h) row["error"] = *cell.bounds.T_h - cell.makespan;
            } else {
                row["error_message"] = cell.error;
            }
            rows.push_back(std::move(row));
        }
        doc["cells"] = std::move(rows);
        doc["T_b"] = unit_plan.makespan;
        doc["rmse"] = rmse;
        doc["max_relative_error"] = max_rel;
        doc["solved"] = solved;
        os << doc.dump(2) << "\n";
    } else {
        os << "sweep on " << cells.size() << " duration combinations, T_b=" << unit_plan.makespan
           << "\n";
        os << "entry leave move_block move_empty pick_up deliver | l_r alpha T_h | makespan "
              "soc err\n";
        for (const SweepCell& cell : cells) {
            for (ActionType t : kNonWaitTypes) os << cell.durations.at(t).str() << " ";
            if (!cell.error.empty()) {
                os << "| failed: " << cell.error << "\n";
                continue;
            }
            os << "| " << cell.bounds.l_r << " " << cell.bounds.alpha.str() << " "
               << (cell.bounds.T_h ? std::to_string(*cell.bounds.T_h) : "-") << " | "
               << cell.makespan << " " << cell.sum_of_costs << " "
               << (cell.bounds.T_h ? *cell.bounds.T_h - cell.makespan : 0) << "\n";
        }
        os << "RMSE " << rmse << ", max relative error " << max_rel << " (" << solved << "/"
           << cells.size() << " cells solved)\n";
    }
    return solved == static_cast<int>(cells.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact planner for multi-agent collective construction with per-type action "
                 "durations"};
    app.require_subcommand(1);

    CommonArgs plan_args, validate_args, bounds_args, sweep_args, oracle_args;
    SolverConfig solver_cfg;
    std::string out_path, plan_path, unit_plan_path, grid_path;
    bool dump_catalog = false;
    int jobs = 4, max_horizon = 0;

    auto add_solver_flags = [&solver_cfg](CLI::App* cmd) {
        cmd->add_option("--solver-cmd", solver_cfg.command,
                        "solver command template with {model} and {solution} placeholders");
        cmd->add_option("--time-limit", solver_cfg.time_limit_s, "per-solve limit in seconds");
        cmd->add_option("--threads", solver_cfg.threads, "solver thread cap");
        cmd->add_option("--workdir", solver_cfg.workdir,
                        "keep model/solution exchange files in this directory");
    };

    auto* cmd_plan = app.add_subcommand("plan", "solve an instance lexicographically");
    add_common(cmd_plan, plan_args);
    add_solver_flags(cmd_plan);
    cmd_plan->add_option("--out", out_path, "write the plan file here");
    cmd_plan->add_flag("--dump-catalog", dump_catalog, "print catalog counts per type");

    auto* cmd_validate = app.add_subcommand("validate", "replay and check a plan file");
    add_common(cmd_validate, validate_args);
    cmd_validate->add_option("--plan", plan_path, "plan JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    auto* cmd_bounds = app.add_subcommand("bounds", "print makespan bounds and estimates");
    add_common(cmd_bounds, bounds_args);
    cmd_bounds->add_option("--unit-plan", unit_plan_path,
                           "unit-duration plan file enabling T_b/u_f/u_c/T_h/l_f")
        ->check(CLI::ExistingFile);

    auto* cmd_sweep = app.add_subcommand("sweep", "makespan-estimate sweep over a duration grid");
    add_common(cmd_sweep, sweep_args, false);
    add_solver_flags(cmd_sweep);
    cmd_sweep->add_option("--grid", grid_path,
                          "JSON file with per-type duration value lists (default: {1,2} per "
                          "non-wait type, leave pinned to 1)");
    cmd_sweep->add_option("--jobs", jobs, "parallel planning jobs");

    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force optimum for tiny instances");
    add_common(cmd_oracle, oracle_args);
    cmd_oracle->add_option("--max-horizon", max_horizon, "search horizon cap");
    cmd_oracle->add_option("--out", out_path, "write the witness plan here");

    auto* cmd_render = app.add_subcommand("render", "ASCII timeline of a plan file");
    cmd_render->add_option("--plan", plan_path, "plan JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_plan->parsed()) {
            Instance inst = load_instance(plan_args.instance_path);
            ScaledDurations sd = load_durations(plan_args);
            PlanOutcome outcome = plan_lexicographic(inst, sd, solver_cfg);
            if (dump_catalog)
                std::cout << build_catalog(inst, sd, outcome.plan.makespan).describe_counts();
            if (!out_path.empty()) write_file(out_path, serialize_plan(outcome.plan));
            if (plan_args.format == "json")
                std::cout << outcome_json(outcome).dump(2) << "\n";
            else
                std::cout << table_row(outcome);
            return 0;
        }
        if (cmd_validate->parsed()) {
            Instance inst = load_instance(validate_args.instance_path);
            ScaledDurations sd = load_durations(validate_args);
            Plan plan = load_plan(plan_path);
            ViolationReport report = validate_plan(inst, sd, plan);
            std::cout << (validate_args.format == "json" ? report.to_json() : report.to_text());
            return report.ok() ? 0 : 1;
        }
        if (cmd_bounds->parsed()) {
            Instance inst = load_instance(bounds_args.instance_path);
            ScaledDurations sd = load_durations(bounds_args);
            BoundReport report;
            report.l_r = lower_bound_lr(inst, sd);
            int alpha_horizon = std::max(report.l_r, 4) + sd.max_duration_overall(inst.dims.z);
            report.alpha = compute_alpha(build_catalog(inst, sd, alpha_horizon));
            if (!unit_plan_path.empty()) {
                Plan unit_plan = load_plan(unit_plan_path);
                ScaledDurations sd_unit = scale(DurationSpec::unit());
                report.T_b = unit_plan.makespan;
                report.u_f = upper_bound_uf(unit_plan, sd);
                report.u_c = upper_bound_uc(unit_plan.makespan, sd, inst);
                report.l_f = lower_bound_lf(unit_plan.makespan, sd_unit, sd, inst);
                report.T_h = estimate_Th(report.l_r, *report.u_f, report.alpha, *report.T_b);
            }
            std::cout << (bounds_args.format == "json" ? report.to_json() + "\n"
                                                       : report.to_text() + "\n");
            return 0;
        }
        if (cmd_sweep->parsed()) {
            Instance inst = load_instance(sweep_args.instance_path);
            json grid;
            if (!grid_path.empty()) {
                std::ifstream in(grid_path);
                in >> grid;
            } else {
                grid = json::object();
                grid["leave"] = json::array({"1"});
            }
            return run_sweep(inst, grid, solver_cfg, std::max(jobs, 1), sweep_args.format,
                             std::cout);
        }
        if (cmd_oracle->parsed()) {
            Instance inst = load_instance(oracle_args.instance_path);
            ScaledDurations sd = load_durations(oracle_args);
            int cap = max_horizon > 0 ? max_horizon : 12 * sd.max_duration_overall(inst.dims.z);
            auto result = brute_force_plan(inst, sd, cap);
            if (!result) {
                std::cout << "no plan within horizon " << cap << "\n";
                return 1;
            }
            if (!out_path.empty()) write_file(out_path, serialize_plan(result->witness));
            if (oracle_args.format == "json") {
                json doc;
                doc["makespan"] = result->makespan;
                doc["sum_of_costs"] = result->sum_of_costs;
                doc["robots"] = result->witness.agents_used();
                std::cout << doc.dump(2) << "\n";
            } else {
                std::cout << "makespan " << result->makespan << ", sum-of-costs "
                          << result->sum_of_costs << ", robots " << result->witness.agents_used()
                          << "\n";
            }
            return 0;
        }
        if (cmd_render->parsed()) {
            Plan plan = load_plan(plan_path);
            std::cout << render_timeline(plan);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
