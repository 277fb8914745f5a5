#include "macc/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace macc {

namespace {

void canonicalize(LinearConstraint& c) {
    std::sort(c.terms.begin(), c.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<VarRef, int>> merged;
    for (const auto& [var, coeff] : c.terms) {
        if (!merged.empty() && merged.back().first == var)
            merged.back().second += coeff;
        else
            merged.emplace_back(var, coeff);
    }
    std::erase_if(merged, [](const auto& term) { return term.second == 0; });
    c.terms = std::move(merged);
}

std::string coord(int v) {
    if (v == Position::kStart) return "S";
    if (v == Position::kEnd) return "E";
    return std::to_string(v);
}

}  // namespace

std::string variable_name(const Catalog& cat, VarRef v) {
    std::ostringstream out;
    if (v.kind == VarRef::Kind::R) {
        const Action& a = cat.actions[v.idx];
        out << "r_" << a.tpl.t_s << '_' << a.t_e << '_' << coord(a.tpl.start.x) << '_'
            << coord(a.tpl.start.y) << '_' << coord(a.tpl.start.z) << '_' << a.tpl.carry << '_'
            << kind_letter(a.tpl.kind) << '_' << coord(a.tpl.end.x) << '_' << coord(a.tpl.end.y)
            << '_' << coord(a.tpl.end.z);
    } else {
        const BlockAction& b = cat.blocks[v.idx];
        out << "h_" << b.t << '_' << b.x << '_' << b.y << '_' << b.z << '_' << b.z2;
    }
    return out.str();
}

MilpModel build_model(const Instance& inst, const Catalog& cat) {
    MilpModel model;
    model.horizon = cat.horizon;
    model.num_r = static_cast<int>(cat.actions.size());
    model.num_h = static_cast<int>(cat.blocks.size());

    const int T = cat.horizon;
    const int X = inst.dims.x, Y = inst.dims.y, Z = inst.dims.z;

    // objective (1): sum of r_i * d_i; entry timesteps count as on-grid time
    for (int i = 0; i < model.num_r; ++i)
        model.objective.emplace_back(VarRef{VarRef::Kind::R, i}, cat.actions[i].duration());

    auto add = [&model](LinearConstraint c) {
        canonicalize(c);
        if (!c.terms.empty()) model.constraints.push_back(std::move(c));
    };
    auto h_var = [&cat](int t, int x, int y, int z, int z2) {
        int idx = cat.block_index(t, x, y, z, z2);
        return VarRef{VarRef::Kind::H, idx};
    };
    auto row_name = [](const char* tag, std::initializer_list<int> ids) {
        std::string name = tag;
        for (int v : ids) name += "_" + std::to_string(v);
        return name;
    };

    // c2: border columns hold no blocks, ever
    for (int t = 0; t < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x) {
                if (!inst.is_border(x, y)) continue;
                LinearConstraint c{row_name("c2", {t, x, y}), 'E', 1, {}};
                c.terms.emplace_back(h_var(t, x, y, 0, 0), 1);
                add(std::move(c));
            }

    // c3: the world starts devoid of blocks
    for (int y = 0; y < Y; ++y)
        for (int x = 0; x < X; ++x) {
            LinearConstraint c{row_name("c3", {x, y}), 'E', 1, {}};
            c.terms.emplace_back(h_var(0, x, y, 0, 0), 1);
            add(std::move(c));
        }

    // c4: target structure stands at the final timestep
    for (int y = 0; y < Y; ++y)
        for (int x = 0; x < X; ++x) {
            int zt = inst.target_at(x, y);
            LinearConstraint c{row_name("c4", {x, y}), 'E', 1, {}};
            c.terms.emplace_back(h_var(T - 1, x, y, zt, zt), 1);
            add(std::move(c));
        }

    // c5: column height flows between consecutive timesteps
    for (int t = 0; t + 1 < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x)
                for (int z = 0; z < Z; ++z) {
                    LinearConstraint c{row_name("c5", {t, x, y, z}), 'E', 0, {}};
                    for (int idx : cat.blocks_at(t, x, y))
                        if (cat.blocks[idx].z2 == z)
                            c.terms.emplace_back(VarRef{VarRef::Kind::H, idx}, 1);
                    for (int idx : cat.blocks_at(t + 1, x, y))
                        if (cat.blocks[idx].z == z)
                            c.terms.emplace_back(VarRef{VarRef::Kind::H, idx}, -1);
                    add(std::move(c));
                }

    // c6: every column has exactly one height per timestep
    for (int t = 0; t < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x) {
                LinearConstraint c{row_name("c6", {t, x, y}), 'E', 1, {}};
                for (int idx : cat.blocks_at(t, x, y))
                    c.terms.emplace_back(VarRef{VarRef::Kind::H, idx}, 1);
                add(std::move(c));
            }

    // c7/c8: agent flow conservation at every (t, x, y, z), without and with
    // a carried block; pick_up and deliver completions flip the carry side
    for (int t = 0; t < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x)
                for (int z = 0; z < Z; ++z) {
                    Position p = Position::grid(x, y, z);
                    LinearConstraint c7{row_name("c7", {t, x, y, z}), 'E', 0, {}};
                    for (int i : cat.ending_with_end_at(t, p, 0, Kind::M))
                        c7.terms.emplace_back(VarRef{VarRef::Kind::R, i}, 1);
                    for (int i : cat.ending_with_start_at(t, p, 1, Kind::D))
                        c7.terms.emplace_back(VarRef{VarRef::Kind::R, i}, 1);
                    for (int i : cat.starting_at(t, p, 0, Kind::M))
                        c7.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    for (int i : cat.starting_at(t, p, 0, Kind::P))
                        c7.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    add(std::move(c7));

                    LinearConstraint c8{row_name("c8", {t, x, y, z}), 'E', 0, {}};
                    for (int i : cat.ending_with_end_at(t, p, 1, Kind::M))
                        c8.terms.emplace_back(VarRef{VarRef::Kind::R, i}, 1);
                    for (int i : cat.ending_with_start_at(t, p, 0, Kind::P))
                        c8.terms.emplace_back(VarRef{VarRef::Kind::R, i}, 1);
                    for (int i : cat.starting_at(t, p, 1, Kind::M))
                        c8.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    for (int i : cat.starting_at(t, p, 1, Kind::D))
                        c8.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    add(std::move(c8));
                }

    // c9: exclusion zones; both start and end block columns of an active
    // action are reserved for its whole [t_s, t_e). Inclusion-exclusion keeps
    // actions with coinciding columns (wait) counted once.
    // c11: at most A agents on the grid at any timestep.
    // c12: an active action's start cell must be the top of its column.
    {
        std::vector<std::vector<std::pair<VarRef, int>>> occupancy(
            static_cast<std::size_t>(T) * X * Y);
        std::vector<std::vector<std::pair<VarRef, int>>> active_at(T);
        std::map<std::uint64_t, std::vector<VarRef>> standing;  // (t, x, y, z)

        auto cell_key = [X, Y](int t, int x, int y, int z) {
            return ((static_cast<std::uint64_t>(t) * Y + y) * X + x) * 64 + z;
        };

        for (int i = 0; i < model.num_r; ++i) {
            const Action& a = cat.actions[i];
            VarRef var{VarRef::Kind::R, i};
            for (int t = a.tpl.t_s; t < a.t_e; ++t) {
                active_at[t].emplace_back(var, 1);
                if (a.tpl.start.on_grid())
                    standing[cell_key(t, a.tpl.start.x, a.tpl.start.y, a.tpl.start.z)].push_back(
                        var);
                bool start_grid = a.tpl.start.on_grid();
                bool end_grid = a.tpl.end.on_grid();
                if (start_grid)
                    occupancy[(static_cast<std::size_t>(t) * Y + a.tpl.start.y) * X +
                              a.tpl.start.x]
                        .emplace_back(var, 1);
                if (end_grid && !(start_grid && a.tpl.end.x == a.tpl.start.x &&
                                  a.tpl.end.y == a.tpl.start.y))
                    occupancy[(static_cast<std::size_t>(t) * Y + a.tpl.end.y) * X + a.tpl.end.x]
                        .emplace_back(var, 1);
            }
        }

        for (int t = 0; t < T; ++t)
            for (int y = 0; y < Y; ++y)
                for (int x = 0; x < X; ++x) {
                    LinearConstraint c{row_name("c9", {t, x, y}), 'L', 1, {}};
                    c.terms = occupancy[(static_cast<std::size_t>(t) * Y + y) * X + x];
                    add(std::move(c));
                }

        for (int t = 0; t < T; ++t) {
            LinearConstraint c{row_name("c11", {t}), 'L', inst.agent_limit, {}};
            c.terms = active_at[t];
            add(std::move(c));
        }

        for (int t = 0; t < T; ++t)
            for (int y = 0; y < Y; ++y)
                for (int x = 0; x < X; ++x)
                    for (int z = 0; z < Z; ++z) {
                        LinearConstraint c{row_name("c12", {t, x, y, z}), 'G', 0, {}};
                        for (int idx : cat.blocks_at(t, x, y))
                            if (cat.blocks[idx].z == z)
                                c.terms.emplace_back(VarRef{VarRef::Kind::H, idx}, 1);
                        auto it = standing.find(cell_key(t, x, y, z));
                        if (it == standing.end()) continue;  // no agent can stand here
                        for (VarRef var : it->second) c.terms.emplace_back(var, -1);
                        add(std::move(c));
                    }
    }

    // c13/c14: every column decrease is a pick_up completion, every increase
    // a deliver completion
    for (int t = 0; t + 1 < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x)
                for (int z = 0; z + 1 < Z; ++z) {
                    Position p = Position::grid(x, y, z);
                    LinearConstraint c13{row_name("c13", {t, x, y, z}), 'E', 0, {}};
                    c13.terms.emplace_back(h_var(t, x, y, z + 1, z), 1);
                    for (int i : cat.ending_with_end_at(t + 1, p, 0, Kind::P))
                        c13.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    add(std::move(c13));

                    LinearConstraint c14{row_name("c14", {t, x, y, z}), 'E', 0, {}};
                    c14.terms.emplace_back(h_var(t, x, y, z, z + 1), 1);
                    for (int i : cat.ending_with_end_at(t + 1, p, 1, Kind::D))
                        c14.terms.emplace_back(VarRef{VarRef::Kind::R, i}, -1);
                    add(std::move(c14));
                }

    // c15/c16 are the binary domains, declared in the BOUNDS section.
    return model;
}

std::string export_model(const MilpModel& model, const Catalog& cat) {
    std::ostringstream out;
    out << "NAME macc_T" << model.horizon << "\n";
    out << "ROWS\n";
    out << " N COST\n";
    for (const LinearConstraint& c : model.constraints)
        out << ' ' << c.sense << ' ' << c.name << '\n';

    // transpose to per-column entries; objective first, then rows in order
    int nvars = model.variable_count();
    std::vector<std::vector<std::pair<int, int>>> column_rows(nvars);  // (row idx, coeff)
    std::vector<std::int64_t> column_cost(nvars, 0);

    auto flat = [&model](VarRef v) {
        return v.kind == VarRef::Kind::R ? v.idx : model.num_r + v.idx;
    };
    for (const auto& [var, coeff] : model.objective) column_cost[flat(var)] = coeff;
    for (int row = 0; row < static_cast<int>(model.constraints.size()); ++row)
        for (const auto& [var, coeff] : model.constraints[row].terms)
            column_rows[flat(var)].emplace_back(row, coeff);

    std::vector<std::string> names(nvars);
    for (int i = 0; i < model.num_r; ++i) names[i] = variable_name(cat, {VarRef::Kind::R, i});
    for (int i = 0; i < model.num_h; ++i)
        names[model.num_r + i] = variable_name(cat, {VarRef::Kind::H, i});

    out << "COLUMNS\n";
    out << " M1 'MARKER' 'INTORG'\n";
    for (int v = 0; v < nvars; ++v) {
        if (column_cost[v] != 0) out << ' ' << names[v] << " COST " << column_cost[v] << '\n';
        for (const auto& [row, coeff] : column_rows[v])
            out << ' ' << names[v] << ' ' << model.constraints[row].name << ' ' << coeff << '\n';
    }
    out << " M2 'MARKER' 'INTEND'\n";

    out << "RHS\n";
    for (const LinearConstraint& c : model.constraints)
        if (c.rhs != 0) out << " RHS " << c.name << ' ' << c.rhs << '\n';

    out << "BOUNDS\n";
    for (int v = 0; v < nvars; ++v) out << " BV BND " << names[v] << '\n';
    out << "ENDATA\n";
    return out.str();
}

std::optional<std::string> first_violated_row(const MilpModel& model,
                                              const std::vector<int>& r_values,
                                              const std::vector<int>& h_values) {
    for (const LinearConstraint& c : model.constraints) {
        std::int64_t lhs = 0;
        for (const auto& [var, coeff] : c.terms) {
            int value = var.kind == VarRef::Kind::R ? r_values[var.idx] : h_values[var.idx];
            lhs += static_cast<std::int64_t>(coeff) * value;
        }
        bool ok = c.sense == 'E' ? lhs == c.rhs : c.sense == 'L' ? lhs <= c.rhs : lhs >= c.rhs;
        if (!ok) return c.name;
    }
    return std::nullopt;
}

std::int64_t objective_value(const MilpModel& model, const std::vector<int>& r_values,
                             const std::vector<int>& h_values) {
    std::int64_t total = 0;
    for (const auto& [var, coeff] : model.objective) {
        int value = var.kind == VarRef::Kind::R ? r_values[var.idx] : h_values[var.idx];
        total += coeff * value;
    }
    return total;
}

}  // namespace macc
