#include "macc/catalog.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace macc {

namespace {

std::uint64_t pack_key(int t, const Position& p, int c, Kind k) {
    return (static_cast<std::uint64_t>(t) << 32) |
           (static_cast<std::uint64_t>(p.x & 0xff) << 24) |
           (static_cast<std::uint64_t>(p.y & 0xff) << 16) |
           (static_cast<std::uint64_t>(p.z & 0xff) << 8) |
           (static_cast<std::uint64_t>(c) << 4) | static_cast<std::uint64_t>(k);
}

std::uint64_t pack_block_key(int t, int x, int y, int z, int z2) {
    return (static_cast<std::uint64_t>(t) << 32) |
           (static_cast<std::uint64_t>(x & 0xff) << 24) |
           (static_cast<std::uint64_t>(y & 0xff) << 16) |
           (static_cast<std::uint64_t>(z & 0xff) << 8) | static_cast<std::uint64_t>(z2 & 0xff);
}

std::uint64_t pack_cell_key(int t, int x, int y) {
    return (static_cast<std::uint64_t>(t) << 32) |
           (static_cast<std::uint64_t>(x & 0xffff) << 16) |
           static_cast<std::uint64_t>(y & 0xffff);
}

const std::vector<int> kNoActions;

}  // namespace

Catalog enumerate_templates(const Instance& inst, const ScaledDurations& /*sd*/, int horizon) {
    if (horizon < 4)
        throw std::invalid_argument("catalog: horizon must be at least 4, got " +
                                    std::to_string(horizon));
    Catalog cat;
    cat.horizon = horizon;
    cat.by_type.assign(kActionTypeCount, {});

    const int T = horizon;
    const int X = inst.dims.x, Y = inst.dims.y, Z = inst.dims.z;
    auto borders = border_cells(inst);

    auto push = [&cat](ActionType type, int t_s, Position start, int carry, Position end) {
        Action a;
        a.tpl = ActionTemplate{type, t_s, start, carry, kind_of(type), end};
        a.t_e = 0;  // assigned by materialize()
        cat.actions.push_back(a);
    };

    // entry: t_s in {0..T-4}, from (S,S,S) to a border cell, either carry flag
    for (int t = 0; t <= T - 4; ++t)
        for (const Position& b : borders)
            for (int c = 0; c <= 1; ++c)
                push(ActionType::Entry, t, Position::start(), c, b);

    // leave: t_s in {2..T-2}, from a border cell to (E,E,E)
    for (int t = 2; t <= T - 2; ++t)
        for (const Position& b : borders)
            for (int c = 0; c <= 1; ++c)
                push(ActionType::Leave, t, b, c, Position::end());

    // move_block / move_empty: t_s in {1..T-3}, 4-neighbors, |z'-z| <= 1
    for (ActionType mt : {ActionType::MoveBlock, ActionType::MoveEmpty}) {
        int carry = mt == ActionType::MoveBlock ? 1 : 0;
        for (int t = 1; t <= T - 3; ++t)
            for (int y = 0; y < Y; ++y)
                for (int x = 0; x < X; ++x)
                    for (int z = 0; z < Z; ++z)
                        for (auto [nx, ny] : neighbors(inst, x, y))
                            for (int z2 = std::max(0, z - 1); z2 <= std::min(Z - 1, z + 1); ++z2)
                                push(mt, t, Position::grid(x, y, z), carry,
                                     Position::grid(nx, ny, z2));
    }

    // pick_up / deliver: t_s in {1..T-3}, block level z in {0..Z-2}, affected
    // column is a 4-neighbor, agent stays at (x, y, z)
    for (ActionType bt : {ActionType::PickUp, ActionType::Deliver}) {
        int carry = bt == ActionType::Deliver ? 1 : 0;
        for (int t = 1; t <= T - 3; ++t)
            for (int y = 0; y < Y; ++y)
                for (int x = 0; x < X; ++x)
                    for (int z = 0; z <= Z - 2; ++z)
                        for (auto [nx, ny] : neighbors(inst, x, y))
                            push(bt, t, Position::grid(x, y, z), carry,
                                 Position::grid(nx, ny, z));
    }

    // wait: t_s in {1..T-3}, stays in place, either carry flag
    for (int t = 1; t <= T - 3; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < X; ++x)
                for (int z = 0; z < Z; ++z)
                    for (int c = 0; c <= 1; ++c)
                        push(ActionType::Wait, t, Position::grid(x, y, z), c,
                             Position::grid(x, y, z));

    cat.blocks = enumerate_block_actions(inst, horizon);
    return cat;
}

void materialize(Catalog& cat, const ScaledDurations& sd) {
    std::vector<Action> kept;
    kept.reserve(cat.actions.size());
    for (Action a : cat.actions) {
        a.t_e = a.tpl.t_s + sd.duration_of(a.tpl);
        if (a.t_e > cat.horizon - 1) continue;  // cannot finish before the world freeze
        kept.push_back(a);
    }
    cat.actions = std::move(kept);
    cat.materialized_ = true;
    cat.build_indexes();
}

Catalog build_catalog(const Instance& inst, const ScaledDurations& sd, int horizon) {
    Catalog cat = enumerate_templates(inst, sd, horizon);
    materialize(cat, sd);
    return cat;
}

std::vector<BlockAction> enumerate_block_actions(const Instance& inst, int horizon) {
    std::vector<BlockAction> blocks;
    const int Z = inst.dims.z;
    for (int t = 0; t < horizon; ++t)
        for (int y = 0; y < inst.dims.y; ++y)
            for (int x = 0; x < inst.dims.x; ++x)
                for (int z = 0; z < Z; ++z)
                    for (int z2 = std::max(0, z - 1); z2 <= std::min(Z - 1, z + 1); ++z2)
                        blocks.push_back(BlockAction{t, x, y, z, z2});
    return blocks;
}

void Catalog::build_indexes() {
    start_index_.clear();
    end_index_.clear();
    end_start_index_.clear();
    block_index_.clear();
    blocks_by_cell_.clear();

    for (int i = 0; i < static_cast<int>(actions.size()); ++i) {
        const Action& a = actions[i];
        by_type[static_cast<int>(a.tpl.type)].push_back(i);
        if (a.tpl.start.on_grid())
            start_index_[pack_key(a.tpl.t_s, a.tpl.start, a.tpl.carry, a.tpl.kind)].push_back(i);
        if (a.tpl.end.on_grid())
            end_index_[pack_key(a.t_e, a.tpl.end, a.tpl.carry, a.tpl.kind)].push_back(i);
        if (a.tpl.start.on_grid())
            end_start_index_[pack_key(a.t_e, a.tpl.start, a.tpl.carry, a.tpl.kind)].push_back(i);
    }
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
        const BlockAction& b = blocks[i];
        block_index_[pack_block_key(b.t, b.x, b.y, b.z, b.z2)] = i;
        blocks_by_cell_[pack_cell_key(b.t, b.x, b.y)].push_back(i);
    }
}

const std::vector<int>& Catalog::starting_at(int t_s, const Position& p, int c, Kind k) const {
    auto it = start_index_.find(pack_key(t_s, p, c, k));
    return it == start_index_.end() ? kNoActions : it->second;
}

const std::vector<int>& Catalog::ending_with_end_at(int t_e, const Position& p, int c,
                                                    Kind k) const {
    auto it = end_index_.find(pack_key(t_e, p, c, k));
    return it == end_index_.end() ? kNoActions : it->second;
}

const std::vector<int>& Catalog::ending_with_start_at(int t_e, const Position& p, int c,
                                                      Kind k) const {
    auto it = end_start_index_.find(pack_key(t_e, p, c, k));
    return it == end_start_index_.end() ? kNoActions : it->second;
}

int Catalog::block_index(int t, int x, int y, int z, int z2) const {
    auto it = block_index_.find(pack_block_key(t, x, y, z, z2));
    return it == block_index_.end() ? -1 : it->second;
}

const std::vector<int>& Catalog::blocks_at(int t, int x, int y) const {
    auto it = blocks_by_cell_.find(pack_cell_key(t, x, y));
    return it == blocks_by_cell_.end() ? kNoActions : it->second;
}

std::string Catalog::describe_counts() const {
    std::ostringstream out;
    out << "catalog horizon T=" << horizon << "\n";
    for (ActionType t : kAllActionTypes)
        out << "  " << to_string(t) << ": " << by_type[static_cast<int>(t)].size() << "\n";
    out << "  actions total: " << actions.size() << "\n";
    out << "  block-actions: " << blocks.size() << "\n";
    return out.str();
}

}  // namespace macc
