#include "macc/instance.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace macc {

using nlohmann::json;

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance: invalid JSON: ") + e.what());
    }

    Instance inst;
    try {
        inst.dims.x = doc.at("x").get<int>();
        inst.dims.y = doc.at("y").get<int>();
        inst.dims.z = doc.at("z").get<int>();
        inst.agent_limit = doc.at("agent_limit").get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance: missing or malformed field: ") + e.what());
    }

    if (inst.dims.x < 3 || inst.dims.y < 3)
        throw ParseError("instance: grid must be at least 3x3 (border ring plus interior)");
    if (inst.dims.z < 1)
        throw ParseError("instance: z must be positive");
    if (inst.agent_limit < 1)
        throw ParseError("instance: agent_limit must be >= 1");

    const auto& rows = doc.at("heightmap");
    if (!rows.is_array() || static_cast<int>(rows.size()) != inst.dims.y)
        throw ParseError("instance: heightmap must have y rows");

    inst.target.assign(inst.dims.x * inst.dims.y, 0);
    for (int y = 0; y < inst.dims.y; ++y) {
        const auto& row = rows[y];
        if (!row.is_array() || static_cast<int>(row.size()) != inst.dims.x)
            throw ParseError("instance: heightmap row " + std::to_string(y) +
                             " must have x entries");
        for (int x = 0; x < inst.dims.x; ++x) {
            int h = row[x].get<int>();
            if (h < 0 || h > inst.dims.z - 1)
                throw ParseError("instance: target height " + std::to_string(h) + " at (" +
                                 std::to_string(x) + "," + std::to_string(y) +
                                 ") outside [0, z-1]");
            if (h > 0 && inst.is_border(x, y))
                throw ParseError("instance: border target: nonzero height at border cell (" +
                                 std::to_string(x) + "," + std::to_string(y) + ")");
            inst.target[inst.column_id(x, y)] = h;
        }
    }

    bool any_block = false;
    for (int h : inst.target) any_block |= h > 0;
    if (any_block && inst.dims.z < 2)
        throw ParseError("instance: z must be >= 2 when any target height is positive");

    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("instance: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::vector<Position> border_cells(const Instance& inst) {
    std::vector<Position> cells;
    cells.reserve(2 * inst.dims.x + 2 * inst.dims.y - 4);
    for (int y = 0; y < inst.dims.y; ++y)
        for (int x = 0; x < inst.dims.x; ++x)
            if (inst.is_border(x, y)) cells.push_back(Position::grid(x, y, 0));
    return cells;
}

std::vector<std::pair<int, int>> neighbors(const Instance& inst, int x, int y) {
    static constexpr int dx[4] = {-1, 1, 0, 0};
    static constexpr int dy[4] = {0, 0, -1, 1};
    std::vector<std::pair<int, int>> out;
    out.reserve(4);
    for (int k = 0; k < 4; ++k) {
        int nx = x + dx[k];
        int ny = y + dy[k];
        if (inst.in_grid(nx, ny)) out.emplace_back(nx, ny);
    }
    return out;
}

int min_border_distance(const Instance& inst, int x, int y) {
    int best = inst.dims.x + inst.dims.y;  // larger than any L1 distance on the grid
    for (auto [nx, ny] : neighbors(inst, x, y)) {
        for (int by = 0; by < inst.dims.y; ++by) {
            for (int bx = 0; bx < inst.dims.x; ++bx) {
                if (!inst.is_border(bx, by)) continue;
                int d = std::abs(nx - bx) + std::abs(ny - by);
                if (d < best) best = d;
            }
        }
    }
    return best;
}

}  // namespace macc
