#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace macc {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct GridDims {
    int x = 0;  // cells west-east
    int y = 0;  // cells north-south
    int z = 0;  // traversable levels; structure heights live in [0, z-1]
};

/// Grid position plus the two off-grid sentinels (S,S,S) and (E,E,E) used by
/// entry and leave actions.
struct Position {
    static constexpr int kStart = -1;
    static constexpr int kEnd = -2;

    int x = 0;
    int y = 0;
    int z = 0;

    static Position start() { return {kStart, kStart, kStart}; }
    static Position end() { return {kEnd, kEnd, kEnd}; }
    static Position grid(int x, int y, int z) { return {x, y, z}; }

    bool is_start() const { return x == kStart; }
    bool is_end() const { return x == kEnd; }
    bool on_grid() const { return x >= 0; }

    friend bool operator==(const Position& a, const Position& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend auto operator<=>(const Position& a, const Position& b) = default;
};

struct Instance {
    GridDims dims;
    std::vector<int> target;  // row-major, target[y * dims.x + x]
    int agent_limit = 1;

    int target_at(int x, int y) const { return target[y * dims.x + x]; }
    bool in_grid(int x, int y) const {
        return x >= 0 && x < dims.x && y >= 0 && y < dims.y;
    }
    bool is_border(int x, int y) const {
        return x == 0 || y == 0 || x == dims.x - 1 || y == dims.y - 1;
    }
    int column_count() const { return dims.x * dims.y; }
    int column_id(int x, int y) const { return y * dims.x + x; }
};

/// Parses and validates an instance file (UTF-8 JSON, see README for the
/// schema). Rejects border targets and out-of-range heights.
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);

/// Perimeter ground cells; size is always 2X + 2Y - 4.
std::vector<Position> border_cells(const Instance& inst);

/// 4-neighborhood of (x, y) clipped to the grid.
std::vector<std::pair<int, int>> neighbors(const Instance& inst, int x, int y);

/// Minimum L1 distance from any border cell to any neighbor of (x, y),
/// projected to the ground plane.
int min_border_distance(const Instance& inst, int x, int y);

}  // namespace macc
