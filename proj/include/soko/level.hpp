#ifndef SOKO_LEVEL_HPP
#define SOKO_LEVEL_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drc/tensor.hpp"

namespace soko {

enum class Tile : unsigned char {
    Wall,
    Floor,
    Target,
    Box,
    BoxOnTarget,
    Agent,
    AgentOnTarget,
};

enum class Action : unsigned char { Up, Down, Left, Right };

constexpr std::array<Action, 4> kActions = {Action::Up, Action::Down,
                                            Action::Left, Action::Right};

struct Pos {
    int row = 0;
    int col = 0;
    bool operator==(const Pos&) const = default;
};

inline Pos delta(Action a) {
    switch (a) {
        case Action::Up: return {-1, 0};
        case Action::Down: return {1, 0};
        case Action::Left: return {0, -1};
        case Action::Right: return {0, 1};
    }
    return {0, 0};
}

inline Pos operator+(Pos p, Pos d) { return {p.row + d.row, p.col + d.col}; }
inline Pos operator-(Pos p, Pos d) { return {p.row - d.row, p.col - d.col}; }

inline const char* action_name(Action a) {
    switch (a) {
        case Action::Up: return "Up";
        case Action::Down: return "Down";
        case Action::Left: return "Left";
        case Action::Right: return "Right";
    }
    return "?";
}

class parse_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Immutable Sokoban grid state. Exactly one agent; box count == target count
// (targets under boxes included) and at least one box.
struct Level {
    int height = 0;
    int width = 0;
    std::vector<Tile> tiles;  // row-major
    Pos agent_pos;
    std::optional<long> id;  // Boxoban "; id" header when present

    Tile at(Pos p) const { return tiles[static_cast<size_t>(p.row) * width + p.col]; }
    Tile& at(Pos p) { return tiles[static_cast<size_t>(p.row) * width + p.col]; }
    bool in_bounds(Pos p) const {
        return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
    }

    bool is_wall(Pos p) const { return !in_bounds(p) || at(p) == Tile::Wall; }
    bool has_box(Pos p) const {
        if (!in_bounds(p)) return false;
        Tile t = at(p);
        return t == Tile::Box || t == Tile::BoxOnTarget;
    }
    bool has_target(Pos p) const {
        if (!in_bounds(p)) return false;
        Tile t = at(p);
        return t == Tile::Target || t == Tile::BoxOnTarget || t == Tile::AgentOnTarget;
    }
    // Free for the agent or a pushed box: in bounds, no wall, no box.
    bool is_free(Pos p) const { return in_bounds(p) && !is_wall(p) && !has_box(p); }

    bool solved() const;
    int box_count() const;
    int target_count() const;

    std::vector<Pos> box_positions() const;
    std::vector<Pos> target_positions() const;
};

struct StepOutcome {
    Level next;
    double reward = 0.0;
    bool solved = false;
    struct BoxMove {
        Pos from;
        Action dir;
    };
    std::optional<BoxMove> moved_box;
};

// Parses a character grid: '#'=Wall, ' '=Floor, '$'=Box, '.'=Target,
// '@'=Agent, '*'=BoxOnTarget, '+'=AgentOnTarget. An optional "; id" header
// line is accepted before the grid. Throws parse_error on invariant
// violations (zero/multiple agents, box/target mismatch, ragged lines,
// unknown characters).
Level parse_level(const std::string& text);

// Inverse of parse_level (without the header unless the level has an id).
std::string to_text(const Level& level);

// One environment step. Blocked moves are legal no-ops and still cost the
// per-step reward. Reward terms: -0.1 per step, +1 box onto target, -1 box
// off target, +10 on solving.
StepOutcome step(const Level& level, Action action);

// One pixel per square, components in [0,1] (divided by 255).
drc::Tensor3 render_rgb(const Level& level);

// Exact inverse of render_rgb; throws std::invalid_argument on a pixel that
// matches no palette entry.
Level classify_rgb(const drc::Tensor3& image);

}  // namespace soko

#endif  // SOKO_LEVEL_HPP
