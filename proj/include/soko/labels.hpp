#ifndef SOKO_LABELS_HPP
#define SOKO_LABELS_HPP

#include <optional>
#include <vector>

#include "soko/level.hpp"

namespace soko {

// Ground-truth future movement labels derived by replaying an action
// sequence: for each step t, the square the agent moved from (and the square
// a pushed box moved from) gets that step's direction. Blocked moves leave
// no label.
struct LabelGrid {
    int height = 0;
    int width = 0;
    int steps = 0;
    // indexed [t][cell]; nullopt when nothing moved from that square at t
    std::vector<std::vector<std::optional<Action>>> agent_move;
    std::vector<std::vector<std::optional<Action>>> box_move;

    size_t cell(Pos p) const { return static_cast<size_t>(p.row) * width + p.col; }

    bool box_moves_within(Pos p, Action dir, int t0, int horizon) const {
        for (int t = t0; t < std::min(steps, t0 + horizon); ++t)
            if (box_move[t][cell(p)] == dir) return true;
        return false;
    }
    bool agent_moves_within(Pos p, Action dir, int t0, int horizon) const {
        for (int t = t0; t < std::min(steps, t0 + horizon); ++t)
            if (agent_move[t][cell(p)] == dir) return true;
        return false;
    }
};

// Throws std::invalid_argument if the sequence does not replay (it always
// replays mechanically; kept for interface completeness with empty levels).
LabelGrid future_move_labels(const Level& level, const std::vector<Action>& actions);

}  // namespace soko

#endif  // SOKO_LABELS_HPP
