#ifndef PLANNER_CHANNEL_MAP_HPP
#define PLANNER_CHANNEL_MAP_HPP

#include <array>
#include <stdexcept>

#include "soko/level.hpp"

namespace planner {

using soko::Action;

// Role -> channel assignment for the planner's activation grid and for
// compiled DRC weights. Path channels for Up are stored with a one-square
// down-right offset (mirroring the offset the trained-network analyses
// correct for); accessors in PlanGrid translate between logical squares and
// storage squares so mechanism code never sees the shift.
struct ChannelMap {
    std::array<int, 4> box_short{};   // indexed by Action
    std::array<int, 4> box_long{};
    std::array<int, 4> agent_short{};
    std::array<int, 4> gna{};
    std::array<int, 4> pna{};
    int wall = -1;
    int target = -1;  // uncovered targets only
    int box = -1;
    int agent = -1;
    int total = 0;  // capacity C; assigned roles occupy the low 24 indices

    // storage offset of a channel (dr, dc); nonzero only for Up path channels
    std::pair<int, int> offset(int channel) const {
        if (channel == box_short[0] || channel == box_long[0] || channel == agent_short[0])
            return {1, 1};
        return {0, 0};
    }

    static constexpr int kRoles = 24;
};

// Deterministic layout: box_short 0-3, box_long 4-7, agent_short 8-11,
// gna 12-15, pna 16-19, wall 20, target 21, box 22, agent 23 (direction
// order Up, Down, Left, Right). Throws std::invalid_argument when C < 24.
ChannelMap default_channel_map(int channels);

}  // namespace planner

#endif  // PLANNER_CHANNEL_MAP_HPP
