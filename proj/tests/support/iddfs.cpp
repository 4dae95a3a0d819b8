#include "support/iddfs.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>

namespace testsupport {

namespace {

using soko::Action;
using soko::Level;

std::string state_key(const Level& level) {
    std::vector<uint16_t> cells;
    cells.push_back(
        static_cast<uint16_t>(level.agent_pos.row * level.width + level.agent_pos.col));
    std::vector<uint16_t> boxes;
    for (auto p : level.box_positions())
        boxes.push_back(static_cast<uint16_t>(p.row * level.width + p.col));
    std::sort(boxes.begin(), boxes.end());
    cells.insert(cells.end(), boxes.begin(), boxes.end());
    std::string key(cells.size() * 2, '\0');
    std::memcpy(key.data(), cells.data(), key.size());
    return key;
}

struct Search {
    std::unordered_map<std::string, int> best_depth;
    std::vector<Action> path;

    bool dfs(const Level& state, int depth, int bound) {
        if (state.solved()) return true;
        if (depth == bound) return false;
        auto key = state_key(state);
        auto it = best_depth.find(key);
        if (it != best_depth.end() && it->second <= depth) return false;
        best_depth[key] = depth;
        for (Action a : soko::kActions) {
            soko::StepOutcome out = soko::step(state, a);
            if (out.next.agent_pos == state.agent_pos) continue;
            path.push_back(a);
            if (dfs(out.next, depth + 1, bound)) return true;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Action>> solve_iddfs(const Level& level, int max_depth) {
    if (level.solved()) return std::vector<Action>{};
    for (int bound = 1; bound <= max_depth; ++bound) {
        Search search;
        if (search.dfs(level, 0, bound)) return search.path;
    }
    return std::nullopt;
}

}  // namespace testsupport
