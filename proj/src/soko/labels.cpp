#include "soko/labels.hpp"

namespace soko {

LabelGrid future_move_labels(const Level& level, const std::vector<Action>& actions) {
    LabelGrid grid;
    grid.height = level.height;
    grid.width = level.width;
    grid.steps = static_cast<int>(actions.size());
    size_t cells = static_cast<size_t>(level.height) * level.width;
    grid.agent_move.assign(grid.steps, std::vector<std::optional<Action>>(cells));
    grid.box_move.assign(grid.steps, std::vector<std::optional<Action>>(cells));

    Level cur = level;
    for (int t = 0; t < grid.steps; ++t) {
        Pos before = cur.agent_pos;
        StepOutcome out = step(cur, actions[t]);
        if (!(out.next.agent_pos == before))
            grid.agent_move[t][grid.cell(before)] = actions[t];
        if (out.moved_box)
            grid.box_move[t][grid.cell(out.moved_box->from)] = out.moved_box->dir;
        cur = out.next;
    }
    return grid;
}

}  // namespace soko
