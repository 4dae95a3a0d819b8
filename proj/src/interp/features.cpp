#include "interp/features.hpp"

namespace interp {

using soko::Action;
using soko::Pos;
using soko::Tile;

Recordings record_planner_episodes(const std::vector<soko::Level>& levels,
                                   const planner::ChannelMap& map,
                                   const planner::MechanismGains& gains,
                                   const planner::RunOptions& options) {
    Recordings rec;
    planner::RunOptions opts = options;
    opts.record_grids = true;
    for (const auto& level : levels) {
        planner::Episode ep = planner::run_planner(level, map, gains, opts);
        rec.labels.push_back(soko::future_move_labels(level, ep.actions));
        rec.episodes.push_back(std::move(ep));
    }
    return rec;
}

FeatureVec features_at(const planner::Episode& episode, const soko::LabelGrid& labels,
                       int step, Pos square, Pos shift) {
    FeatureVec f{};
    const soko::Level& level = episode.levels[static_cast<size_t>(step)];
    Pos p{square.row + shift.row, square.col + shift.col};
    if (!level.in_bounds(p)) return f;

    Tile t = level.at(p);
    f[0] = (t == Tile::Agent || t == Tile::AgentOnTarget) ? 1.0 : 0.0;
    f[1] = (t == Tile::Floor) ? 1.0 : 0.0;
    f[2] = (t == Tile::Box) ? 1.0 : 0.0;
    f[3] = (t == Tile::BoxOnTarget) ? 1.0 : 0.0;
    f[4] = (t == Tile::Target) ? 1.0 : 0.0;

    size_t cell = labels.cell(p);
    for (int d = 0; d < 4; ++d) {
        Action a = static_cast<Action>(d);
        bool box_future = false, agent_future = false;
        for (int tt = step; tt < labels.steps; ++tt) {
            if (labels.box_move[static_cast<size_t>(tt)][cell] == a) box_future = true;
            if (labels.agent_move[static_cast<size_t>(tt)][cell] == a) agent_future = true;
        }
        f[static_cast<size_t>(5 + d)] = box_future ? 1.0 : 0.0;
        f[static_cast<size_t>(9 + d)] = agent_future ? 1.0 : 0.0;
        // next-action feature is square-independent (broadcast)
        f[static_cast<size_t>(13 + d)] =
            (step < static_cast<int>(episode.actions.size()) &&
             episode.actions[static_cast<size_t>(step)] == a)
                ? 1.0
                : 0.0;
    }
    return f;
}

}  // namespace interp
