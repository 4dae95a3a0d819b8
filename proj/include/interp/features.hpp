#ifndef INTERP_FEATURES_HPP
#define INTERP_FEATURES_HPP

#include <array>
#include <vector>

#include "planner/engine.hpp"
#include "soko/labels.hpp"

namespace interp {

// Regression feature set: 5 base grids derivable from the observation
// (agent, floor, box-not-on-target, box-on-target, empty target) and 12
// future grids (per direction: box-move, agent-move, and a next-action
// feature broadcast to every square).
constexpr int kBaseFeatures = 5;
constexpr int kFutureFeatures = 12;
constexpr int kFeatures = kBaseFeatures + kFutureFeatures;

using FeatureVec = std::array<double, kFeatures>;

// Planner episodes plus the ground-truth movement labels replayed from them.
struct Recordings {
    std::vector<planner::Episode> episodes;
    std::vector<soko::LabelGrid> labels;  // absolute step times, one per episode
};

Recordings record_planner_episodes(const std::vector<soko::Level>& levels,
                                   const planner::ChannelMap& map,
                                   const planner::MechanismGains& gains,
                                   const planner::RunOptions& options = {});

// Feature vector for (episode, step, square), with every feature read at
// square + shift (out-of-grid reads are zero).
FeatureVec features_at(const planner::Episode& episode, const soko::LabelGrid& labels,
                       int step, soko::Pos square, soko::Pos shift = {0, 0});

}  // namespace interp

#endif  // INTERP_FEATURES_HPP
