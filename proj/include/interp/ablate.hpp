#ifndef INTERP_ABLATE_HPP
#define INTERP_ABLATE_HPP

#include <optional>
#include <string>

#include "drc/weights.hpp"
#include "planner/engine.hpp"

namespace interp {

// Ablations over the synthetic planner (mechanism-level) or a weight set
// (kernel-level). Text syntax, e.g.:
//   "mode=zero_kernel targets=wta_cross"
//   "mode=zero_kernel targets=turn"
//   "mode=mean_activation targets=retention"
//   "mode=cache_1step targets=box_short,agent_short"
struct AblationSpec {
    enum class Mode { MeanActivation, ZeroKernel, Cache1Step };
    Mode mode = Mode::ZeroKernel;
    std::vector<std::string> targets;
};

AblationSpec parse_ablation(const std::string& text);

// Zeroes the cross-direction inhibition kernels (planner analogue: disables
// winner-takes-all) or turn kernels in a compiled weight set.
void zero_kernel_slices(drc::WeightSet& weights, const planner::ChannelMap& map,
                        const std::string& target);

struct AblationRunResult {
    int n_levels = 0;
    int base_solved = 0;
    int ablated_solved = 0;
    double base_rate = 0.0;
    double ablated_rate = 0.0;
    double drop = 0.0;  // base_rate - ablated_rate
};

// Runs the planner over a level set with and without the ablation and
// reports the solve-rate drop. Mechanism mapping:
//   zero_kernel/wta_cross  -> winner-takes-all disabled
//   zero_kernel/turn       -> turn extension disabled
//   mean_activation/...    -> targeted channels reset to their mean state
//                             (over the base runs) at the first tick of
//                             every step
//   cache_1step/...        -> targeted channel groups replaced each step by
//                             the state recomputed from the previous level
//                             alone (zero history)
AblationRunResult apply_ablation(const std::vector<soko::Level>& levels,
                                 const planner::ChannelMap& map,
                                 const planner::MechanismGains& gains,
                                 const AblationSpec& spec,
                                 const planner::RunOptions& options = {});

// Single-episode variant used by tests and the CLI.
planner::Episode run_planner_ablated(const soko::Level& level,
                                     const planner::ChannelMap& map,
                                     const planner::MechanismGains& gains,
                                     const AblationSpec& spec,
                                     const planner::RunOptions& options = {});

}  // namespace interp

#endif  // INTERP_ABLATE_HPP
