#ifndef PLANNER_GAINS_HPP
#define PLANNER_GAINS_HPP

#include <array>

namespace planner {

// Tunable strengths of the plan-propagation mechanisms. Requirements:
// lpe_gain > tpe_gain (straight extension preferred over turns),
// lpe_gain * decay < 1 (activation decays with chain distance, so the
// steering experiments have finite reach to improve), stop_gain < -1
// (stops overshoot into negative activation, triggering backtracking),
// backtrack_gain * lpe_gain * decay > 1 (the negative wave catches the
// decaying positive chain).
struct MechanismGains {
    double seed_gain = 1.0;
    double lpe_gain = 1.05;
    double tpe_gain = 0.98;
    double stop_gain = -1.5;
    double wta_inhibit = 0.8;
    double decay = 0.92;
    double theta = 0.3;
    double backtrack_gain = 1.2;
    double a_max = 2.0;
    // weaker self-seeds for the agent's own legal moves; plan-driven signals
    // must dominate them for the readout to follow the plan
    double agent_seed = 0.4;
    // box plan -> agent channel copy strength (one square against the push)
    double copy_gain = 0.9;
    // per-direction tie-break multipliers (Up, Down, Left, Right)
    std::array<double, 4> dir_bias = {0.94, 1.00, 0.96, 0.98};
    // squares held below this stay suppressed (no re-seeding) until the
    // negative activation decays away
    double suppress_hold = 0.05;

    double chain_factor() const { return lpe_gain * decay; }
    double turn_factor() const { return tpe_gain * decay; }
    double backtrack_factor() const { return backtrack_gain * lpe_gain * decay; }

    // Engine analogue of steering the recurrent kernels: scales the plan
    // extension strengths.
    MechanismGains steered(double factor) const {
        MechanismGains g = *this;
        g.lpe_gain *= factor;
        g.tpe_gain *= factor;
        return g;
    }
};

}  // namespace planner

#endif  // PLANNER_GAINS_HPP
