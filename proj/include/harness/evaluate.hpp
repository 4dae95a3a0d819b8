#ifndef HARNESS_EVALUATE_HPP
#define HARNESS_EVALUATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "drc/weights.hpp"
#include "planner/engine.hpp"

namespace harness {

enum class SolverKind { Oracle, Synthetic, Drc };

struct LevelOutcome {
    long id = 0;
    bool solved = false;
    int steps = 0;
    double reward = 0.0;
};

struct SolveStats {
    int n_levels = 0;
    int n_solved = 0;
    double solve_rate = 0.0;
    double mean_steps = 0.0;  // over solved levels
    double ci_low = 0.0;
    double ci_high = 0.0;  // 95% bootstrap, 1000 resamples
    std::vector<LevelOutcome> outcomes;
};

struct EvaluateOptions {
    int max_steps = 120;
    int ticks_per_step = 3;
    int thinking_steps = 0;
    uint64_t seed = 0x5eed;
    size_t oracle_budget = 5'000'000;
    const drc::WeightSet* weights = nullptr;  // for SolverKind::Drc
};

// Runs a solver over the levels and aggregates outcomes. The DRC path runs
// the compiled net and reads actions from the decoded plan's agent channels;
// it needs a weight set.
SolveStats evaluate(SolverKind solver, const std::vector<soko::Level>& levels,
                    const planner::ChannelMap& map, const planner::MechanismGains& gains,
                    const EvaluateOptions& options = {});

std::string solve_stats_csv(const SolveStats& stats);

}  // namespace harness

#endif  // HARNESS_EVALUATE_HPP
