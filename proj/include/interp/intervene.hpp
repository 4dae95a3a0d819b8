#ifndef INTERP_INTERVENE_HPP
#define INTERP_INTERVENE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drc/net.hpp"
#include "planner/engine.hpp"

namespace interp {

// Declarative activation edit x' <- alpha*x + c (or x' <- |x|), addressed
// either at planner channels or DRC net sites. Parsed from the plain-text
// key=value syntax used by the CLI, e.g.
//   "target=box_short_right squares=3,4;3,5 alpha=0 c=1.5 ticks=1,2"
//   "target=gna_up stage=readout c=2"
//   "target=net:h layer=0 channels=0,1 alpha=1 c=0"
struct InterventionSpec {
    std::optional<planner::PlanEdit> plan_edit;
    std::optional<drc::ActivationEdit> net_edit;
};

InterventionSpec parse_intervention(const std::string& text);
std::string describe(const InterventionSpec& spec);

struct InterveneOutcome {
    bool action_changed = false;
    soko::Action baseline;
    soko::Action intervened;
};

// Runs the synthetic planner on one transition (level + tick budget) with
// and without the edit and reports whether the emitted action changed.
InterveneOutcome causal_intervene(const soko::Level& level, const planner::ChannelMap& map,
                                  const planner::MechanismGains& gains,
                                  const planner::PlanEdit& edit, int ticks = 3);

// A protocol inspects one transition (level + converged grid + baseline
// action) and produces the edits to apply. Success on the transition means
// the re-emitted action equals target_action when set, otherwise simply
// differs from the baseline.
struct ProtocolDecision {
    std::vector<planner::PlanEdit> edits;
    std::optional<soko::Action> target_action;
    int post_ticks = 1;  // ticks between applying the edits and reading out
};
using Protocol = std::function<std::optional<ProtocolDecision>(
    const soko::Level&, const planner::PlanGrid&, soko::Action baseline)>;

struct InterventionScore {
    double success_rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n = 0;
};

// Fraction of sampled transitions where the protocol succeeds; 95% bootstrap
// CI from 1000 seeded resamples. Transitions the protocol declines are
// skipped (not counted).
InterventionScore intervention_score(const std::vector<soko::Level>& transitions,
                                     const planner::ChannelMap& map,
                                     const planner::MechanismGains& gains,
                                     const Protocol& protocol, uint64_t seed,
                                     int ticks = 3);

// Force an alternate legal action through the grid-next-action channels
// (+2 on the target direction, -2 on the rest).
Protocol gna_override_protocol();

// Overwrite the box_short channels at the planned box square nearest the
// agent: erase the planned direction, install an alternate legal push.
Protocol box_reroute_protocol();

// 95% percentile interval of a Bernoulli sample mean under seeded resampling.
std::pair<double, double> bootstrap_ci(const std::vector<int>& outcomes, uint64_t seed,
                                       int resamples = 1000);

}  // namespace interp

#endif  // INTERP_INTERVENE_HPP
